#include <doctest.h>

#include "bicross/errors.hpp"
#include "bicross/multiindex.hpp"

using namespace bx;

TEST_CASE("mfactorial") {
  CHECK(mfactorial(MultiIndex{0, 0, 0}) == 1);
  CHECK(mfactorial(MultiIndex{2, 1, 3}) == 12);
  CHECK(mfactorial(MultiIndex{4}) == 24);
  // 20! does not fit in 32 bits, 25! not in 64
  CHECK(mfactorial(MultiIndex{25}) == mpz_class("15511210043330985984000000"));
}

TEST_CASE("mleq") {
  CHECK(mleq(MultiIndex{1, 0}, MultiIndex{2, 1}));
  CHECK_FALSE(mleq(MultiIndex{2, 0}, MultiIndex{1, 5}));
  CHECK(mleq(MultiIndex{0, 0}, MultiIndex{0, 0}));
  CHECK_THROWS_AS(mleq(MultiIndex{1}, MultiIndex{1, 0}), PreconditionError);
}

TEST_CASE("mcomb") {
  CHECK(mcomb(MultiIndex{2, 1}, MultiIndex{1, 1}) == 2);
  CHECK(mcomb(MultiIndex{3, 2}, MultiIndex{3, 2}) == 1);
  CHECK(mcomb(MultiIndex{3}, MultiIndex{0}) == 1);
  CHECK(mcomb(MultiIndex{4, 3}, MultiIndex{2, 1}) == 18);
  CHECK_THROWS_AS(mcomb(MultiIndex{1, 1}, MultiIndex{2, 0}), PreconditionError);
}

TEST_CASE("msub") {
  CHECK(msub(MultiIndex{2, 1}, MultiIndex{1, 0}) == MultiIndex{1, 1});
  CHECK(msub(MultiIndex{3, 4}, MultiIndex{3, 4}).is_zero());
  CHECK(msub(MultiIndex{5}, MultiIndex{2}) == MultiIndex{3});
  CHECK_THROWS_AS(msub(MultiIndex{1}, MultiIndex{2}), PreconditionError);
}

TEST_CASE("enumeration") {
  auto v = indices_up_to(2, 2);
  CHECK(v.size() == 6);
  CHECK(v.front().is_zero());
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1].total() <= v[i].total());
  CHECK(indices_below(MultiIndex{2, 1}).size() == 6);
  CHECK(MultiIndex::unit(3, 1) == MultiIndex{0, 1, 0});
  CHECK(MultiIndex{1, 2} + MultiIndex{3, 0} == MultiIndex{4, 2});
  CHECK(MultiIndex{2, 0, 1}.total() == 3);
}
