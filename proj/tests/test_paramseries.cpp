#include <doctest.h>

#include "bicross/errors.hpp"
#include "bicross/paramseries.hpp"

using namespace bx;

namespace {
auto Z = make_param("z");
ParamSeries mono(const mpq_class& c, int d, int top = 8) { return ParamSeries::monomial(Z, top, c, d); }
}  // namespace

TEST_CASE("ring operations") {
  CHECK(ps_mul(mono(2, 1), mono(3, 2)) == mono(6, 3));
  ParamSeries a = mono(5, 0) + mono(mpq_class(1, 3), 2);
  CHECK(ps_add(a, ParamSeries(Z, 8)) == a);
  CHECK(ps_add(a, ps_neg(a)).is_zero());
  // (1/z)(-2z + 2z^2) = -2 + 2z
  CHECK(ps_mul(mono(1, -1), mono(-2, 1) + mono(2, 2)) == mono(-2, 0) + mono(2, 1));
}

TEST_CASE("window") {
  ParamSeries a = mono(1, 5);
  ParamSeries p = a * a;
  CHECK(p.is_zero());
  CHECK(p.truncated());
  CHECK_FALSE(a.truncated());
  // B = 2: z^-3 is an error
  CHECK_THROWS_AS(mono(1, -2) * mono(1, -1), ParamError);
  CHECK_NOTHROW(mono(1, -2));
  ParamSeries w = (mono(1, 0) + mono(1, 3)).window(2);
  CHECK(w == mono(1, 0));
}

TEST_CASE("parameter mismatch") {
  auto K = make_param("k", true);
  ParamSeries a = ParamSeries::monomial(K, 8, 1, 1);
  CHECK_THROWS_AS(a + mono(1, 1), ParamError);
  // untyped scalars adopt the partner
  CHECK(ParamSeries::scalar(2) * a == ParamSeries::monomial(K, 8, 2, 1));
}

TEST_CASE("exp series coefficients") {
  CHECK(ps_exp_series(mono(-2, 1), 0) == mono(1, 0));
  CHECK(ps_exp_series(mono(-2, 1), 2) == mono(2, 2));
  CHECK(ps_exp_series(mono(-4, 1), 1) == mono(-4, 1));
  CHECK(ps_exp_series(mono(-2, 1), 3) == mono(mpq_class(-4, 3), 3));
}

TEST_CASE("evaluation") {
  CHECK(ps_eval(mono(2, 0) - mono(2, 1), 0.5) == doctest::Approx(1.0));
  CHECK(ps_eval(mono(3, 0), 17.0) == doctest::Approx(3.0));
  CHECK(ps_eval(mono(1, 0) + mono(1, 1) + mono(1, 2), 0.1) == doctest::Approx(1.11));
  CHECK_THROWS_AS(ps_eval(mono(1, -1), 0.5), ParamError);
  CHECK(ps_eval_laurent(mono(1, -1), 0.5) == doctest::Approx(2.0));
  CHECK(ps_eval_exact(mono(mpq_class(1, 2), 2), mpq_class(2, 3)) == mpq_class(2, 9));
}

TEST_CASE("inverse parameter") {
  auto K = make_param("k", true);
  // stored degree 1 is 1/k
  ParamSeries a = ParamSeries::monomial(K, 8, 1, 1);
  CHECK(ps_eval(a, 4.0) == doctest::Approx(0.25));
  CHECK(a.str() == "1·k^-1");
}

TEST_CASE("printing") {
  CHECK((mono(-2, 0) + mono(mpq_class(4, 3), 2)).str() == "-2 + 4/3·z^2");
  CHECK(ParamSeries(Z, 8).str() == "0");
}
