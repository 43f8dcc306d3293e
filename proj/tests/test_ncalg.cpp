#include <doctest.h>

#include "bicross/errors.hpp"
#include "bicross/ncalg.hpp"
#include "support.hpp"

using namespace bx;
using test::gen;
using test::q;

TEST_CASE("normal_order kappa-Galilei") {
  auto s = test::load("galilei-kappa");
  std::size_t K = s->index("K"), P = s->index("P"), H = s->index("H");
  REQUIRE(K == 0);
  // H K = K H - P
  CHECK(normal_order(s, {{H, 1}, {K, 1}}) == gen(s, "K") * gen(s, "H") - gen(s, "P"));
  // H K^2 = K^2 H - 2 K P - P^2/(2k); stored degree 1 is 1/k
  NCElement expect(s);
  expect.add_term(MultiIndex{2, 0, 1}, q(s, 1));
  expect.add_term(MultiIndex{1, 1, 0}, q(s, -2));
  expect.add_term(MultiIndex{0, 2, 0}, q(s, mpq_class(-1, 2), 1));
  CHECK(normal_order(s, {{H, 1}, {K, 2}}) == expect);
  CHECK(normal_order(s, {{H, 1}, {K, 2}}) == test::brute_order(s, {H, K, K}));
  // ordered words are fixed
  NCElement m(s);
  m.add_term(MultiIndex{2, 1, 1}, q(s, 1));
  CHECK(normal_order(s, {{K, 2}, {P, 1}, {H, 1}}) == m);
  CHECK(normal_order(s, {}) == NCElement::one(s));
}

TEST_CASE("nc_mul Poincare") {
  auto s = test::load("poincare-null-plane");
  auto K = gen(s, "K"), Pm = gen(s, "Pm"), Pp = gen(s, "Pp");
  CHECK(nc_mul(K, NCElement::one(s)) == K);
  CHECK(nc_mul(NCElement::one(s), Pm) == Pm);
  CHECK(nc_mul(Pm, K) == K * Pm + Pm * mpq_class(2));
  // Pp K = K Pp + (1/z)(exp(-2z Pp) - 1), expanded with the exp coefficients
  NCElement expect = K * Pp;
  ParamSeries c = q(s, -2, 1);
  for (unsigned n = 1; n <= 4; ++n) {
    MultiIndex mono{0, 0, n};
    expect.add_term(mono, ps_exp_series(c, n) * q(s, 1, -1));
  }
  NCElement got = nc_mul(Pp, K);
  CHECK(got == expect);
  CHECK(got.coeff(MultiIndex{0, 0, 1}) == q(s, -2));
  CHECK(got.coeff(MultiIndex{0, 0, 2}) == q(s, 2, 1));
  CHECK(got.coeff(MultiIndex{0, 0, 3}) == q(s, mpq_class(-4, 3), 2));
}

TEST_CASE("straightening agrees with adjacent swaps") {
  for (const auto& name : test::all_specs()) {
    CAPTURE(name);
    auto s = test::load(name, 6, 4);
    std::size_t n = s->size();
    std::vector<std::vector<std::size_t>> words = {{}};
    for (int len = 1; len <= 3; ++len) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& w : words)
        if (static_cast<int>(w.size()) == len - 1)
          for (std::size_t g = 0; g < n; ++g) {
            auto v = w;
            v.push_back(g);
            next.push_back(v);
          }
      words.insert(words.end(), next.begin(), next.end());
    }
    for (const auto& w : words) {
      NCElement a = test::word_product(s, w).window(3, 4);
      NCElement b = test::brute_order(s, w).window(3, 4);
      CHECK_MESSAGE(a == b, a.str() << " vs " << b.str());
    }
  }
}

TEST_CASE("adjoint expansion") {
  auto s = test::load("galilei-kappa");
  auto K = gen(s, "K"), H = gen(s, "H");
  CHECK(adjoint_power_expand(K, H, 0, Side::Left) == H);
  CHECK(adjoint_power_expand(K, H, 0, Side::Right) == H);
  CHECK(adjoint_power_expand(K, H, 1, Side::Left) == K * H);
  CHECK(adjoint_power_expand(K, H, 1, Side::Right) == H * K);
  CHECK(adjoint_power_expand(K, H, 2, Side::Right) == normal_order(s, {{2, 1}, {0, 2}}));
  CHECK(adjoint_power_expand(K, H, 3, Side::Left) == K * K * K * H);
}

TEST_CASE("tensor_mul") {
  auto s = test::load("poincare-null-plane");
  auto one = NCElement::one(s);
  auto K = gen(s, "K"), Pp = gen(s, "Pp");
  Tensor A = Tensor::pure({K, Pp}) + Tensor::pure({Pp, one});
  CHECK(tensor_mul(Tensor::one({s, s}), A) == A);
  CHECK(tensor_mul(Tensor::pure({K, one}), Tensor::pure({one, K})) == Tensor::pure({K, K}));
  Tensor d = Tensor::pure({Pp, one}) + Tensor::pure({one, Pp});
  Tensor sq = Tensor::pure({Pp * Pp, one}) + Tensor::pure({Pp, Pp}) * q(s, 2) + Tensor::pure({one, Pp * Pp});
  CHECK(tensor_mul(d, d) == sq);
}

TEST_CASE("truncation flag") {
  auto s = test::load("galilei-kappa", 2, 4);
  auto K = gen(s, "K");
  NCElement k3 = K * K * K;
  CHECK(k3.is_zero());
  CHECK(k3.truncated());
  CHECK_FALSE((K * K).truncated());
}

TEST_CASE("spec mismatch") {
  auto a = test::load("galilei-kappa");
  auto b = test::load("galilei-nonstandard");
  CHECK_THROWS_AS(nc_mul(gen(a, "K"), gen(b, "K")), Error);
}

TEST_CASE("inadmissible presentation") {
  auto src = parse_spec_text(R"([algebra]
name = bad
parameter = z
acting = K
[generators]
K = K
P = L
[relations]
[P, K] = K
)");
  CHECK_THROWS_AS(build_spec(src, 4, 4), SpecError);
}

TEST_CASE("canonical printing") {
  auto s = test::load("galilei-kappa");
  NCElement e = normal_order(s, {{2, 1}, {0, 2}});
  std::string t = e.str();
  CHECK(t == e.str());
  CHECK(t.find("k") != std::string::npos);
}
