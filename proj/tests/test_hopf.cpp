#include <doctest.h>

#include <fstream>
#include <sstream>

#include "bicross/hopf.hpp"
#include "support.hpp"

using namespace bx;
using test::gen;
using test::q;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const CheckEntry* find(const Report& r, const std::string& axiom) {
  for (const auto& e : r.entries)
    if (e.axiom == axiom) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("coproduct") {
  auto s = test::load("poincare-null-plane");
  auto one = NCElement::one(s);
  auto Pp = gen(s, "Pp");
  CHECK(coproduct(one) == Tensor::one({s, s}));
  CHECK(coproduct(Pp) == Tensor::pure({Pp, one}) + Tensor::pure({one, Pp}));
  Tensor sq = Tensor::pure({Pp * Pp, one}) + Tensor::pure({Pp, Pp}) * q(s, 2) + Tensor::pure({one, Pp * Pp});
  CHECK(coproduct(Pp * Pp) == sq);
  // Delta K = K (x) 1 + exp(-2z Pp) (x) K, read off through degree 2
  auto K = gen(s, "K");
  Tensor dk = coproduct(K);
  CHECK(dk.terms().count({MultiIndex{1, 0, 0}, MultiIndex{0, 0, 0}}) == 1);
  CHECK(dk.terms().at({MultiIndex{0, 0, 1}, MultiIndex{1, 0, 0}}) == q(s, -2, 1));
  CHECK(dk.terms().at({MultiIndex{0, 0, 2}, MultiIndex{1, 0, 0}}) == q(s, 2, 2));
}

TEST_CASE("counit") {
  auto s = test::load("poincare-null-plane");
  auto K = gen(s, "K"), Pm = gen(s, "Pm");
  CHECK(counit(NCElement::one(s)) == q(s, 1));
  CHECK(counit(K * K * Pm).is_zero());
  CHECK(counit(NCElement::scalar(s, q(s, 3)) + K) == q(s, 3));
}

TEST_CASE("antipode") {
  auto s = test::load("poincare-null-plane");
  CHECK(antipode(NCElement::one(s)) == NCElement::one(s));
  CHECK(antipode(gen(s, "Pp")) == -gen(s, "Pp"));

  auto k = test::load("galilei-kappa");
  // S(P) = -exp(H/k) P = -sum H^n P / (n! k^n)
  NCElement expect(k);
  for (unsigned n = 0; n <= 3; ++n) expect.add_term(MultiIndex{0, 1, n}, q(k, -mpq_class(1, factorial(n)), n));
  CHECK(antipode(gen(k, "P")) == expect);
  // anti-multiplicative on a product of two generators
  auto K = gen(k, "K"), H = gen(k, "H");
  CHECK(antipode(K * H).window(2, 4) == (antipode(H) * antipode(K)).window(2, 4));
}

TEST_CASE("axioms on the kappa-Galilei presentation") {
  auto s = test::load("galilei-kappa");
  Report r = check_hopf_axioms(s, 3, 4);
  CHECK(r.ok());
  for (std::string a : {"coassociativity", "counit-left", "counit-right", "antipode-left", "antipode-right",
                        "relations-coproduct", "relations-counit", "relations-antipode", "window-stability"})
    CHECK_MESSAGE(find(r, a) != nullptr, a);
  json j = r.to_json();
  REQUIRE(j.contains("checks"));
  for (const auto& e : j["checks"]) {
    CHECK(e.contains("axiom"));
    CHECK(e["status"] == "pass");
    CHECK(e["degree"] == 3);
    CHECK(e["paramOrder"] == 4);
  }
}

TEST_CASE("mutated antipode is caught") {
  std::string text = slurp(data_dir() + "/poincare-null-plane.spec");
  auto pos = text.find("Pp = -Pp");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 8, "Pp = Pp");
  auto s = build_spec(parse_spec_text(text), 4, 8);
  Report r = check_hopf_axioms(s, 2, 3);
  CHECK_FALSE(r.ok());
  const CheckEntry* e = find(r, "antipode-left");
  REQUIRE(e != nullptr);
  CHECK_FALSE(e->pass);
  REQUIRE(e->counterexample);
  CHECK(e->counterexample->rfind("Pp", 0) == 0);
}
