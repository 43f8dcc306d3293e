#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "bicross/catalog.hpp"
#include "bicross/errors.hpp"
#include "bicross/hopf.hpp"

using namespace bx;

namespace {

const CatalogEntry& entry(const std::string& name) {
  static std::map<std::string, CatalogEntry> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, catalog_get(name)).first;
  return it->second;
}

ParamSeries q(const SpecPtr& s, const mpq_class& c, int d = 0) { return ParamSeries::monomial(s->param, s->Z, c, d); }

}  // namespace

TEST_CASE("list") {
  const auto& v = catalog_list();
  CHECK(v.size() == 3);
  CHECK(std::set<std::string>(v.begin(), v.end()).size() == 3);
  CHECK(catalog_list() == v);
  CHECK(v[0] == "poincare-null-plane");
  CHECK_THROWS_AS(catalog_get("standard-galilei"), PreconditionError);
}

TEST_CASE("Poincare entry") {
  const auto& e = entry("poincare-null-plane");
  auto s = e.algebra;
  auto K = NCElement::generator(s, "K"), Pm = NCElement::generator(s, "Pm");
  CHECK(commutator(K, Pm) == Pm * mpq_class(-2));
  CHECK(e.kcoords() == std::vector<std::string>{"K"});
  CHECK(e.lcoords() == std::vector<std::string>{"Pm", "Pp"});
  CHECK(e.dual_kcoords() == std::vector<std::string>{"phi"});
  CHECK(e.default_q == 0.3);
}

TEST_CASE("kappa-Galilei dual relation") {
  const auto& e = entry("galilei-kappa");
  auto d = e.dual;
  auto t = NCElement::generator(d, "t"), x = NCElement::generator(d, "x");
  // [t, x] = -x/k, stored degree 1 is 1/k
  CHECK(commutator(t, x) == x * q(d, -1, 1));
  CHECK(e.lcoords() == std::vector<std::string>{"P", "H"});
  CHECK(e.default_q == 1.0);
}

TEST_CASE("Galilei dual coproduct") {
  const auto& e = entry("galilei-nonstandard");
  auto d = e.dual;
  auto one = NCElement::one(d);
  auto x = NCElement::generator(d, "x"), t = NCElement::generator(d, "t"), v = NCElement::generator(d, "v");
  CHECK(coproduct(x) == Tensor::pure({x, one}) + Tensor::pure({one, x}) - Tensor::pure({t, v}));
  CHECK(e.lcoords() == std::vector<std::string>{"H", "P"});
}

TEST_CASE("entries are consistent") {
  for (const auto& name : catalog_list()) {
    CAPTURE(name);
    const auto& e = entry(name);
    CHECK(e.name == name);
    CHECK(e.algebra->name == name);
    CHECK(e.flows.size() == e.kcoords().size());
    CHECK(e.induced.size() == e.lcoords().size());
    CHECK(e.grid.size() == 5);
    CHECK(e.star.image.size() == e.algebra->size());
    VectorField X = field_from_action(e.bicross, 0);
    for (const auto& h : e.integrals) CHECK(check_first_integral(X, h.h).is_zero());
    for (const auto& h : e.regressions) CHECK_FALSE(check_first_integral(X, h.h).is_zero());
    for (const auto& x : e.grid) {
      REQUIRE(e.flows[0].domain(0, x, e.default_q));
      auto y = e.flows[0](0, x, e.default_q);
      for (std::size_t j = 0; j < x.size(); ++j) CHECK(std::abs(y[j] - x[j]) < 1e-12);
      // Phi^{s2} o Phi^{s1} = Phi^{s1 + s2}
      for (auto [s1, s2] : std::vector<std::pair<double, double>>{{0.1, 0.2}, {0.25, -0.15}, {-0.2, 0.3}}) {
        auto a = e.flows[0](s2, e.flows[0](s1, x, e.default_q), e.default_q);
        auto b = e.flows[0](s1 + s2, x, e.default_q);
        for (std::size_t j = 0; j < x.size(); ++j) CHECK(std::abs(a[j] - b[j]) < 1e-9);
      }
      // integrals are constant along the closed flow
      auto y2 = e.flows[0](0.4, x, e.default_q);
      for (const auto& h : e.integrals)
        CHECK(ep_eval(h.h, y2, e.default_q) == doctest::Approx(ep_eval(h.h, x, e.default_q)).epsilon(1e-12));
      for (std::size_t j = 0; j < x.size(); ++j) CHECK(e.induced[j](0, x, e.default_q) == doctest::Approx(x[j]));
    }
  }
}

TEST_CASE("fixed points and strata") {
  const auto& p = entry("poincare-null-plane");
  CHECK(p.fixed_point({0, 0}, 0.3));
  CHECK_FALSE(p.fixed_point({0, 1}, 0.3));
  CHECK(p.stratum({0, 0}, 0.3) == "origin");
  CHECK(p.stratum({0, 1}, 0.3) == "semiaxis");
  CHECK(p.stratum({2, 0}, 0.3) == "semiaxis");
  CHECK(p.stratum({2, -1}, 0.3) == "hyperbolic-branch");

  const auto& g = entry("galilei-nonstandard");
  CHECK(g.fixed_point({7, 0}, 0.3));
  CHECK(g.stratum({7, 0}, 0.3) == "fixed-line");
  CHECK(g.stratum({7, 1}, 0.3) == "sheet");

  const auto& k = entry("galilei-kappa");
  CHECK(k.fixed_point({0, 3}, 1.0));
  CHECK(k.stratum({1, 0}, 1.0) == "sheet");
}

TEST_CASE("data directory override") {
  ::setenv("BICROSS_DATA_DIR", "/nonexistent-bicross-data", 1);
  CHECK(data_dir() == "/nonexistent-bicross-data");
  CHECK_THROWS_AS(catalog_get("galilei-kappa"), SpecError);
  ::unsetenv("BICROSS_DATA_DIR");
  CHECK(data_dir() != "/nonexistent-bicross-data");
}

TEST_CASE("catalog functions") {
  const auto& k = entry("galilei-kappa");
  ExpPoly h = catalog_function(k, "P*exp(H/(2*k))");
  CHECK(ep_eval(h, {1, 0}, 1.0) == doctest::Approx(1.0));
  CHECK(ep_eval(h, {2, 2}, 2.0) == doctest::Approx(2 * std::exp(0.5)));
  CHECK_THROWS_AS(catalog_function(k, "Pm + 1"), ParseError);
}
