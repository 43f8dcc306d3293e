#include <doctest.h>

#include <cmath>

#include "bicross/catalog.hpp"
#include "bicross/errors.hpp"
#include "bicross/induction.hpp"

using namespace bx;

namespace {

const CatalogEntry& entry(const std::string& name) {
  static std::map<std::string, CatalogEntry> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, catalog_get(name)).first;
  return it->second;
}

ExpPoly fn(const std::string& name, const std::string& text) { return catalog_function(entry(name), text); }

mpq_class Q(long a, long b = 1) {
  mpq_class r(a, b);
  r.canonicalize();
  return r;
}

mpq_class qpow(const mpq_class& x, int n) {
  mpq_class r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

std::vector<mpq_class> coeffs(const CoordSeries& f, const std::vector<mpq_class>& a, const mpq_class& q, int N) {
  auto v = series_value_exact(f, a, q);
  std::vector<mpq_class> out(N + 1);
  for (const auto& [m, c] : v)
    if (static_cast<int>(m[0]) <= N) out[m[0]] = c;
  return out;
}

}  // namespace

TEST_CASE("kappa-Galilei induced series, exact") {
  // P: a/(1 - a v/2k) = sum a^{n+1} v^n/(2k)^n; H: b + 2k ln(1 - a v/2k) = b - sum a^n v^n / (n (2k)^{n-1})
  auto rep = induce(entry("galilei-kappa").bicross, {1, 0}, 6);
  REQUIRE(rep.lcoords == std::vector<std::string>{"P", "H"});
  for (auto [a, b, k] : std::vector<std::array<mpq_class, 3>>{{1, 0, 1}, {Q(2, 3), Q(1, 2), 3}, {-2, 5, Q(1, 4)}}) {
    CAPTURE(a.get_str());
    CAPTURE(k.get_str());
    auto p = coeffs(rep.M[0], {a, b}, k, 6);
    auto h = coeffs(rep.M[1], {a, b}, k, 6);
    CHECK(h[0] == b);
    for (int n = 0; n <= 6; ++n) CHECK(p[n] == qpow(a, n + 1) / qpow(2 * k, n));
    for (int n = 1; n <= 6; ++n) CHECK(h[n] == -qpow(a, n) / (n * qpow(2 * k, n - 1)));
  }
  auto h = coeffs(rep.M[1], {1, 0}, 1, 4);
  CHECK(h[1] == -1);
  CHECK(h[2] == Q(-1, 4));
  CHECK(h[3] == Q(-1, 12));
  CHECK(h[4] == Q(-1, 32));
}

TEST_CASE("Galilei induced series") {
  auto rep = induce(entry("galilei-nonstandard").bicross, {2, 0}, 6);
  REQUIRE(rep.lcoords == std::vector<std::string>{"H", "P"});
  // P is invariant: its series is the character value at every order
  for (auto [b, a] : std::vector<std::pair<mpq_class, mpq_class>>{{2, 0}, {-1, 0}, {Q(1, 3), 0}}) {
    auto p = coeffs(rep.M[1], {b, a}, Q(3, 10), 6);
    for (int n = 0; n <= 6; ++n) CHECK(p[n] == 0);
    auto hh = coeffs(rep.M[0], {b, a}, Q(3, 10), 6);
    CHECK(hh[0] == b);
    for (int n = 1; n <= 6; ++n) CHECK(hh[n] == 0);
  }
  // H: b - (1 - exp(-4za)) v / 4z, linear in v
  CHECK(rep.M[0].at(MultiIndex{1}) == fn("galilei-nonstandard", "-(1 - exp(-4*z*P))/(4*z)"));
  for (unsigned n = 2; n <= 6; ++n) {
    auto it = rep.M[0].find(MultiIndex{n});
    CHECK((it == rep.M[0].end() || it->second.is_zero()));
  }
}

TEST_CASE("Poincare induced series against the closed form") {
  const auto& e = entry("poincare-null-plane");
  auto rep = induce(e.bicross, {1, -0.5}, 6);
  for (const auto& x : e.grid) {
    auto taylor = closed_flow_taylor(e.flows[0], x, e.default_q, 6);
    for (std::size_t j = 0; j < 2; ++j) {
      auto v = series_value(rep.M[j], x, e.default_q);
      for (unsigned n = 0; n <= 6; ++n) {
        double got = v.count(MultiIndex{n}) ? v.at(MultiIndex{n}) : 0.0;
        CHECK(got == doctest::Approx(taylor[j][n]).epsilon(1e-10));
      }
    }
  }
  // Pm: alpha e^{2v}, exact
  auto pm = coeffs(rep.M[0], {3, 0}, Q(3, 10), 6);
  mpq_class f = 3;
  for (int n = 0; n <= 6; ++n) {
    CHECK(pm[n] == f);
    f = f * 2 / (n + 1);
  }
}

TEST_CASE("constant terms reproduce the character") {
  for (const auto& name : catalog_list()) {
    CAPTURE(name);
    const auto& e = entry(name);
    auto rep = induce(e.bicross, e.grid[0], 4);
    for (std::size_t j = 0; j < rep.M.size(); ++j) {
      CHECK(rep.M[j].at(MultiIndex{0}) == ExpPoly::coordinate(rep.M[j].at(MultiIndex{0}), j));
      for (const auto& x : e.grid) CHECK(series_value(rep.M[j], x, e.default_q).at(MultiIndex{0}) == x[j]);
    }
  }
}

TEST_CASE("K acts by differentiation") {
  auto rep = induce(entry("galilei-kappa").bicross, {1, 0}, 6);
  CoordSeries one = model_monomial(rep, MultiIndex{0});
  auto k1 = rep_apply(rep, "K", one);
  for (const auto& [m, c] : k1) CHECK(c.is_zero());
  for (unsigned n = 1; n <= 6; ++n) {
    auto img = coeffs(rep_apply(rep, "K", model_monomial(rep, MultiIndex{n})), {1, 0}, 1, 6);
    for (unsigned m = 0; m <= 6; ++m) CHECK(img[m] == (m + 1 == n ? mpq_class(n) : mpq_class(0)));
  }
}

TEST_CASE("rep_apply on the constant function") {
  auto rep = induce(entry("galilei-kappa").bicross, {1, 0}, 6);
  auto p = coeffs(rep_apply(rep, "P", model_monomial(rep, MultiIndex{0})), {1, 0}, 1, 6);
  for (int n = 0; n <= 6; ++n) CHECK(p[n] == qpow(Q(1, 2), n));
  CHECK(series_text(series_value_exact(rep_apply(rep, "P", model_monomial(rep, MultiIndex{0})), {1, 0}, 1), {"v"})
            .rfind("1 + (1/2)v + (1/4)v^2", 0) == 0);
  // f -| (x y) = (f -| x) -| y
  auto one = model_monomial(rep, MultiIndex{0});
  auto kp = coeffs(rep_apply_word(rep, {"K", "P"}, one), {1, 0}, 1, 5);
  for (int n = 0; n <= 5; ++n) CHECK(kp[n] == 0);
  auto pk = coeffs(rep_apply_word(rep, {"P", "K"}, one), {1, 0}, 1, 5);
  for (int n = 0; n <= 4; ++n) CHECK(pk[n] == (n + 1) * qpow(Q(1, 2), n + 1));
  CHECK_THROWS_AS(rep_apply(rep, "Q", model_monomial(rep, MultiIndex{0})), PreconditionError);
}

TEST_CASE("zero action: L generators act by the character") {
  auto src = parse_spec_text(R"([algebra]
name = trivial
parameter = z
acting = K
[generators]
K = K
A = L
B = L
[action]
A <| K = 0
B <| K = 0
[coaction]
K = 1
)");
  auto rep = induce(load_bicross(src, 4, 4), {2, 5}, 4);
  auto f = model_monomial(rep, MultiIndex{3});
  auto a = coeffs(rep_apply(rep, "A", f), {2, 5}, 1, 4);
  auto b = coeffs(rep_apply(rep, "B", f), {2, 5}, 1, 4);
  for (unsigned n = 0; n <= 4; ++n) {
    CHECK(a[n] == (n == 3 ? 2 : 0));
    CHECK(b[n] == (n == 3 ? 5 : 0));
  }
}

TEST_CASE("representation relations") {
  for (const auto& name : catalog_list()) {
    CAPTURE(name);
    const auto& e = entry(name);
    auto rep = induce(e.bicross, e.grid[1], 6);
    Report r = check_rep_relations(rep, 4);
    CHECK(r.ok());
    CHECK(check_skew_symmetry(rep).ok());
  }
  auto rep = induce(entry("galilei-kappa").bicross, {1, 0}, 5);
  CHECK_THROWS_AS(check_rep_relations(rep, 5), PreconditionError);
}

TEST_CASE("mutated series breaks the relations") {
  auto rep = induce(entry("galilei-kappa").bicross, {1, 0}, 6);
  rep.M[1].erase(MultiIndex{2});
  Report r = check_rep_relations(rep, 4);
  CHECK_FALSE(r.ok());
  bool cx = false;
  for (const auto& e : r.entries) cx = cx || (!e.pass && e.counterexample);
  CHECK(cx);
}

TEST_CASE("json dump") {
  auto rep = induce(entry("galilei-kappa").bicross, {1, 0}, 3);
  json j = rep_to_json(rep, 1.0);
  CHECK(j["order"] == 3);
  CHECK(j["lGenerators"].contains("P"));
  CHECK(j["lGenerators"]["P"][0]["value"].get<double>() == doctest::Approx(1.0));
  CHECK(j["kGenerators"].contains("K"));
}

TEST_CASE("local representation") {
  const auto& k = entry("galilei-kappa");
  auto r0 = local_rep(k.flows[0], 2, {1, 0}, 0, 1.0);
  CHECK(r0.scalar == 1.0);
  CHECK(r0.point == std::vector<double>{1, 0});
  auto r = local_rep(k.flows[0], 2, {1, 0}, 0.5, 1.0);
  CHECK(r.scalar == doctest::Approx(std::exp(1.0)));
  CHECK(r.point[0] == doctest::Approx(4.0 / 3.0));
  CHECK(r.point[1] == doctest::Approx(2 * std::log(0.75)));
  CHECK_THROWS_AS(local_rep(k.flows[0], 2, {1, 0}, 2.5, 1.0), DomainError);
}

TEST_CASE("co-space actions") {
  const auto& p = entry("poincare-null-plane");
  const auto& flow = p.flows[0];
  double z = p.default_q;
  CoSpaceElement e;
  e.form = CoSpaceElement::Form::KappaL;
  e.kappa = [](double t) { return 1 + t * t; };
  e.l = {1, -0.5};

  CoSpaceActor g;
  g.s = 0.25;
  // (kappa l) < e^{sK}: shifted function, same point
  auto r = cospace_act(e, g, CoModule::HStarRight, flow, z);
  CHECK(r.l == e.l);
  CHECK(r.kappa(0.1) == doctest::Approx(1 + 0.35 * 0.35));
  // e^{sK} > (kappa l): shifted function, point moved by the flow
  auto l = cospace_act(e, g, CoModule::HStarLeft, flow, z);
  auto moved = flow(0.25, e.l, z);
  CHECK(l.l[0] == doctest::Approx(moved[0]));
  CHECK(l.l[1] == doctest::Approx(moved[1]));

  // Pm > (phi (a-, a+)) = a- phi
  CoSpaceActor pm;
  pm.kind = CoSpaceActor::Kind::Function;
  pm.lambda = [](const std::vector<double>& x) { return x[0]; };
  e.l = {3, 0.2};
  auto s = cospace_act(e, pm, CoModule::HStarLeft, flow, z);
  CHECK(s.scale == 3.0);
  CHECK(s.l == e.l);

  // (kappa l) < lambda' = kappa (lambda' o Phi^t(l)) l
  auto rl = cospace_act(e, pm, CoModule::HStarRight, flow, z);
  CHECK(rl.kappa(0.2) == doctest::Approx((1 + 0.04) * 3 * std::exp(0.4)));

  CoSpaceElement h;
  h.form = CoSpaceElement::Form::KLambda;
  h.k = 0.1;
  h.lambda = [](const std::vector<double>& x) { return x[0] + x[1]; };
  auto hk = cospace_act(h, g, CoModule::HLeft, flow, z);
  CHECK(hk.k == doctest::Approx(0.35));
  auto hr = cospace_act(h, g, CoModule::HRight, flow, z);
  CHECK(hr.k == doctest::Approx(0.35));
  auto mv = flow(0.25, {1, 0.5}, z);
  CHECK(hr.lambda({1, 0.5}) == doctest::Approx(mv[0] + mv[1]));
  auto hl = cospace_act(h, pm, CoModule::HLeft, flow, z);
  auto mv2 = flow(0.1, {2, 0.3}, z);
  CHECK(hl.lambda({2, 0.3}) == doctest::Approx(mv2[0] * 2.3));

  CHECK_THROWS_AS(cospace_act(h, g, CoModule::HStarLeft, flow, z), PreconditionError);
}

TEST_CASE("equivalence of induced modules") {
  const auto& k = entry("galilei-kappa");
  std::vector<NamedIntegral> H = {{"H", fn("galilei-kappa", "H")}};
  EquivalenceOptions opt;
  CHECK(equivalence_check(k.flows[0], H, {1, 0}, 0, 1.0, opt).ok());
  CHECK(equivalence_check(k.flows[0], H, {1, 0}, 0.3, 1.0, opt).ok());
  // a point on another orbit (h = 2 instead of 1)
  std::vector<double> other = {2, 0};
  Report bad = equivalence_check(k.flows[0], H, {1, 0}, 0.3, 1.0, opt, &other);
  CHECK_FALSE(bad.ok());
}
