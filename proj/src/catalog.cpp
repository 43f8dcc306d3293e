#include "bicross/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "bicross/errors.hpp"

#ifndef BICROSS_DEFAULT_DATA_DIR
#define BICROSS_DEFAULT_DATA_DIR "data"
#endif

namespace bx {

std::string data_dir() {
  if (const char* d = std::getenv("BICROSS_DATA_DIR"); d && *d) return d;
  return BICROSS_DEFAULT_DATA_DIR;
}

const std::vector<std::string>& catalog_list() {
  static const std::vector<std::string> names = {"poincare-null-plane", "galilei-nonstandard", "galilei-kappa"};
  return names;
}

std::vector<std::string> CatalogEntry::kcoords() const {
  std::vector<std::string> v;
  for (const auto& g : bicross.kspec->gens) v.push_back(g.name);
  return v;
}

std::vector<std::string> CatalogEntry::lcoords() const {
  std::vector<std::string> v;
  for (const auto& g : bicross.lspec->gens) v.push_back(g.name);
  return v;
}

std::vector<std::string> CatalogEntry::dual_kcoords() const {
  std::vector<std::string> v;
  for (const auto& g : dual->gens)
    if (g.sector == Sector::K) v.push_back(g.name);
  return v;
}

ExpPoly catalog_function(const CatalogEntry& e, const std::string& text) {
  SymbolTable t;
  t.param = e.source.param;
  t.symbols = e.lcoords();
  return to_exppoly(parse(text, t), t.symbols, e.bicross.lspec->param, kFunctionTop);
}

namespace {

using C = std::complex<double>;
using CVec = ClosedFlow::CVec;

void poincare(CatalogEntry& e) {
  e.default_q = 0.3;
  e.default_q_text = "0.3";
  ClosedFlow f;
  // (Pm, Pp) -> (Pm e^{2s}, ln(1 - e^{-2s}(1 - e^{2z Pp})) / 2z)
  f.eval = [](C s, const CVec& x, double z) {
    return CVec{x[0] * std::exp(2.0 * s), std::log(1.0 - std::exp(-2.0 * s) * (1.0 - std::exp(2.0 * z * x[1]))) / (2.0 * z)};
  };
  f.domain = [](double s, const std::vector<double>& x, double z) {
    return z != 0 && 1.0 - std::exp(-2.0 * s) * (1.0 - std::exp(2.0 * z * x[1])) > 0;
  };
  e.flows = {f};
  e.integrals = {{"h", catalog_function(e, "Pm*(exp(2*z*Pp) - 1)")}};
  e.regressions = {{"h-printed", catalog_function(e, "Pm*(exp(-2*z*Pp) - 1)")}};
  e.fixed_point = [](const std::vector<double>& x, double) { return x[0] == 0 && x[1] == 0; };
  e.stratum = [](const std::vector<double>& x, double) -> std::string {
    if (x[0] == 0 && x[1] == 0) return "origin";
    if (x[0] == 0 || x[1] == 0) return "semiaxis";
    return "hyperbolic-branch";
  };
  e.grid = {{1, -0.5}, {0.5, 0.25}, {-1, 1}, {0.2, -0.3}, {-0.7, 0.8}};
}

void galilei(CatalogEntry& e) {
  e.default_q = 0.3;
  e.default_q_text = "0.3";
  ClosedFlow f;
  // (H, P) -> (H - (1 - e^{-4z P}) s / 4z, P)
  f.eval = [](C s, const CVec& x, double z) {
    return CVec{x[0] - (1.0 - std::exp(-4.0 * z * x[1])) * s / (4.0 * z), x[1]};
  };
  f.domain = [](double, const std::vector<double>&, double z) { return z != 0; };
  e.flows = {f};
  e.integrals = {{"P", catalog_function(e, "P")}};
  e.fixed_point = [](const std::vector<double>& x, double) { return x[1] == 0; };
  e.stratum = [](const std::vector<double>& x, double) -> std::string { return x[1] == 0 ? "fixed-line" : "sheet"; };
  e.grid = {{0, 1}, {1, -0.5}, {-0.3, 0.2}, {2, 0.7}, {0.5, -1}};
}

void kappa(CatalogEntry& e) {
  e.default_q = 1.0;
  e.default_q_text = "1";
  ClosedFlow f;
  // (P, H) -> (P / (1 - sP/2k), H + 2k ln(1 - sP/2k))
  f.eval = [](C s, const CVec& x, double k) {
    C u = 1.0 - s * x[0] / (2.0 * k);
    return CVec{x[0] / u, x[1] + 2.0 * k * std::log(u)};
  };
  f.domain = [](double s, const std::vector<double>& x, double k) { return k != 0 && 1.0 - s * x[0] / (2.0 * k) > 0; };
  e.flows = {f};
  e.integrals = {{"h", catalog_function(e, "P*exp(H/(2*k))")}};
  e.fixed_point = [](const std::vector<double>& x, double) { return x[0] == 0; };
  e.stratum = [](const std::vector<double>& x, double) -> std::string { return x[0] == 0 ? "fixed-line" : "sheet"; };
  e.grid = {{1, 0}, {0.5, 1}, {-1, 0.3}, {2, -0.5}, {-0.4, -1}};
}

}  // namespace

CatalogEntry catalog_get(const std::string& name, int D, int Z) {
  const auto& names = catalog_list();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw PreconditionError("unknown catalog entry: " + name);
  CatalogEntry e;
  e.name = name;
  const std::string dir = data_dir();
  e.source = load_spec_file(dir + "/" + name + ".spec");
  e.dual_source = load_spec_file(dir + "/" + name + ".dual.spec");
  e.algebra = build_spec(e.source, D, Z);
  e.dual = build_spec(e.dual_source, D, Z);
  e.pair = make_dual_pair(e.algebra, e.dual);
  e.bicross = load_bicross(e.source, D, Z);
  e.star = make_star(e.algebra, e.source);
  if (name == "poincare-null-plane") poincare(e);
  else if (name == "galilei-nonstandard") galilei(e);
  else kappa(e);
  for (std::size_t j = 0; j < e.lcoords().size(); ++j) {
    ClosedFlow f = e.flows.front();
    e.induced.push_back([f, j](double t, const std::vector<double>& a, double q) { return f(t, a, q)[j]; });
  }
  return e;
}

}  // namespace bx
