#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bicross/bicross.hpp"
#include "bicross/flows.hpp"
#include "bicross/pairing.hpp"
#include "bicross/specfile.hpp"

namespace bx {

// Spec-file root: $BICROSS_DATA_DIR, else the build-time default.
std::string data_dir();

struct CatalogEntry {
  std::string name;
  SpecSource source, dual_source;
  SpecPtr algebra, dual;
  DualPairSpec pair;
  BicrossData bicross;
  StarTable star;
  double default_q = 0;  // z or kappa
  std::string default_q_text;
  std::vector<ClosedFlow> flows;  // one per K generator
  std::vector<NamedIntegral> integrals;
  // printed forms that are known not to be conserved
  std::vector<NamedIntegral> regressions;
  std::function<bool(const std::vector<double>& x, double q)> fixed_point;
  std::function<std::string(const std::vector<double>& x, double q)> stratum;
  // closed-form induced action of each L generator: value of l_j o Phi^t at the character a
  std::vector<std::function<double(double t, const std::vector<double>& a, double q)>> induced;
  // initial points inside every flow domain for |s| <= 0.5 at the default parameter
  std::vector<std::vector<double>> grid;

  std::vector<std::string> kcoords() const;
  std::vector<std::string> lcoords() const;
  std::vector<std::string> dual_kcoords() const;
};

const std::vector<std::string>& catalog_list();
// D, Z are the caps of the stored presentations
CatalogEntry catalog_get(const std::string& name, int D = 4, int Z = 8);

// parse an expression in the L coordinates of the entry
ExpPoly catalog_function(const CatalogEntry& e, const std::string& text);

}  // namespace bx
