#pragma once

#include <functional>

#include "bicross/ncalg.hpp"
#include "bicross/report.hpp"

namespace bx {

// Primal and dual presentations whose i-th generators are dual to each other:
// <m, m'> = m! when m == m', else 0.
struct DualPairSpec {
  SpecPtr primal;
  SpecPtr dual;
};

// Checks generator counts, sectors and parameters.
DualPairSpec make_dual_pair(SpecPtr primal, SpecPtr dual);

ParamSeries pair(const DualPairSpec& dp, const NCElement& h, const NCElement& eta);
// slotwise product pairing of tensors (primal slots against dual slots)
ParamSeries pair(const DualPairSpec& dp, const Tensor& h, const Tensor& eta);

struct PairingCheckOptions {
  int degree = 2;  // sample monomials of degree <= degree in each slot
  int Z = 4;
};

// <h, eta eta'> = <Dh, eta (x) eta'>, <h h', eta> = <h (x) h', D'eta>,
// unit/counit, antipode; exhaustive over the sample degree.
Report check_pairing_axioms(const DualPairSpec& dp, const PairingCheckOptions& opt);

// <k l, kappa lambda> = <k, kappa><l, lambda> on sector-factored monomials
Report check_product_pairing(const DualPairSpec& dp, int degree, int Z);

// Matrix over the monomials of degree <= degree. For adjoint maps,
// f^dagger(eta_n) = sum_m a[m][n] eta_m.
struct BasisMatrix {
  std::vector<MultiIndex> basis;
  std::vector<std::vector<ParamSeries>> a;
};

BasisMatrix adjoint_map(const DualPairSpec& dp, const std::function<NCElement(const NCElement&)>& f, int probe);
// G[m][n] = <h_m, eta_n>
BasisMatrix gram_matrix(const DualPairSpec& dp, int degree);

}  // namespace bx
