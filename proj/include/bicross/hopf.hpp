#pragma once

#include <functional>

#include "bicross/ncalg.hpp"
#include "bicross/report.hpp"

namespace bx {

// Multiplicative extension of the generator coproducts.
Tensor coproduct(const NCElement& el);
Tensor coproduct_mono(const SpecPtr& spec, const MultiIndex& m);
ParamSeries counit(const NCElement& el);
ParamSeries counit_mono(const AlgebraSpec& spec, const MultiIndex& m);
// Anti-multiplicative extension of the generator antipodes.
NCElement antipode(const NCElement& el);
NCElement antipode_mono(const SpecPtr& spec, const MultiIndex& m);

// Tensor helpers.
// Replaces slot `slot` by the tensor f(monomial); the slots of f are spliced in.
Tensor expand_slot(const Tensor& t, std::size_t slot, const std::function<Tensor(const MultiIndex&)>& f);
// Applies a linear map to one slot, keeping the slot count.
Tensor map_slot(const Tensor& t, std::size_t slot, const std::function<NCElement(const MultiIndex&)>& f);
// Applies the counit to one slot, dropping it.
Tensor counit_slot(const Tensor& t, std::size_t slot);
// Multiplies slots 0 and 1 (same spec) into one.
Tensor multiply_slots(const Tensor& t);
// 1-slot tensor <-> element
NCElement to_element(const Tensor& t);
Tensor from_element(const NCElement& el);

struct HopfCheckOptions {
  int d = 3;
  int Z = 4;
  // extra working degree beyond d + Z; the check is repeated at +2 to confirm stability
  int slack = 1;
  bool stability = true;
};

// All Hopf axioms on monomials of degree <= d, compared in the exact window.
Report check_hopf_axioms(const SpecPtr& spec, const HopfCheckOptions& opt);
Report check_hopf_axioms(const SpecPtr& spec, int d, int Z);

}  // namespace bx
