#pragma once

#include <vector>

#include "bicross/expr.hpp"
#include "bicross/ncalg.hpp"
#include "bicross/report.hpp"
#include "bicross/specfile.hpp"

namespace bx {

// Right-left bicrossproduct data: U(k) acting on the right on the commutative
// algebra L, and k_i coacted on by a group-like dressing, k_i -> beta_i (x) k_i.
struct BicrossData {
  std::string name;
  SpecSource source;
  int D = 4, Z = 8;
  SpecPtr kspec;  // primitive generators, S(k) = -k
  SpecPtr lspec;
  // positions of the K and L generators in the full generator list
  std::vector<std::size_t> kpos, lpos;
  // action[j][i] = l_j <| k_i, in lspec
  std::vector<std::vector<NCElement>> action;
  std::vector<NCElement> beta;
  // parsed values, kept for the function-algebra view (nullptr = 0)
  std::vector<std::vector<AstPtr>> action_ast;
  std::vector<AstPtr> beta_ast;

  BicrossData at_caps(int D, int Z) const;
};

BicrossData load_bicross(const SpecSource& src, int D, int Z);

// l <| (k_{i1} k_{i2} ...), each primitive k acting as a derivation
NCElement action_extend(const BicrossData& data, const NCElement& l, const std::vector<std::size_t>& kword);
// linear extension to elements of kspec
NCElement action_by(const BicrossData& data, const NCElement& l, const NCElement& k);
// k <| for a kspec monomial, slots (lspec, kspec)
Tensor coaction(const BicrossData& data, const MultiIndex& k);

// lspec/kspec element -> element of a spec on the full generator list
NCElement embed_l(const BicrossData& data, const SpecPtr& full, const NCElement& l);
NCElement embed_k(const BicrossData& data, const SpecPtr& full, const NCElement& k);

// Presentation of K |><| L from the data alone.
SpecPtr build_bicross(const BicrossData& data);
// relations, coproduct, counit and antipode compared term by term
Report compare_presentations(const SpecPtr& built, const SpecPtr& entered);

// The five compatibility conditions, plus the group-like dressing and the
// comodule-coalgebra property of the extended coaction.
Report check_compatibility(const BicrossData& data, int d, int Z);

// Star structure: images of the generators, extended antilinearly and
// antimultiplicatively (coefficients are real).
struct StarTable {
  SpecPtr spec;
  std::vector<NCElement> image;
};

StarTable make_star(const SpecPtr& spec, const SpecSource& src);
NCElement star_apply(const StarTable& st, const NCElement& el);
// involution, antimultiplicativity, relations, coproduct, and (l <| k)* = l* <| S(k)*
Report check_star(const BicrossData& data, int d, int Z);

}  // namespace bx
