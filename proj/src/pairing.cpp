#include "bicross/pairing.hpp"

#include "bicross/errors.hpp"
#include "bicross/hopf.hpp"

namespace bx {

namespace {

int pair_top(const DualPairSpec& dp) { return std::min(dp.primal->Z, dp.dual->Z); }

std::string mono_label(const SpecPtr& s, const MultiIndex& m) {
  return NCElement::monomial(s, m, s->constant(1)).str();
}

}  // namespace

DualPairSpec make_dual_pair(SpecPtr primal, SpecPtr dual) {
  if (!primal || !dual) throw PreconditionError("dual pair: missing spec");
  if (primal->size() != dual->size()) throw SpecError("dual pair: generator counts differ");
  for (std::size_t i = 0; i < primal->size(); ++i)
    if (primal->gens[i].sector != dual->gens[i].sector)
      throw SpecError("dual pair: sector of '" + primal->gens[i].name + "' does not match '" + dual->gens[i].name + "'");
  if (!(*primal->param == *dual->param)) throw SpecError("dual pair: parameters differ");
  return {std::move(primal), std::move(dual)};
}

ParamSeries pair(const DualPairSpec& dp, const NCElement& h, const NCElement& eta) {
  if (h.spec()->size() != dp.primal->size() || eta.spec()->size() != dp.dual->size())
    throw PreconditionError("pair: element does not belong to the pair");
  int top = pair_top(dp);
  ParamSeries r(dp.primal->param, top);
  const Terms& small = h.terms().size() <= eta.terms().size() ? h.terms() : eta.terms();
  const Terms& big = &small == &h.terms() ? eta.terms() : h.terms();
  for (const auto& [m, c] : small) {
    auto it = big.find(m);
    if (it == big.end()) continue;
    r += (c * it->second * mpq_class(mfactorial(m))).truncate(top);
  }
  return r;
}

ParamSeries pair(const DualPairSpec& dp, const Tensor& h, const Tensor& eta) {
  if (h.arity() != eta.arity()) throw PreconditionError("pair: tensor arities differ");
  int top = pair_top(dp);
  ParamSeries r(dp.primal->param, top);
  for (const auto& [k, c] : h.terms()) {
    auto it = eta.terms().find(k);
    if (it == eta.terms().end()) continue;
    mpz_class w = 1;
    for (const auto& m : k) w *= mfactorial(m);
    r += (c * it->second * mpq_class(w)).truncate(top);
  }
  return r;
}

Report check_pairing_axioms(const DualPairSpec& dp0, const PairingCheckOptions& opt) {
  if (!dp0.primal->hopf || !dp0.dual->hopf) throw PreconditionError("pairing check needs Hopf structure on both sides");
  const int d = opt.degree, Z = opt.Z;
  const int Dw = 2 * d + Z + 1;
  DualPairSpec dp{dp0.primal->at_caps(Dw, Z), dp0.dual->at_caps(Dw, Z)};
  const SpecPtr &P = dp.primal, &Q = dp.dual;
  auto small = indices_up_to(P->size(), static_cast<unsigned>(d));
  auto large = indices_up_to(P->size(), static_cast<unsigned>(2 * d));
  auto one = [](const SpecPtr& s, const MultiIndex& m) { return NCElement::monomial(s, m, s->constant(1)); };

  Report r;
  r.title = "pairing axioms: " + P->name + " / " + Q->name;

  std::optional<std::string> cx;
  // <h, eta eta'> = <Dh, eta (x) eta'>
  for (const auto& mh : large) {
    Tensor dh = coproduct_mono(P, mh);
    for (const auto& a : small)
      for (const auto& b : small) {
        ParamSeries lhs = pair(dp, one(P, mh), one(Q, a) * one(Q, b)).window(Z);
        ParamSeries rhs = pair(dp, dh, Tensor::pure({one(Q, a), one(Q, b)})).window(Z);
        if (lhs != rhs && !cx)
          cx = "h=" + mono_label(P, mh) + ", eta=" + mono_label(Q, a) + ", eta'=" + mono_label(Q, b) + ": " +
               lhs.str() + " vs " + rhs.str();
      }
  }
  r.add_result("product-coproduct", cx, d, Z);

  cx.reset();
  for (const auto& me : large) {
    Tensor de = coproduct_mono(Q, me);
    for (const auto& a : small)
      for (const auto& b : small) {
        ParamSeries lhs = pair(dp, one(P, a) * one(P, b), one(Q, me)).window(Z);
        ParamSeries rhs = pair(dp, Tensor::pure({one(P, a), one(P, b)}), de).window(Z);
        if (lhs != rhs && !cx)
          cx = "h=" + mono_label(P, a) + ", h'=" + mono_label(P, b) + ", eta=" + mono_label(Q, me) + ": " + lhs.str() +
               " vs " + rhs.str();
      }
  }
  r.add_result("coproduct-product", cx, d, Z);

  cx.reset();
  for (const auto& m : large) {
    ParamSeries u1 = pair(dp, NCElement::one(P), one(Q, m)).window(Z);
    ParamSeries e1 = counit_mono(*Q, m).window(Z);
    ParamSeries u2 = pair(dp, one(P, m), NCElement::one(Q)).window(Z);
    ParamSeries e2 = counit_mono(*P, m).window(Z);
    if (u1 != e1 && !cx) cx = "<1, " + mono_label(Q, m) + "> = " + u1.str() + " but counit is " + e1.str();
    if (u2 != e2 && !cx) cx = "<" + mono_label(P, m) + ", 1> = " + u2.str() + " but counit is " + e2.str();
  }
  r.add_result("unit-counit", cx, d, Z);

  cx.reset();
  std::vector<NCElement> sp, sq;
  for (const auto& m : large) {
    sp.push_back(antipode_mono(P, m));
    sq.push_back(antipode_mono(Q, m));
  }
  for (std::size_t i = 0; i < large.size(); ++i)
    for (std::size_t j = 0; j < large.size(); ++j) {
      ParamSeries lhs = pair(dp, one(P, large[i]), sq[j]).window(Z);
      ParamSeries rhs = pair(dp, sp[i], one(Q, large[j])).window(Z);
      if (lhs != rhs && !cx)
        cx = "h=" + mono_label(P, large[i]) + ", eta=" + mono_label(Q, large[j]) + ": " + lhs.str() + " vs " + rhs.str();
    }
  r.add_result("antipode", cx, d, Z);
  return r;
}

Report check_product_pairing(const DualPairSpec& dp, int degree, int Z) {
  const SpecPtr &P = dp.primal, &Q = dp.dual;
  const std::size_t n = P->size();
  Report r;
  r.title = "product pairing: " + P->name;
  std::vector<MultiIndex> ks, ls;
  for (const auto& m : indices_up_to(n, static_cast<unsigned>(degree))) {
    bool k_only = true, l_only = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] == 0) continue;
      if (P->gens[i].sector == Sector::K) l_only = false;
      else k_only = false;
    }
    if (k_only) ks.push_back(m);
    if (l_only) ls.push_back(m);
  }
  auto one = [](const SpecPtr& s, const MultiIndex& m) { return NCElement::monomial(s, m, s->constant(1)); };
  std::optional<std::string> cx;
  for (const auto& k : ks)
    for (const auto& l : ls)
      for (const auto& kap : ks)
        for (const auto& lam : ls) {
          ParamSeries lhs = pair(dp, one(P, k) * one(P, l), one(Q, kap) * one(Q, lam)).window(Z);
          ParamSeries rhs = (pair(dp, one(P, k), one(Q, kap)) * pair(dp, one(P, l), one(Q, lam))).window(Z);
          if (lhs != rhs && !cx)
            cx = "<" + mono_label(P, k) + " " + mono_label(P, l) + ", " + mono_label(Q, kap) + " " +
                 mono_label(Q, lam) + ">: " + lhs.str() + " vs " + rhs.str();
        }
  r.add_result("factored-pairing", cx, degree, Z);
  return r;
}

BasisMatrix adjoint_map(const DualPairSpec& dp, const std::function<NCElement(const NCElement&)>& f, int probe) {
  BasisMatrix out;
  out.basis = indices_up_to(dp.primal->size(), static_cast<unsigned>(probe));
  const std::size_t n = out.basis.size();
  out.a.assign(n, std::vector<ParamSeries>(n, ParamSeries(dp.primal->param, pair_top(dp))));
  for (std::size_t i = 0; i < n; ++i) {
    NCElement img = f(NCElement::monomial(dp.primal, out.basis[i], dp.primal->constant(1)));
    if (img.truncated()) throw PreconditionError("adjoint_map: image exceeds the degree cap");
    mpq_class w(mfactorial(out.basis[i]));
    for (std::size_t j = 0; j < n; ++j) {
      // <h_i, f^dagger eta_j> = <f h_i, eta_j>, and <h_i, eta_m> = i! delta
      ParamSeries v = pair(dp, img, NCElement::monomial(dp.dual, out.basis[j], dp.dual->constant(1)));
      out.a[i][j] = v * (1 / w);
    }
  }
  return out;
}

BasisMatrix gram_matrix(const DualPairSpec& dp, int degree) {
  BasisMatrix out;
  out.basis = indices_up_to(dp.primal->size(), static_cast<unsigned>(degree));
  const std::size_t n = out.basis.size();
  out.a.assign(n, std::vector<ParamSeries>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.a[i][j] = pair(dp, NCElement::monomial(dp.primal, out.basis[i], dp.primal->constant(1)),
                         NCElement::monomial(dp.dual, out.basis[j], dp.dual->constant(1)));
  return out;
}

}  // namespace bx
