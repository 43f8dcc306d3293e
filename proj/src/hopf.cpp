#include "bicross/hopf.hpp"

#include <map>

#include "bicross/errors.hpp"

namespace bx {

namespace {

std::string label(const AlgebraSpec& s, const MultiIndex& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += s.gens[i].name;
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

Tensor generator_coproduct(const SpecPtr& spec, std::size_t g) {
  if (!spec->hopf || spec->coproduct.size() != spec->size()) throw PreconditionError("spec '" + spec->name + "' has no coproduct");
  return Tensor({spec, spec}, spec->coproduct[g]);
}

}  // namespace

Tensor coproduct_mono(const SpecPtr& spec, const MultiIndex& m) {
  std::lock_guard<std::recursive_mutex> lk(spec->mu);
  auto hit = spec->coproduct_cache.find(m);
  if (hit != spec->coproduct_cache.end()) return Tensor({spec, spec}, hit->second.first, hit->second.second);
  Tensor r = Tensor::one({spec, spec});
  if (!m.is_zero()) {
    std::size_t last = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) last = i;
    MultiIndex m2 = m;
    m2.add(last, -1);
    r = tensor_mul(coproduct_mono(spec, m2), generator_coproduct(spec, last));
  }
  spec->coproduct_cache.emplace(m, std::make_pair(r.terms(), r.truncated()));
  return r;
}

Tensor coproduct(const NCElement& el) {
  const SpecPtr& s = el.spec();
  Tensor r({s, s});
  for (const auto& [m, c] : el.terms()) r += coproduct_mono(s, m) * c;
  if (el.truncated()) r.mark_truncated();
  return r;
}

ParamSeries counit_mono(const AlgebraSpec& spec, const MultiIndex& m) {
  if (spec.counit.size() != spec.size()) throw PreconditionError("spec '" + spec.name + "' has no counit");
  ParamSeries r = spec.constant(1);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (unsigned p = 0; p < m[i]; ++p) r = (r * spec.counit[i]).truncate(spec.Z);
  return r;
}

ParamSeries counit(const NCElement& el) {
  ParamSeries r = el.spec()->zero();
  for (const auto& [m, c] : el.terms()) r += (c * counit_mono(*el.spec(), m)).truncate(el.spec()->Z);
  return r;
}

NCElement antipode_mono(const SpecPtr& spec, const MultiIndex& m) {
  if (spec->antipode.size() != spec->size()) throw PreconditionError("spec '" + spec->name + "' has no antipode");
  std::lock_guard<std::recursive_mutex> lk(spec->mu);
  auto hit = spec->antipode_cache.find(m);
  if (hit != spec->antipode_cache.end()) return NCElement(spec, hit->second.first, hit->second.second);
  NCElement r = NCElement::one(spec);
  if (!m.is_zero()) {
    std::size_t last = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) last = i;
    MultiIndex m2 = m;
    m2.add(last, -1);
    // S(m2 g) = S(g) S(m2)
    r = NCElement(spec, spec->antipode[last]) * antipode_mono(spec, m2);
  }
  spec->antipode_cache.emplace(m, std::make_pair(r.terms(), r.truncated()));
  return r;
}

NCElement antipode(const NCElement& el) {
  NCElement r(el.spec());
  for (const auto& [m, c] : el.terms()) r += antipode_mono(el.spec(), m) * c;
  return r;
}

// ---------------------------------------------------------------- tensor helpers

Tensor expand_slot(const Tensor& t, std::size_t slot, const std::function<Tensor(const MultiIndex&)>& f) {
  if (slot >= t.arity()) throw PreconditionError("expand_slot: slot out of range");
  std::vector<SpecPtr> slots;
  Tensor out;
  bool init = false;
  bool trunc = t.truncated();
  for (const auto& [k, c] : t.terms()) {
    Tensor img = f(k[slot]);
    trunc = trunc || img.truncated();
    if (!init) {
      slots.assign(t.slots().begin(), t.slots().begin() + slot);
      slots.insert(slots.end(), img.slots().begin(), img.slots().end());
      slots.insert(slots.end(), t.slots().begin() + slot + 1, t.slots().end());
      out = Tensor(slots);
      init = true;
    }
    for (const auto& [ik, ic] : img.terms()) {
      TKey nk(k.begin(), k.begin() + slot);
      nk.insert(nk.end(), ik.begin(), ik.end());
      nk.insert(nk.end(), k.begin() + slot + 1, k.end());
      out.add_term(nk, c * ic);
    }
  }
  if (!init) {
    // zero tensor: probe f on the unit monomial for the slot layout
    Tensor img = f(MultiIndex(t.slots()[slot]->size()));
    slots.assign(t.slots().begin(), t.slots().begin() + slot);
    slots.insert(slots.end(), img.slots().begin(), img.slots().end());
    slots.insert(slots.end(), t.slots().begin() + slot + 1, t.slots().end());
    out = Tensor(slots);
  }
  if (trunc) out.mark_truncated();
  return out;
}

Tensor map_slot(const Tensor& t, std::size_t slot, const std::function<NCElement(const MultiIndex&)>& f) {
  return expand_slot(t, slot, [&](const MultiIndex& m) { return from_element(f(m)); });
}

Tensor counit_slot(const Tensor& t, std::size_t slot) {
  if (slot >= t.arity() || t.arity() < 2) throw PreconditionError("counit_slot: bad slot");
  std::vector<SpecPtr> slots = t.slots();
  const AlgebraSpec& s = *slots[slot];
  slots.erase(slots.begin() + slot);
  Tensor out(slots);
  for (const auto& [k, c] : t.terms()) {
    TKey nk = k;
    nk.erase(nk.begin() + slot);
    out.add_term(nk, c * counit_mono(s, k[slot]));
  }
  if (t.truncated()) out.mark_truncated();
  return out;
}

Tensor multiply_slots(const Tensor& t) {
  if (t.arity() < 2 || t.slots()[0] != t.slots()[1]) throw PreconditionError("multiply_slots: slots 0 and 1 differ");
  const SpecPtr& s = t.slots()[0];
  std::vector<SpecPtr> slots(t.slots().begin() + 1, t.slots().end());
  Tensor out(slots);
  bool trunc = t.truncated();
  for (const auto& [k, c] : t.terms()) {
    Terms p = s->mul_mono(k[0], k[1], trunc);
    for (const auto& [pm, pc] : p) {
      TKey nk(k.begin() + 1, k.end());
      nk[0] = pm;
      out.add_term(nk, c * pc);
    }
  }
  if (trunc) out.mark_truncated();
  return out;
}

NCElement to_element(const Tensor& t) {
  if (t.arity() != 1) throw PreconditionError("to_element: tensor has more than one slot");
  NCElement r(t.slots()[0]);
  for (const auto& [k, c] : t.terms()) r.add_term(k[0], c);
  if (t.truncated()) r = r + NCElement(t.slots()[0], {}, true);
  return r;
}

Tensor from_element(const NCElement& el) {
  Tensor r({el.spec()});
  for (const auto& [m, c] : el.terms()) r.add_term({m}, c);
  if (el.truncated()) r.mark_truncated();
  return r;
}

// ---------------------------------------------------------------- axioms

namespace {

struct AxiomRun {
  Report report;
  // windowed left-hand sides, for the stability comparison
  std::map<std::string, std::string> values;
};

struct Axiom {
  std::string name;
  std::optional<std::string> cx;
  void note(const std::string& where, const std::string& diff) {
    if (!cx) cx = where + ": difference " + clip(diff);
  }
};

AxiomRun run_axioms(const SpecPtr& W, int d, int Z) {
  AxiomRun run;
  const std::size_t n = W->size();
  auto mono = [&](const MultiIndex& m) { return NCElement::monomial(W, m, W->constant(1)); };
  auto delta = [&](const MultiIndex& m) { return coproduct_mono(W, m); };
  auto S = [&](const MultiIndex& m) { return antipode_mono(W, m); };

  Axiom coass{"coassociativity", {}}, cl{"counit-left", {}}, cr{"counit-right", {}};
  Axiom sl{"antipode-left", {}}, sr{"antipode-right", {}};
  Axiom dr{"relations-coproduct", {}}, er{"relations-counit", {}}, srl{"relations-antipode", {}};

  for (const auto& m : indices_up_to(n, static_cast<unsigned>(d))) {
    std::string where = label(*W, m);
    Tensor dm = delta(m);

    Tensor lhs = expand_slot(dm, 0, delta).window(d, Z);
    Tensor rhs = expand_slot(dm, 1, delta).window(d, Z);
    run.values["coass " + where] = lhs.str();
    if (lhs != rhs) coass.note(where, (lhs - rhs).str());

    NCElement me = mono(m).window(d, Z);
    NCElement el = to_element(counit_slot(dm, 0)).window(d, Z);
    NCElement er2 = to_element(counit_slot(dm, 1)).window(d, Z);
    run.values["counit " + where] = el.str() + " | " + er2.str();
    if (el != me) cl.note(where, (el - me).str());
    if (er2 != me) cr.note(where, (er2 - me).str());

    NCElement unit = NCElement::scalar(W, counit_mono(*W, m)).window(d, Z);
    NCElement al = to_element(multiply_slots(map_slot(dm, 0, S))).window(d, Z);
    NCElement ar = to_element(multiply_slots(map_slot(dm, 1, S))).window(d, Z);
    run.values["antipode " + where] = al.str() + " | " + ar.str();
    if (al != unit) sl.note(where, (al - unit).str());
    if (ar != unit) sr.note(where, (ar - unit).str());
  }

  // [g_j, g_i] - rule, pushed through each structure map without normal ordering the left side
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      std::string where = "[" + W->gens[j].name + ", " + W->gens[i].name + "]";
      MultiIndex ej = MultiIndex::unit(n, j), ei = MultiIndex::unit(n, i);
      const Terms& rule = W->rel(j, i);

      Tensor dl = tensor_mul(delta(ej), delta(ei)) - tensor_mul(delta(ei), delta(ej));
      Tensor drule({W, W});
      for (const auto& [rm, rc] : rule) drule += delta(rm) * rc;
      Tensor dd = (dl - drule).window(d, Z);
      run.values["rel-delta " + where] = dl.window(d, Z).str();
      if (!dd.is_zero()) dr.note(where, dd.str());

      ParamSeries ediff = counit_mono(*W, ej) * counit_mono(*W, ei) - counit_mono(*W, ei) * counit_mono(*W, ej);
      for (const auto& [rm, rc] : rule) ediff -= rc * counit_mono(*W, rm);
      ediff = ediff.window(Z);
      if (!ediff.is_zero()) er.note(where, ediff.str());

      NCElement sl2 = S(ei) * S(ej) - S(ej) * S(ei);
      NCElement srule(W);
      for (const auto& [rm, rc] : rule) srule += S(rm) * rc;
      NCElement sd = (sl2 - srule).window(d, Z);
      run.values["rel-antipode " + where] = sl2.window(d, Z).str();
      if (!sd.is_zero()) srl.note(where, sd.str());
    }
  }

  for (Axiom* a : {&coass, &cl, &cr, &sl, &sr, &dr, &er, &srl}) run.report.add_result(a->name, a->cx, d, Z);
  return run;
}

}  // namespace

Report check_hopf_axioms(const SpecPtr& spec, const HopfCheckOptions& opt) {
  if (opt.d < 0 || opt.Z < 0) throw PreconditionError("check_hopf_axioms: negative caps");
  if (!spec->hopf) throw PreconditionError("spec '" + spec->name + "' carries no Hopf structure");
  int Dw = opt.d + opt.Z + opt.slack;
  AxiomRun a = run_axioms(spec->at_caps(Dw, opt.Z), opt.d, opt.Z);
  Report r;
  r.title = "hopf axioms: " + spec->name;
  r.entries = a.report.entries;
  if (opt.stability) {
    AxiomRun b = run_axioms(spec->at_caps(Dw + 2, opt.Z), opt.d, opt.Z);
    std::optional<std::string> cx;
    for (const auto& [k, v] : a.values) {
      auto it = b.values.find(k);
      if (it == b.values.end() || it->second != v) {
        cx = k + " changes between working degrees " + std::to_string(Dw) + " and " + std::to_string(Dw + 2);
        break;
      }
    }
    r.add_result("window-stability", cx, opt.d, opt.Z).detail = json{{"workingDegree", Dw}};
  }
  return r;
}

Report check_hopf_axioms(const SpecPtr& spec, int d, int Z) {
  HopfCheckOptions o;
  o.d = d;
  o.Z = Z;
  return check_hopf_axioms(spec, o);
}

}  // namespace bx
