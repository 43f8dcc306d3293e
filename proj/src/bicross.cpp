#include "bicross/bicross.hpp"

#include "bicross/errors.hpp"
#include "bicross/hopf.hpp"

namespace bx {

namespace {

bool in(const std::vector<std::string>& names, const std::string& s) {
  for (const auto& n : names)
    if (n == s) return true;
  return false;
}

std::pair<std::string, std::string> split_key(const std::string& key) {
  auto c = key.find(',');
  return {key.substr(0, c), key.substr(c + 1)};
}

SpecSource sub_source(const SpecSource& src, Sector sec) {
  SpecSource s;
  s.origin = src.origin;
  s.name = src.name + (sec == Sector::K ? "-K" : "-L");
  s.param = src.param;
  s.inverse = src.inverse;
  s.bottom = src.bottom;
  s.acting = src.acting;
  std::vector<std::string> names;
  for (const auto& g : src.gens)
    if (g.sector == sec) {
      s.gens.push_back(g);
      names.push_back(g.name);
    }
  for (const auto& e : src.relations) {
    auto [a, b] = split_key(e.key);
    if (in(names, a) && in(names, b)) s.relations.push_back(e);
  }
  if (sec == Sector::K) {
    for (const auto& n : names) {
      s.coproduct.push_back({n, n + " @ 1 + 1 @ " + n, 0});
      s.counit.push_back({n, "0", 0});
      s.antipode.push_back({n, "-" + n, 0});
    }
  } else {
    for (const auto& e : src.coproduct)
      if (in(names, e.key)) s.coproduct.push_back(e);
    for (const auto& e : src.counit)
      if (in(names, e.key)) s.counit.push_back(e);
    for (const auto& e : src.antipode)
      if (in(names, e.key)) s.antipode.push_back(e);
  }
  return s;
}

MultiIndex lift(const std::vector<std::size_t>& pos, std::size_t n, const MultiIndex& m) {
  MultiIndex r(n);
  for (std::size_t i = 0; i < pos.size(); ++i) r.set(pos[i], m[i]);
  return r;
}

// full element with generators of one sector only -> sector spec
NCElement restrict_to(const std::vector<std::size_t>& pos, const SpecPtr& target, const NCElement& el) {
  NCElement r(target);
  for (const auto& [m, c] : el.terms()) {
    MultiIndex sm(pos.size());
    unsigned seen = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      sm.set(i, m[pos[i]]);
      seen += m[pos[i]];
    }
    if (seen != m.total()) throw PreconditionError("element leaves the sector of '" + target->name + "'");
    r.add_term(sm, c);
  }
  return r;
}

NCElement mono(const SpecPtr& s, const MultiIndex& m) { return NCElement::monomial(s, m, s->constant(1)); }

// derivation of a monomial of lspec by a primitive generator: sum over letters
NCElement derive_mono(const BicrossData& data, const MultiIndex& m, std::size_t i) {
  const SpecPtr& L = data.lspec;
  std::vector<std::size_t> word;
  for (std::size_t g = 0; g < m.size(); ++g)
    for (unsigned p = 0; p < m[g]; ++p) word.push_back(g);
  NCElement out(L);
  for (std::size_t at = 0; at < word.size(); ++at) {
    NCElement t = NCElement::one(L);
    for (std::size_t q = 0; q < word.size(); ++q)
      t = t * (q == at ? data.action[word[q]][i] : NCElement::generator(L, word[q]));
    out += t;
  }
  return out;
}

}  // namespace

BicrossData load_bicross(const SpecSource& src, int D, int Z) {
  if (src.action.empty() && src.coaction.empty()) throw SpecError(src.origin + ": no [action]/[coaction] data");
  BicrossData d;
  d.name = src.name;
  d.source = src;
  d.D = D;
  d.Z = Z;
  bool seen_l = false;
  for (std::size_t g = 0; g < src.gens.size(); ++g) {
    if (src.gens[g].sector == Sector::K) {
      if (seen_l) throw SpecError(src.origin + ": bicross data needs the K generators listed first");
      d.kpos.push_back(g);
    } else {
      seen_l = true;
      d.lpos.push_back(g);
    }
  }
  SpecSource ks = sub_source(src, Sector::K), ls = sub_source(src, Sector::L);
  try {
    d.kspec = build_spec(ks, D, Z);
    d.lspec = build_spec(ls, D, Z);
  } catch (const ParseError& e) {
    throw SpecError(src.origin + ": sector data is not closed: " + e.what());
  }
  SpecPtr lwork = build_spec(ls, D, Z + src.bottom);
  SymbolTable ltab = ls.symbols();

  auto eval_l = [&](const SpecSource::Entry& e, AstPtr& ast) {
    try {
      ast = parse(e.text, ltab);
      NCElement v = eval_element(lwork, ast);
      for (const auto& [m, c] : v.terms())
        if (!c.truncate(Z).is_zero() && c.min_degree() < 0)
          throw SpecError(src.origin + ":" + std::to_string(e.line) + ": uncancelled parameter pole");
      return v.rehome(d.lspec);
    } catch (const ParseError& err) {
      throw SpecError(src.origin + ":" + std::to_string(e.line) + ": " + err.what());
    }
  };

  const std::size_t nk = d.kpos.size(), nl = d.lpos.size();
  d.action.assign(nl, std::vector<NCElement>(nk, NCElement(d.lspec)));
  d.action_ast.assign(nl, std::vector<AstPtr>(nk));
  for (const auto& e : src.action) {
    auto [l, k] = split_key(e.key);
    int li = d.lspec->index(l), ki = d.kspec->index(k);
    if (li < 0 || ki < 0) throw SpecError(src.origin + ":" + std::to_string(e.line) + ": action must read l <| k");
    d.action[li][ki] = eval_l(e, d.action_ast[li][ki]);
  }
  d.beta.assign(nk, NCElement::one(d.lspec));
  d.beta_ast.assign(nk, nullptr);
  for (const auto& e : src.coaction) {
    int ki = d.kspec->index(e.key);
    if (ki < 0) throw SpecError(src.origin + ":" + std::to_string(e.line) + ": coaction of an unknown K generator");
    d.beta[ki] = eval_l(e, d.beta_ast[ki]);
  }
  return d;
}

BicrossData BicrossData::at_caps(int D_, int Z_) const { return load_bicross(source, D_, Z_); }

NCElement action_extend(const BicrossData& data, const NCElement& l, const std::vector<std::size_t>& kword) {
  NCElement cur = l;
  for (std::size_t i : kword) {
    if (i >= data.kpos.size()) throw PreconditionError("action_extend: K index out of range");
    NCElement next(data.lspec);
    for (const auto& [m, c] : cur.terms()) next += derive_mono(data, m, i) * c;
    cur = next;
  }
  return cur;
}

NCElement action_by(const BicrossData& data, const NCElement& l, const NCElement& k) {
  NCElement out(data.lspec);
  for (const auto& [m, c] : k.terms()) {
    std::vector<std::size_t> word;
    for (std::size_t g = 0; g < m.size(); ++g)
      for (unsigned p = 0; p < m[g]; ++p) word.push_back(g);
    out += action_extend(data, l, word) * c;
  }
  return out;
}

Tensor coaction(const BicrossData& data, const MultiIndex& k) {
  const SpecPtr &L = data.lspec, &K = data.kspec;
  if (k.size() != K->size()) throw PreconditionError("coaction: monomial is not in the K sector");
  Tensor cur = Tensor::one({L, K});
  std::vector<std::size_t> word;
  for (std::size_t g = 0; g < k.size(); ++g)
    for (unsigned p = 0; p < k[g]; ++p) word.push_back(g);
  // (m k_i) <| = (m^(1) <| k_i) (x) m^(2) + m^(1) beta_i (x) m^(2) k_i
  for (std::size_t i : word) {
    Tensor next({L, K});
    NCElement ki = NCElement::generator(K, i);
    for (const auto& [key, c] : cur.terms()) {
      NCElement a = mono(L, key[0]), b = mono(K, key[1]);
      next += Tensor::pure({action_extend(data, a, {i}), b}) * c;
      next += Tensor::pure({a * data.beta[i], b * ki}) * c;
    }
    cur = next;
  }
  return cur;
}

NCElement embed_l(const BicrossData& data, const SpecPtr& full, const NCElement& l) {
  NCElement r(full);
  for (const auto& [m, c] : l.terms()) r.add_term(lift(data.lpos, full->size(), m), c);
  return r;
}

NCElement embed_k(const BicrossData& data, const SpecPtr& full, const NCElement& k) {
  NCElement r(full);
  for (const auto& [m, c] : k.terms()) r.add_term(lift(data.kpos, full->size(), m), c);
  return r;
}

SpecPtr build_bicross(const BicrossData& data) {
  const SpecSource& src = data.source;
  auto H = make_spec(src.name, src.param_info(), src.gens, data.D, data.Z);
  H->acting = src.acting;
  const std::size_t n = src.gens.size();
  SpecPtr h = H;
  auto lift_terms = [&](const std::vector<std::size_t>& pos, const Terms& t) {
    Terms r;
    for (const auto& [m, c] : t) r.emplace(lift(pos, n, m), c);
    return r;
  };
  for (std::size_t j = 0; j < data.kpos.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) H->rule[data.kpos[j]][data.kpos[i]] = lift_terms(data.kpos, data.kspec->rel(j, i));
  for (std::size_t j = 0; j < data.lpos.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) H->rule[data.lpos[j]][data.lpos[i]] = lift_terms(data.lpos, data.lspec->rel(j, i));
  // [l, k] = l <| k for primitive k
  for (std::size_t j = 0; j < data.lpos.size(); ++j)
    for (std::size_t i = 0; i < data.kpos.size(); ++i)
      H->rule[data.lpos[j]][data.kpos[i]] = lift_terms(data.lpos, data.action[j][i].terms());
  H->check_admissible();

  H->hopf = true;
  H->coproduct.assign(n, {});
  H->counit.assign(n, H->zero());
  H->antipode.assign(n, {});
  MultiIndex zero(n);
  for (std::size_t i = 0; i < data.kpos.size(); ++i) {
    MultiIndex e = MultiIndex::unit(n, data.kpos[i]);
    Tensor t({h, h});
    t.add_term({e, zero}, H->constant(1));
    for (const auto& [m, c] : data.beta[i].terms()) t.add_term({lift(data.lpos, n, m), e}, c);
    H->coproduct[data.kpos[i]] = t.terms();
    H->counit[data.kpos[i]] = data.kspec->counit[i];
    // S(k) = -S(beta) k
    NCElement s = -(embed_l(data, h, antipode(data.beta[i])) * NCElement::generator(h, data.kpos[i]));
    H->antipode[data.kpos[i]] = s.terms();
  }
  for (std::size_t j = 0; j < data.lpos.size(); ++j) {
    Tensor t({h, h});
    for (const auto& [k, c] : data.lspec->coproduct[j])
      t.add_term({lift(data.lpos, n, k[0]), lift(data.lpos, n, k[1])}, c);
    H->coproduct[data.lpos[j]] = t.terms();
    H->counit[data.lpos[j]] = data.lspec->counit[j];
    H->antipode[data.lpos[j]] = lift_terms(data.lpos, data.lspec->antipode[j]);
  }
  H->clear_caches();
  SpecSource copy = src;
  H->rebuild = [copy](int D, int Z) { return build_bicross(load_bicross(copy, D, Z)); };
  return H;
}

Report compare_presentations(const SpecPtr& a, const SpecPtr& b) {
  Report r;
  r.title = "reconstruction: " + b->name;
  if (a->size() != b->size()) throw PreconditionError("compare_presentations: generator counts differ");
  for (std::size_t g = 0; g < a->size(); ++g)
    if (a->gens[g].name != b->gens[g].name) throw PreconditionError("compare_presentations: generator lists differ");
  const std::size_t n = a->size();
  std::optional<std::string> cx;
  for (std::size_t j = 0; j < n && !cx; ++j)
    for (std::size_t i = 0; i < j && !cx; ++i)
      if (a->rel(j, i) != b->rel(j, i))
        cx = "[" + a->gens[j].name + ", " + a->gens[i].name + "]: built " + NCElement(a, a->rel(j, i)).str() +
             ", entered " + NCElement(b, b->rel(j, i)).str();
  r.add_result("relations", cx, a->D, a->Z);
  cx.reset();
  for (std::size_t g = 0; g < n && !cx; ++g)
    if (a->coproduct[g] != b->coproduct[g])
      cx = a->gens[g].name + ": built " + clip(Tensor({a, a}, a->coproduct[g]).str()) + ", entered " +
           clip(Tensor({b, b}, b->coproduct[g]).str());
  r.add_result("coproduct", cx, a->D, a->Z);
  cx.reset();
  for (std::size_t g = 0; g < n && !cx; ++g)
    if (a->counit[g] != b->counit[g]) cx = a->gens[g].name + ": built " + a->counit[g].str() + ", entered " + b->counit[g].str();
  r.add_result("counit", cx, a->D, a->Z);
  cx.reset();
  for (std::size_t g = 0; g < n && !cx; ++g)
    if (a->antipode[g] != b->antipode[g])
      cx = a->gens[g].name + ": built " + clip(NCElement(a, a->antipode[g]).str()) + ", entered " +
           clip(NCElement(b, b->antipode[g]).str());
  r.add_result("antipode", cx, a->D, a->Z);
  return r;
}

// ---------------------------------------------------------------- compatibility

namespace {

struct Probe {
  std::string name;
  std::optional<std::string> cx;
  void note(const std::string& where, const std::string& diff) {
    if (!cx) cx = where + ": difference " + clip(diff);
  }
};

std::string label(const SpecPtr& s, const MultiIndex& m) { return NCElement::monomial(s, m, s->constant(1)).str(); }

struct CompatRun {
  std::vector<Probe> probes;
  std::map<std::string, std::string> values;
};

CompatRun run_compat(const BicrossData& data, int d, int Z) {
  const SpecPtr &L = data.lspec, &K = data.kspec;
  auto ls = indices_up_to(L->size(), static_cast<unsigned>(d));
  auto ks = indices_up_to(K->size(), static_cast<unsigned>(d));
  CompatRun run;
  Probe eps{"counit-action", {}}, del{"coproduct-action", {}}, unit{"coaction-unit", {}},
      prod{"coaction-product", {}}, mix{"action-coaction", {}}, grp{"grouplike-dressing", {}},
      rel{"action-relations", {}};

  std::map<MultiIndex, Tensor> co;
  for (const auto& k : ks) co.emplace(k, coaction(data, k));
  auto act = [&](const NCElement& l, const MultiIndex& k) { return action_by(data, l, mono(K, k)); };

  for (const auto& l : ls) {
    NCElement lm = mono(L, l);
    Tensor dl = coproduct_mono(L, l);
    for (const auto& k : ks) {
      std::string where = "l=" + label(L, l) + ", k=" + label(K, k);
      NCElement lk = act(lm, k);
      // 1. eps(l <| k) = eps(l) eps(k)
      ParamSeries e1 = counit(lk).window(Z), e2 = (counit_mono(*L, l) * counit_mono(*K, k)).window(Z);
      if (e1 != e2) eps.note(where, (e1 - e2).str());

      // 2. D(l <| k) = (l1 <| k1) k2^(1) (x) l2 <| k2^(2)
      Tensor lhs = coproduct(lk).window(d, Z);
      Tensor rhs({L, L});
      Tensor dk = coproduct_mono(K, k);
      for (const auto& [kk, kc] : dk.terms()) {
        Tensor c2 = coaction(data, kk[1]);
        for (const auto& [lk2, lc] : dl.terms()) {
          NCElement a = act(mono(L, lk2[0]), kk[0]);
          for (const auto& [ck, cc] : c2.terms())
            rhs += Tensor::pure({a * mono(L, ck[0]), act(mono(L, lk2[1]), ck[1])}) * (kc * lc * cc);
        }
      }
      rhs = rhs.window(d, Z);
      run.values["delta " + where] = lhs.str();
      if (lhs != rhs) del.note(where, (lhs - rhs).str());

      // 5. k1^(1) (l <| k2) (x) k1^(2) = (l <| k1) k2^(1) (x) k2^(2)
      Tensor m1({L, K}), m2({L, K});
      for (const auto& [kk, kc] : dk.terms()) {
        Tensor c1 = coaction(data, kk[0]);
        NCElement lk2 = act(lm, kk[1]);
        for (const auto& [ck, cc] : c1.terms()) m1 += Tensor::pure({mono(L, ck[0]) * lk2, mono(K, ck[1])}) * (kc * cc);
        Tensor c2 = coaction(data, kk[1]);
        NCElement lk1 = act(lm, kk[0]);
        for (const auto& [ck, cc] : c2.terms()) m2 += Tensor::pure({lk1 * mono(L, ck[0]), mono(K, ck[1])}) * (kc * cc);
      }
      m1 = m1.window(d, Z);
      m2 = m2.window(d, Z);
      run.values["mix " + where] = m1.str();
      if (m1 != m2) mix.note(where, (m1 - m2).str());
    }
  }

  // 3. 1 <| = 1 (x) 1
  MultiIndex k0(K->size());
  if (co.at(k0) != Tensor::one({L, K})) unit.note("1", (co.at(k0) - Tensor::one({L, K})).str());

  // 4. the product rule yields a coaction that is coassociative, counital and
  // respects the coproduct of K
  for (const auto& k : ks) {
    std::string where = "k=" + label(K, k);
    const Tensor& c = co.at(k);
    Tensor a = expand_slot(c, 0, [&](const MultiIndex& m) { return coproduct_mono(L, m); }).window(d, Z);
    Tensor b = expand_slot(c, 1, [&](const MultiIndex& m) { return coaction(data, m); }).window(d, Z);
    run.values["coassoc " + where] = a.str();
    if (a != b) prod.note(where + " (coassociativity)", (a - b).str());
    NCElement u = to_element(counit_slot(c, 0)).window(d, Z);
    if (u != mono(K, k).window(d, Z)) prod.note(where + " (counit)", (u - mono(K, k)).str());

    Tensor lhs({L, K, K});
    Tensor dk = coproduct_mono(K, k);
    for (const auto& [kk, kc] : dk.terms()) {
      Tensor c1 = coaction(data, kk[0]), c2 = coaction(data, kk[1]);
      for (const auto& [x, xc] : c1.terms())
        for (const auto& [y, yc] : c2.terms())
          lhs += Tensor::pure({mono(L, x[0]) * mono(L, y[0]), mono(K, x[1]), mono(K, y[1])}) * (kc * xc * yc);
    }
    Tensor rhs = expand_slot(c, 1, [&](const MultiIndex& m) { return coproduct_mono(K, m); });
    lhs = lhs.window(d, Z);
    rhs = rhs.window(d, Z);
    if (lhs != rhs) prod.note(where + " (coproduct)", (lhs - rhs).str());
  }

  for (std::size_t i = 0; i < data.beta.size(); ++i) {
    Tensor lhs = coproduct(data.beta[i]).window(d, Z);
    Tensor rhs = Tensor::pure({data.beta[i], data.beta[i]}).window(d, Z);
    if (lhs != rhs) grp.note("beta_" + K->gens[i].name, (lhs - rhs).str());
    ParamSeries e = counit(data.beta[i]).window(Z);
    if (e != L->constant(1)) grp.note("beta_" + K->gens[i].name + " counit", e.str());
  }

  // the action respects the relations of L and of K
  for (std::size_t i = 0; i < K->size(); ++i) {
    for (std::size_t j = 0; j < L->size(); ++j)
      for (std::size_t q = 0; q < j; ++q) {
        NCElement lj = NCElement::generator(L, j), lq = NCElement::generator(L, q);
        // derivation applied to the words l_j l_q and l_q l_j
        NCElement w = action_extend(data, lj, {i}) * lq + lj * action_extend(data, lq, {i}) -
                      action_extend(data, lq, {i}) * lj - lq * action_extend(data, lj, {i});
        NCElement diff = (w - action_extend(data, NCElement(L, L->rel(j, q)), {i})).window(d, Z);
        if (!diff.is_zero()) rel.note("[" + L->gens[j].name + ", " + L->gens[q].name + "] <| " + K->gens[i].name, diff.str());
      }
    for (std::size_t i2 = 0; i2 < i; ++i2)
      for (std::size_t j = 0; j < L->size(); ++j) {
        NCElement lj = NCElement::generator(L, j);
        NCElement w = action_extend(data, lj, {i, i2}) - action_extend(data, lj, {i2, i});
        NCElement diff = (w - action_by(data, lj, NCElement(K, K->rel(i, i2)))).window(d, Z);
        if (!diff.is_zero()) rel.note(L->gens[j].name + " <| [" + K->gens[i].name + ", " + K->gens[i2].name + "]", diff.str());
      }
  }

  run.probes = {eps, del, unit, prod, mix, grp, rel};
  return run;
}

}  // namespace

Report check_compatibility(const BicrossData& data, int d, int Z) {
  int Dw = d + Z + 1;
  CompatRun a = run_compat(data.at_caps(Dw, Z), d, Z);
  CompatRun b = run_compat(data.at_caps(Dw + 2, Z), d, Z);
  Report r;
  r.title = "bicrossproduct compatibility: " + data.name;
  for (const auto& p : a.probes) r.add_result(p.name, p.cx, d, Z);
  std::optional<std::string> cx;
  for (const auto& [k, v] : a.values) {
    auto it = b.values.find(k);
    if (it == b.values.end() || it->second != v) {
      cx = k + " changes with the working degree";
      break;
    }
  }
  r.add_result("window-stability", cx, d, Z).detail = json{{"workingDegree", Dw}};
  return r;
}

// ---------------------------------------------------------------- star

StarTable make_star(const SpecPtr& spec, const SpecSource& src) {
  StarTable st;
  st.spec = spec;
  st.image.assign(spec->size(), NCElement(spec));
  std::vector<bool> seen(spec->size());
  SymbolTable tab = src.symbols();
  for (const auto& e : src.star) {
    int g = spec->index(e.key);
    if (g < 0) throw SpecError(src.origin + ":" + std::to_string(e.line) + ": star of unknown generator '" + e.key + "'");
    try {
      st.image[g] = eval_element(spec, parse(e.text, tab));
    } catch (const ParseError& err) {
      throw SpecError(src.origin + ":" + std::to_string(e.line) + ": " + err.what());
    }
    seen[g] = true;
  }
  for (std::size_t g = 0; g < spec->size(); ++g)
    if (!seen[g]) throw SpecError(src.origin + ": no star image for generator " + spec->gens[g].name);
  return st;
}

NCElement star_apply(const StarTable& st, const NCElement& el) {
  const SpecPtr& s = st.spec;
  if (el.spec() != s) throw PreconditionError("star_apply: element of another spec");
  NCElement out(s);
  for (const auto& [m, c] : el.terms()) {
    NCElement t = NCElement::scalar(s, c);
    for (std::size_t g = m.size(); g-- > 0;)
      for (unsigned p = 0; p < m[g]; ++p) t = t * st.image[g];
    out += t;
  }
  return out;
}

Report check_star(const BicrossData& data0, int d, int Z) {
  const int Dw = 2 * d + Z + 1;
  BicrossData data = data0.at_caps(Dw, Z);
  SpecPtr H = build_bicross(data);
  StarTable st = make_star(H, data.source);
  auto ms = indices_up_to(H->size(), static_cast<unsigned>(d));
  Report r;
  r.title = "star structure: " + data.name;

  std::optional<std::string> inv, anti, rel, cop, comp;
  std::map<MultiIndex, NCElement> img;
  for (const auto& m : ms) img.emplace(m, star_apply(st, mono(H, m)));
  for (const auto& m : ms) {
    NCElement x = mono(H, m);
    NCElement back = star_apply(st, img.at(m)).window(d, Z);
    if (back != x && !inv) inv = label(H, m) + ": (x*)* = " + clip(back.str());

    Tensor a = coproduct(img.at(m)).window(d, Z);
    Tensor b = map_slot(map_slot(coproduct_mono(H, m), 0, [&](const MultiIndex& q) { return star_apply(st, mono(H, q)); }),
                        1, [&](const MultiIndex& q) { return star_apply(st, mono(H, q)); })
                   .window(d, Z);
    if (a != b && !cop) cop = label(H, m) + ": difference " + clip((a - b).str());
  }
  for (const auto& a : ms)
    for (const auto& b : ms) {
      if (static_cast<int>(a.total() + b.total()) > d) continue;
      NCElement lhs = star_apply(st, mono(H, a) * mono(H, b)).window(d, Z);
      NCElement rhs = (img.at(b) * img.at(a)).window(d, Z);
      if (lhs != rhs && !anti) anti = label(H, a) + " * " + label(H, b) + ": difference " + clip((lhs - rhs).str());
    }
  // star of g_j g_i - g_i g_j - rule must vanish
  for (std::size_t j = 0; j < H->size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      NCElement lhs = st.image[i] * st.image[j] - st.image[j] * st.image[i];
      NCElement diff = (lhs - star_apply(st, NCElement(H, H->rel(j, i)))).window(d, Z);
      if (!diff.is_zero() && !rel) rel = "[" + H->gens[j].name + ", " + H->gens[i].name + "]: " + clip(diff.str());
    }
  // (l <| k)* = l* <| S(k)*, star on K read off the table restricted to the K sector
  StarTable kst{data.kspec, {}};
  for (std::size_t i = 0; i < data.kpos.size(); ++i) kst.image.push_back(restrict_to(data.kpos, data.kspec, st.image[data.kpos[i]]));
  auto ls = indices_up_to(data.lspec->size(), static_cast<unsigned>(d));
  auto ks = indices_up_to(data.kspec->size(), static_cast<unsigned>(d));
  for (const auto& l : ls)
    for (const auto& k : ks) {
      if (static_cast<int>(l.total() + k.total()) > d + 1) continue;
      NCElement lm = mono(data.lspec, l);
      NCElement lhs = star_apply(st, embed_l(data, H, action_by(data, lm, mono(data.kspec, k))));
      NCElement lstar = restrict_to(data.lpos, data.lspec, star_apply(st, embed_l(data, H, lm)));
      NCElement sk = star_apply(kst, antipode(mono(data.kspec, k)));
      NCElement rhs = embed_l(data, H, action_by(data, lstar, sk));
      NCElement diff = (lhs - rhs).window(d, Z);
      if (!diff.is_zero() && !comp) comp = "l=" + label(data.lspec, l) + ", k=" + label(data.kspec, k) + ": " + clip(diff.str());
    }
  r.add_result("involution", inv, d, Z);
  r.add_result("antimultiplicative", anti, d, Z);
  r.add_result("relations", rel, d, Z);
  r.add_result("coproduct", cop, d, Z);
  r.add_result("action-compatibility", comp, d, Z);
  return r;
}

}  // namespace bx
