#include "bicross/induction.hpp"

#include <cmath>
#include <sstream>

#include "bicross/errors.hpp"

namespace bx {

namespace {

ExpPoly const_fn(const InducedRep& rep, const ParamSeries& c) {
  ExpPoly like(rep.lcoords, rep.info, kFunctionTop);
  return ExpPoly::constant(like, c.with_top(kFunctionTop));
}

CoordSeries truncate(const CoordSeries& f, int N) {
  CoordSeries r;
  for (const auto& [m, c] : f)
    if (static_cast<int>(m.total()) <= N) r.emplace(m, c);
  return r;
}

std::string series_str(const CoordSeries& f, const std::vector<std::string>& vars) {
  if (f.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : f) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")";
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) s += "*" + vars[i] + (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
  }
  return s;
}

}  // namespace

InducedRep induce(const BicrossData& data, const std::vector<double>& a, int N) {
  if (N < 1) throw PreconditionError("induce: order must be positive");
  if (a.size() != data.lpos.size()) throw PreconditionError("induce: character has the wrong length");
  for (double v : a)
    if (!std::isfinite(v)) throw PreconditionError("induce: character entries must be finite");
  InducedRep rep;
  rep.order = N;
  rep.character = a;
  rep.info = data.lspec->param;
  for (const auto& g : data.kspec->gens) rep.kcoords.push_back(g.name);
  for (const auto& g : data.lspec->gens) rep.lcoords.push_back(g.name);
  const std::size_t r = rep.kcoords.size();

  // regular action: kappa^q <| k_i = sum_m kappa^m (q!/m!) [k_q] (k_i k_m)
  SpecPtr K = data.kspec->at_caps(N + 1, data.Z);
  auto basis = indices_up_to(r, N);
  rep.kmat.resize(r);
  rep.krel = K->rule;
  for (std::size_t i = 0; i < r; ++i) {
    for (const auto& q : basis) rep.kmat[i][q];
    for (const auto& m : basis) {
      NCElement e = NCElement::generator(K, i) * NCElement::monomial(K, m, K->constant(1));
      if (e.truncated()) throw DomainError("induce: regular action truncated at order " + std::to_string(N));
      for (const auto& [q, c] : e.terms()) {
        if (static_cast<int>(q.total()) > N) continue;
        mpq_class w(mfactorial(q), mfactorial(m));
        w.canonicalize();
        series_add(rep.kmat[i][q], m, const_fn(rep, c * w));
      }
    }
  }

  std::vector<FlowSeries> flows;
  for (std::size_t i = 0; i < r; ++i) {
    rep.fields.push_back(field_from_action(data, i));
    flows.push_back(coordinate_flow(rep.fields.back(), N));
  }
  rep.M = flow_compose(flows, N);
  return rep;
}

CoordSeries model_monomial(const InducedRep& rep, const MultiIndex& m) {
  ExpPoly like(rep.lcoords, rep.info, kFunctionTop);
  return CoordSeries{{m, ExpPoly::constant(like, ParamSeries::constant(rep.info, kFunctionTop, 1))}};
}

CoordSeries rep_apply(const InducedRep& rep, const std::string& gen, const CoordSeries& f) {
  for (std::size_t i = 0; i < rep.kcoords.size(); ++i)
    if (rep.kcoords[i] == gen) {
      CoordSeries out;
      for (const auto& [q, c] : f) {
        auto it = rep.kmat[i].find(q);
        if (it == rep.kmat[i].end()) throw PreconditionError("rep_apply: series degree above the model order");
        for (const auto& [m, v] : it->second) series_add(out, m, v * c);
      }
      return out;
    }
  for (std::size_t j = 0; j < rep.lcoords.size(); ++j)
    if (rep.lcoords[j] == gen) return series_mul(f, rep.M[j], rep.order);
  throw PreconditionError("rep_apply: unknown generator " + gen);
}

CoordSeries rep_apply_word(const InducedRep& rep, const std::vector<std::string>& word, const CoordSeries& f) {
  CoordSeries cur = f;
  for (const auto& g : word) cur = rep_apply(rep, g, cur);
  return cur;
}

Report check_rep_relations(const InducedRep& rep, int window) {
  if (window < 0 || window >= rep.order) throw PreconditionError("check_rep_relations: window must be below the model order");
  Report r;
  r.title = "induced representation relations";
  const std::size_t nk = rep.kcoords.size(), nl = rep.lcoords.size();
  // compare everything below the model order; one K letter costs one degree
  const int cmp = rep.order - 1;
  auto basis = indices_up_to(nk, static_cast<unsigned>(window));

  auto check = [&](const std::string& x, const std::string& y,
                   const std::function<CoordSeries(const CoordSeries&)>& rhs) -> std::optional<std::string> {
    for (const auto& m : basis) {
      CoordSeries f = model_monomial(rep, m);
      CoordSeries lhs = rep_apply_word(rep, {x, y}, f);
      for (const auto& [k, c] : rep_apply_word(rep, {y, x}, f)) series_add(lhs, k, -c);
      lhs = truncate(lhs, cmp);
      CoordSeries want = truncate(rhs(f), cmp);
      if (lhs != want)
        return "[" + x + "," + y + "] on kappa^" + m.str() + ": got " + clip(series_str(lhs, rep.kcoords)) +
               ", expected " + clip(series_str(want, rep.kcoords));
    }
    return std::nullopt;
  };

  // [l_j, k_i] = l_j <| k_i, read along M
  std::optional<std::string> cx;
  for (std::size_t j = 0; j < nl && !cx; ++j)
    for (std::size_t i = 0; i < nk && !cx; ++i)
      cx = check(rep.lcoords[j], rep.kcoords[i], [&](const CoordSeries& f) {
        const ExpPoly& a = rep.fields[i].comp[j];
        if (a.is_zero()) return CoordSeries{};
        return series_mul(f, substitute(a, rep.M, rep.order), rep.order);
      });
  r.add_result("cross-relations", cx, window, 0);

  cx.reset();
  for (std::size_t j = 0; j < nl && !cx; ++j)
    for (std::size_t i = 0; i < j && !cx; ++i)
      cx = check(rep.lcoords[j], rep.lcoords[i], [](const CoordSeries&) { return CoordSeries{}; });
  r.add_result("l-relations", cx, window, 0);

  // [k_j, k_i] from the generators' own brackets; only linear brackets occur in U(k)
  cx.reset();
  for (std::size_t j = 0; j < nk && !cx; ++j)
    for (std::size_t i = 0; i < j && !cx; ++i)
      cx = check(rep.kcoords[j], rep.kcoords[i], [&](const CoordSeries& f) {
        CoordSeries out;
        for (const auto& [m, c] : rep.krel[j][i]) {
          std::vector<std::string> word;
          for (std::size_t g = 0; g < nk; ++g)
            for (unsigned e = 0; e < m[g]; ++e) word.push_back(rep.kcoords[g]);
          ExpPoly w = const_fn(rep, c);
          for (const auto& [k, v] : rep_apply_word(rep, word, f)) series_add(out, k, v * w);
        }
        return out;
      });
  r.add_result("k-relations", cx, window, 0);
  return r;
}

Report check_skew_symmetry(const InducedRep& rep) {
  Report r;
  r.title = "skew-symmetry of the regular action";
  const std::size_t nk = rep.kcoords.size();
  const unsigned N = static_cast<unsigned>(rep.order);
  auto basis = indices_up_to(nk, N);
  std::vector<MultiIndex> targets;
  for (const auto& t : basis)
    if (t.total() == N) targets.push_back(t);
  ExpPoly like(rep.lcoords, rep.info, kFunctionTop);

  auto B = [&](const CoordSeries& f, const CoordSeries& g, const MultiIndex& T) {
    ExpPoly acc(rep.lcoords, rep.info, kFunctionTop);
    for (const auto& [m, c] : f)
      for (const auto& [n, d] : g) {
        if (m + n != T) continue;
        mpq_class w(mfactorial(m) * mfactorial(n));
        if (m.total() % 2) w = -w;
        acc += c * d * w;
      }
    return acc;
  };

  std::optional<std::string> cx;
  for (std::size_t i = 0; i < nk && !cx; ++i)
    for (const auto& T : targets) {
      for (const auto& m : basis) {
        for (const auto& n : basis) {
          CoordSeries f = model_monomial(rep, m), g = model_monomial(rep, n);
          ExpPoly s = B(rep_apply(rep, rep.kcoords[i], f), g, T) + B(f, rep_apply(rep, rep.kcoords[i], g), T);
          if (!s.is_zero()) {
            cx = rep.kcoords[i] + " on (" + m.str() + ", " + n.str() + "), target " + T.str() + ": " + s.str();
            break;
          }
        }
        if (cx) break;
      }
      if (cx) break;
    }
  r.add_result("skew-symmetry", cx, rep.order, 0);
  return r;
}

std::map<MultiIndex, double> series_value(const CoordSeries& f, const std::vector<double>& a, double q) {
  std::map<MultiIndex, double> out;
  for (const auto& [m, c] : f) out[m] = ep_eval(c, a, q);
  return out;
}

std::map<MultiIndex, mpq_class> series_value_exact(const CoordSeries& f, const std::vector<mpq_class>& a,
                                                   const mpq_class& q) {
  std::map<MultiIndex, mpq_class> out;
  for (const auto& [m, c] : f) {
    mpq_class v;
    if (!ep_eval_exact(c, a, q, v)) throw DomainError("series_value_exact: coefficient is not rational at this point");
    if (v != 0) out[m] = v;
  }
  return out;
}

std::string series_text(const std::map<MultiIndex, mpq_class>& f, const std::vector<std::string>& vars) {
  if (f.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : f) {
    mpq_class v = c;
    std::string sign = " + ";
    if (v < 0) {
      sign = " - ";
      v = -v;
    }
    if (s.empty()) s = c < 0 ? "-" : "";
    else s += sign;
    bool unit = m.is_zero();
    if (unit) s += rational_str(v);
    else if (v != 1) s += v.get_den() == 1 ? rational_str(v) : "(" + rational_str(v) + ")";
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) s += vars[i] + (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
  }
  return s;
}

json rep_to_json(const InducedRep& rep, double q) {
  json j;
  j["order"] = rep.order;
  j["character"] = rep.character;
  j["kCoordinates"] = rep.kcoords;
  j["lCoordinates"] = rep.lcoords;
  json K = json::object();
  for (std::size_t i = 0; i < rep.kcoords.size(); ++i) {
    json rows = json::array();
    for (const auto& [src, img] : rep.kmat[i]) {
      json row;
      row["from"] = src.to_vector();
      json to = json::array();
      for (const auto& [m, c] : img) to.push_back({{"index", m.to_vector()}, {"coeff", c.str()}});
      row["to"] = to;
      rows.push_back(row);
    }
    K[rep.kcoords[i]] = rows;
  }
  j["kGenerators"] = K;
  json L = json::object();
  for (std::size_t k = 0; k < rep.lcoords.size(); ++k) {
    json coeffs = json::array();
    for (const auto& [m, c] : rep.M[k])
      coeffs.push_back({{"index", m.to_vector()}, {"coeff", c.str()}, {"value", ep_eval(c, rep.character, q)}});
    L[rep.lcoords[k]] = coeffs;
  }
  j["lGenerators"] = L;
  return j;
}

// ---------------------------------------------------------------- numeric side

LocalRepValue local_rep(const ClosedFlow& flow, double c, const std::vector<double>& l, double s, double q) {
  if (flow.domain && !flow.domain(s, l, q)) throw DomainError("local_rep: (s, l) outside the flow domain");
  LocalRepValue v;
  v.scalar = std::exp(s * c);
  v.point = flow(s, l, q);
  return v;
}

namespace {

std::vector<double> move(const ClosedFlow& flow, double s, const std::vector<double>& x, double q) {
  if (flow.domain && !flow.domain(s, x, q)) throw DomainError("co-space action leaves the flow domain");
  return flow(s, x, q);
}

}  // namespace

CoSpaceElement cospace_act(const CoSpaceElement& e, const CoSpaceActor& by, CoModule mod, const ClosedFlow& flow,
                           double q) {
  using F = CoSpaceElement::Form;
  bool dual = mod == CoModule::HStarLeft || mod == CoModule::HStarRight;
  if ((e.form == F::KappaL) != dual) throw PreconditionError("cospace_act: element form does not match the module");
  CoSpaceElement out = e;
  const bool group = by.kind == CoSpaceActor::Kind::Group;
  if (!group && !by.lambda) throw PreconditionError("cospace_act: function actor without a function");
  switch (mod) {
    case CoModule::HRight:  // (k lambda) < k' = k k' (lambda <| k'); (k lambda) < lambda' = k lambda lambda'
      if (group) {
        out.k = e.k + by.s;
        auto lam = e.lambda;
        double s = by.s;
        out.lambda = [lam, s, flow, q](const std::vector<double>& x) { return lam(move(flow, s, x, q)); };
      } else {
        auto lam = e.lambda, lp = by.lambda;
        out.lambda = [lam, lp](const std::vector<double>& x) { return lam(x) * lp(x); };
      }
      break;
    case CoModule::HStarLeft:  // k' > (kappa l) = (k' > kappa)(k' |> l); lambda' > (kappa l) = lambda'(l) kappa l
      if (group) {
        auto kap = e.kappa;
        double s = by.s;
        out.kappa = [kap, s](double t) { return kap(t + s); };
        out.l = move(flow, by.s, e.l, q);
      } else {
        out.scale = e.scale * by.lambda(e.l);
      }
      break;
    case CoModule::HLeft:  // k' > (k lambda) = k' k lambda; lambda' > (k lambda) = k (lambda' <| k) lambda
      if (group) {
        out.k = e.k + by.s;
      } else {
        auto lam = e.lambda, lp = by.lambda;
        double k = e.k;
        out.lambda = [lam, lp, k, flow, q](const std::vector<double>& x) { return lp(move(flow, k, x, q)) * lam(x); };
      }
      break;
    case CoModule::HStarRight:  // (kappa l) < k' = (kappa < k') l; (kappa l) < lambda' = kappa (lambda' o l^) l
      if (group) {
        auto kap = e.kappa;
        double s = by.s;
        out.kappa = [kap, s](double t) { return kap(s + t); };
      } else {
        auto kap = e.kappa;
        auto lp = by.lambda;
        std::vector<double> l = e.l;
        out.kappa = [kap, lp, l, flow, q](double t) { return kap(t) * lp(move(flow, t, l, q)); };
      }
      break;
  }
  return out;
}

namespace {

double poly(const std::vector<double>& c, double t) {
  double v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
  return v;
}

// coefficients of p(t + s)
std::vector<double> shift(const std::vector<double>& c, double s) {
  std::vector<double> out(c.size(), 0.0);
  for (std::size_t n = 0; n < c.size(); ++n)
    for (std::size_t k = 0; k <= n; ++k)
      out[k] += c[n] * binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)).get_d() * std::pow(s, double(n - k));
  return out;
}

std::vector<double> deriv(const std::vector<double>& c) {
  std::vector<double> out;
  for (std::size_t n = 1; n < c.size(); ++n) out.push_back(static_cast<double>(n) * c[n]);
  return out;
}

}  // namespace

Report equivalence_check(const ClosedFlow& flow, const std::vector<NamedIntegral>& lambdas, const std::vector<double>& l,
                         double s, double q, const EquivalenceOptions& opt, const std::vector<double>* target) {
  Report r;
  r.title = "equivalence of induced representations";
  std::vector<double> kl = target ? *target : move(flow, s, l, q);
  double worst = 0;
  std::optional<std::string> cx;
  for (const auto& kap : opt.kappas)
    for (const auto& lam : lambdas)
      for (double t : opt.tgrid) {
        // f_k(kappa |-_l lambda)(t) = kappa(t + s) lambda(Phi^{t+s} l)
        double lhs = poly(kap, t + s) * ep_value(lam.h, move(flow, t + s, l, q), q);
        // (f_k kappa) |-_{k|>l} lambda at t = kappa(t + s) lambda(Phi^t(k |> l))
        double rhs = poly(shift(kap, s), t) * ep_value(lam.h, move(flow, t, kl, q), q);
        double d = std::abs(lhs - rhs);
        worst = std::max(worst, d);
        if (!(d <= opt.tol) && !cx) {
          std::ostringstream os;
          os.precision(12);
          os << "lambda=" << lam.name << " t=" << t << ": " << lhs << " vs " << rhs;
          cx = os.str();
        }
      }
  auto& e = r.add_result("intertwiner", cx, 0, 0);
  e.detail = {{"maxDeviation", worst}, {"tolerance", opt.tol}, {"target", kl}};

  // f_k commutes with the K action (d/dt)
  cx.reset();
  double worst_k = 0;
  for (const auto& kap : opt.kappas)
    for (double t : opt.tgrid) {
      double a = poly(shift(deriv(kap), s), t);
      double b = poly(deriv(shift(kap, s)), t);
      worst_k = std::max(worst_k, std::abs(a - b));
      if (!(std::abs(a - b) <= opt.tol) && !cx) cx = "t=" + std::to_string(t);
    }
  auto& e2 = r.add_result("k-commutation", cx, 0, 0);
  e2.detail = {{"maxDeviation", worst_k}, {"tolerance", opt.tol}};
  return r;
}

}  // namespace bx
