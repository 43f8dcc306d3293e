#include "bicross/flows.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "bicross/errors.hpp"

namespace bx {

VectorField field_from_action(const BicrossData& data, std::size_t i) {
  if (i >= data.kpos.size()) throw PreconditionError("field_from_action: K index out of range");
  VectorField X;
  X.info = data.lspec->param;
  for (const auto& g : data.lspec->gens) X.coords.push_back(g.name);
  ExpPoly like(X.coords, X.info, kFunctionTop);
  for (std::size_t j = 0; j < X.coords.size(); ++j) {
    const AstPtr& a = data.action_ast[j][i];
    X.comp.push_back(a ? to_exppoly(a, X.coords, X.info, kFunctionTop) : ExpPoly::constant(like, ParamSeries()));
  }
  return X;
}

ExpPoly apply_field(const VectorField& X, const ExpPoly& f) {
  if (f.coords() != X.coords) throw PreconditionError("apply_field: coordinate lists differ");
  ExpPoly r(X.coords, X.info, f.top());
  for (std::size_t j = 0; j < X.dim(); ++j) {
    if (X.comp[j].is_zero()) continue;
    r += X.comp[j] * ep_derive(f, j);
  }
  return r;
}

ExpPoly check_first_integral(const VectorField& X, const ExpPoly& h) { return apply_field(X, h); }

std::vector<ExpPoly> flow_series(const VectorField& X, const ExpPoly& f, int N) {
  if (N < 0) throw PreconditionError("flow_series: negative order");
  std::vector<ExpPoly> out{f};
  ExpPoly cur = f;
  for (int n = 1; n <= N; ++n) {
    cur = apply_field(X, cur) * mpq_class(1, n);
    out.push_back(cur);
  }
  return out;
}

FlowSeries coordinate_flow(const VectorField& X, int N) {
  FlowSeries F;
  F.order = N;
  ExpPoly like(X.coords, X.info, kFunctionTop);
  for (std::size_t j = 0; j < X.dim(); ++j) F.coeff.push_back(flow_series(X, ExpPoly::coordinate(like, j), N));
  return F;
}

// ---------------------------------------------------------------- time series

void series_add(TimeSeries& a, const MultiIndex& m, const ExpPoly& c) {
  if (c.is_zero()) return;
  auto it = a.find(m);
  if (it == a.end()) {
    a.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) a.erase(it);
}

TimeSeries series_mul(const TimeSeries& a, const TimeSeries& b, int N) {
  TimeSeries r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      if (static_cast<int>(ma.total() + mb.total()) > N) continue;
      series_add(r, ma + mb, ca * cb);
    }
  return r;
}

namespace {

using TS = TimeSeries;

void ts_add(TS& a, const MultiIndex& m, const ExpPoly& c) { series_add(a, m, c); }
TS ts_mul(const TS& a, const TS& b, int N) { return series_mul(a, b, N); }

TS ts_scale(const TS& a, const ExpPoly& c) {
  TS r;
  for (const auto& [m, v] : a) ts_add(r, m, v * c);
  return r;
}

// exp(u) for u without a constant term
TS ts_exp(const TS& u, std::size_t r, const ExpPoly& one, int N) {
  TS out{{MultiIndex(r), one}};
  TS pw = out;
  for (int n = 1; n <= N; ++n) {
    pw = ts_mul(pw, u, N);
    for (auto& [m, c] : pw) c = c * mpq_class(1, n);
    if (pw.empty()) break;
    for (const auto& [m, c] : pw) ts_add(out, m, c);
  }
  return out;
}

}  // namespace

TimeSeries substitute(const ExpPoly& f, const std::vector<TimeSeries>& G, int N) {
  const std::size_t s = f.arity();
  if (G.size() != s) throw PreconditionError("substitute: one series per coordinate expected");
  if (G.empty()) throw PreconditionError("substitute: no coordinates");
  std::size_t r = G.front().empty() ? 0 : G.front().begin()->first.size();
  for (const auto& g : G)
    for (const auto& [m, c] : g) {
      if (m.size() != r) throw PreconditionError("substitute: time arities differ");
      if (c.coords() != f.coords()) throw PreconditionError("substitute: coordinate lists differ");
    }
  MultiIndex t0(r);
  ExpPoly like(f.coords(), f.info(), f.top());
  ExpPoly one = ExpPoly::constant(like, ParamSeries::constant(f.info(), f.top(), 1));
  // D_j = G_j - x_j has no constant term
  std::vector<TS> delta(s);
  for (std::size_t j = 0; j < s; ++j) {
    delta[j] = G[j];
    ts_add(delta[j], t0, -ExpPoly::coordinate(like, j));
    if (delta[j].count(t0)) throw PreconditionError("substitute: series must start with the coordinate");
  }
  // powers of G_j, cached
  std::vector<std::vector<TS>> pw(s);
  auto power = [&](std::size_t j, unsigned e) -> const TS& {
    auto& v = pw[j];
    if (v.empty()) v.push_back(TS{{t0, one}});
    while (v.size() <= e) v.push_back(ts_mul(v.back(), G[j], N));
    return v[e];
  };
  TS out;
  std::map<LinForm, TS> exps;
  for (const auto& [k, c] : f.terms()) {
    TS term{{t0, ExpPoly::constant(like, c)}};
    for (std::size_t j = 0; j < s; ++j)
      if (k.mono[j]) term = ts_mul(term, power(j, k.mono[j]), N);
    bool has_exp = false;
    for (const auto& e : k.ell) has_exp = has_exp || !e.is_zero();
    if (has_exp) {
      auto it = exps.find(k.ell);
      if (it == exps.end()) {
        // exp(l.G) = exp(l.x) exp(l.D)
        TS u;
        for (std::size_t j = 0; j < s; ++j)
          if (!k.ell[j].is_zero())
            for (const auto& [m, v] : delta[j]) ts_add(u, m, v * k.ell[j]);
        TS e = ts_scale(ts_exp(u, r, one, N), ExpPoly::exponential(like, k.ell));
        it = exps.emplace(k.ell, std::move(e)).first;
      }
      term = ts_mul(term, it->second, N);
    }
    for (const auto& [m, v] : term) ts_add(out, m, v);
  }
  return out;
}

std::vector<TimeSeries> flow_compose(const std::vector<FlowSeries>& flows, int N) {
  if (flows.empty()) throw PreconditionError("flow_compose: no flows");
  const std::size_t r = flows.size();
  const std::size_t s = flows.front().coeff.size();
  for (const auto& F : flows) {
    if (F.coeff.size() != s) throw PreconditionError("flow_compose: coordinate counts differ");
    if (F.order < N) throw PreconditionError("flow_compose: series order below the requested order");
  }
  // start from the identity, then apply Phi_1, Phi_2, ... in turn
  std::vector<TimeSeries> cur(s);
  for (std::size_t j = 0; j < s; ++j) cur[j][MultiIndex(r)] = flows.front().coeff[j][0];
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<TimeSeries> next(s);
    for (std::size_t j = 0; j < s; ++j) {
      for (int n = 0; n <= N; ++n) {
        const ExpPoly& c = flows[i].coeff[j][n];
        if (c.is_zero()) continue;
        TS sub = substitute(c, cur, N - n);
        MultiIndex tn(r);
        tn.set(i, static_cast<unsigned>(n));
        for (const auto& [m, v] : sub) ts_add(next[j], m + tn, v);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

Report check_group_law(const VectorField& X, int N) {
  FlowSeries F = coordinate_flow(X, N);
  std::vector<TimeSeries> two = flow_compose({F, F}, N);
  Report r;
  r.title = "flow group law";
  std::optional<std::string> cx;
  for (std::size_t j = 0; j < X.dim() && !cx; ++j) {
    // Phi^{t1+t2}: c_n (t1 + t2)^n
    TS expect;
    for (int n = 0; n <= N; ++n)
      for (int k = 0; k <= n; ++k)
        ts_add(expect, MultiIndex{static_cast<unsigned>(k), static_cast<unsigned>(n - k)},
               F.coeff[j][n] * mpq_class(binomial(n, k)));
    for (const auto& [m, v] : expect) {
      auto it = two[j].find(m);
      if (it == two[j].end() || it->second != v) {
        cx = X.coords[j] + " at t1^" + std::to_string(m[0]) + " t2^" + std::to_string(m[1]);
        break;
      }
    }
    if (!cx && two[j].size() != expect.size()) cx = X.coords[j] + ": extra terms in the composition";
  }
  r.add_result("group-law", cx, N, 0);
  return r;
}

// ---------------------------------------------------------------- numerics

std::vector<double> ClosedFlow::operator()(double s, const std::vector<double>& x, double q) const {
  CVec cx(x.begin(), x.end());
  CVec v = eval(std::complex<double>(s, 0), cx, q);
  std::vector<double> out;
  for (const auto& c : v) out.push_back(c.real());
  return out;
}

std::vector<std::vector<double>> closed_flow_taylor(const ClosedFlow& flow, const std::vector<double>& x, double q,
                                                    int N, double r, int points) {
  ClosedFlow::CVec cx(x.begin(), x.end());
  std::vector<std::vector<std::complex<double>>> acc(x.size(), std::vector<std::complex<double>>(N + 1));
  for (int k = 0; k < points; ++k) {
    double th = 2 * std::numbers::pi * k / points;
    std::complex<double> s = std::polar(r, th);
    ClosedFlow::CVec v = flow.eval(s, cx, q);
    for (std::size_t j = 0; j < x.size(); ++j)
      for (int n = 0; n <= N; ++n) acc[j][n] += v[j] * std::pow(s, -n);
  }
  std::vector<std::vector<double>> out(x.size(), std::vector<double>(N + 1));
  for (std::size_t j = 0; j < x.size(); ++j)
    for (int n = 0; n <= N; ++n) out[j][n] = (acc[j][n] / static_cast<double>(points)).real();
  return out;
}

namespace {

// the field with every coefficient evaluated at the parameter value
struct Compiled {
  struct Term {
    double c;
    MultiIndex mono;
    std::vector<double> ell;
  };
  std::vector<std::vector<Term>> comp;

  Compiled(const VectorField& X, double q) {
    for (const auto& f : X.comp) {
      std::vector<Term> ts;
      for (const auto& [k, c] : f.terms()) {
        Term t{ps_eval_laurent(c, q), k.mono, {}};
        for (const auto& e : k.ell) t.ell.push_back(e.is_zero() ? 0.0 : ps_eval_laurent(e, q));
        ts.push_back(std::move(t));
      }
      comp.push_back(std::move(ts));
    }
  }

  std::vector<double> operator()(const std::vector<double>& x) const {
    std::vector<double> out(comp.size());
    for (std::size_t j = 0; j < comp.size(); ++j) {
      double acc = 0;
      for (const auto& t : comp[j]) {
        double v = t.c, e = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          for (unsigned p = 0; p < t.mono[i]; ++p) v *= x[i];
          e += t.ell[i] * x[i];
        }
        acc += v * std::exp(e);
      }
      out[j] = acc;
    }
    return out;
  }
};

double norm(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

std::vector<double> axpy(const std::vector<double>& x, double a, const std::vector<double>& k) {
  std::vector<double> r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += a * k[i];
  return r;
}

void guard(const std::vector<double>& x, double t, const NumericOptions& opt) {
  for (double v : x)
    if (!std::isfinite(v)) throw DomainError("flow left the domain near s = " + std::to_string(t) + " (non-finite state)");
  if (norm(x) > opt.max_norm) throw DomainError("flow left the domain near s = " + std::to_string(t) + " (state norm above bound)");
}

// fixed-step RK4 from 0 to s in n steps; states after every step
std::vector<std::vector<double>> rk4(const Compiled& f, std::vector<double> x, double s, long n, const NumericOptions& opt) {
  std::vector<std::vector<double>> out;
  out.reserve(n + 1);
  out.push_back(x);
  double h = s / static_cast<double>(n);
  for (long i = 0; i < n; ++i) {
    auto k1 = f(x);
    auto k2 = f(axpy(x, h / 2, k1));
    auto k3 = f(axpy(x, h / 2, k2));
    auto k4 = f(axpy(x, h, k3));
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    guard(x, h * static_cast<double>(i + 1), opt);
    out.push_back(x);
  }
  return out;
}

}  // namespace

NumericFlow flow_numeric(const VectorField& X, const std::vector<double>& x0, double s, double q, const NumericOptions& opt) {
  if (x0.size() != X.dim()) throw PreconditionError("flow_numeric: initial point has the wrong dimension");
  if (!(opt.h > 0)) throw PreconditionError("flow_numeric: step must be positive");
  Compiled f(X, q);
  guard(x0, 0, opt);
  NumericFlow res;
  if (s == 0) {
    res.x = x0;
    if (opt.record) {
      std::vector<double> row{0};
      row.insert(row.end(), x0.begin(), x0.end());
      row.push_back(0);
      res.rows.push_back(row);
    }
    return res;
  }
  long n = std::max(1L, static_cast<long>(std::ceil(std::abs(s) / opt.h - 1e-9)));
  auto coarse = rk4(f, x0, s, n, opt);
  auto fine = rk4(f, x0, s, 2 * n, opt);
  for (long i = 0; i <= n; ++i) {
    std::vector<double> d(x0.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = coarse[i][j] - fine[2 * i][j];
    double err = norm(d) * 16.0 / 15.0;
    double t = s * static_cast<double>(i) / static_cast<double>(n);
    if (err > opt.max_error)
      throw DomainError("flow left the domain near s = " + std::to_string(t) + " (error estimate " + std::to_string(err) + ")");
    if (opt.record) {
      std::vector<double> row{t};
      row.insert(row.end(), coarse[i].begin(), coarse[i].end());
      row.push_back(err);
      res.rows.push_back(std::move(row));
    }
    res.error = err;
  }
  res.x = coarse.back();
  return res;
}

void write_trajectory_csv(std::ostream& out, const VectorField& X, const NumericFlow& f) {
  out << "s";
  for (const auto& c : X.coords) out << "," << c;
  out << ",error\n";
  out.precision(17);
  for (const auto& row : f.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

double ep_value(const ExpPoly& f, const std::vector<double>& x, double q) { return ep_eval(f, x, q); }

std::vector<double> field_value(const VectorField& X, const std::vector<double>& x, double q) {
  if (x.size() != X.dim()) throw PreconditionError("field_value: dimension mismatch");
  std::vector<double> v;
  for (const auto& c : X.comp) v.push_back(ep_eval(c, x, q));
  return v;
}

json Stratum::to_json() const {
  json j;
  j["fixedPoint"] = fixed;
  j["field"] = field;
  json ints = json::object();
  for (const auto& [n, v] : integrals) ints[n] = v;
  j["integrals"] = ints;
  return j;
}

Stratum classify_point(const VectorField& X, const std::vector<NamedIntegral>& integrals, const std::vector<double>& x,
                       double q, double tol) {
  Stratum st;
  st.field = field_value(X, x, q);
  st.fixed = norm(st.field) <= tol;
  for (const auto& h : integrals) st.integrals.emplace_back(h.name, ep_eval(h.h, x, q));
  return st;
}

}  // namespace bx
