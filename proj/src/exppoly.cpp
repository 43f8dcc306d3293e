#include <cmath>

#include "bicross/errors.hpp"
#include "bicross/expr.hpp"

namespace bx {

bool ExpPoly::Key::operator<(const Key& o) const {
  if (mono != o.mono) return mono < o.mono;
  return ell < o.ell;
}

ExpPoly::ExpPoly(std::vector<std::string> coords, ParamInfoPtr info, int top)
    : coords_(std::move(coords)), info_(std::move(info)), top_(top) {}

ExpPoly ExpPoly::constant(const ExpPoly& like, const ParamSeries& c) {
  ExpPoly r(like.coords_, like.info_, like.top_);
  r.add_term(MultiIndex(like.arity()), LinForm(like.arity()), c);
  return r;
}

ExpPoly ExpPoly::coordinate(const ExpPoly& like, std::size_t j) {
  ExpPoly r(like.coords_, like.info_, like.top_);
  r.add_term(MultiIndex::unit(like.arity(), j), LinForm(like.arity()),
             ParamSeries::constant(like.info_, like.top_, 1));
  return r;
}

ExpPoly ExpPoly::exponential(const ExpPoly& like, const LinForm& ell) {
  if (ell.size() != like.arity()) throw PreconditionError("linear form length mismatch");
  ExpPoly r(like.coords_, like.info_, like.top_);
  r.add_term(MultiIndex(like.arity()), ell, ParamSeries::constant(like.info_, like.top_, 1));
  return r;
}

bool ExpPoly::truncated() const {
  for (const auto& [k, c] : terms_)
    if (c.truncated()) return true;
  return false;
}

void ExpPoly::add_term(const MultiIndex& m, const LinForm& ell, const ParamSeries& c) {
  if (m.size() != arity() || ell.size() != arity()) throw PreconditionError("ExpPoly term arity mismatch");
  if (c.is_zero()) return;
  Key k{m, ell};
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    ParamSeries v(info_, top_);
    v += c;
    if (!v.is_zero()) terms_.emplace(std::move(k), std::move(v));
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void ExpPoly::check_compatible(const ExpPoly& o) const {
  if (coords_ != o.coords_) throw PreconditionError("ExpPoly coordinate lists differ");
}

ExpPoly ExpPoly::operator+(const ExpPoly& o) const {
  ExpPoly r = *this;
  r += o;
  return r;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  check_compatible(o);
  top_ = std::min(top_, o.top_);
  for (const auto& [k, c] : o.terms_) add_term(k.mono, k.ell, c);
  return *this;
}

ExpPoly ExpPoly::operator-() const {
  ExpPoly r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

ExpPoly ExpPoly::operator-(const ExpPoly& o) const { return *this + (-o); }

ExpPoly ExpPoly::operator*(const ExpPoly& o) const {
  check_compatible(o);
  ExpPoly r(coords_, info_, std::min(top_, o.top_));
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : o.terms_) {
      LinForm ell(arity());
      for (std::size_t j = 0; j < arity(); ++j) ell[j] = ka.ell[j] + kb.ell[j];
      r.add_term(ka.mono + kb.mono, ell, ca * cb);
    }
  }
  return r;
}

ExpPoly ExpPoly::operator*(const ParamSeries& c) const {
  ExpPoly r(coords_, info_, top_);
  for (const auto& [k, v] : terms_) r.add_term(k.mono, k.ell, v * c);
  return r;
}

ExpPoly ExpPoly::operator*(const mpq_class& c) const {
  ExpPoly r(coords_, info_, top_);
  for (const auto& [k, v] : terms_) r.add_term(k.mono, k.ell, v * c);
  return r;
}

bool ExpPoly::operator==(const ExpPoly& o) const { return coords_ == o.coords_ && terms_ == o.terms_; }

namespace {

// scalar series as text the parser accepts
std::string series_text(const ParamSeries& s, const std::string& name, bool inverse) {
  std::string out;
  bool first = true;
  for (const auto& [d, v] : s.coeffs()) {
    std::string r = v.get_str();
    bool neg = r[0] == '-';
    if (neg) r = r.substr(1);
    if (!first) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    first = false;
    int shown = inverse ? -d : d;
    if (d == 0) {
      out += r;
    } else {
      if (r != "1") out += r + "*";
      out += name;
      if (shown != 1) out += "^" + std::to_string(shown);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string ExpPoly::str() const {
  if (terms_.empty()) return "0";
  std::string name = info_ ? info_->name : "z";
  bool inv = info_ && info_->inverse;
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    std::vector<std::string> factors;
    for (std::size_t j = 0; j < arity(); ++j) {
      if (k.mono[j] == 0) continue;
      factors.push_back(coords_[j] + (k.mono[j] > 1 ? "^" + std::to_string(k.mono[j]) : ""));
    }
    std::string arg;
    for (std::size_t j = 0; j < arity(); ++j) {
      if (k.ell[j].is_zero()) continue;
      if (!arg.empty()) arg += " + ";
      arg += "(" + series_text(k.ell[j], name, inv) + ")*" + coords_[j];
    }
    if (!arg.empty()) factors.push_back("exp(" + arg + ")");
    std::string coef = series_text(c, name, inv);
    bool simple_one = coef == "1" && !factors.empty();
    std::string t;
    if (!simple_one) t = factors.empty() ? "(" + coef + ")" : "(" + coef + ")";
    for (const auto& f : factors) t += (t.empty() ? "" : "*") + f;
    if (!first) out += " + ";
    first = false;
    out += t;
  }
  return out;
}

namespace {

ExpPoly convert(const AstPtr& a, const ExpPoly& like) {
  using K = Ast::Kind;
  switch (a->kind) {
    case K::Num: return ExpPoly::constant(like, ParamSeries::constant(like.info(), like.top(), a->num));
    case K::Sym: {
      if (a->sym == like.info()->name)
        return ExpPoly::constant(like, ast_scalar(a, like.info(), like.top()));
      const auto& cs = like.coords();
      for (std::size_t j = 0; j < cs.size(); ++j)
        if (cs[j] == a->sym) return ExpPoly::coordinate(like, j);
      throw ParseError("symbol '" + a->sym + "' is not a coordinate", a->pos);
    }
    case K::Neg: return -convert(a->kids[0], like);
    case K::Add: {
      ExpPoly r = ExpPoly::constant(like, ParamSeries());
      for (const auto& k : a->kids) r += convert(k, like);
      return r;
    }
    case K::Mul: {
      ExpPoly r = ExpPoly::constant(like, ParamSeries::constant(like.info(), like.top(), 1));
      for (const auto& k : a->kids) r = r * convert(k, like);
      return r;
    }
    case K::Div: {
      ParamSeries d = ast_scalar(a->kids[1], like.info(), like.top());
      if (d.coeffs().size() != 1) throw ParseError("division only by nonzero rationals or parameter monomials", a->kids[1]->pos);
      auto [deg, val] = *d.coeffs().begin();
      return convert(a->kids[0], like) * ParamSeries::monomial(like.info(), like.top(), 1 / val, -deg);
    }
    case K::Pow: {
      if (a->power < 0) return ExpPoly::constant(like, ast_scalar(a, like.info(), like.top()));
      ExpPoly b = convert(a->kids[0], like);
      ExpPoly r = ExpPoly::constant(like, ParamSeries::constant(like.info(), like.top(), 1));
      for (int i = 0; i < a->power; ++i) r = r * b;
      return r;
    }
    case K::Exp: {
      ExpPoly arg = convert(a->kids[0], like);
      LinForm ell(like.arity());
      for (const auto& [k, c] : arg.terms()) {
        bool lin = k.mono.total() == 1;
        for (const auto& e : k.ell) lin = lin && e.is_zero();
        if (!lin) throw ParseError("exp argument is not a linear form in the coordinates", a->pos);
        for (std::size_t j = 0; j < like.arity(); ++j)
          if (k.mono[j] == 1) ell[j] += c;
      }
      return ExpPoly::exponential(like, ell);
    }
  }
  return like;
}

}  // namespace

ExpPoly to_exppoly(const AstPtr& ast, const std::vector<std::string>& coords, ParamInfoPtr info, int top) {
  ExpPoly like(coords, std::move(info), top);
  return convert(ast, like);
}

ExpPoly ep_derive(const ExpPoly& f, std::size_t j) {
  if (j >= f.arity()) throw PreconditionError("ep_derive: coordinate index out of range");
  ExpPoly r(f.coords(), f.info(), f.top());
  for (const auto& [k, c] : f.terms()) {
    if (k.mono[j] > 0) {
      MultiIndex m = k.mono;
      m.add(j, -1);
      r.add_term(m, k.ell, c * mpq_class(k.mono[j]));
    }
    if (!k.ell[j].is_zero()) r.add_term(k.mono, k.ell, c * k.ell[j]);
  }
  return r;
}

double ep_eval(const ExpPoly& f, const std::vector<double>& x, double q) {
  if (x.size() != f.arity()) throw PreconditionError("ep_eval: dimension mismatch");
  double acc = 0.0;
  for (const auto& [k, c] : f.terms()) {
    double t = ps_eval_laurent(c, q);
    double e = 0.0;
    for (std::size_t j = 0; j < f.arity(); ++j) {
      if (k.mono[j]) t *= std::pow(x[j], static_cast<int>(k.mono[j]));
      if (!k.ell[j].is_zero()) e += ps_eval_laurent(k.ell[j], q) * x[j];
    }
    acc += t * std::exp(e);
  }
  return acc;
}

bool ep_eval_exact(const ExpPoly& f, const std::vector<mpq_class>& x, const mpq_class& q, mpq_class& out) {
  if (x.size() != f.arity()) throw PreconditionError("ep_eval: dimension mismatch");
  mpq_class acc = 0;
  for (const auto& [k, c] : f.terms()) {
    mpq_class e = 0;
    for (std::size_t j = 0; j < f.arity(); ++j)
      if (!k.ell[j].is_zero()) e += ps_eval_exact(k.ell[j], q) * x[j];
    if (e != 0) return false;
    mpq_class t = ps_eval_exact(c, q);
    for (std::size_t j = 0; j < f.arity(); ++j)
      for (unsigned i = 0; i < k.mono[j]; ++i) t *= x[j];
    acc += t;
  }
  out = acc;
  return true;
}

}  // namespace bx
