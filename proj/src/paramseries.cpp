#include "bicross/paramseries.hpp"

#include <cmath>

#include "bicross/errors.hpp"
#include "bicross/multiindex.hpp"

namespace bx {

ParamInfoPtr make_param(const std::string& name, bool inverse, int bottom) {
  auto p = std::make_shared<ParamInfo>();
  p->name = name;
  p->inverse = inverse;
  p->bottom = bottom;
  return p;
}

ParamSeries::ParamSeries(ParamInfoPtr info, int top) : info_(std::move(info)), top_(top) {}

ParamSeries ParamSeries::constant(ParamInfoPtr info, int top, const mpq_class& c) {
  return monomial(std::move(info), top, c, 0);
}

ParamSeries ParamSeries::monomial(ParamInfoPtr info, int top, const mpq_class& c, int degree) {
  ParamSeries s(std::move(info), top);
  s.add_coeff(degree, c);
  return s;
}

ParamSeries ParamSeries::scalar(const mpq_class& c) {
  ParamSeries s;
  s.add_coeff(0, c);
  return s;
}

bool ParamSeries::is_constant() const {
  return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0);
}

mpq_class ParamSeries::coeff(int d) const {
  auto it = c_.find(d);
  return it == c_.end() ? mpq_class(0) : it->second;
}

int ParamSeries::min_degree() const { return c_.empty() ? 0 : c_.begin()->first; }
int ParamSeries::max_degree() const { return c_.empty() ? 0 : c_.rbegin()->first; }

void ParamSeries::clean(int d) {
  auto it = c_.find(d);
  if (it != c_.end() && it->second == 0) c_.erase(it);
}

void ParamSeries::set_coeff(int d, const mpq_class& v) {
  c_.erase(d);
  add_coeff(d, v);
}

void ParamSeries::add_coeff(int d, const mpq_class& v) {
  if (v == 0) return;
  if (d > top_) {
    truncated_ = true;
    return;
  }
  int bottom = info_ ? info_->bottom : 0;
  if (d < -bottom) {
    throw ParamError("parameter degree " + std::to_string(d) + " below Laurent window -" +
                     std::to_string(bottom) + (info_ ? " in " + info_->name : std::string()));
  }
  auto [it, fresh] = c_.try_emplace(d, v);
  if (!fresh) {
    it->second += v;
    if (it->second == 0) c_.erase(it);
  }
}

void ParamSeries::adopt(const ParamSeries& o) {
  if (!o.info_) {
    top_ = std::min(top_, o.top_);
    truncated_ = truncated_ || o.truncated_;
    return;
  }
  if (!info_) {
    info_ = o.info_;
  } else if (info_ != o.info_ && !(*info_ == *o.info_)) {
    throw ParamError("parameter mismatch: " + info_->name + " vs " + o.info_->name);
  }
  top_ = std::min(top_, o.top_);
  truncated_ = truncated_ || o.truncated_;
}

ParamSeries ParamSeries::operator-() const {
  ParamSeries r = *this;
  for (auto& [d, v] : r.c_) v = -v;
  return r;
}

ParamSeries& ParamSeries::operator+=(const ParamSeries& o) {
  adopt(o);
  for (const auto& [d, v] : o.c_) add_coeff(d, v);
  // a narrower window may have been adopted
  while (!c_.empty() && c_.rbegin()->first > top_) {
    c_.erase(std::prev(c_.end()));
    truncated_ = true;
  }
  return *this;
}

ParamSeries& ParamSeries::operator-=(const ParamSeries& o) { return *this += -o; }

ParamSeries ParamSeries::operator+(const ParamSeries& o) const {
  ParamSeries r = *this;
  r += o;
  return r;
}

ParamSeries ParamSeries::operator-(const ParamSeries& o) const {
  ParamSeries r = *this;
  r -= o;
  return r;
}

ParamSeries ParamSeries::operator*(const ParamSeries& o) const {
  ParamSeries r(info_, top_);
  r.truncated_ = truncated_;
  r.adopt(o);
  mpq_class t;
  for (const auto& [da, va] : c_) {
    for (const auto& [db, vb] : o.c_) {
      if (da + db > r.top_) {
        r.truncated_ = true;
        continue;
      }
      t = va * vb;
      r.add_coeff(da + db, t);
    }
  }
  return r;
}

ParamSeries ParamSeries::operator*(const mpq_class& q) const {
  ParamSeries r = *this;
  r *= q;
  return r;
}

ParamSeries& ParamSeries::operator*=(const mpq_class& q) {
  if (q == 0) {
    c_.clear();
    return *this;
  }
  for (auto& [d, v] : c_) v *= q;
  return *this;
}

ParamSeries ParamSeries::truncate(int top) const {
  ParamSeries r(info_, top);
  r.truncated_ = truncated_;
  for (const auto& [d, v] : c_) r.add_coeff(d, v);
  return r;
}

ParamSeries ParamSeries::with_top(int top) const {
  ParamSeries r = *this;
  r.top_ = top;
  return r;
}

ParamSeries ParamSeries::window(int d) const {
  ParamSeries r = *this;
  while (!r.c_.empty() && r.c_.rbegin()->first > d) r.c_.erase(std::prev(r.c_.end()));
  return r;
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

std::string ParamSeries::str() const {
  if (c_.empty()) return "0";
  std::string name = info_ ? info_->name : "?";
  bool inv = info_ && info_->inverse;
  std::string out;
  bool first = true;
  for (const auto& [d, v] : c_) {
    if (!first) out += " + ";
    first = false;
    out += rational_str(v);
    if (d != 0) {
      int shown = inv ? -d : d;
      out += "·" + name;
      if (shown != 1) out += "^" + std::to_string(shown);
    }
  }
  return out;
}

ParamSeries ps_add(const ParamSeries& a, const ParamSeries& b) { return a + b; }
ParamSeries ps_mul(const ParamSeries& a, const ParamSeries& b) { return a * b; }
ParamSeries ps_neg(const ParamSeries& a) { return -a; }

ParamSeries ps_exp_series(const ParamSeries& c, unsigned n) {
  ParamSeries r = ParamSeries::scalar(1);
  for (unsigned i = 0; i < n; ++i) r = r * c;
  mpq_class inv(1);
  inv /= mpq_class(factorial(n));
  return r * inv;
}

double ps_eval(const ParamSeries& a, double q) {
  if (!a.is_zero() && a.min_degree() < 0) throw ParamError("ps_eval: residual negative powers");
  return ps_eval_laurent(a, q);
}

double ps_eval_laurent(const ParamSeries& a, double q) {
  if (a.is_zero()) return 0.0;
  bool inv = a.info() && a.info()->inverse;
  double x = q;
  if (inv) {
    if (q == 0.0) throw ParamError("ps_eval: inverse parameter evaluated at zero");
    x = 1.0 / q;
  }
  int lo = a.min_degree();
  int hi = a.max_degree();
  if (lo < 0 && x == 0.0) throw ParamError("ps_eval: negative power at zero");
  // Horner over [max(lo,0), hi], then scale for the polar part
  double acc = 0.0;
  int base = std::min(lo, 0);
  for (int d = hi; d >= base; --d) acc = acc * x + a.coeff(d).get_d();
  if (base < 0) acc *= std::pow(x, base);
  return acc;
}

mpq_class ps_eval_exact(const ParamSeries& a, const mpq_class& q) {
  bool inv = a.info() && a.info()->inverse;
  mpq_class x = q;
  if (inv) {
    if (q == 0) throw ParamError("ps_eval: inverse parameter evaluated at zero");
    x = 1 / q;
  }
  mpq_class acc = 0;
  for (const auto& [d, v] : a.coeffs()) {
    mpq_class p = 1;
    if (d < 0 && x == 0) throw ParamError("ps_eval: negative power at zero");
    for (int i = 0; i < std::abs(d); ++i) p *= x;
    if (d < 0) p = 1 / p;
    acc += v * p;
  }
  return acc;
}

}  // namespace bx
