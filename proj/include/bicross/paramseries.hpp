#pragma once

#include <map>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace bx {

// Name of the deformation parameter. With `inverse` set the formal variable is
// 1/name (kappa-type deformations), so stored degree d means name^-d.
struct ParamInfo {
  std::string name = "z";
  bool inverse = false;
  int bottom = 2;  // B: lowest admissible degree is -B

  bool operator==(const ParamInfo& o) const {
    return name == o.name && inverse == o.inverse && bottom == o.bottom;
  }
};
using ParamInfoPtr = std::shared_ptr<const ParamInfo>;

ParamInfoPtr make_param(const std::string& name, bool inverse = false, int bottom = 2);

// Truncated Laurent polynomial in the formal parameter with rational
// coefficients. Degrees above `top` are dropped (sticky flag), degrees
// below -bottom throw ParamError.
class ParamSeries {
 public:
  ParamSeries() = default;  // untyped zero, adopts the partner's parameter
  ParamSeries(ParamInfoPtr info, int top);
  static ParamSeries constant(ParamInfoPtr info, int top, const mpq_class& c);
  static ParamSeries monomial(ParamInfoPtr info, int top, const mpq_class& c, int degree);
  // untyped rational constant
  static ParamSeries scalar(const mpq_class& c);

  const ParamInfoPtr& info() const { return info_; }
  int top() const { return top_; }
  bool truncated() const { return truncated_; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const;
  const std::map<int, mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(int d) const;
  int min_degree() const;
  int max_degree() const;

  void set_coeff(int d, const mpq_class& v);
  void add_coeff(int d, const mpq_class& v);

  ParamSeries operator-() const;
  ParamSeries& operator+=(const ParamSeries& o);
  ParamSeries& operator-=(const ParamSeries& o);
  ParamSeries operator+(const ParamSeries& o) const;
  ParamSeries operator-(const ParamSeries& o) const;
  ParamSeries operator*(const ParamSeries& o) const;
  ParamSeries operator*(const mpq_class& q) const;
  ParamSeries& operator*=(const mpq_class& q);

  // coefficients with degree > top dropped, flag set when something went
  ParamSeries truncate(int top) const;
  // same coefficients, larger window (no information is added)
  ParamSeries with_top(int top) const;
  // only degrees <= d kept, used for window comparisons
  ParamSeries window(int d) const;

  // coefficient equality; flags and windows are not compared
  bool operator==(const ParamSeries& o) const { return c_ == o.c_; }
  bool operator!=(const ParamSeries& o) const { return !(*this == o); }
  bool operator<(const ParamSeries& o) const { return c_ < o.c_; }

  std::string str() const;

 private:
  void adopt(const ParamSeries& o);
  void clean(int d);

  ParamInfoPtr info_;
  int top_ = 1 << 20;
  bool truncated_ = false;
  std::map<int, mpq_class> c_;
};

ParamSeries ps_add(const ParamSeries& a, const ParamSeries& b);
ParamSeries ps_mul(const ParamSeries& a, const ParamSeries& b);
ParamSeries ps_neg(const ParamSeries& a);
// c^n / n!
ParamSeries ps_exp_series(const ParamSeries& c, unsigned n);
// Horner evaluation; throws ParamError when negative powers are present
double ps_eval(const ParamSeries& a, double q);
// also accepts negative powers (q must be nonzero then)
double ps_eval_laurent(const ParamSeries& a, double q);
// exact evaluation at a rational parameter value
mpq_class ps_eval_exact(const ParamSeries& a, const mpq_class& q);

std::string rational_str(const mpq_class& q);

}  // namespace bx
