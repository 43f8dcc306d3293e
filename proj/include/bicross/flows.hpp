#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "bicross/bicross.hpp"
#include "bicross/expr.hpp"
#include "bicross/report.hpp"

namespace bx {

// Parameter window used for all function-algebra work; the catalog fields
// have finitely many parameter powers, so nothing is ever dropped at this size.
constexpr int kFunctionTop = 40;

// X = sum_j comp[j] d/dx_j on R^s
struct VectorField {
  std::vector<std::string> coords;
  std::vector<ExpPoly> comp;
  ParamInfoPtr info;
  std::size_t dim() const { return coords.size(); }
};

// component j = (l_j <| k_i) read as a function of the L coordinates
VectorField field_from_action(const BicrossData& data, std::size_t i);
ExpPoly apply_field(const VectorField& X, const ExpPoly& f);
// X(h); zero means h is a first integral
ExpPoly check_first_integral(const VectorField& X, const ExpPoly& h);

// coefficients (1/n!) X^n f, n = 0..N
std::vector<ExpPoly> flow_series(const VectorField& X, const ExpPoly& f, int N);

// per-coordinate flow series, coeff[j][n]
struct FlowSeries {
  std::vector<std::vector<ExpPoly>> coeff;
  int order = 0;
};
FlowSeries coordinate_flow(const VectorField& X, int N);

// Series in several flow times (time multi-index -> coefficient function).
using TimeSeries = std::map<MultiIndex, ExpPoly>;
void series_add(TimeSeries& a, const MultiIndex& m, const ExpPoly& c);
// product truncated at total time order N
TimeSeries series_mul(const TimeSeries& a, const TimeSeries& b, int N);

// f(G_1, ..., G_s) truncated at total time order N; each G_j must start with x_j
TimeSeries substitute(const ExpPoly& f, const std::vector<TimeSeries>& G, int N);
// Phi_r^{t_r} o ... o Phi_1^{t_1}, flow i in time variable i
std::vector<TimeSeries> flow_compose(const std::vector<FlowSeries>& flows, int N);
// Phi^{t2} o Phi^{t1} against Phi^{t1 + t2}, exact coefficient comparison
Report check_group_law(const VectorField& X, int N);

// Closed-form flow, evaluated over the complex numbers for Taylor checks.
struct ClosedFlow {
  using CVec = std::vector<std::complex<double>>;
  std::function<CVec(std::complex<double> s, const CVec& x, double q)> eval;
  std::function<bool(double s, const std::vector<double>& x, double q)> domain;

  std::vector<double> operator()(double s, const std::vector<double>& x, double q) const;
};

// Taylor coefficients in s of a closed flow at x by the Cauchy integral on |s| = r
std::vector<std::vector<double>> closed_flow_taylor(const ClosedFlow& flow, const std::vector<double>& x, double q,
                                                    int N, double r = 0.4, int points = 256);

struct NumericOptions {
  double h = 1e-3;
  double max_norm = 1e9;
  double max_error = 1e-4;
  bool record = false;
};

struct NumericFlow {
  std::vector<double> x;
  double error = 0;  // Richardson estimate |x_h - x_{h/2}| * 16/15
  std::vector<std::vector<double>> rows;  // s, x_1..x_s, error (when recorded)
};

// RK4 with fixed step; throws DomainError on blow-up or a large error estimate
NumericFlow flow_numeric(const VectorField& X, const std::vector<double>& x0, double s, double q,
                         const NumericOptions& opt = {});
void write_trajectory_csv(std::ostream& out, const VectorField& X, const NumericFlow& f);

double ep_value(const ExpPoly& f, const std::vector<double>& x, double q);
std::vector<double> field_value(const VectorField& X, const std::vector<double>& x, double q);

struct NamedIntegral {
  std::string name;
  ExpPoly h;
};

struct Stratum {
  bool fixed = false;
  std::vector<double> field;
  std::vector<std::pair<std::string, double>> integrals;
  json to_json() const;
};

Stratum classify_point(const VectorField& X, const std::vector<NamedIntegral>& integrals, const std::vector<double>& x,
                       double q, double tol = 1e-12);

}  // namespace bx
