#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bicross/bicross.hpp"
#include "bicross/flows.hpp"
#include "bicross/report.hpp"

namespace bx {

// Truncated model of F(K): series in the second-kind coordinates of K whose
// coefficients are functions of the character (ExpPoly in the L coordinates).
using CoordSeries = TimeSeries;

struct InducedRep {
  std::vector<std::string> kcoords, lcoords;
  ParamInfoPtr info;
  int order = 0;
  std::vector<double> character;  // the inducing point a, kept for evaluation
  std::vector<VectorField> fields;
  // kmat[i][q] = kappa^q <| k_i (regular action via duality)
  std::vector<std::map<MultiIndex, CoordSeries>> kmat;
  // M[j](kappa) = l_j o Phi_(kappa)(x), to be read at x = a
  std::vector<CoordSeries> M;
  // [k_j, k_i] for i < j, from the K presentation
  std::vector<std::vector<Terms>> krel;
};

InducedRep induce(const BicrossData& data, const std::vector<double>& a, int N);

// generator by name; K generators act by the regular action, L generators by M_j
CoordSeries rep_apply(const InducedRep& rep, const std::string& gen, const CoordSeries& f);
CoordSeries rep_apply_word(const InducedRep& rep, const std::vector<std::string>& word, const CoordSeries& f);
CoordSeries model_monomial(const InducedRep& rep, const MultiIndex& m);

// [rho(x), rho(y)] = rho([x, y]) on kappa^m, |m| <= window; needs order > window
Report check_rep_relations(const InducedRep& rep, int window);
// B(kappa^m, kappa^n) = (-1)^|m| m! n! [m + n = T], |T| = order; B(rho(k) f, g) + B(f, rho(k) g) = 0
Report check_skew_symmetry(const InducedRep& rep);

// series at a point (parameter value q)
std::map<MultiIndex, double> series_value(const CoordSeries& f, const std::vector<double>& a, double q);
// exact values; throws DomainError when an exponential does not reduce to 1
std::map<MultiIndex, mpq_class> series_value_exact(const CoordSeries& f, const std::vector<mpq_class>& a,
                                                   const mpq_class& q);
std::string series_text(const std::map<MultiIndex, mpq_class>& f, const std::vector<std::string>& vars);

json rep_to_json(const InducedRep& rep, double q);

// Local representation from the character K^m |- 1 = c^m:
// e^{sK} |- l = e^{sc} Phi^s(l); lambda |- l = lambda(l) l.
struct LocalRepValue {
  double scalar = 1;
  std::vector<double> point;
};
LocalRepValue local_rep(const ClosedFlow& flow, double c, const std::vector<double>& l, double s, double q);

// Regular co-spaces. Elements are kappa l (in H*) or k lambda (in H), with the
// group K one-dimensional: k = e^{uK}.
enum class CoModule { HRight, HStarLeft, HLeft, HStarRight };  // (H,<), (H*,>), (H,>), (H*,<)

using LFunction = std::function<double(const std::vector<double>&)>;

struct CoSpaceElement {
  enum class Form { KappaL, KLambda } form = Form::KappaL;
  double scale = 1;
  std::function<double(double)> kappa;  // function on K (group time)
  std::vector<double> l;                // point of L
  double k = 0;                         // e^{kK}
  LFunction lambda;                     // function on L
};

struct CoSpaceActor {
  enum class Kind { Group, Function } kind = Kind::Group;
  double s = 0;  // e^{sK}
  LFunction lambda;
};

CoSpaceElement cospace_act(const CoSpaceElement& e, const CoSpaceActor& by, CoModule mod, const ClosedFlow& flow,
                           double q);

// Intertwiner f_k(kappa) = k > kappa between the representations induced at l
// and at the target (k |> l when not given), checked on a time grid.
struct EquivalenceOptions {
  std::vector<std::vector<double>> kappas = {{1}, {0, 1}, {0, 0, 1}};  // polynomial coefficients in t
  std::vector<double> tgrid = {-0.2, -0.1, 0, 0.1, 0.2};
  double tol = 1e-8;
};

Report equivalence_check(const ClosedFlow& flow, const std::vector<NamedIntegral>& lambdas, const std::vector<double>& l,
                         double s, double q, const EquivalenceOptions& opt = {},
                         const std::vector<double>* target = nullptr);

}  // namespace bx
