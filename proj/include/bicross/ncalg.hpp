#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "bicross/multiindex.hpp"
#include "bicross/paramseries.hpp"

namespace bx {

enum class Sector { K, L };

struct Generator {
  std::string name;
  Sector sector = Sector::K;
};

class AlgebraSpec;
using SpecPtr = std::shared_ptr<const AlgebraSpec>;

using Terms = std::map<MultiIndex, ParamSeries>;
using TKey = std::vector<MultiIndex>;
using TTerms = std::map<TKey, ParamSeries>;

// Linear combination of normal-ordered monomials.
class NCElement {
 public:
  NCElement() = default;
  explicit NCElement(SpecPtr spec);
  NCElement(SpecPtr spec, const Terms& terms, bool truncated = false);

  static NCElement one(SpecPtr spec);
  static NCElement scalar(SpecPtr spec, const ParamSeries& c);
  static NCElement generator(SpecPtr spec, std::size_t i);
  static NCElement generator(SpecPtr spec, const std::string& name);
  static NCElement monomial(SpecPtr spec, const MultiIndex& m, const ParamSeries& c);

  const SpecPtr& spec() const { return spec_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool truncated() const { return truncated_; }
  ParamSeries coeff(const MultiIndex& m) const;
  // highest total degree present (0 for the zero element)
  unsigned degree() const;

  void add_term(const MultiIndex& m, const ParamSeries& c);

  NCElement operator+(const NCElement& o) const;
  NCElement operator-(const NCElement& o) const;
  NCElement operator-() const;
  NCElement operator*(const NCElement& o) const;
  NCElement operator*(const ParamSeries& c) const;
  NCElement operator*(const mpq_class& c) const;
  NCElement& operator+=(const NCElement& o);
  NCElement& operator-=(const NCElement& o);

  bool operator==(const NCElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const NCElement& o) const { return !(*this == o); }

  // monomials of degree n keep only parameter orders p with n <= d + p and p <= Z
  NCElement window(int d, int Z) const;
  // the same terms re-homed in another spec with identical generators
  NCElement rehome(SpecPtr other) const;

  std::string str() const;

 private:
  void check_same(const NCElement& o) const;

  SpecPtr spec_;
  Terms terms_;
  bool truncated_ = false;
};

// Element of a tensor product of algebras; one spec per slot.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<SpecPtr> slots);
  Tensor(std::vector<SpecPtr> slots, const TTerms& terms, bool truncated = false);

  static Tensor one(std::vector<SpecPtr> slots);
  // a (x) b (x) ...
  static Tensor pure(const std::vector<NCElement>& factors);

  const std::vector<SpecPtr>& slots() const { return slots_; }
  std::size_t arity() const { return slots_.size(); }
  const TTerms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool truncated() const { return truncated_; }
  void mark_truncated() { truncated_ = true; }

  void add_term(const TKey& k, const ParamSeries& c);

  Tensor operator+(const Tensor& o) const;
  Tensor operator-(const Tensor& o) const;
  Tensor operator-() const;
  Tensor operator*(const Tensor& o) const;
  Tensor operator*(const ParamSeries& c) const;
  Tensor& operator+=(const Tensor& o);

  bool operator==(const Tensor& o) const { return terms_ == o.terms_; }
  bool operator!=(const Tensor& o) const { return !(*this == o); }

  // total degree n over all slots; see NCElement::window
  Tensor window(int d, int Z) const;

  std::string str() const;

 private:
  void check_same(const Tensor& o) const;

  std::vector<SpecPtr> slots_;
  TTerms terms_;
  bool truncated_ = false;
};

Tensor tensor_mul(const Tensor& a, const Tensor& b);

// Presentation of a finitely generated algebra with optional Hopf maps.
// Generators are ordered; relations give [g_j, g_i] for i < j in normal form.
class AlgebraSpec : public std::enable_shared_from_this<AlgebraSpec> {
 public:
  std::string name;
  ParamInfoPtr param;
  std::vector<Generator> gens;
  int D = 4;  // generator-degree cap
  int Z = 8;  // parameter top order
  // cross rules [l,k] between sectors may not contain generators of this sector
  Sector acting = Sector::K;

  // rule[j][i], i < j
  std::vector<std::vector<Terms>> rule;
  bool hopf = false;
  std::vector<TTerms> coproduct;
  std::vector<ParamSeries> counit;
  std::vector<Terms> antipode;

  // Rebuild the same presentation at other caps (set by whoever built it).
  std::function<SpecPtr(int D, int Z)> rebuild;
  SpecPtr at_caps(int D, int Z) const;

  std::size_t size() const { return gens.size(); }
  int index(const std::string& g) const;  // -1 when absent
  const Terms& rel(std::size_t j, std::size_t i) const { return rule[j][i]; }

  // m * g_g in normal form
  Terms mul_gen(const MultiIndex& m, std::size_t g, bool& truncated) const;
  // m * m' in normal form
  Terms mul_mono(const MultiIndex& m, const MultiIndex& mp, bool& truncated) const;

  // throws SpecError when a cross-sector rule contains acting-sector generators
  void check_admissible() const;
  // empty the caches (after editing tables)
  void clear_caches() const;

  // caches shared by hopf maps
  mutable std::recursive_mutex mu;
  mutable std::map<MultiIndex, std::pair<TTerms, bool>> coproduct_cache;
  mutable std::map<MultiIndex, std::pair<Terms, bool>> antipode_cache;

  ParamSeries zero() const { return ParamSeries(param, Z); }
  ParamSeries constant(const mpq_class& c) const { return ParamSeries::constant(param, Z, c); }

 private:
  mutable std::map<std::pair<MultiIndex, std::size_t>, std::pair<Terms, bool>> mul_cache_;
  mutable std::size_t steps_ = 0;
};

// empty spec skeleton (no relations, no Hopf maps)
std::shared_ptr<AlgebraSpec> make_spec(std::string name, ParamInfoPtr param, std::vector<Generator> gens, int D, int Z);

// product of a word of (generator index, power) pairs
NCElement normal_order(SpecPtr spec, const std::vector<std::pair<std::size_t, unsigned>>& word);
NCElement nc_mul(const NCElement& a, const NCElement& b);
NCElement commutator(const NCElement& a, const NCElement& b);

enum class Side { Left, Right };
// Left: a^m a' = sum_k C(m,k) ad_a^k(a') a^{m-k}
// Right: a' a^m = sum_k C(m,k) a^{m-k} rad_a^k(a'), rad_a(x) = xa - ax
NCElement adjoint_power_expand(const NCElement& a, const NCElement& aprime, unsigned m, Side side);

// Canonical text of a ParamSeries for element printing: "p/q·z^d" terms.
std::string coeff_str(const ParamSeries& c);

}  // namespace bx
