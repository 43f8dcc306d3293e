#include "bicross/ncalg.hpp"

#include "bicross/errors.hpp"

namespace bx {

namespace {

constexpr std::size_t kStepBound = 50'000'000;
thread_local int g_depth = 0;

void accumulate(Terms& out, const MultiIndex& m, const ParamSeries& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = out.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
  }
}

void accumulate(TTerms& out, const TKey& k, const ParamSeries& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = out.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
  }
}

std::string mono_str(const AlgebraSpec& s, const MultiIndex& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += s.gens[i].name;
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

ParamSeries window_coeff(const ParamSeries& c, int n, int d, int Z) {
  ParamSeries r(c.info(), c.top());
  for (const auto& [p, v] : c.coeffs())
    if (p <= Z && n <= d + p) r.add_coeff(p, v);
  return r;
}

}  // namespace

std::string coeff_str(const ParamSeries& c) { return c.str(); }

// ---------------------------------------------------------------- AlgebraSpec

std::shared_ptr<AlgebraSpec> make_spec(std::string name, ParamInfoPtr param, std::vector<Generator> gens, int D, int Z) {
  if (gens.size() > MultiIndex::kMaxArity) throw SpecError("too many generators");
  auto s = std::make_shared<AlgebraSpec>();
  s->name = std::move(name);
  s->param = std::move(param);
  s->gens = std::move(gens);
  s->D = D;
  s->Z = Z;
  s->rule.assign(s->gens.size(), std::vector<Terms>(s->gens.size()));
  return s;
}

SpecPtr AlgebraSpec::at_caps(int D_, int Z_) const {
  if (!rebuild) throw PreconditionError("spec '" + name + "' cannot be rebuilt at other caps");
  return rebuild(D_, Z_);
}

int AlgebraSpec::index(const std::string& g) const {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == g) return static_cast<int>(i);
  return -1;
}

void AlgebraSpec::clear_caches() const {
  std::lock_guard<std::recursive_mutex> lk(mu);
  mul_cache_.clear();
  coproduct_cache.clear();
  antipode_cache.clear();
}

void AlgebraSpec::check_admissible() const {
  for (std::size_t j = 0; j < size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (gens[i].sector == gens[j].sector) continue;
      for (const auto& [m, c] : rule[j][i]) {
        for (std::size_t g = 0; g < size(); ++g) {
          if (m[g] > 0 && gens[g].sector == acting) {
            throw SpecError("inadmissible relation [" + gens[j].name + ", " + gens[i].name + "]: contains " +
                            gens[g].name);
          }
        }
      }
    }
  }
}

Terms AlgebraSpec::mul_gen(const MultiIndex& m, std::size_t g, bool& truncated) const {
  if (m.size() != size() || g >= size()) throw PreconditionError("mul_gen: arity mismatch");
  std::size_t last = size();
  for (std::size_t i = size(); i-- > 0;) {
    if (m[i] > 0) {
      last = i;
      break;
    }
  }
  if (last == size() || last <= g) {
    MultiIndex r = m;
    r.add(g, 1);
    if (static_cast<int>(r.total()) > D) {
      truncated = true;
      return {};
    }
    return {{r, constant(1)}};
  }

  std::lock_guard<std::recursive_mutex> lk(mu);
  auto key = std::make_pair(m, g);
  auto hit = mul_cache_.find(key);
  if (hit != mul_cache_.end()) {
    truncated = truncated || hit->second.second;
    return hit->second.first;
  }
  if (g_depth == 0) steps_ = 0;
  if (++steps_ > kStepBound) throw Error("normal ordering exceeded the step bound in '" + name + "'");
  ++g_depth;
  struct DepthGuard {
    ~DepthGuard() { --g_depth; }
  } guard;

  bool t = false;
  MultiIndex m2 = m;
  m2.add(last, -1);
  Terms out;
  // m g = (m2 g) L + m2 [L, g]
  Terms a = mul_gen(m2, g, t);
  for (const auto& [tm, c] : a) {
    Terms b = mul_gen(tm, last, t);
    for (const auto& [bm, bc] : b) accumulate(out, bm, c * bc);
  }
  for (const auto& [rm, rc] : rule[last][g]) {
    Terms b = mul_mono(m2, rm, t);
    for (const auto& [bm, bc] : b) accumulate(out, bm, rc * bc);
  }
  mul_cache_.emplace(key, std::make_pair(out, t));
  truncated = truncated || t;
  return out;
}

Terms AlgebraSpec::mul_mono(const MultiIndex& m, const MultiIndex& mp, bool& truncated) const {
  Terms cur{{m, constant(1)}};
  for (std::size_t i = 0; i < size(); ++i) {
    for (unsigned p = 0; p < mp[i]; ++p) {
      Terms next;
      for (const auto& [tm, c] : cur) {
        Terms b = mul_gen(tm, i, truncated);
        for (const auto& [bm, bc] : b) accumulate(next, bm, c * bc);
      }
      cur = std::move(next);
    }
  }
  return cur;
}

// ---------------------------------------------------------------- NCElement

NCElement::NCElement(SpecPtr spec) : spec_(std::move(spec)) {}

NCElement::NCElement(SpecPtr spec, const Terms& terms, bool truncated) : spec_(std::move(spec)), truncated_(truncated) {
  for (const auto& [m, c] : terms) add_term(m, c);
}

NCElement NCElement::one(SpecPtr spec) {
  NCElement e(spec);
  e.add_term(MultiIndex(spec->size()), spec->constant(1));
  return e;
}

NCElement NCElement::scalar(SpecPtr spec, const ParamSeries& c) {
  NCElement e(spec);
  e.add_term(MultiIndex(spec->size()), c);
  return e;
}

NCElement NCElement::generator(SpecPtr spec, std::size_t i) {
  NCElement e(spec);
  e.add_term(MultiIndex::unit(spec->size(), i), spec->constant(1));
  return e;
}

NCElement NCElement::generator(SpecPtr spec, const std::string& name) {
  int i = spec->index(name);
  if (i < 0) throw PreconditionError("unknown generator '" + name + "'");
  return generator(spec, static_cast<std::size_t>(i));
}

NCElement NCElement::monomial(SpecPtr spec, const MultiIndex& m, const ParamSeries& c) {
  NCElement e(spec);
  e.add_term(m, c);
  return e;
}

ParamSeries NCElement::coeff(const MultiIndex& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ParamSeries() : it->second;
}

unsigned NCElement::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total());
  return d;
}

void NCElement::add_term(const MultiIndex& m, const ParamSeries& c) {
  if (!spec_) throw PreconditionError("element without a spec");
  if (m.size() != spec_->size()) throw PreconditionError("monomial arity mismatch");
  if (static_cast<int>(m.total()) > spec_->D) {
    if (!c.is_zero()) truncated_ = true;
    return;
  }
  ParamSeries v = c.truncate(spec_->Z);
  if (v.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(m, spec_->zero());
  it->second += v;
  if (it->second.is_zero()) terms_.erase(it);
}

void NCElement::check_same(const NCElement& o) const {
  if (spec_ != o.spec_) throw PreconditionError("elements belong to different specs");
}

NCElement& NCElement::operator+=(const NCElement& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  truncated_ = truncated_ || o.truncated_;
  return *this;
}

NCElement& NCElement::operator-=(const NCElement& o) { return *this += -o; }

NCElement NCElement::operator+(const NCElement& o) const {
  NCElement r = *this;
  r += o;
  return r;
}

NCElement NCElement::operator-(const NCElement& o) const {
  NCElement r = *this;
  r -= o;
  return r;
}

NCElement NCElement::operator-() const {
  NCElement r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

NCElement NCElement::operator*(const NCElement& o) const { return nc_mul(*this, o); }

NCElement NCElement::operator*(const ParamSeries& c) const {
  NCElement r(spec_);
  r.truncated_ = truncated_;
  for (const auto& [m, v] : terms_) r.add_term(m, v * c);
  return r;
}

NCElement NCElement::operator*(const mpq_class& c) const {
  NCElement r(spec_);
  r.truncated_ = truncated_;
  for (const auto& [m, v] : terms_) r.add_term(m, v * c);
  return r;
}

NCElement NCElement::window(int d, int Z) const {
  NCElement r(spec_);
  for (const auto& [m, c] : terms_) r.add_term(m, window_coeff(c, static_cast<int>(m.total()), d, Z));
  return r;
}

NCElement NCElement::rehome(SpecPtr other) const {
  if (other->size() != spec_->size()) throw PreconditionError("rehome: generator count differs");
  NCElement r(other);
  r.truncated_ = truncated_;
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  return r;
}

std::string NCElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + coeff_str(c) + ")*" + mono_str(*spec_, m);
  }
  return out;
}

NCElement nc_mul(const NCElement& a, const NCElement& b) {
  if (a.spec() != b.spec()) throw PreconditionError("nc_mul: spec mismatch");
  const auto& s = *a.spec();
  Terms out;
  bool t = a.truncated() || b.truncated();
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      ParamSeries c = ca * cb;
      if (c.is_zero()) continue;
      Terms p = s.mul_mono(ma, mb, t);
      for (const auto& [pm, pc] : p) accumulate(out, pm, c * pc);
    }
  }
  return NCElement(a.spec(), out, t);
}

NCElement normal_order(SpecPtr spec, const std::vector<std::pair<std::size_t, unsigned>>& word) {
  NCElement r = NCElement::one(spec);
  for (const auto& [g, p] : word) {
    if (g >= spec->size()) throw PreconditionError("normal_order: generator index out of range");
    NCElement x = NCElement::generator(spec, g);
    for (unsigned i = 0; i < p; ++i) r = nc_mul(r, x);
  }
  return r;
}

NCElement commutator(const NCElement& a, const NCElement& b) { return nc_mul(a, b) - nc_mul(b, a); }

NCElement adjoint_power_expand(const NCElement& a, const NCElement& aprime, unsigned m, Side side) {
  if (a.spec() != aprime.spec()) throw PreconditionError("adjoint_power_expand: spec mismatch");
  if (static_cast<int>(m) > a.spec()->D) throw PreconditionError("adjoint_power_expand: m exceeds the degree cap");
  std::vector<NCElement> pw{NCElement::one(a.spec())};
  for (unsigned k = 1; k <= m; ++k) pw.push_back(nc_mul(pw.back(), a));
  NCElement ad = aprime;
  NCElement out(a.spec());
  for (unsigned k = 0; k <= m; ++k) {
    mpq_class c(binomial(m, k));
    if (side == Side::Left) {
      out += nc_mul(ad, pw[m - k]) * c;
      ad = nc_mul(a, ad) - nc_mul(ad, a);
    } else {
      out += nc_mul(pw[m - k], ad) * c;
      ad = nc_mul(ad, a) - nc_mul(a, ad);
    }
  }
  return out;
}

// ---------------------------------------------------------------- Tensor

Tensor::Tensor(std::vector<SpecPtr> slots) : slots_(std::move(slots)) {}

Tensor::Tensor(std::vector<SpecPtr> slots, const TTerms& terms, bool truncated)
    : slots_(std::move(slots)), truncated_(truncated) {
  for (const auto& [k, c] : terms) add_term(k, c);
}

Tensor Tensor::one(std::vector<SpecPtr> slots) {
  Tensor t(slots);
  TKey k;
  for (const auto& s : slots) k.emplace_back(s->size());
  t.add_term(k, slots.front()->constant(1));
  return t;
}

Tensor Tensor::pure(const std::vector<NCElement>& factors) {
  std::vector<SpecPtr> slots;
  for (const auto& f : factors) slots.push_back(f.spec());
  Tensor t(slots);
  std::vector<std::pair<TKey, ParamSeries>> acc{{TKey{}, slots.front()->constant(1)}};
  for (const auto& f : factors) {
    std::vector<std::pair<TKey, ParamSeries>> next;
    for (const auto& [k, c] : acc) {
      for (const auto& [m, v] : f.terms()) {
        TKey nk = k;
        nk.push_back(m);
        next.emplace_back(std::move(nk), c * v);
      }
    }
    acc = std::move(next);
    if (f.truncated()) t.truncated_ = true;
  }
  for (const auto& [k, c] : acc) t.add_term(k, c);
  return t;
}

void Tensor::add_term(const TKey& k, const ParamSeries& c) {
  if (k.size() != slots_.size()) throw PreconditionError("tensor key arity mismatch");
  int Z = slots_.front()->Z;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i].size() != slots_[i]->size()) throw PreconditionError("tensor slot arity mismatch");
    if (static_cast<int>(k[i].total()) > slots_[i]->D) {
      if (!c.is_zero()) truncated_ = true;
      return;
    }
    Z = std::min(Z, slots_[i]->Z);
  }
  ParamSeries v = c.truncate(Z);
  if (v.is_zero()) return;
  accumulate(terms_, k, v);
}

void Tensor::check_same(const Tensor& o) const {
  if (slots_ != o.slots_) throw PreconditionError("tensors have different slot specs");
}

Tensor& Tensor::operator+=(const Tensor& o) {
  check_same(o);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  truncated_ = truncated_ || o.truncated_;
  return *this;
}

Tensor Tensor::operator+(const Tensor& o) const {
  Tensor r = *this;
  r += o;
  return r;
}

Tensor Tensor::operator-() const {
  Tensor r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

Tensor Tensor::operator-(const Tensor& o) const { return *this + (-o); }

Tensor Tensor::operator*(const ParamSeries& c) const {
  Tensor r(slots_);
  r.truncated_ = truncated_;
  for (const auto& [k, v] : terms_) r.add_term(k, v * c);
  return r;
}

Tensor Tensor::operator*(const Tensor& o) const { return tensor_mul(*this, o); }

Tensor Tensor::window(int d, int Z) const {
  Tensor r(slots_);
  for (const auto& [k, c] : terms_) {
    int n = 0;
    for (const auto& m : k) n += static_cast<int>(m.total());
    r.add_term(k, window_coeff(c, n, d, Z));
  }
  return r;
}

std::string Tensor::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + coeff_str(c) + ")*";
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) out += " @ ";
      out += mono_str(*slots_[i], k[i]);
    }
  }
  return out;
}

Tensor tensor_mul(const Tensor& a, const Tensor& b) {
  if (a.slots() != b.slots()) throw PreconditionError("tensor_mul: slot mismatch");
  Tensor r(a.slots());
  bool t = a.truncated() || b.truncated();
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      ParamSeries c = ca * cb;
      if (c.is_zero()) continue;
      std::vector<std::pair<TKey, ParamSeries>> acc{{TKey{}, c}};
      for (std::size_t i = 0; i < ka.size() && !acc.empty(); ++i) {
        Terms p = a.slots()[i]->mul_mono(ka[i], kb[i], t);
        std::vector<std::pair<TKey, ParamSeries>> next;
        for (const auto& [k, v] : acc) {
          for (const auto& [pm, pc] : p) {
            TKey nk = k;
            nk.push_back(pm);
            next.emplace_back(std::move(nk), v * pc);
          }
        }
        acc = std::move(next);
      }
      for (const auto& [k, v] : acc) r.add_term(k, v);
    }
  }
  if (t) r.mark_truncated();
  return r;
}

}  // namespace bx
