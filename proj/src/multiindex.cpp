#include "bicross/multiindex.hpp"

#include <limits>

#include "bicross/errors.hpp"

namespace bx {

MultiIndex::MultiIndex(std::size_t arity) {
  if (arity > kMaxArity) throw PreconditionError("multi-index arity exceeds " + std::to_string(kMaxArity));
  n_ = static_cast<std::uint8_t>(arity);
}

MultiIndex::MultiIndex(std::initializer_list<unsigned> entries) : MultiIndex(entries.size()) {
  std::size_t i = 0;
  for (unsigned v : entries) set(i++, v);
}

MultiIndex::MultiIndex(const std::vector<unsigned>& entries) : MultiIndex(entries.size()) {
  for (std::size_t i = 0; i < entries.size(); ++i) set(i, entries[i]);
}

void MultiIndex::set(std::size_t i, unsigned v) {
  if (i >= n_) throw PreconditionError("multi-index position out of range");
  if (v > std::numeric_limits<std::uint16_t>::max()) throw PreconditionError("multi-index entry too large");
  e_[i] = static_cast<std::uint16_t>(v);
}

void MultiIndex::add(std::size_t i, int delta) {
  int v = static_cast<int>((*this)[i]) + delta;
  if (v < 0) throw PreconditionError("multi-index entry would become negative");
  set(i, static_cast<unsigned>(v));
}

unsigned MultiIndex::total() const {
  unsigned t = 0;
  for (std::size_t i = 0; i < n_; ++i) t += e_[i];
  return t;
}

std::vector<unsigned> MultiIndex::to_vector() const {
  return std::vector<unsigned>(e_.begin(), e_.begin() + n_);
}

std::string MultiIndex::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) s += ",";
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

MultiIndex MultiIndex::unit(std::size_t arity, std::size_t i) {
  MultiIndex m(arity);
  m.set(i, 1);
  return m;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (o.n_ != n_) throw PreconditionError("multi-index length mismatch");
  MultiIndex r(n_);
  for (std::size_t i = 0; i < n_; ++i) r.set(i, unsigned(e_[i]) + o.e_[i]);
  return r;
}

mpz_class factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class mfactorial(const MultiIndex& m) {
  mpz_class r = 1;
  for (std::size_t i = 0; i < m.size(); ++i) r *= factorial(m[i]);
  return r;
}

bool mleq(const MultiIndex& p, const MultiIndex& m) {
  if (p.size() != m.size()) throw PreconditionError("mleq: length mismatch");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > m[i]) return false;
  return true;
}

mpz_class mcomb(const MultiIndex& m, const MultiIndex& p) {
  if (!mleq(p, m)) throw PreconditionError("mcomb: p is not <= m");
  mpz_class r = 1;
  for (std::size_t i = 0; i < m.size(); ++i) r *= binomial(m[i], p[i]);
  return r;
}

MultiIndex msub(const MultiIndex& m, const MultiIndex& p) {
  if (!mleq(p, m)) throw PreconditionError("msub: p is not <= m");
  MultiIndex r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r.set(i, m[i] - p[i]);
  return r;
}

namespace {
void fill(std::vector<MultiIndex>& out, MultiIndex& cur, std::size_t pos, unsigned left) {
  if (pos + 1 == cur.size()) {
    cur.set(pos, left);
    out.push_back(cur);
    return;
  }
  for (unsigned v = left + 1; v-- > 0;) {
    cur.set(pos, v);
    fill(out, cur, pos + 1, left - v);
  }
}
}  // namespace

std::vector<MultiIndex> indices_up_to(std::size_t arity, unsigned max_total) {
  std::vector<MultiIndex> out;
  if (arity == 0) {
    out.emplace_back(0);
    return out;
  }
  for (unsigned t = 0; t <= max_total; ++t) {
    MultiIndex cur(arity);
    std::vector<MultiIndex> level;
    fill(level, cur, 0, t);
    // fill yields descending lex; we want ascending within a degree
    out.insert(out.end(), level.rbegin(), level.rend());
  }
  return out;
}

std::vector<MultiIndex> indices_below(const MultiIndex& m) {
  std::vector<MultiIndex> out;
  MultiIndex cur(m.size());
  if (m.size() == 0) {
    out.push_back(cur);
    return out;
  }
  while (true) {
    out.push_back(cur);
    std::size_t i = m.size();
    while (i-- > 0) {
      if (cur[i] < m[i]) {
        cur.set(i, cur[i] + 1);
        break;
      }
      cur.set(i, 0);
      if (i == 0) return out;
    }
  }
}

}  // namespace bx
