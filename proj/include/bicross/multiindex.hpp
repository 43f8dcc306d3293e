#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace bx {

// Exponent vector over an ordered generator (or coordinate) list.
// Fixed small capacity so it can be a cheap map key.
class MultiIndex {
 public:
  static constexpr std::size_t kMaxArity = 8;

  MultiIndex() = default;
  explicit MultiIndex(std::size_t arity);
  MultiIndex(std::initializer_list<unsigned> entries);
  explicit MultiIndex(const std::vector<unsigned>& entries);

  std::size_t size() const { return n_; }
  unsigned operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, unsigned v);
  void add(std::size_t i, int delta);

  unsigned total() const;
  bool is_zero() const { return total() == 0; }
  std::vector<unsigned> to_vector() const;
  std::string str() const;

  // unit vector e_i of the given arity
  static MultiIndex unit(std::size_t arity, std::size_t i);

  MultiIndex operator+(const MultiIndex& o) const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }
  // lexicographic
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.e_ < b.e_;
  }

 private:
  std::array<std::uint16_t, kMaxArity> e_{};
  std::uint8_t n_ = 0;
};

mpz_class factorial(unsigned n);
mpz_class binomial(unsigned n, unsigned k);

mpz_class mfactorial(const MultiIndex& m);
bool mleq(const MultiIndex& p, const MultiIndex& m);
mpz_class mcomb(const MultiIndex& m, const MultiIndex& p);
MultiIndex msub(const MultiIndex& m, const MultiIndex& p);

// all indices of the given arity with total degree <= max_total, graded then lex
std::vector<MultiIndex> indices_up_to(std::size_t arity, unsigned max_total);
// all p with p <= m
std::vector<MultiIndex> indices_below(const MultiIndex& m);

}  // namespace bx
