#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bicross/multiindex.hpp"
#include "bicross/paramseries.hpp"

namespace bx {

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

// Expression tree. Sub/neg are spelled Add(..., Neg(x)); products of more
// than two factors are flat Mul nodes; division is binary and left-assoc.
struct Ast {
  enum class Kind { Num, Sym, Add, Mul, Div, Pow, Neg, Exp };
  Kind kind = Kind::Num;
  mpq_class num;
  std::string sym;
  int power = 0;
  std::vector<AstPtr> kids;
  std::size_t pos = 0;
  bool paren = false;  // came from an explicit parenthesis
};

// Names the parser will accept. The parameter is distinguished so that
// division by it can be validated.
struct SymbolTable {
  std::string param;
  std::vector<std::string> symbols;
  bool has(const std::string& s) const;
  int index(const std::string& s) const;  // -1 if not a symbol
};

AstPtr parse(const std::string& text, const SymbolTable& table);
// sum of slot products: "a @ b + c @ d"; each inner vector has one tree per slot
std::vector<std::vector<AstPtr>> parse_tensor(const std::string& text, const SymbolTable& table);
std::string print(const AstPtr& ast);
bool ast_equal(const AstPtr& a, const AstPtr& b);
// symbols (excluding the parameter) that occur in the tree
std::vector<std::string> ast_symbols(const AstPtr& ast, const std::string& param);

// A scalar subexpression (only numbers and the parameter) as a series.
// Throws ParseError when a symbol occurs.
ParamSeries ast_scalar(const AstPtr& ast, ParamInfoPtr info, int top);

// Linear form sum_j d_j x_j with ParamSeries weights.
using LinForm = std::vector<ParamSeries>;

// Sum of coeff * x^m * exp(l) over coordinates x_1..x_s.
class ExpPoly {
 public:
  struct Key {
    MultiIndex mono;
    LinForm ell;
    bool operator<(const Key& o) const;
    bool operator==(const Key& o) const { return mono == o.mono && ell == o.ell; }
  };
  using Terms = std::map<Key, ParamSeries>;

  ExpPoly() = default;
  ExpPoly(std::vector<std::string> coords, ParamInfoPtr info, int top);

  static ExpPoly constant(const ExpPoly& like, const ParamSeries& c);
  static ExpPoly coordinate(const ExpPoly& like, std::size_t j);
  static ExpPoly exponential(const ExpPoly& like, const LinForm& ell);

  const std::vector<std::string>& coords() const { return coords_; }
  std::size_t arity() const { return coords_.size(); }
  const ParamInfoPtr& info() const { return info_; }
  int top() const { return top_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool truncated() const;

  void add_term(const MultiIndex& m, const LinForm& ell, const ParamSeries& c);

  ExpPoly operator+(const ExpPoly& o) const;
  ExpPoly operator-(const ExpPoly& o) const;
  ExpPoly operator-() const;
  ExpPoly operator*(const ExpPoly& o) const;
  ExpPoly operator*(const ParamSeries& c) const;
  ExpPoly operator*(const mpq_class& c) const;
  ExpPoly& operator+=(const ExpPoly& o);

  bool operator==(const ExpPoly& o) const;
  bool operator!=(const ExpPoly& o) const { return !(*this == o); }

  // canonical text, parseable by parse() with the coordinates as symbols
  std::string str() const;

 private:
  void check_compatible(const ExpPoly& o) const;

  std::vector<std::string> coords_;
  ParamInfoPtr info_;
  int top_ = 8;
  Terms terms_;
};

ExpPoly to_exppoly(const AstPtr& ast, const std::vector<std::string>& coords, ParamInfoPtr info, int top);
ExpPoly ep_derive(const ExpPoly& f, std::size_t j);
double ep_eval(const ExpPoly& f, const std::vector<double>& x, double q);
// exact value when every exponential evaluates to exp(0); false otherwise
bool ep_eval_exact(const ExpPoly& f, const std::vector<mpq_class>& x, const mpq_class& q, mpq_class& out);

}  // namespace bx
