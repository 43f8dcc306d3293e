#include "bicross/expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "bicross/errors.hpp"

namespace bx {

bool SymbolTable::has(const std::string& s) const { return index(s) >= 0; }

int SymbolTable::index(const std::string& s) const {
  auto it = std::find(symbols.begin(), symbols.end(), s);
  return it == symbols.end() ? -1 : int(it - symbols.begin());
}

namespace {

struct Token {
  enum class T { Num, Ident, Op, End } t;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      bool dot = false;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || (s[j] == '.' && !dot))) {
        if (s[j] == '.') dot = true;
        ++j;
      }
      if (s.substr(i, j - i) == ".") throw ParseError("stray '.'", i);
      out.push_back({Token::T::Num, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::T::Ident, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (std::string("+-*/^()@").find(c) != std::string::npos) {
      out.push_back({Token::T::Op, std::string(1, c), i});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Token::T::End, "", s.size()});
  return out;
}

mpq_class decimal_value(const std::string& lit) {
  auto dot = lit.find('.');
  if (dot == std::string::npos) return mpq_class(mpz_class(lit));
  std::string whole = lit.substr(0, dot);
  std::string frac = lit.substr(dot + 1);
  if (whole.empty()) whole = "0";
  mpz_class num(whole + frac);
  mpz_class den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::shared_ptr<Ast> node(Ast::Kind k, std::size_t pos) {
  auto a = std::make_shared<Ast>();
  a->kind = k;
  a->pos = pos;
  return a;
}

// Affine form used to validate exp() arguments.
struct Affine {
  ParamSeries c0;
  std::map<std::string, ParamSeries> lin;
  bool scalar() const { return lin.empty(); }
};

ParamInfoPtr probe_param(const std::string& name) { return make_param(name, false, 1 << 20); }
constexpr int kProbeTop = 1 << 20;

Affine affine(const AstPtr& a, const std::string& param, const ParamInfoPtr& pinfo) {
  using K = Ast::Kind;
  Affine r;
  switch (a->kind) {
    case K::Num:
      r.c0 = ParamSeries::constant(pinfo, kProbeTop, a->num);
      return r;
    case K::Sym:
      if (a->sym == param) {
        r.c0 = ParamSeries::monomial(pinfo, kProbeTop, 1, 1);
      } else {
        r.lin[a->sym] = ParamSeries::constant(pinfo, kProbeTop, 1);
      }
      return r;
    case K::Neg: {
      Affine x = affine(a->kids[0], param, pinfo);
      x.c0 = -x.c0;
      for (auto& [k, v] : x.lin) v = -v;
      return x;
    }
    case K::Add: {
      for (const auto& kid : a->kids) {
        Affine x = affine(kid, param, pinfo);
        r.c0 += x.c0;
        for (auto& [k, v] : x.lin) r.lin[k] += v;
      }
      for (auto it = r.lin.begin(); it != r.lin.end();) it = it->second.is_zero() ? r.lin.erase(it) : std::next(it);
      return r;
    }
    case K::Mul: {
      r.c0 = ParamSeries::constant(pinfo, kProbeTop, 1);
      for (const auto& kid : a->kids) {
        Affine x = affine(kid, param, pinfo);
        if (!r.scalar() && !x.scalar()) throw ParseError("nonlinear exp argument", kid->pos);
        Affine n;
        if (r.scalar()) {
          n.c0 = r.c0 * x.c0;
          for (auto& [k, v] : x.lin) n.lin[k] = r.c0 * v;
          if (!x.lin.empty() && !x.c0.is_zero() && !r.c0.is_zero()) n.c0 = r.c0 * x.c0;
        } else {
          n.c0 = r.c0 * x.c0;
          for (auto& [k, v] : r.lin) n.lin[k] = v * x.c0;
        }
        for (auto it = n.lin.begin(); it != n.lin.end();) it = it->second.is_zero() ? n.lin.erase(it) : std::next(it);
        r = n;
      }
      return r;
    }
    case K::Div: {
      Affine x = affine(a->kids[0], param, pinfo);
      Affine d = affine(a->kids[1], param, pinfo);
      if (!d.scalar() || d.c0.coeffs().size() != 1) throw ParseError("division only by nonzero rationals or parameter monomials", a->kids[1]->pos);
      auto [deg, val] = *d.c0.coeffs().begin();
      ParamSeries inv = ParamSeries::monomial(pinfo, kProbeTop, 1 / val, -deg);
      x.c0 = x.c0 * inv;
      for (auto& [k, v] : x.lin) v = v * inv;
      return x;
    }
    case K::Pow: {
      Affine x = affine(a->kids[0], param, pinfo);
      if (a->power == 1) return x;
      if (!x.scalar()) throw ParseError("nonlinear exp argument", a->pos);
      return x;  // value irrelevant for the linearity check
    }
    case K::Exp:
      throw ParseError("nonlinear exp argument", a->pos);
  }
  return r;
}

class Parser {
 public:
  Parser(const std::string& text, const SymbolTable& table) : toks_(tokenize(text)), table_(table) {}

  AstPtr parse_all() {
    AstPtr e = expr();
    expect_end();
    return e;
  }

  std::vector<std::vector<AstPtr>> parse_tensor_all() {
    std::vector<std::vector<AstPtr>> out;
    bool neg = false;
    if (peek_op("+") || peek_op("-")) neg = next().text == "-";
    while (true) {
      std::vector<AstPtr> slots;
      std::size_t p0 = cur().pos;
      slots.push_back(term());
      while (peek_op("@")) {
        next();
        slots.push_back(term());
      }
      if (neg) {
        auto n = node(Ast::Kind::Neg, p0);
        n->kids.push_back(slots[0]);
        slots[0] = n;
      }
      out.push_back(std::move(slots));
      if (peek_op("+") || peek_op("-")) {
        neg = next().text == "-";
        continue;
      }
      break;
    }
    expect_end();
    return out;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }
  bool peek_op(const char* op) const { return cur().t == Token::T::Op && cur().text == op; }
  void expect_op(const char* op) {
    if (!peek_op(op)) throw ParseError(std::string("expected '") + op + "'", cur().pos);
    next();
  }
  void expect_end() {
    if (cur().t != Token::T::End) throw ParseError("unexpected '" + cur().text + "'", cur().pos);
  }

  AstPtr expr() {
    std::size_t p0 = cur().pos;
    AstPtr first = term();
    if (!(peek_op("+") || peek_op("-"))) return first;
    auto add = node(Ast::Kind::Add, p0);
    add->kids.push_back(first);
    while (peek_op("+") || peek_op("-")) {
      bool minus = next().text == "-";
      std::size_t p = cur().pos;
      AstPtr t = term();
      if (minus) {
        auto n = node(Ast::Kind::Neg, p);
        n->kids.push_back(t);
        t = n;
      }
      add->kids.push_back(t);
    }
    return add;
  }

  AstPtr term() {
    AstPtr cur_node = signed_factor();
    std::shared_ptr<Ast> open_mul;  // Mul built by this loop, still extendable
    while (peek_op("*") || peek_op("/")) {
      bool div = next().text == "/";
      std::size_t p = cur().pos;
      AstPtr f = signed_factor();
      if (div) {
        check_divisor(f);
        auto d = node(Ast::Kind::Div, cur_node->pos);
        d->kids = {cur_node, f};
        cur_node = d;
        open_mul.reset();
      } else if (open_mul) {
        open_mul->kids.push_back(f);
      } else {
        open_mul = node(Ast::Kind::Mul, cur_node->pos);
        open_mul->kids = {cur_node, f};
        cur_node = open_mul;
      }
      (void)p;
    }
    return cur_node;
  }

  AstPtr signed_factor() {
    if (peek_op("-")) {
      std::size_t p = next().pos;
      auto n = node(Ast::Kind::Neg, p);
      n->kids.push_back(signed_factor());
      return n;
    }
    return factor();
  }

  AstPtr factor() {
    AstPtr b = base();
    if (peek_op("^")) {
      std::size_t p = next().pos;
      bool neg = false;
      if (peek_op("-")) {
        next();
        neg = true;
      }
      if (cur().t != Token::T::Num || cur().text.find('.') != std::string::npos)
        throw ParseError("expected integer exponent", cur().pos);
      long v = std::stol(next().text);
      if (neg) {
        v = -v;
        if (!is_scalar(b)) throw ParseError("negative power of a non-parameter expression", p);
      }
      auto n = node(Ast::Kind::Pow, b->pos);
      n->kids.push_back(b);
      n->power = static_cast<int>(v);
      return n;
    }
    return b;
  }

  AstPtr base() {
    const Token& t = cur();
    if (t.t == Token::T::Num) {
      next();
      auto n = node(Ast::Kind::Num, t.pos);
      n->num = decimal_value(t.text);
      return n;
    }
    if (t.t == Token::T::Ident) {
      next();
      if (t.text == "exp") {
        std::size_t p = t.pos;
        expect_op("(");
        AstPtr arg = expr();
        expect_op(")");
        check_linear(arg);
        auto n = node(Ast::Kind::Exp, p);
        n->kids.push_back(arg);
        return n;
      }
      if (t.text != table_.param && !table_.has(t.text)) throw ParseError("unknown symbol '" + t.text + "'", t.pos);
      auto n = node(Ast::Kind::Sym, t.pos);
      n->sym = t.text;
      return n;
    }
    if (t.t == Token::T::Op && t.text == "(") {
      next();
      AstPtr e = expr();
      expect_op(")");
      auto copy = std::make_shared<Ast>(*e);
      copy->paren = true;
      return copy;
    }
    if (t.t == Token::T::End) throw ParseError("unexpected end of input", t.pos);
    throw ParseError("unexpected '" + t.text + "'", t.pos);
  }

  bool is_scalar(const AstPtr& a) const {
    if (a->kind == Ast::Kind::Sym) return a->sym == table_.param;
    if (a->kind == Ast::Kind::Exp) return false;
    for (const auto& k : a->kids)
      if (!is_scalar(k)) return false;
    return true;
  }

  void check_divisor(const AstPtr& d) {
    if (!is_scalar(d)) throw ParseError("division only by nonzero rationals or parameter monomials", d->pos);
    ParamSeries s = ast_scalar(d, probe_param(table_.param), kProbeTop);
    if (s.coeffs().size() != 1) throw ParseError("division only by nonzero rationals or parameter monomials", d->pos);
  }

  void check_linear(const AstPtr& arg) {
    Affine a = affine(arg, table_.param, probe_param(table_.param));
    if (!a.c0.is_zero()) throw ParseError("exp argument has a constant term", arg->pos);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const SymbolTable& table_;
};

int prec(const AstPtr& a) {
  using K = Ast::Kind;
  switch (a->kind) {
    case K::Add: return 1;
    case K::Mul:
    case K::Div: return 2;
    case K::Neg: return 3;
    case K::Pow: return 4;
    default: return 5;
  }
}

std::string num_literal(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  // parsed literals are finite decimals
  mpz_class den = q.get_den();
  unsigned twos = 0, fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  if (den != 1) return "(" + q.get_str() + ")";
  unsigned digits = std::max(twos, fives);
  mpz_class scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  mpz_class n = q.get_num() * scale / q.get_den();
  std::string s = n.get_str();
  bool neg = s[0] == '-';
  if (neg) s = s.substr(1);
  while (s.size() <= digits) s = "0" + s;
  s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

std::string pr(const AstPtr& a, int need) {
  using K = Ast::Kind;
  std::string s;
  switch (a->kind) {
    case K::Num: s = num_literal(a->num); break;
    case K::Sym: s = a->sym; break;
    case K::Add: {
      for (std::size_t i = 0; i < a->kids.size(); ++i) {
        const auto& k = a->kids[i];
        if (i == 0) {
          s += pr(k, 2);
        } else if (k->kind == K::Neg && !k->paren) {
          s += " - " + pr(k->kids[0], 2);
        } else {
          s += " + " + pr(k, 2);
        }
      }
      break;
    }
    case K::Mul:
      for (std::size_t i = 0; i < a->kids.size(); ++i) {
        if (i) s += "*";
        s += pr(a->kids[i], i == 0 ? 2 : 3);
      }
      break;
    case K::Div: s = pr(a->kids[0], 2) + "/" + pr(a->kids[1], 3); break;
    case K::Neg: s = "-" + pr(a->kids[0], 3); break;
    case K::Pow: s = pr(a->kids[0], 5) + "^" + std::to_string(a->power); break;
    case K::Exp: s = "exp(" + pr(a->kids[0], 0) + ")"; break;
  }
  if (a->paren || prec(a) < need) return "(" + s + ")";
  return s;
}

}  // namespace

AstPtr parse(const std::string& text, const SymbolTable& table) { return Parser(text, table).parse_all(); }

std::vector<std::vector<AstPtr>> parse_tensor(const std::string& text, const SymbolTable& table) {
  return Parser(text, table).parse_tensor_all();
}

std::string print(const AstPtr& ast) {
  if (!ast) return "";
  // the outermost parenthesis flag is not needed for a roundtrip
  auto top = std::make_shared<Ast>(*ast);
  top->paren = false;
  return pr(top, 0);
}

bool ast_equal(const AstPtr& a, const AstPtr& b) {
  if (a->kind != b->kind || a->paren != b->paren) return false;
  if (a->kind == Ast::Kind::Num && a->num != b->num) return false;
  if (a->kind == Ast::Kind::Sym && a->sym != b->sym) return false;
  if (a->kind == Ast::Kind::Pow && a->power != b->power) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!ast_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

namespace {
void collect(const AstPtr& a, std::set<std::string>& out) {
  if (a->kind == Ast::Kind::Sym) out.insert(a->sym);
  for (const auto& k : a->kids) collect(k, out);
}
}  // namespace

std::vector<std::string> ast_symbols(const AstPtr& ast, const std::string& param) {
  std::set<std::string> s;
  collect(ast, s);
  s.erase(param);
  return {s.begin(), s.end()};
}

ParamSeries ast_scalar(const AstPtr& a, ParamInfoPtr info, int top) {
  using K = Ast::Kind;
  switch (a->kind) {
    case K::Num: return ParamSeries::constant(info, top, a->num);
    case K::Sym:
      if (a->sym != info->name) throw ParseError("symbol '" + a->sym + "' in a scalar context", a->pos);
      return ParamSeries::monomial(info, top, 1, info->inverse ? -1 : 1);
    case K::Neg: return -ast_scalar(a->kids[0], info, top);
    case K::Add: {
      ParamSeries r(info, top);
      for (const auto& k : a->kids) r += ast_scalar(k, info, top);
      return r;
    }
    case K::Mul: {
      ParamSeries r = ParamSeries::constant(info, top, 1);
      for (const auto& k : a->kids) r = r * ast_scalar(k, info, top);
      return r;
    }
    case K::Div: {
      ParamSeries n = ast_scalar(a->kids[0], info, top);
      ParamSeries d = ast_scalar(a->kids[1], info, top);
      if (d.coeffs().size() != 1) throw ParseError("division only by nonzero rationals or parameter monomials", a->kids[1]->pos);
      auto [deg, val] = *d.coeffs().begin();
      return n * ParamSeries::monomial(info, top, 1 / val, -deg);
    }
    case K::Pow: {
      ParamSeries b = ast_scalar(a->kids[0], info, top);
      int p = a->power;
      if (p < 0) {
        if (b.coeffs().size() != 1) throw ParseError("negative power of a non-monomial", a->pos);
        auto [deg, val] = *b.coeffs().begin();
        b = ParamSeries::monomial(info, top, 1 / val, -deg);
        p = -p;
      }
      ParamSeries r = ParamSeries::constant(info, top, 1);
      for (int i = 0; i < p; ++i) r = r * b;
      return r;
    }
    case K::Exp: throw ParseError("exp in a scalar context", a->pos);
  }
  return ParamSeries(info, top);
}

}  // namespace bx
