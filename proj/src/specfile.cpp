#include "bicross/specfile.hpp"

#include <fstream>
#include <sstream>

#include "bicross/errors.hpp"

namespace bx {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const SpecSource& src, int line, const std::string& msg) {
  throw SpecError(src.origin + ":" + std::to_string(line) + ": " + msg);
}

bool parse_bool(const SpecSource& src, int line, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  fail(src, line, "expected a boolean, got '" + v + "'");
}

Sector parse_sector(const SpecSource& src, int line, const std::string& v) {
  if (v == "K") return Sector::K;
  if (v == "L") return Sector::L;
  fail(src, line, "sector must be K or L, got '" + v + "'");
}

}  // namespace

SymbolTable SpecSource::symbols() const {
  SymbolTable t;
  t.param = param;
  for (const auto& g : gens) t.symbols.push_back(g.name);
  return t;
}

ParamInfoPtr SpecSource::param_info() const { return make_param(param, inverse, bottom); }

SpecSource parse_spec_text(const std::string& text, const std::string& origin) {
  SpecSource src;
  src.origin = origin;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (s.front() == '[' && s.back() == ']' && eq == std::string::npos) {
      section = trim(s.substr(1, s.size() - 2));
      static const char* known[] = {"algebra", "generators", "relations", "coproduct", "counit",
                                    "antipode", "action", "coaction", "star"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) fail(src, line, "unknown section [" + section + "]");
      continue;
    }
    if (eq == std::string::npos) fail(src, line, "expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (section.empty()) fail(src, line, "entry outside of a section");
    if (val.empty()) fail(src, line, "empty value for '" + key + "'");

    if (section == "algebra") {
      if (key == "name") src.name = val;
      else if (key == "parameter") src.param = val;
      else if (key == "inverse") src.inverse = parse_bool(src, line, val);
      else if (key == "bottom") src.bottom = std::stoi(val);
      else if (key == "acting") src.acting = parse_sector(src, line, val);
      else fail(src, line, "unknown [algebra] key '" + key + "'");
    } else if (section == "generators") {
      src.gens.push_back({key, parse_sector(src, line, val)});
    } else if (section == "relations") {
      if (key.size() < 2 || key.front() != '[' || key.back() != ']') fail(src, line, "relation must read [A, B] = value");
      std::string inner = key.substr(1, key.size() - 2);
      auto comma = inner.find(',');
      if (comma == std::string::npos) fail(src, line, "relation must read [A, B] = value");
      src.relations.push_back({trim(inner.substr(0, comma)) + "," + trim(inner.substr(comma + 1)), val, line});
    } else if (section == "action") {
      auto op = key.find("<|");
      if (op == std::string::npos) fail(src, line, "action must read l <| k = value");
      src.action.push_back({trim(key.substr(0, op)) + "," + trim(key.substr(op + 2)), val, line});
    } else {
      SpecSource::Entry e{key, val, line};
      if (section == "coproduct") src.coproduct.push_back(e);
      else if (section == "counit") src.counit.push_back(e);
      else if (section == "antipode") src.antipode.push_back(e);
      else if (section == "coaction") src.coaction.push_back(e);
      else if (section == "star") src.star.push_back(e);
    }
  }
  if (src.name.empty()) fail(src, line, "missing [algebra] name");
  if (src.gens.empty()) fail(src, line, "no generators declared");
  for (std::size_t i = 0; i < src.gens.size(); ++i) {
    if (src.gens[i].name == src.param) fail(src, 0, "generator named like the parameter");
    for (std::size_t j = 0; j < i; ++j)
      if (src.gens[i].name == src.gens[j].name) fail(src, 0, "duplicate generator " + src.gens[i].name);
  }
  return src;
}

SpecSource load_spec_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SpecError("cannot open spec file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_spec_text(ss.str(), path);
}

NCElement nc_exp(const NCElement& x) {
  const auto& s = x.spec();
  for (const auto& [m, c] : x.terms())
    if (m.is_zero()) throw SpecError("exp of an element with a constant term");
  NCElement sum = NCElement::one(s);
  NCElement pw = NCElement::one(s);
  int cap = s->D + s->Z + 2;
  for (int n = 1; n <= cap; ++n) {
    pw = nc_mul(pw, x) * mpq_class(1, n);
    if (pw.is_zero()) break;
    sum += pw;
  }
  return sum;
}

NCElement eval_element(const SpecPtr& spec, const AstPtr& a) {
  using K = Ast::Kind;
  switch (a->kind) {
    case K::Num: return NCElement::scalar(spec, spec->constant(a->num));
    case K::Sym: {
      if (a->sym == spec->param->name) return NCElement::scalar(spec, ast_scalar(a, spec->param, spec->Z));
      int i = spec->index(a->sym);
      if (i < 0) throw ParseError("unknown generator '" + a->sym + "'", a->pos);
      return NCElement::generator(spec, static_cast<std::size_t>(i));
    }
    case K::Neg: return -eval_element(spec, a->kids[0]);
    case K::Add: {
      NCElement r(spec);
      for (const auto& k : a->kids) r += eval_element(spec, k);
      return r;
    }
    case K::Mul: {
      NCElement r = NCElement::one(spec);
      for (const auto& k : a->kids) r = nc_mul(r, eval_element(spec, k));
      return r;
    }
    case K::Div: {
      ParamSeries d = ast_scalar(a->kids[1], spec->param, spec->Z);
      if (d.coeffs().size() != 1) throw ParseError("division only by nonzero rationals or parameter monomials", a->kids[1]->pos);
      auto [deg, val] = *d.coeffs().begin();
      return eval_element(spec, a->kids[0]) * ParamSeries::monomial(spec->param, spec->Z, 1 / val, -deg);
    }
    case K::Pow: {
      if (a->power < 0) return NCElement::scalar(spec, ast_scalar(a, spec->param, spec->Z));
      NCElement b = eval_element(spec, a->kids[0]);
      NCElement r = NCElement::one(spec);
      for (int i = 0; i < a->power; ++i) r = nc_mul(r, b);
      return r;
    }
    case K::Exp: return nc_exp(eval_element(spec, a->kids[0]));
  }
  return NCElement(spec);
}

Tensor eval_tensor(const std::vector<SpecPtr>& slots, const std::vector<std::vector<AstPtr>>& terms) {
  Tensor t(slots);
  for (const auto& term : terms) {
    if (term.size() != slots.size())
      throw ParseError("expected " + std::to_string(slots.size()) + " tensor slots", term.front()->pos);
    std::vector<NCElement> f;
    for (std::size_t i = 0; i < slots.size(); ++i) f.push_back(eval_element(slots[i], term[i]));
    t += Tensor::pure(f);
  }
  return t;
}

namespace {

Terms truncate_terms(const Terms& t, int Z) {
  Terms r;
  for (const auto& [m, c] : t) {
    ParamSeries v = c.truncate(Z);
    if (!v.is_zero()) r.emplace(m, v);
  }
  return r;
}

TTerms truncate_terms(const TTerms& t, int Z) {
  TTerms r;
  for (const auto& [k, c] : t) {
    ParamSeries v = c.truncate(Z);
    if (!v.is_zero()) r.emplace(k, v);
  }
  return r;
}

std::size_t gen_index(const SpecSource& src, const SpecPtr& s, const std::string& g, int line) {
  int i = s->index(g);
  if (i < 0) fail(src, line, "unknown generator '" + g + "'");
  return static_cast<std::size_t>(i);
}

void check_poles(const SpecSource& src, const Terms& t, const std::string& what, int line) {
  for (const auto& [m, c] : t)
    if (!c.is_zero() && c.min_degree() < 0) fail(src, line, "uncancelled parameter pole in " + what);
}

AstPtr parse_at(const SpecSource& src, const SpecSource::Entry& e, const SymbolTable& tab) {
  try {
    return parse(e.text, tab);
  } catch (const ParseError& err) {
    fail(src, e.line, err.what());
  }
}

}  // namespace

SpecPtr build_spec(const SpecSource& src, int D, int Z) {
  if (D < 1 || Z < 0) throw PreconditionError("caps must satisfy D >= 1, Z >= 0");
  ParamInfoPtr pinfo = src.param_info();
  SymbolTable tab = src.symbols();
  auto work = make_spec(src.name, pinfo, src.gens, D, Z + src.bottom);
  work->acting = src.acting;
  SpecPtr w = work;

  // relations, iterated until the table is stable (values may use other rules)
  struct Rel {
    std::size_t hi, lo;
    bool flip;
    AstPtr ast;
    int line;
  };
  std::vector<Rel> rels;
  for (const auto& e : src.relations) {
    auto comma = e.key.find(',');
    std::size_t a = gen_index(src, w, e.key.substr(0, comma), e.line);
    std::size_t b = gen_index(src, w, e.key.substr(comma + 1), e.line);
    if (a == b) fail(src, e.line, "relation of a generator with itself");
    rels.push_back({std::max(a, b), std::min(a, b), a < b, parse_at(src, e, tab), e.line});
  }
  std::size_t passes = rels.size() + 2;
  for (std::size_t pass = 0;; ++pass) {
    bool changed = false;
    std::vector<Terms> fresh;
    for (const auto& r : rels) {
      NCElement v;
      try {
        v = eval_element(w, r.ast);
      } catch (const ParseError& err) {
        fail(src, r.line, err.what());
      }
      if (r.flip) v = -v;
      fresh.push_back(v.terms());
    }
    for (std::size_t i = 0; i < rels.size(); ++i) {
      if (work->rule[rels[i].hi][rels[i].lo] != fresh[i]) {
        work->rule[rels[i].hi][rels[i].lo] = fresh[i];
        changed = true;
      }
    }
    work->clear_caches();
    if (!changed) break;
    if (pass > passes) throw SpecError(src.origin + ": relation values do not stabilise");
  }
  work->check_admissible();

  std::size_t n = src.gens.size();
  bool any_hopf = !src.coproduct.empty() || !src.counit.empty() || !src.antipode.empty();
  std::vector<TTerms> cop(n);
  std::vector<ParamSeries> eps(n, work->zero());
  std::vector<Terms> ant(n);
  if (any_hopf) {
    std::vector<bool> seen_c(n), seen_e(n), seen_s(n);
    for (const auto& e : src.coproduct) {
      std::size_t g = gen_index(src, w, e.key, e.line);
      try {
        cop[g] = eval_tensor({w, w}, parse_tensor(e.text, tab)).terms();
      } catch (const ParseError& err) {
        fail(src, e.line, err.what());
      }
      seen_c[g] = true;
    }
    for (const auto& e : src.counit) {
      std::size_t g = gen_index(src, w, e.key, e.line);
      eps[g] = ast_scalar(parse_at(src, e, tab), pinfo, w->Z);
      seen_e[g] = true;
    }
    for (const auto& e : src.antipode) {
      std::size_t g = gen_index(src, w, e.key, e.line);
      try {
        ant[g] = eval_element(w, parse_at(src, e, tab)).terms();
      } catch (const ParseError& err) {
        fail(src, e.line, err.what());
      }
      seen_s[g] = true;
    }
    for (std::size_t g = 0; g < n; ++g) {
      if (!seen_c[g] || !seen_e[g] || !seen_s[g])
        throw SpecError(src.origin + ": Hopf maps incomplete for generator " + src.gens[g].name);
    }
  }

  auto out = make_spec(src.name, pinfo, src.gens, D, Z);
  out->acting = src.acting;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      out->rule[j][i] = truncate_terms(work->rule[j][i], Z);
      check_poles(src, out->rule[j][i], "[" + src.gens[j].name + ", " + src.gens[i].name + "]", 0);
    }
  if (any_hopf) {
    out->hopf = true;
    for (std::size_t g = 0; g < n; ++g) {
      out->coproduct.push_back(truncate_terms(cop[g], Z));
      out->counit.push_back(eps[g].truncate(Z));
      out->antipode.push_back(truncate_terms(ant[g], Z));
    }
  }
  SpecSource copy = src;
  out->rebuild = [copy](int d, int z) { return build_spec(copy, d, z); };
  return out;
}

std::string dump_spec(const SpecPtr& s) {
  std::ostringstream o;
  o << "[algebra]\nname = " << s->name << "\nparameter = " << s->param->name
    << "\ninverse = " << (s->param->inverse ? "true" : "false") << "\nD = " << s->D << "\nZ = " << s->Z << "\n";
  o << "[generators]\n";
  for (const auto& g : s->gens) o << g.name << " = " << (g.sector == Sector::K ? "K" : "L") << "\n";
  o << "[relations]\n";
  for (std::size_t j = 0; j < s->size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      o << "[" << s->gens[j].name << ", " << s->gens[i].name << "] = " << NCElement(s, s->rule[j][i]).str() << "\n";
  if (s->hopf) {
    o << "[coproduct]\n";
    for (std::size_t g = 0; g < s->size(); ++g)
      o << s->gens[g].name << " = " << Tensor({s, s}, s->coproduct[g]).str() << "\n";
    o << "[counit]\n";
    for (std::size_t g = 0; g < s->size(); ++g) o << s->gens[g].name << " = " << coeff_str(s->counit[g]) << "\n";
    o << "[antipode]\n";
    for (std::size_t g = 0; g < s->size(); ++g)
      o << s->gens[g].name << " = " << NCElement(s, s->antipode[g]).str() << "\n";
  }
  return o.str();
}

}  // namespace bx
