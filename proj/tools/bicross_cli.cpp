// bicross: checks, flows and induced representations for bicrossproduct Hopf algebras
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bicross/bicross.hpp"
#include "bicross/catalog.hpp"
#include "bicross/errors.hpp"
#include "bicross/flows.hpp"
#include "bicross/hopf.hpp"
#include "bicross/induction.hpp"
#include "bicross/pairing.hpp"
#include "bicross/specfile.hpp"

using namespace bx;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kDomain = 3 };

struct RunConfig {
  std::string sub;
  std::string algebra;
  std::string dual;  // spec file for check-pairing with a file algebra
  int D = 4, Z = 8, N = 8;
  int degree = -1;  // -1: per-command default
  std::string param;  // kept as text so rational values stay exact
  std::string character, x0, l, target, kappa_c = "0", hexpr;
  double s = 0;
  std::string compare, csv, format = "json", output;
  bool dump = false, use_dual = false, star = false;
  double h = 1e-3, tol = 1e-8;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_catalog(const std::string& a) {
  for (const auto& n : catalog_list())
    if (n == a) return true;
  return false;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(tok);
  return out;
}

std::vector<double> parse_vec(const std::string& s, const char* what) {
  std::vector<double> v;
  for (const auto& t : split(s)) {
    try {
      std::size_t pos = 0;
      v.push_back(std::stod(t, &pos));
      if (t.find_first_not_of(" \t", pos) != std::string::npos) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad number in --") + what + ": '" + t + "'");
    }
  }
  if (v.empty()) throw UsageError(std::string("--") + what + " is required");
  return v;
}

// exact value of a decimal or fraction literal
std::optional<mpq_class> exact(const std::string& s) {
  try {
    ParamInfoPtr info = make_param("q");
    SymbolTable t;
    t.param = "q";
    return ast_scalar(parse(s, t), info, 0).coeff(0);
  } catch (const Error&) {
    return std::nullopt;
  }
}

json config_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.sub;
  j["algebra"] = c.algebra;
  j["D"] = c.D;
  j["Z"] = c.Z;
  j["N"] = c.N;
  if (c.degree >= 0) j["degree"] = c.degree;
  if (!c.param.empty()) j["param"] = c.param;
  j["h"] = c.h;
  j["tolerance"] = c.tol;
  j["dataDir"] = data_dir();
  return j;
}

SpecSource source_for(const std::string& a, bool dual) {
  if (a.empty()) throw UsageError("--algebra is required");
  if (is_catalog(a)) return load_spec_file(data_dir() + "/" + a + (dual ? ".dual.spec" : ".spec"));
  if (dual) throw UsageError("--dual needs a catalog name; pass a file with --dual-spec instead");
  std::ifstream probe(a);
  if (!probe) throw UsageError("no catalog entry or readable spec file named '" + a + "'");
  return load_spec_file(a);
}

double param_value(const RunConfig& c) {
  if (!c.param.empty()) return parse_vec(c.param, "param")[0];
  if (is_catalog(c.algebra)) return catalog_get(c.algebra, 2, 2).default_q;
  throw UsageError("--param is required for spec files");
}

// one K generator flow model of a catalog entry or spec file
struct FlowSetup {
  BicrossData data;
  VectorField X;
  std::optional<CatalogEntry> entry;
};

FlowSetup flow_setup(const RunConfig& c) {
  FlowSetup f;
  if (is_catalog(c.algebra)) {
    f.entry = catalog_get(c.algebra, c.D, c.Z);
    f.data = f.entry->bicross;
  } else {
    f.data = load_bicross(source_for(c.algebra, false), c.D, c.Z);
  }
  f.X = field_from_action(f.data, 0);
  return f;
}

Report run(const RunConfig& c) {
  Report r;
  const std::string& s = c.sub;
  if (s == "check-hopf") {
    int d = c.degree < 0 ? 3 : c.degree;
    SpecSource src = source_for(c.algebra, c.use_dual);
    r = check_hopf_axioms(build_spec(src, c.D, c.Z), d, c.Z);
    r.title = "hopf axioms: " + src.name;
  } else if (s == "check-bicross") {
    int d = c.degree < 0 ? 2 : c.degree;
    SpecSource src = source_for(c.algebra, false);
    BicrossData data = load_bicross(src, c.D, c.Z);
    r.title = "bicrossproduct: " + src.name;
    Report p = compare_presentations(build_bicross(data), build_spec(src, c.D, c.Z));
    for (auto& e : p.entries) e.axiom = "reconstruction-" + e.axiom;
    r.merge(p);
    r.merge(check_compatibility(data, d, c.Z));
    if (c.star) r.merge(check_star(data, d, c.Z));
  } else if (s == "check-pairing") {
    int d = c.degree < 0 ? 2 : c.degree;
    SpecSource src = source_for(c.algebra, false);
    SpecSource dsrc = c.dual.empty() ? source_for(c.algebra, true) : load_spec_file(c.dual);
    DualPairSpec dp = make_dual_pair(build_spec(src, c.D, c.Z), build_spec(dsrc, c.D, c.Z));
    r = check_pairing_axioms(dp, {d, c.Z});
    r.merge(check_product_pairing(dp, d + 1, c.Z));
    r.title = "pairing: " + src.name + " / " + dsrc.name;
  } else if (s == "flow") {
    FlowSetup f = flow_setup(c);
    double q = param_value(c);
    std::vector<double> x0 = parse_vec(c.x0, "x0");
    if (x0.size() != f.X.dim()) throw UsageError("--x0 needs " + std::to_string(f.X.dim()) + " entries");
    NumericOptions opt;
    opt.h = c.h;
    opt.record = !c.csv.empty();
    NumericFlow nf = flow_numeric(f.X, x0, c.s, q, opt);
    r.title = "flow of " + f.data.kspec->gens[0].name;
    r.data["coordinates"] = f.X.coords;
    r.data["x0"] = x0;
    r.data["s"] = c.s;
    r.data["numeric"] = nf.x;
    r.data["errorEstimate"] = nf.error;
    if (c.compare == "closed") {
      if (!f.entry) throw UsageError("--compare closed needs a catalog algebra");
      const ClosedFlow& cf = f.entry->flows.front();
      if (!cf.domain(c.s, x0, q)) throw DomainError("closed flow undefined at this (s, x0)");
      std::vector<double> cl = cf(c.s, x0, q), delta;
      double worst = 0;
      for (std::size_t j = 0; j < cl.size(); ++j) {
        delta.push_back(std::abs(cl[j] - nf.x[j]));
        worst = std::max(worst, delta.back());
      }
      r.data["closed"] = cl;
      r.data["delta"] = delta;
      auto& e = r.add("closed-form-agreement", worst < c.tol, 0, 0);
      e.detail = {{"maxDelta", worst}, {"tolerance", c.tol}};
    } else if (!c.compare.empty()) {
      throw UsageError("--compare accepts only 'closed'");
    }
    if (c.N > 0) {
      FlowSeries F = coordinate_flow(f.X, c.N);
      json ser = json::object();
      for (std::size_t j = 0; j < f.X.dim(); ++j) {
        json cs = json::array();
        for (const auto& cf : F.coeff[j]) cs.push_back(cf.str());
        ser[f.X.coords[j]] = cs;
      }
      r.data["series"] = ser;
    }
    if (!c.csv.empty()) {
      std::ofstream out(c.csv);
      if (!out) throw UsageError("cannot write " + c.csv);
      write_trajectory_csv(out, f.X, nf);
    }
  } else if (s == "integral") {
    FlowSetup f = flow_setup(c);
    r.title = "first integrals";
    std::vector<NamedIntegral> hs;
    if (!c.hexpr.empty()) {
      SymbolTable t;
      t.param = f.data.source.param;
      t.symbols = f.X.coords;
      hs.push_back({c.hexpr, to_exppoly(parse(c.hexpr, t), f.X.coords, f.X.info, kFunctionTop)});
    } else if (f.entry) {
      hs = f.entry->integrals;
    } else {
      throw UsageError("--function is required for spec files");
    }
    for (const auto& h : hs) {
      ExpPoly res = check_first_integral(f.X, h.h);
      auto& e = r.add("first-integral " + h.name, res.is_zero(), 0, 0);
      if (!res.is_zero()) e.counterexample = "X(h) = " + clip(res.str());
      e.detail = {{"h", h.h.str()}, {"residual", res.str()}};
    }
    if (f.entry && c.hexpr.empty()) {
      json reg = json::array();
      for (const auto& h : f.entry->regressions)
        reg.push_back({{"name", h.name}, {"h", h.h.str()}, {"residual", check_first_integral(f.X, h.h).str()}});
      r.data["notConserved"] = reg;
    }
  } else if (s == "induce") {
    FlowSetup f = flow_setup(c);
    double q = param_value(c);
    std::vector<double> a = parse_vec(c.character, "character");
    InducedRep rep = induce(f.data, a, c.N);
    r = check_rep_relations(rep, std::max(0, c.N - 1));
    r.merge(check_skew_symmetry(rep));
    r.title = "induced representation";
    std::vector<std::string> vars = f.entry ? f.entry->dual_kcoords() : rep.kcoords;
    // exact text when the character and the parameter are rational and the exponentials drop out
    std::optional<mpq_class> eq;
    if (!c.param.empty()) eq = exact(c.param);
    else if (f.entry) eq = exact(f.entry->default_q_text);
    std::vector<mpq_class> ea;
    for (const auto& t : split(c.character))
      if (auto v = exact(t)) ea.push_back(*v);
    json series = json::object();
    for (std::size_t j = 0; j < rep.lcoords.size(); ++j) {
      CoordSeries img = rep_apply(rep, rep.lcoords[j], model_monomial(rep, MultiIndex(rep.kcoords.size())));
      std::string text;
      if (eq && ea.size() == a.size()) {
        try {
          text = series_text(series_value_exact(img, ea, *eq), vars);
        } catch (const DomainError&) {
        }
      }
      if (text.empty()) {
        std::ostringstream os;
        os.precision(12);
        bool first = true;
        for (const auto& [m, v] : series_value(img, a, q)) {
          os << (first ? "" : " + ") << v;
          for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) os << vars[i] << (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
          first = false;
        }
        text = first ? "0" : os.str();
      }
      series[rep.lcoords[j]] = text;
    }
    r.data["series"] = series;
    if (c.dump) r.data["rep"] = rep_to_json(rep, q);
  } else if (s == "local-rep") {
    FlowSetup f = flow_setup(c);
    if (!f.entry) throw UsageError("local-rep needs a catalog algebra");
    double q = param_value(c);
    std::vector<double> l = parse_vec(c.l, "l");
    double cc = parse_vec(c.kappa_c, "c")[0];
    LocalRepValue v = local_rep(f.entry->flows.front(), cc, l, c.s, q);
    r.title = "local representation";
    r.data["scalar"] = v.scalar;
    r.data["point"] = v.point;
    json lscal = json::object();
    for (std::size_t j = 0; j < l.size(); ++j) lscal[f.X.coords[j]] = l[j];
    r.data["lScalars"] = lscal;
  } else if (s == "equiv") {
    FlowSetup f = flow_setup(c);
    if (!f.entry) throw UsageError("equiv needs a catalog algebra");
    double q = param_value(c);
    std::vector<double> l = parse_vec(c.l, "l");
    std::vector<NamedIntegral> lams;
    ExpPoly like(f.X.coords, f.X.info, kFunctionTop);
    for (std::size_t j = 0; j < f.X.dim(); ++j) lams.push_back({f.X.coords[j], ExpPoly::coordinate(like, j)});
    EquivalenceOptions opt;
    opt.tol = c.tol;
    std::vector<double> tg;
    if (!c.target.empty()) tg = parse_vec(c.target, "target");
    r = equivalence_check(f.entry->flows.front(), lams, l, c.s, q, opt, c.target.empty() ? nullptr : &tg);
    json ints = json::object();
    for (const auto& h : f.entry->integrals) {
      ints[h.name] = {{"l", ep_value(h.h, l, q)}};
      if (!tg.empty()) ints[h.name]["target"] = ep_value(h.h, tg, q);
    }
    r.data["integrals"] = ints;
  } else if (s == "strata") {
    FlowSetup f = flow_setup(c);
    double q = param_value(c);
    std::vector<double> x = parse_vec(c.x0, "x0");
    std::vector<NamedIntegral> hs = f.entry ? f.entry->integrals : std::vector<NamedIntegral>{};
    Stratum st = classify_point(f.X, hs, x, q);
    r.title = "stratum";
    r.data["point"] = x;
    r.data["stratum"] = st.to_json();
    if (f.entry) r.data["label"] = f.entry->stratum(x, q);
  } else if (s == "dump") {
    SpecSource src = source_for(c.algebra, c.use_dual);
    r.title = "presentation: " + src.name;
    r.data["presentation"] = dump_spec(build_spec(src, c.D, c.Z));
  }
  return r;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--algebra,-a", c.algebra, "catalog name or spec file")->required();
  sub->add_option("--D", c.D, "generator-degree cap")->check(CLI::PositiveNumber);
  sub->add_option("--zorder,-Z", c.Z, "parameter order")->check(CLI::NonNegativeNumber);
  sub->add_option("--format", c.format)->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--output,-o", c.output, "write the report here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bicrossproduct Hopf algebra checks and induced representations"};
  app.require_subcommand(1);
  RunConfig c;
  auto param = [&](CLI::App* s) {
    s->add_option("--param,--z,--kappa", c.param, "numeric parameter value");
  };

  auto* hopf = app.add_subcommand("check-hopf", "Hopf axioms on a monomial window");
  add_common(hopf, c);
  hopf->add_option("--degree,-d", c.degree)->check(CLI::NonNegativeNumber);
  hopf->add_flag("--dual", c.use_dual, "check the dual function algebra");

  auto* bic = app.add_subcommand("check-bicross", "reconstruction and compatibility");
  add_common(bic, c);
  bic->add_option("--degree,-d", c.degree)->check(CLI::NonNegativeNumber);
  bic->add_flag("--star", c.star, "also check the star structure");

  auto* pai = app.add_subcommand("check-pairing", "pairing axioms and dual bases");
  add_common(pai, c);
  pai->add_option("--degree,-d", c.degree)->check(CLI::NonNegativeNumber);
  pai->add_option("--dual-spec", c.dual, "dual spec file");

  auto* flo = app.add_subcommand("flow", "numeric flow of the first K generator");
  add_common(flo, c);
  param(flo);
  flo->add_option("--x0", c.x0)->required();
  flo->add_option("--s", c.s, "flow time")->required();
  flo->add_option("--compare", c.compare, "closed");
  flo->add_option("--csv", c.csv, "trajectory file");
  flo->add_option("--order,-N", c.N, "series order (0: none)")->check(CLI::NonNegativeNumber);
  flo->add_option("--step", c.h)->check(CLI::PositiveNumber);
  flo->add_option("--tol", c.tol)->check(CLI::PositiveNumber);

  auto* integ = app.add_subcommand("integral", "first-integral residuals");
  add_common(integ, c);
  integ->add_option("--function", c.hexpr, "function of the L coordinates");

  auto* ind = app.add_subcommand("induce", "representation induced by a character of F(L)");
  add_common(ind, c);
  param(ind);
  ind->add_option("--character", c.character)->required();
  ind->add_option("--order,-N", c.N)->check(CLI::PositiveNumber);
  ind->add_flag("--dump", c.dump, "include operator tables");

  auto* loc = app.add_subcommand("local-rep", "local representation e^{sK} |- l");
  add_common(loc, c);
  param(loc);
  loc->add_option("--c", c.kappa_c, "character value on K");
  loc->add_option("--l", c.l)->required();
  loc->add_option("--s", c.s)->required();

  auto* eqv = app.add_subcommand("equiv", "intertwiner between induced representations");
  add_common(eqv, c);
  param(eqv);
  eqv->add_option("--l", c.l)->required();
  eqv->add_option("--s", c.s)->required();
  eqv->add_option("--target", c.target, "compare with this point instead of k |> l");
  eqv->add_option("--tol", c.tol)->check(CLI::PositiveNumber);

  auto* str = app.add_subcommand("strata", "fixed points and first-integral labels");
  add_common(str, c);
  param(str);
  str->add_option("--x0", c.x0)->required();

  auto* dmp = app.add_subcommand("dump", "canonical presentation");
  add_common(dmp, c);
  dmp->add_flag("--dual", c.use_dual);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }
  c.sub = app.get_subcommands().front()->get_name();

  Report r;
  int code = kPass;
  try {
    r = run(c);
    code = r.ok() ? kPass : kFail;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain: " << e.what() << "\n";
    return kDomain;
  } catch (const Error& e) {
    std::cerr << "spec: " << e.what() << "\n";
    return kDomain;
  }

  std::string text;
  if (c.format == "json") {
    json j;
    j["config"] = config_json(c);
    json body = r.to_json();
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    text = j.dump(2) + "\n";
  } else {
    text = "config: " + config_json(c).dump() + "\n" + r.to_text();
    if (!r.data.is_null()) text += r.data.dump(2) + "\n";
  }
  if (c.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.output);
    if (!out) {
      std::cerr << "cannot write " << c.output << "\n";
      return kUsage;
    }
    out << text;
  }
  return code;
}
