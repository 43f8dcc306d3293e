#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bicross/expr.hpp"
#include "bicross/ncalg.hpp"

namespace bx {

// Raw contents of a spec file. Values stay as text until a build.
struct SpecSource {
  struct Entry {
    std::string key;   // generator name, or "A,B" for relations, "l,k" for actions
    std::string text;  // expression
    int line = 0;
  };
  std::string origin;
  std::string name;
  std::string param = "z";
  bool inverse = false;
  int bottom = 2;
  Sector acting = Sector::K;
  std::vector<Generator> gens;
  std::vector<Entry> relations;
  std::vector<Entry> coproduct;
  std::vector<Entry> counit;
  std::vector<Entry> antipode;
  std::vector<Entry> action;
  std::vector<Entry> coaction;
  std::vector<Entry> star;

  bool has_bicross() const { return !action.empty() || !coaction.empty(); }
  SymbolTable symbols() const;
  ParamInfoPtr param_info() const;
};

SpecSource parse_spec_text(const std::string& text, const std::string& origin = "<text>");
SpecSource load_spec_file(const std::string& path);

// Builds the presentation at the given caps. Exponentials and divisions are
// evaluated B orders above Z and truncated afterwards.
SpecPtr build_spec(const SpecSource& src, int D, int Z);

// AST -> element of the spec (noncommutative products in written order)
NCElement eval_element(const SpecPtr& spec, const AstPtr& ast);
Tensor eval_tensor(const std::vector<SpecPtr>& slots, const std::vector<std::vector<AstPtr>>& terms);
// exp(x) as a truncated series
NCElement nc_exp(const NCElement& x);

// canonical dump, one structure map per line
std::string dump_spec(const SpecPtr& spec);

}  // namespace bx
