#pragma once

#include <map>
#include <string>
#include <vector>

#include "bicross/catalog.hpp"
#include "bicross/errors.hpp"
#include "bicross/ncalg.hpp"
#include "bicross/specfile.hpp"

namespace test {

inline bx::SpecPtr load(const std::string& file, int D = 4, int Z = 8) {
  return bx::build_spec(bx::load_spec_file(bx::data_dir() + "/" + file + ".spec"), D, Z);
}

inline const std::vector<std::string>& all_specs() {
  static const std::vector<std::string> v = {"poincare-null-plane", "poincare-null-plane.dual",
                                             "galilei-nonstandard", "galilei-nonstandard.dual",
                                             "galilei-kappa",       "galilei-kappa.dual"};
  return v;
}

inline bx::NCElement gen(const bx::SpecPtr& s, const std::string& g) { return bx::NCElement::generator(s, g); }

inline bx::ParamSeries q(const bx::SpecPtr& s, const mpq_class& c, int d = 0) {
  return bx::ParamSeries::monomial(s->param, s->Z, c, d);
}

// straightening by repeated adjacent swaps, words kept as plain index lists
inline bx::NCElement brute_order(const bx::SpecPtr& spec, const std::vector<std::size_t>& word) {
  using Word = std::vector<std::size_t>;
  std::map<Word, bx::ParamSeries> todo{{word, spec->constant(1)}};
  bx::NCElement out(spec);
  std::size_t guard = 0;
  while (!todo.empty()) {
    if (++guard > 200000) throw std::runtime_error("brute_order did not terminate");
    auto it = todo.begin();
    Word w = it->first;
    bx::ParamSeries c = it->second;
    todo.erase(it);
    if (c.is_zero()) continue;
    std::size_t i = 0;
    while (i + 1 < w.size() && w[i] <= w[i + 1]) ++i;
    if (i + 1 >= w.size()) {
      if (static_cast<int>(w.size()) > spec->D) continue;
      bx::MultiIndex m(spec->size());
      for (auto g : w) m.add(g, 1);
      out.add_term(m, c);
      continue;
    }
    std::size_t a = w[i], b = w[i + 1];  // a > b
    Word sw = w;
    std::swap(sw[i], sw[i + 1]);
    todo[sw] += c;
    for (const auto& [m, r] : spec->rel(a, b)) {
      Word nw(w.begin(), w.begin() + i);
      for (std::size_t g = 0; g < m.size(); ++g)
        for (unsigned k = 0; k < m[g]; ++k) nw.push_back(g);
      nw.insert(nw.end(), w.begin() + i + 2, w.end());
      todo[nw] += c * r;
    }
  }
  return out;
}

inline bx::NCElement word_product(const bx::SpecPtr& spec, const std::vector<std::size_t>& word) {
  bx::NCElement r = bx::NCElement::one(spec);
  for (auto g : word) r = r * bx::NCElement::generator(spec, g);
  return r;
}

}  // namespace test
