#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bx {

using json = nlohmann::ordered_json;

// One checked property: {axiom, status, counterexample?, degree, paramOrder}.
struct CheckEntry {
  std::string axiom;
  bool pass = true;
  std::optional<std::string> counterexample;
  int degree = 0;
  int paramOrder = 0;
  json detail;  // free-form extras, omitted when null
};

struct Report {
  std::string title;
  std::vector<CheckEntry> entries;
  json data;  // non-check payload (series, points, ...)

  bool ok() const;
  CheckEntry& add(std::string axiom, bool pass, int degree, int paramOrder);
  // pass unless a counterexample is given
  CheckEntry& add_result(std::string axiom, const std::optional<std::string>& counterexample, int degree, int paramOrder);
  void merge(const Report& o);

  json to_json() const;
  std::string to_text() const;
};

// Shortens long element dumps inside counterexamples.
std::string clip(const std::string& s, std::size_t n = 400);

}  // namespace bx
