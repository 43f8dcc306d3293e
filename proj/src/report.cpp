#include "bicross/report.hpp"

#include <sstream>

namespace bx {

bool Report::ok() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

CheckEntry& Report::add(std::string axiom, bool pass, int degree, int paramOrder) {
  CheckEntry e;
  e.axiom = std::move(axiom);
  e.pass = pass;
  e.degree = degree;
  e.paramOrder = paramOrder;
  entries.push_back(std::move(e));
  return entries.back();
}

CheckEntry& Report::add_result(std::string axiom, const std::optional<std::string>& cx, int degree, int paramOrder) {
  CheckEntry& e = add(std::move(axiom), !cx.has_value(), degree, paramOrder);
  e.counterexample = cx;
  return e;
}

void Report::merge(const Report& o) {
  entries.insert(entries.end(), o.entries.begin(), o.entries.end());
  if (!o.data.is_null()) {
    if (data.is_null()) data = json::object();
    for (auto it = o.data.begin(); it != o.data.end(); ++it) data[it.key()] = it.value();
  }
}

json Report::to_json() const {
  json j;
  j["title"] = title;
  j["ok"] = ok();
  json arr = json::array();
  for (const auto& e : entries) {
    json x;
    x["axiom"] = e.axiom;
    x["status"] = e.pass ? "pass" : "fail";
    if (e.counterexample) x["counterexample"] = *e.counterexample;
    x["degree"] = e.degree;
    x["paramOrder"] = e.paramOrder;
    if (!e.detail.is_null()) x["detail"] = e.detail;
    arr.push_back(std::move(x));
  }
  j["checks"] = std::move(arr);
  if (!data.is_null()) j["data"] = data;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream o;
  o << "== " << title << " ==\n";
  for (const auto& e : entries) {
    o << (e.pass ? "PASS " : "FAIL ") << e.axiom << " (degree " << e.degree << ", order " << e.paramOrder << ")\n";
    if (e.counterexample) o << "     counterexample: " << *e.counterexample << "\n";
  }
  if (!data.is_null()) o << data.dump(2) << "\n";
  return o.str();
}

std::string clip(const std::string& s, std::size_t n) {
  if (s.size() <= n) return s;
  return s.substr(0, n) + " ...";
}

}  // namespace bx
