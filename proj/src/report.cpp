#include "decomp/report.hpp"

#include <algorithm>

namespace decomp {

bool Report::pass() const {
  return std::all_of(squares.begin(), squares.end(), [](const CheckEntry& e) { return e.pass; });
}

void Report::canonicalize() {
  std::stable_sort(squares.begin(), squares.end(),
                   [](const CheckEntry& a, const CheckEntry& b) { return a.id < b.id; });
}

void Report::append(const Report& other) {
  squares.insert(squares.end(), other.squares.begin(), other.squares.end());
  canonicalize();
}

const CheckEntry* Report::find(const std::string& id) const {
  for (const CheckEntry& e : squares)
    if (e.id == id) return &e;
  return nullptr;
}

nlohmann::ordered_json to_json(const CheckEntry& e) {
  nlohmann::ordered_json j;
  j["id"] = e.id;
  j["pass"] = e.pass;
  j["witness"] = e.witness ? nlohmann::ordered_json(*e.witness) : nlohmann::ordered_json(nullptr);
  if (e.error) j["error"] = *e.error;
  j["checked"] = e.checked;
  return j;
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["instance"] = r.instance;
  j["check"] = r.check;
  j["pass"] = r.pass();
  j["squares"] = nlohmann::ordered_json::array();
  for (const CheckEntry& e : r.squares) j["squares"].push_back(to_json(e));
  return j;
}

}  // namespace decomp
