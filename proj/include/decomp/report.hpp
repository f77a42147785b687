#pragma once

// Verification reports: one entry per checked square or identity family.

#include "json.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace decomp {

struct CheckEntry {
  std::string id;
  bool pass = true;
  std::optional<std::string> witness;  // class key at which the check failed
  std::optional<std::string> error;    // set when the check could not be posed (e.g. a non-commuting square)
  std::size_t checked = 0;
};

struct Report {
  std::string instance;
  std::string check;
  std::vector<CheckEntry> squares;

  bool pass() const;
  // Entries sorted by id; ids are unique within a report.
  void canonicalize();
  void append(const Report& other);
  const CheckEntry* find(const std::string& id) const;
};

nlohmann::ordered_json to_json(const CheckEntry& e);
nlohmann::ordered_json to_json(const Report& r);

}  // namespace decomp
