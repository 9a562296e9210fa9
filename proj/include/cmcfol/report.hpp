#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace cmcfol {

enum class Provenance { paper, trivial, derived };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

// One named numeric check. pass <=> |value - reference| <= tolerance, or
// <= tolerance * |reference| when relative.
struct Check {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  Provenance provenance = Provenance::derived;

  bool pass() const;
};

class VerificationReport {
 public:
  void add(Check check) { checks_.push_back(std::move(check)); }
  // Boolean property recorded as value 1/0 against reference 1, tolerance 0.
  void add_flag(std::string name, bool holds, Provenance provenance);
  // value <= bound, recorded as |value - 0| <= bound (value must be >= 0).
  void add_bound(std::string name, double value, double bound,
                 Provenance provenance);
  void append(const VerificationReport& other);

  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& name) const;
  bool all_pass() const;
  std::vector<std::string> failures() const;

  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& doc);

 private:
  std::vector<Check> checks_;
};

}  // namespace cmcfol
