#include "cmcfol/report.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "cmcfol/errors.hpp"

namespace cmcfol {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::paper:
      return "PAPER";
    case Provenance::trivial:
      return "TRIVIAL";
    case Provenance::derived:
      return "DERIVED";
  }
  return "DERIVED";
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "PAPER") return Provenance::paper;
  if (s == "TRIVIAL") return Provenance::trivial;
  if (s == "DERIVED") return Provenance::derived;
  throw PreconditionError("unknown provenance tag: " + s);
}

bool Check::pass() const {
  if (!std::isfinite(value)) return false;
  const double bound = relative ? tolerance * std::abs(reference) : tolerance;
  return std::abs(value - reference) <= bound;
}

void VerificationReport::add_flag(std::string name, bool holds,
                                  Provenance provenance) {
  add({std::move(name), holds ? 1.0 : 0.0, 1.0, 0.0, false, provenance});
}

void VerificationReport::add_bound(std::string name, double value,
                                   double bound, Provenance provenance) {
  add({std::move(name), value, 0.0, bound, false, provenance});
}

void VerificationReport::append(const VerificationReport& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

bool VerificationReport::all_pass() const {
  for (const auto& c : checks_)
    if (!c.pass()) return false;
  return true;
}

std::vector<std::string> VerificationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks_)
    if (!c.pass()) out.push_back(c.name);
  return out;
}

nlohmann::json VerificationReport::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& c : checks_) {
    arr.push_back({{"name", c.name},
                   {"value", c.value},
                   {"reference", c.reference},
                   {"tolerance", c.tolerance},
                   {"relative", c.relative},
                   {"pass", c.pass()},
                   {"provenance", to_string(c.provenance)}});
  }
  return arr;
}

VerificationReport VerificationReport::from_json(const nlohmann::json& doc) {
  VerificationReport report;
  for (const auto& item : doc) {
    Check c;
    c.name = item.at("name").get<std::string>();
    // non-finite values are serialized as null
    c.value = item.at("value").is_null() ? NAN : item.at("value").get<double>();
    c.reference = item.at("reference").get<double>();
    c.tolerance = item.at("tolerance").get<double>();
    c.relative = item.value("relative", false);
    c.provenance = provenance_from_string(item.at("provenance").get<std::string>());
    report.add(std::move(c));
  }
  return report;
}

}  // namespace cmcfol
