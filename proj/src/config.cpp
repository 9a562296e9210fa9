#include "cmcfol/config.hpp"

#include <fstream>
#include <istream>

#include "cmcfol/errors.hpp"

namespace cmcfol {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Config Config::parse(std::istream& in) {
  Config cfg;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw PreconditionError("config line " + std::to_string(lineno) +
                                ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw PreconditionError("config line " + std::to_string(lineno) +
                              ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw PreconditionError("config line " + std::to_string(lineno) +
                              ": empty key");
    cfg.sections_[section][key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  return parse(in);
}

std::optional<std::string> Config::get(const std::string& section,
                                       const std::string& key) const {
  for (const std::string& name : {section, std::string()}) {
    const auto s = sections_.find(name);
    if (s == sections_.end()) continue;
    const auto v = s->second.find(key);
    if (v != s->second.end()) return v->second;
  }
  return std::nullopt;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
  const auto v = get(section, key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const double out = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument(key);
    return out;
  } catch (const std::exception&) {
    throw PreconditionError("config key " + key + " is not a number: " + *v);
  }
}

int Config::get_int(const std::string& section, const std::string& key,
                    int fallback) const {
  const auto v = get(section, key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const int out = std::stoi(*v, &used);
    if (used != v->size()) throw std::invalid_argument(key);
    return out;
  } catch (const std::exception&) {
    throw PreconditionError("config key " + key + " is not an integer: " + *v);
  }
}

}  // namespace cmcfol
