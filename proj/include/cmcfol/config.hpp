#pragma once

// Flat "key = value" files with optional [section] headers. Keys above the
// first header live in the global section "". '#' and ';' start comments.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace cmcfol {

class Config {
 public:
  static Config parse(std::istream& in);
  static Config load(const std::string& path);

  // Section value, falling back to the global section.
  std::optional<std::string> get(const std::string& section,
                                 const std::string& key) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  int get_int(const std::string& section, const std::string& key,
              int fallback) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections()
      const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace cmcfol
