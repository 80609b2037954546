#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "powereq/params.hpp"

namespace powereq {

/// Plain-text key-value config:
///
///   # comment
///   [technology]
///   sigma = 0.6
///   delta_annual = 0.07      ; rates need _annual or _monthly
///
/// Dotted keys outside any section ("technology.sigma = 0.6") are accepted too,
/// which is what to_key_value() emits.
struct ConfigEntry {
  std::string value;
  long line = 0;
};

class ConfigDocument {
 public:
  static ConfigDocument parse(const std::string& text, const std::string& source = "<config>");
  static ConfigDocument load(const std::string& path);

  void set(const std::string& section, const std::string& key, const std::string& value, long line = 0);
  bool has_section(const std::string& section) const;
  std::optional<ConfigEntry> find(const std::string& section, const std::string& key) const;
  std::optional<double> get_double(const std::string& section, const std::string& key) const;
  const std::map<std::string, ConfigEntry>& section(const std::string& name) const;
  const std::string& source() const noexcept { return source_; }
  std::vector<std::string> section_names() const;
  /// SchemaError for any section outside `allowed`.
  void require_known_sections(const std::vector<std::string>& allowed) const;

 private:
  std::string source_;
  std::map<std::string, std::map<std::string, ConfigEntry>> sections_;
};

/// Overlays the four parameter sections of `doc` on `base`. Unknown keys and
/// rate keys without a unit suffix are schema errors.
ParamBundle apply_params(const ConfigDocument& doc, ParamBundle base);

/// "section.key=value" override, e.g. "institutions.t_w=6".
void apply_override(ConfigDocument& doc, const std::string& assignment);

double parse_number(const std::string& text, const std::string& what, long line = -1);

/// Base config file layered with command-line overrides.
struct RunConfig {
  ConfigDocument doc;
  ParamBundle raw;
  ModelParams params = baseline_params();
  std::string out_path;  // empty: stdout
  double tolerance = 1e-12;
  std::uint64_t seed = 20240101;
};

RunConfig load_run_config(const std::string& config_path, const std::vector<std::string>& overrides);

}  // namespace powereq
