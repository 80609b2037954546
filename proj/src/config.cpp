#include "powereq/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "powereq/errors.hpp"

namespace powereq {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

double parse_number(const std::string& text, const std::string& what, long line) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last)
    throw SchemaError(what + ": not a number '" + t + "'", line);
  return v;
}

ConfigDocument ConfigDocument::parse(const std::string& text, const std::string& source) {
  ConfigDocument doc;
  doc.source_ = source;
  std::istringstream in(text);
  std::string raw;
  std::string current;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto cut = raw.find_first_of("#;");
    std::string line = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw SchemaError(source + ": unterminated section header", line_no);
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      if (current.empty()) throw SchemaError(source + ": empty section name", line_no);
      doc.sections_[current];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw SchemaError(source + ": expected key = value", line_no);
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw SchemaError(source + ": missing key", line_no);
    std::string section = current;
    if (section.empty()) {
      auto dot = key.find('.');
      if (dot == std::string::npos)
        throw SchemaError(source + ": key '" + key + "' outside any section", line_no);
      section = key.substr(0, dot);
      key = key.substr(dot + 1);
    }
    doc.set(section, key, value, line_no);
  }
  return doc;
}

ConfigDocument ConfigDocument::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Io, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path);
}

void ConfigDocument::set(const std::string& section, const std::string& key, const std::string& value,
                         long line) {
  sections_[section][key] = ConfigEntry{value, line};
}

bool ConfigDocument::has_section(const std::string& section) const { return sections_.count(section) > 0; }

std::optional<ConfigEntry> ConfigDocument::find(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return std::nullopt;
  auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

std::optional<double> ConfigDocument::get_double(const std::string& section, const std::string& key) const {
  auto e = find(section, key);
  if (!e) return std::nullopt;
  return parse_number(e->value, source_ + ": " + section + "." + key, e->line);
}

const std::map<std::string, ConfigEntry>& ConfigDocument::section(const std::string& name) const {
  static const std::map<std::string, ConfigEntry> empty;
  auto s = sections_.find(name);
  return s == sections_.end() ? empty : s->second;
}

std::vector<std::string> ConfigDocument::section_names() const {
  std::vector<std::string> out;
  for (const auto& kv : sections_) out.push_back(kv.first);
  return out;
}

void ConfigDocument::require_known_sections(const std::vector<std::string>& allowed) const {
  for (const auto& [name, entries] : sections_) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == name;
    if (!ok) {
      long line = entries.empty() ? -1 : entries.begin()->second.line;
      throw SchemaError(source_ + ": unknown section '" + name + "'", line);
    }
  }
}

ParamBundle apply_params(const ConfigDocument& doc, ParamBundle base) {
  for (const char* sec : {"technology", "preferences", "matching", "institutions"}) {
    for (const auto& [key, entry] : doc.section(sec)) {
      const ParamField* match = nullptr;
      bool annual = false;
      for (const auto& f : param_fields()) {
        if (std::string(f.section) != sec) continue;
        const std::string name = f.name;
        if (f.is_rate) {
          if (key == name)
            throw SchemaError(doc.source() + ": rate '" + std::string(sec) + "." + key +
                                  "' needs a _annual or _monthly suffix",
                              entry.line);
          if (key == name + "_annual") {
            match = &f;
            annual = true;
          } else if (key == name + "_monthly") {
            match = &f;
          }
        } else if (key == name) {
          match = &f;
        }
        if (match) break;
      }
      if (!match)
        throw SchemaError(doc.source() + ": unknown key '" + std::string(sec) + "." + key + "'", entry.line);
      double v = parse_number(entry.value, doc.source() + ": " + std::string(sec) + "." + key, entry.line);
      match->ref(base) = annual ? annual_to_monthly(v) : v;
    }
  }
  return base;
}

void apply_override(ConfigDocument& doc, const std::string& assignment) {
  auto eq = assignment.find('=');
  auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw SchemaError("override '" + assignment + "' must look like section.key=value");
  doc.set(trim(assignment.substr(0, dot)), trim(assignment.substr(dot + 1, eq - dot - 1)),
          trim(assignment.substr(eq + 1)), -1);
}

RunConfig load_run_config(const std::string& config_path, const std::vector<std::string>& overrides) {
  RunConfig rc;
  rc.doc = config_path.empty() ? ConfigDocument::parse("", "<defaults>") : ConfigDocument::load(config_path);
  for (const auto& o : overrides) apply_override(rc.doc, o);
  rc.raw = apply_params(rc.doc, baseline_bundle());
  rc.params = validate_params(rc.raw);
  if (auto tol = rc.doc.get_double("run", "tolerance")) rc.tolerance = *tol;
  if (auto seed = rc.doc.get_double("run", "seed")) rc.seed = static_cast<std::uint64_t>(*seed);
  return rc;
}

}  // namespace powereq
