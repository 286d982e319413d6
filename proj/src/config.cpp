#include "splinaf/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "splinaf/io.hpp"

namespace splinaf {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void KvConfig::set(const std::string& section, const std::string& key,
                   const std::string& value) {
  for (Section& s : sections_) {
    if (s.name != section) continue;
    for (auto& kv : s.entries) {
      if (kv.first == key) {
        kv.second = value;
        return;
      }
    }
    s.entries.emplace_back(key, value);
    return;
  }
  sections_.push_back({section, {{key, value}}});
}

void KvConfig::set(const std::string& section, const std::string& key,
                   double value) {
  set(section, key, format_double(value));
}

void KvConfig::set(const std::string& section, const std::string& key,
                   std::uint64_t value) {
  set(section, key, std::to_string(value));
}

bool KvConfig::has(const std::string& section, const std::string& key) const {
  for (const Section& s : sections_) {
    if (s.name != section) continue;
    for (const auto& kv : s.entries)
      if (kv.first == key) return true;
  }
  return false;
}

std::string KvConfig::get_str(const std::string& section,
                              const std::string& key) const {
  for (const Section& s : sections_) {
    if (s.name != section) continue;
    for (const auto& kv : s.entries)
      if (kv.first == key) return kv.second;
  }
  throw std::invalid_argument("missing config key [" + section + "] " + key);
}

double KvConfig::get_double(const std::string& section,
                            const std::string& key) const {
  std::string v = get_str(section, key);
  const char* begin = v.c_str();
  char* end = nullptr;
  errno = 0;
  double parsed = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE)
    throw std::invalid_argument("bad number for [" + section + "] " + key +
                                ": '" + v + "'");
  return parsed;
}

std::uint64_t KvConfig::get_u64(const std::string& section,
                                const std::string& key) const {
  std::string v = get_str(section, key);
  const char* begin = v.c_str();
  char* end = nullptr;
  errno = 0;
  unsigned long long parsed = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0' || errno == ERANGE || v.find('-') !=
      std::string::npos)
    throw std::invalid_argument("bad integer for [" + section + "] " + key +
                                ": '" + v + "'");
  return parsed;
}

std::string KvConfig::get_str(const std::string& section,
                              const std::string& key,
                              const std::string& fallback) const {
  return has(section, key) ? get_str(section, key) : fallback;
}

double KvConfig::get_double(const std::string& section, const std::string& key,
                            double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

std::uint64_t KvConfig::get_u64(const std::string& section,
                                const std::string& key,
                                std::uint64_t fallback) const {
  return has(section, key) ? get_u64(section, key) : fallback;
}

std::string KvConfig::serialize() const {
  std::ostringstream out;
  for (const Section& s : sections_) {
    out << '[' << s.name << "]\n";
    for (const auto& kv : s.entries)
      out << kv.first << " = " << kv.second << '\n';
    out << '\n';
  }
  return out.str();
}

KvConfig KvConfig::parse(const std::string& text) {
  KvConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3)
        throw std::invalid_argument("malformed section header at line " +
                                    std::to_string(line_no));
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw std::invalid_argument("empty section name at line " +
                                    std::to_string(line_no));
      // materialize the section even if it stays empty
      bool known = false;
      for (const Section& s : cfg.sections_) known |= s.name == section;
      if (!known) cfg.sections_.push_back({section, {}});
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected key = value at line " +
                                  std::to_string(line_no));
    if (section.empty())
      throw std::invalid_argument("key outside any [section] at line " +
                                  std::to_string(line_no));
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("empty key at line " +
                                  std::to_string(line_no));
    cfg.set(section, key, value);
  }
  return cfg;
}

KvConfig KvConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace splinaf
