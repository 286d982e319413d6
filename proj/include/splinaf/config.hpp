#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace splinaf {

// Flat key-value configuration grouped into [section] blocks. Insertion
// order is preserved; serialize(parse(text)) is a fixed point.
class KvConfig {
 public:
  void set(const std::string& section, const std::string& key,
           const std::string& value);
  void set(const std::string& section, const std::string& key, double value);
  void set(const std::string& section, const std::string& key,
           std::uint64_t value);

  bool has(const std::string& section, const std::string& key) const;

  // Required lookups; throw std::invalid_argument when missing or malformed.
  std::string get_str(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key) const;

  // Defaulted lookups.
  std::string get_str(const std::string& section, const std::string& key,
                      const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const;

  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
  };
  const std::vector<Section>& sections() const { return sections_; }

  std::string serialize() const;
  static KvConfig parse(const std::string& text);
  static KvConfig load(const std::string& path);

 private:
  std::vector<Section> sections_;
};

}  // namespace splinaf
