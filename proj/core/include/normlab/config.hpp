#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace normlab {

/// Flat key-value configuration with named sections.
///
///   # comment
///   [section]
///   key = value
///
/// Keys before the first header belong to the section "global". Sections and
/// keys keep their file order, so emit() is stable and parse(emit(c)) == c.
class Config {
 public:
  using Entries = std::vector<std::pair<std::string, std::string>>;

  static Config parse(const std::string& text);
  static Config load(const std::string& path);
  std::string emit() const;

  bool has(const std::string& section, const std::string& key) const;
  const std::string* find(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, const std::string& value);

  /// Looks in `section`, then "global"; returns the fallback when absent.
  /// Malformed numbers throw std::invalid_argument naming the key.
  double number(const std::string& section, const std::string& key, double fallback) const;
  long integer(const std::string& section, const std::string& key, long fallback) const;
  std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& section, const std::string& key,
                              const std::vector<double>& fallback) const;

  /// Entries of one section plus "global", emitted in a canonical form.
  std::string emit_section(const std::string& section) const;
  const std::vector<std::pair<std::string, Entries>>& sections() const noexcept { return sections_; }

  bool operator==(const Config&) const = default;

 private:
  std::vector<std::pair<std::string, Entries>> sections_;
};

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace normlab
