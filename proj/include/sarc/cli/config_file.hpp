#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sarc::cli {

// Ordered key/value tree. Grammar, one statement per line:
//
//   # comment                  (also ';' comments; blank lines ignored)
//   [section.path]             sets the prefix for following keys
//   key = value                stored as "section.path.key"
//
// Keys use [A-Za-z0-9_.-]; values run to end of line with surrounding
// whitespace trimmed. A key may appear once.
class KeyValueTree {
 public:
  static KeyValueTree parse(std::istream& in, const std::string& source = "<input>");
  static KeyValueTree parse_file(const std::filesystem::path& path);

  // Inserts or overwrites.
  void set(const std::string& key, const std::string& value);
  bool contains(const std::string& key) const;
  const std::string* find(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  // Canonical text: keys grouped under [section] headers in insertion order.
  void write(std::ostream& out) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

bool valid_key(const std::string& key);

}  // namespace sarc::cli
