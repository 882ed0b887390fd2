#include "sarc/cli/config_file.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace sarc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

bool valid_key(const std::string& key) {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '.' || c == '-';
  });
}

KeyValueTree KeyValueTree::parse(std::istream& in, const std::string& source) {
  KeyValueTree tree;
  std::string line;
  std::string section;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument(source + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail("unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (!section.empty() && !valid_key(section)) fail("invalid section name '" + section + "'");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    if (!valid_key(key)) fail("invalid key '" + key + "'");
    const std::string full = section.empty() ? key : section + "." + key;
    if (tree.contains(full)) fail("duplicate key '" + full + "'");
    tree.entries_.emplace_back(full, trim(t.substr(eq + 1)));
  }
  return tree;
}

KeyValueTree KeyValueTree::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  return parse(in, path.string());
}

void KeyValueTree::set(const std::string& key, const std::string& value) {
  if (!valid_key(key)) throw std::invalid_argument("invalid key '" + key + "'");
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

bool KeyValueTree::contains(const std::string& key) const { return find(key) != nullptr; }

const std::string* KeyValueTree::find(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return &v;
  return nullptr;
}

void KeyValueTree::write(std::ostream& out) const {
  std::string current = "\x01";
  for (const auto& [key, value] : entries_) {
    const auto dot = key.rfind('.');
    const std::string section = dot == std::string::npos ? "" : key.substr(0, dot);
    const std::string leaf = dot == std::string::npos ? key : key.substr(dot + 1);
    if (section != current) {
      if (current != "\x01") out << '\n';
      out << '[' << section << "]\n";
      current = section;
    }
    out << leaf << " = " << value << '\n';
  }
}

}  // namespace sarc::cli
