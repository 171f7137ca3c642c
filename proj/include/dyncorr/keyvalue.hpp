#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dyncorr {

// Line-oriented `key = value` documents shared by overlay plans and scenario
// configs:
//
//   # comment            (also `;`)
//   top_level_key = 1
//   [section argument]
//   key = value
//
// Keys before the first header belong to an unnamed root section. Section
// headers may repeat; order is preserved.
struct KvEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

struct KvSection {
  std::string name;
  std::string argument;
  std::size_t line = 0;
  std::vector<KvEntry> entries;

  const KvEntry* find(std::string_view key) const;
};

struct KvDocument {
  std::vector<KvSection> sections;  // sections[0] is the root section

  const KvSection& root() const { return sections.front(); }
};

// Throws Error(parse) naming `source` and the offending line.
KvDocument parse_kv(std::string_view text, std::string_view source = "<text>");
KvDocument load_kv(const std::string& path);

// Typed accessors; errors name the key and line.
double kv_real(const KvEntry& entry);
long long kv_integer(const KvEntry& entry);
std::vector<std::string> kv_list(const KvEntry& entry);
std::vector<double> kv_real_list(const KvEntry& entry);

}  // namespace dyncorr
