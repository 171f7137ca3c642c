#include "dyncorr/keyvalue.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dyncorr/error.hpp"
#include "numeric_text.hpp"

namespace dyncorr {

namespace {

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw Error(ErrorCode::parse, msg.str());
}

}  // namespace

const KvEntry* KvSection::find(std::string_view key) const {
  const KvEntry* found = nullptr;
  for (const auto& entry : entries) {
    if (entry.key == key) {
      found = &entry;
    }
  }
  return found;
}

KvDocument parse_kv(std::string_view text, std::string_view source) {
  KvDocument doc;
  doc.sections.emplace_back();

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    auto line = detail::trim(text.substr(start, end - start));
    ++line_no;
    start = end + 1;

    if (line.empty() || line.front() == '#' || line.front() == ';') {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail(source, line_no, "unterminated section header");
      }
      auto inner = detail::trim(line.substr(1, line.size() - 2));
      if (inner.empty()) {
        fail(source, line_no, "empty section header");
      }
      KvSection section;
      const auto space = inner.find_first_of(" \t");
      if (space == std::string_view::npos) {
        section.name = std::string(inner);
      } else {
        section.name = std::string(inner.substr(0, space));
        section.argument = std::string(detail::trim(inner.substr(space)));
      }
      section.line = line_no;
      doc.sections.push_back(std::move(section));
    } else {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        fail(source, line_no, "expected `key = value`");
      }
      auto key = detail::trim(line.substr(0, eq));
      if (key.empty()) {
        fail(source, line_no, "missing key");
      }
      doc.sections.back().entries.push_back(
          {std::string(key), std::string(detail::trim(line.substr(eq + 1))), line_no});
    }
    if (end == text.size()) break;
  }
  return doc;
}

KvDocument load_kv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_kv(buffer.str(), path);
}

double kv_real(const KvEntry& entry) {
  auto value = detail::parse_double(entry.value);
  if (!value || !std::isfinite(*value)) {
    throw Error(ErrorCode::parse, "line " + std::to_string(entry.line) + ": `" + entry.key +
                                      "` expects a finite number, got '" + entry.value + "'");
  }
  return *value;
}

long long kv_integer(const KvEntry& entry) {
  auto value = detail::parse_int(entry.value);
  if (!value) {
    throw Error(ErrorCode::parse, "line " + std::to_string(entry.line) + ": `" + entry.key +
                                      "` expects an integer, got '" + entry.value + "'");
  }
  return *value;
}

std::vector<std::string> kv_list(const KvEntry& entry) {
  std::vector<std::string> items;
  if (detail::trim(entry.value).empty()) {
    return items;
  }
  for (auto part : detail::split(entry.value, ',')) {
    auto item = detail::trim(part);
    if (item.empty()) {
      throw Error(ErrorCode::parse,
                  "line " + std::to_string(entry.line) + ": `" + entry.key + "` has an empty item");
    }
    items.emplace_back(item);
  }
  return items;
}

std::vector<double> kv_real_list(const KvEntry& entry) {
  std::vector<double> values;
  for (const auto& item : kv_list(entry)) {
    values.push_back(kv_real({entry.key, item, entry.line}));
  }
  return values;
}

}  // namespace dyncorr
