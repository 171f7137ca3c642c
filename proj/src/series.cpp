#include "dyncorr/series.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "dyncorr/error.hpp"
#include "numeric_text.hpp"

namespace dyncorr {

namespace {

constexpr char kMagic[4] = {'M', 'D', 'S', 'C'};
constexpr std::uint32_t kBinaryVersion = 1;
// Optional trailer carrying a non-default period origin.
constexpr char kOriginTag[4] = {'O', 'R', 'G', 'N'};

std::string quoted(const std::string& id) { return "\"" + id + "\""; }

void check_param_id(const std::string& id, std::size_t column) {
  if (id.empty()) {
    throw Error(ErrorCode::validation,
                "parameter id in column " + std::to_string(column + 1) + " is empty");
  }
  if (id.find_first_of(",\"\r\n") != std::string::npos) {
    throw Error(ErrorCode::validation,
                "parameter id " + quoted(id) + " contains a comma, quote or line break");
  }
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Little-endian byte writer/reader; independent of host byte order.
class ByteWriter {
 public:
  void bytes(const char* data, std::size_t n) { out_.insert(out_.end(), data, data + n); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  std::vector<std::uint8_t> take() { return std::move(out_); }
  void reserve(std::size_t n) { out_.reserve(n); }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> bytes, const std::string& source)
      : bytes_(bytes), source_(source) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }

  void need(std::size_t n, const char* what) const {
    if (remaining() < n) {
      throw Error(ErrorCode::parse, source_ + ": truncated file while reading " + what);
    }
  }
  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    need(n, what);
    auto view = bytes_.subspan(pos_, n);
    pos_ += n;
    return view;
  }
  std::uint32_t u32(const char* what) {
    auto b = take(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64(const char* what) {
    auto b = take(8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  }
  double f64(const char* what) { return std::bit_cast<double>(u64(what)); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
  const std::string& source_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open " + path);
  }
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const char* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::io, "cannot write " + path);
  }
  out.write(data, static_cast<std::streamsize>(size));
  if (!out) {
    throw Error(ErrorCode::io, "write failed for " + path);
  }
}

}  // namespace

SeriesFormat format_for_path(const std::string& path) {
  constexpr std::string_view kExt = ".mdsc";
  if (path.size() >= kExt.size() && path.compare(path.size() - kExt.size(), kExt.size(), kExt) == 0) {
    return SeriesFormat::columnar_binary;
  }
  return SeriesFormat::csv;
}

ParameterSeries::ParameterSeries(std::vector<std::string> param_ids, std::vector<double> values,
                                 std::size_t n_periods, std::int64_t period_origin)
    : param_ids_(std::move(param_ids)),
      values_(std::move(values)),
      n_periods_(n_periods),
      period_origin_(period_origin) {
  if (param_ids_.empty()) {
    throw Error(ErrorCode::validation, "series needs at least one parameter");
  }
  if (n_periods_ == 0) {
    throw Error(ErrorCode::validation, "series needs at least one period");
  }
  const std::size_t n = param_ids_.size();
  if (values_.size() != n * n_periods_) {
    throw Error(ErrorCode::validation,
                "value table has " + std::to_string(values_.size()) + " cells, expected " +
                    std::to_string(n_periods_) + " x " + std::to_string(n));
  }
  std::unordered_set<std::string> seen;
  seen.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    check_param_id(param_ids_[j], j);
    if (!seen.insert(param_ids_[j]).second) {
      throw Error(ErrorCode::validation, "duplicate parameter id " + quoted(param_ids_[j]));
    }
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::validation, "non-finite value at row " + std::to_string(i / n + 1) +
                                             ", column " + quoted(param_ids_[i % n]));
    }
  }
}

std::optional<std::size_t> ParameterSeries::column_index(const std::string& id) const {
  auto it = std::find(param_ids_.begin(), param_ids_.end(), id);
  if (it == param_ids_.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - param_ids_.begin());
}

std::span<const double> ParameterSeries::row(std::size_t row_index) const {
  if (row_index >= n_periods_) {
    throw Error(ErrorCode::out_of_range, "row " + std::to_string(row_index) + " out of range");
  }
  return std::span<const double>(values_).subspan(row_index * n_params(), n_params());
}

std::optional<std::size_t> ParameterSeries::row_of_period(std::int64_t period) const noexcept {
  if (period < period_origin_ || period > last_period()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(period - period_origin_);
}

ParameterSeries parse_series_csv(const std::string& text, const std::string& source) {
  std::string_view body(text);
  if (body.starts_with("\xEF\xBB\xBF")) {
    body.remove_prefix(3);
  }

  std::vector<std::string_view> lines;
  for (auto line : detail::split(body, '\n')) {
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    lines.push_back(line);
  }
  while (!lines.empty() && detail::trim(lines.back()).empty()) {
    lines.pop_back();
  }
  if (lines.empty()) {
    throw Error(ErrorCode::parse, source + ": missing header");
  }

  const auto header = detail::split(lines.front(), ',');
  if (header.size() < 2 || detail::trim(header.front()) != "t") {
    throw Error(ErrorCode::parse,
                source + ": malformed header, expected `t,<param_id>,...`");
  }
  std::vector<std::string> ids;
  for (std::size_t c = 1; c < header.size(); ++c) {
    ids.emplace_back(detail::trim(header[c]));
    if (ids.back().empty()) {
      throw Error(ErrorCode::parse,
                  source + ": malformed header, empty parameter id in column " + std::to_string(c + 1));
    }
  }
  const std::size_t n = ids.size();

  std::vector<double> values;
  values.reserve(n * (lines.size() - 1));
  std::int64_t origin = 1;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = detail::split(lines[r], ',');
    const std::string where = source + ": row " + std::to_string(r);
    if (cells.size() != n + 1) {
      throw Error(ErrorCode::parse, where + " has " + std::to_string(cells.size()) +
                                        " cells, expected " + std::to_string(n + 1));
    }
    auto t = detail::parse_int(cells[0]);
    if (!t) {
      throw Error(ErrorCode::parse, where + ": period label '" + std::string(cells[0]) +
                                        "' is not an integer");
    }
    if (r == 1) {
      origin = *t;
    } else if (*t != origin + static_cast<std::int64_t>(r - 1)) {
      throw Error(ErrorCode::parse, where + ": period " + std::to_string(*t) + " breaks the grid, expected " +
                                        std::to_string(origin + static_cast<std::int64_t>(r - 1)));
    }
    for (std::size_t c = 0; c < n; ++c) {
      auto value = detail::parse_double(cells[c + 1]);
      if (!value) {
        throw Error(ErrorCode::parse, where + ", column " + quoted(ids[c]) + ": non-numeric value '" +
                                          std::string(detail::trim(cells[c + 1])) + "'");
      }
      if (!std::isfinite(*value)) {
        throw Error(ErrorCode::validation, where + ", column " + quoted(ids[c]) +
                                               ": non-finite value '" +
                                               std::string(detail::trim(cells[c + 1])) + "'");
      }
      values.push_back(*value);
    }
  }
  if (lines.size() < 2) {
    throw Error(ErrorCode::parse, source + ": no data rows");
  }
  return ParameterSeries(std::move(ids), std::move(values), lines.size() - 1, origin);
}

std::string format_series_csv(const ParameterSeries& series) {
  std::string out = "t";
  for (const auto& id : series.param_ids()) {
    out += ',';
    out += id;
  }
  out += '\n';
  for (std::size_t r = 0; r < series.n_periods(); ++r) {
    out += std::to_string(series.period_of_row(r));
    for (double v : series.row(r)) {
      out += ',';
      out += detail::format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::uint8_t> encode_series_binary(const ParameterSeries& series) {
  const std::size_t n = series.n_params();
  const std::size_t periods = series.n_periods();
  ByteWriter w;
  w.reserve(32 + n * (16 + 8 * periods));
  w.bytes(kMagic, 4);
  w.u32(kBinaryVersion);
  w.u64(n);
  w.u64(periods);
  for (const auto& id : series.param_ids()) {
    w.u32(static_cast<std::uint32_t>(id.size()));
    w.bytes(id.data(), id.size());
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < periods; ++r) {
      w.f64(series.at(r, c));
    }
  }
  if (series.period_origin() != 1) {
    w.bytes(kOriginTag, 4);
    w.u64(static_cast<std::uint64_t>(series.period_origin()));
  }
  return w.take();
}

ParameterSeries decode_series_binary(std::span<const std::uint8_t> bytes, const std::string& source) {
  ByteReader r(bytes, source);
  auto magic = r.take(4, "magic");
  if (!std::equal(magic.begin(), magic.end(), kMagic, kMagic + 4,
                  [](std::uint8_t a, char b) { return a == static_cast<std::uint8_t>(b); })) {
    throw Error(ErrorCode::parse, source + ": bad magic, not a columnar-binary series");
  }
  const auto version = r.u32("format version");
  if (version != kBinaryVersion) {
    throw Error(ErrorCode::parse, source + ": unsupported format version " + std::to_string(version));
  }
  const auto n = r.u64("parameter count");
  const auto periods = r.u64("period count");
  // Each id costs at least its 4-byte length prefix; reject counts the file
  // cannot possibly hold before allocating anything.
  if (n == 0 || periods == 0 || n > r.remaining() / 4) {
    throw Error(ErrorCode::parse, source + ": malformed header (n_params=" + std::to_string(n) +
                                      ", n_periods=" + std::to_string(periods) + ")");
  }
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::uint64_t c = 0; c < n; ++c) {
    const auto len = r.u32("parameter id length");
    auto raw = r.take(len, "parameter id");
    ids.emplace_back(raw.begin(), raw.end());
  }
  if (periods > r.remaining() / 8 / n) {
    throw Error(ErrorCode::parse, source + ": truncated value block");
  }
  std::vector<double> values(n * periods);
  for (std::uint64_t c = 0; c < n; ++c) {
    for (std::uint64_t p = 0; p < periods; ++p) {
      values[p * n + c] = r.f64("values");
    }
  }
  std::int64_t origin = 1;
  if (r.remaining() > 0) {
    auto tag = r.take(4, "trailer tag");
    if (!std::equal(tag.begin(), tag.end(), kOriginTag, kOriginTag + 4,
                    [](std::uint8_t a, char b) { return a == static_cast<std::uint8_t>(b); })) {
      throw Error(ErrorCode::parse, source + ": unexpected trailing bytes");
    }
    origin = static_cast<std::int64_t>(r.u64("period origin"));
    if (r.remaining() != 0) {
      throw Error(ErrorCode::parse, source + ": unexpected trailing bytes");
    }
  }
  return ParameterSeries(std::move(ids), std::move(values), periods, origin);
}

ParameterSeries load_series(const std::string& path, SeriesFormat format) {
  const std::string content = read_file(path);
  if (format == SeriesFormat::csv) {
    return parse_series_csv(content, path);
  }
  return decode_series_binary(
      std::span(reinterpret_cast<const std::uint8_t*>(content.data()), content.size()), path);
}

void write_series(const ParameterSeries& series, const std::string& path, SeriesFormat format) {
  if (format == SeriesFormat::csv) {
    const auto text = format_series_csv(series);
    write_file(path, text.data(), text.size());
  } else {
    const auto bytes = encode_series_binary(series);
    write_file(path, reinterpret_cast<const char*>(bytes.data()), bytes.size());
  }
}

SeriesDiagnostics diagnose(const ParameterSeries& series) {
  SeriesDiagnostics d;
  const std::size_t n = series.n_params();
  d.min_value = std::numeric_limits<double>::infinity();
  d.max_value = -std::numeric_limits<double>::infinity();

  std::vector<std::uint64_t> period_keys(series.n_periods());
  for (std::size_t r = 0; r < series.n_periods(); ++r) {
    period_keys[r] = mix64(static_cast<std::uint64_t>(series.period_of_row(r)) ^ 0x5bd1e995ULL);
  }

  std::uint64_t digest = 0;
  for (std::size_t c = 0; c < n; ++c) {
    const std::uint64_t id_key = fnv1a(series.param_id(c));
    bool all_zero = true;
    for (std::size_t r = 0; r < series.n_periods(); ++r) {
      const double v = series.at(r, c);
      all_zero = all_zero && v == 0.0;
      d.min_value = std::min(d.min_value, v);
      d.max_value = std::max(d.max_value, v);
      digest += mix64(id_key ^ period_keys[r] ^ mix64(std::bit_cast<std::uint64_t>(v)));
    }
    if (all_zero) {
      ++d.zero_columns;
    }
  }
  d.checksum = mix64(digest ^ mix64(n) ^ mix64(series.n_periods() * 0x2545f4914f6cdd1dULL));
  return d;
}

void require_aligned(const ParameterSeries& base, const ParameterSeries& control) {
  if (base.n_periods() != control.n_periods()) {
    throw Error(ErrorCode::mismatch, "period count mismatch: base has " +
                                         std::to_string(base.n_periods()) + " periods, control has " +
                                         std::to_string(control.n_periods()));
  }
  if (base.period_origin() != control.period_origin()) {
    throw Error(ErrorCode::mismatch, "period origin mismatch: base starts at t=" +
                                         std::to_string(base.period_origin()) + ", control at t=" +
                                         std::to_string(control.period_origin()));
  }
}

}  // namespace dyncorr
