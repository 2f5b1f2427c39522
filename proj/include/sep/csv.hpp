#ifndef SEP_CSV_HPP
#define SEP_CSV_HPP

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace sep::csv {

/// Shortest decimal string that parses back to exactly the same value.
template <class Scalar>
std::string format_number(Scalar value) {
  static_assert(std::is_floating_point_v<Scalar>);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

/// Splits one line on commas, keeping empty fields. No quoting dialect.
inline std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

/// Parses a whole trimmed cell as a number. Returns nullopt when the cell is
/// empty, has trailing garbage, or is not a number at all. "inf"/"nan" parse
/// successfully; finiteness is the caller's check.
template <class Scalar>
std::optional<Scalar> parse_number(std::string_view cell) {
  static_assert(std::is_floating_point_v<Scalar>);
  if (cell.empty()) return std::nullopt;
  Scalar value{};
  auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

}  // namespace sep::csv

#endif  // SEP_CSV_HPP
