#include "csv_util.hpp"

#include <charconv>
#include <cmath>

namespace ljfrft::detail {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.emplace_back(trim(line.substr(start)));
      break;
    }
    out.emplace_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_real(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return v;
}

std::optional<std::complex<double>> parse_complex(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return std::nullopt;
  const char last = cell.back();
  if (last != 'j' && last != 'i') {
    auto re = parse_real(cell);
    if (!re) return std::nullopt;
    return std::complex<double>(*re, 0.0);
  }
  const std::string_view body = cell.substr(0, cell.size() - 1);
  // Split at the last sign that is not an exponent sign or the leading sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    auto im = parse_real(body);
    if (!im) return std::nullopt;
    return std::complex<double>(0.0, *im);
  }
  auto re = parse_real(body.substr(0, split));
  auto im = parse_real(body.substr(split));
  if (!re || !im) return std::nullopt;
  return std::complex<double>(*re, *im);
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_complex(std::complex<double> z) {
  if (z.imag() == 0.0 && !std::signbit(z.imag())) return format_real(z.real());
  std::string s = format_real(z.real());
  if (!std::signbit(z.imag())) s += '+';
  s += format_real(z.imag());
  s += 'j';
  return s;
}

}  // namespace ljfrft::detail
