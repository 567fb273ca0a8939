#pragma once

// Internal CSV helpers shared by the loaders.

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ljfrft::detail {

std::vector<std::string> split_csv_line(std::string_view line);

std::string_view trim(std::string_view s);

std::optional<double> parse_real(std::string_view cell);

/// Real or complex cell: "1.5", "-2e-3", "1.5+2j", "0.5-1e-3j", "3j".
std::optional<std::complex<double>> parse_complex(std::string_view cell);

/// Shortest text that reads back to exactly the same value(s).
std::string format_real(double v);
std::string format_complex(std::complex<double> z);

}  // namespace ljfrft::detail
