#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "windres/errors.hpp"

namespace windres::detail {

/// Splits one CSV line on commas. Double-quoted fields may contain commas
/// and doubled quotes; surrounding whitespace is trimmed from unquoted
/// fields.
std::vector<std::string> split_csv_line(std::string_view line);

/// Strips a UTF-8 BOM and a trailing carriage return.
void normalize_line(std::string& line);

std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

}  // namespace windres::detail
