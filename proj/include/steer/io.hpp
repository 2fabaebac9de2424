#pragma once

#include <string>

namespace steer {

// Full-precision decimal rendering of a double ("%.17g", '.' separator).
std::string format_double(double x);

// Writes content to path atomically (temp file + rename).
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace steer
