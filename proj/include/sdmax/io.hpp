#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

namespace sdmax {

/// 17 significant digits — enough to round-trip any double exactly, and the
/// fixed width keeps repeated runs byte-identical. C locale by construction
/// (this process never calls setlocale).
std::string format_g17(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Raw little-endian float64 dump (C order). Callers pair it with a JSON
/// sidecar describing shape and layout. Refuses big-endian hosts rather than
/// silently writing the wrong bytes.
void write_binary_doubles(const std::filesystem::path& path, std::span<const double> values);

}  // namespace sdmax
