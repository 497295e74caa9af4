#pragma once

#include <filesystem>

#include "dnls/field.hpp"

namespace dnls {

/// CSV rows "index,re,im" with a header line; values printed with 17 significant digits.
void write_field_csv(const LatticeField& f, const std::filesystem::path& path);
LatticeField read_field_csv(const LatticeGrid& grid, const std::filesystem::path& path);

/// Flat little-endian float64 stream of interleaved (re, im) pairs, no header.
void write_field_binary(const LatticeField& f, const std::filesystem::path& path);
LatticeField read_field_binary(const LatticeGrid& grid, const std::filesystem::path& path);

}  // namespace dnls
