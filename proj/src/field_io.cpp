#include "dnls/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "dnls/errors.hpp"

namespace dnls {

namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
}

void put_double(std::ostream& os, double d) {
  const std::uint64_t le = to_little_endian(std::bit_cast<std::uint64_t>(d));
  char bytes[8];
  std::memcpy(bytes, &le, 8);
  os.write(bytes, 8);
}

double get_double(std::istream& is) {
  char bytes[8];
  if (!is.read(bytes, 8)) throw Error("binary field file is truncated");
  std::uint64_t le;
  std::memcpy(&le, bytes, 8);
  return std::bit_cast<double>(to_little_endian(le));
}

}  // namespace

void write_field_csv(const LatticeField& f, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  os << "index,re,im\n" << std::setprecision(17);
  for (std::size_t i = 0; i < f.size(); ++i) {
    os << i << ',' << f[i].real() << ',' << f[i].imag() << '\n';
  }
}

LatticeField read_field_csv(const LatticeGrid& grid, const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path.string());
  std::string line;
  std::getline(is, line);
  if (line != "index,re,im") throw Error("unexpected CSV header in " + path.string());
  LatticeField f(grid);
  std::vector<bool> seen(grid.size(), false);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t index;
    double re, im;
    char c1, c2;
    if (!(row >> index >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',' || index >= grid.size()) {
      throw Error("malformed CSV row: " + line);
    }
    f[index] = {re, im};
    seen[index] = true;
  }
  for (bool s : seen) {
    if (!s) throw Error("CSV field is missing sites");
  }
  return f;
}

void write_field_binary(const LatticeField& f, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  for (const auto& v : f.values()) {
    put_double(os, v.real());
    put_double(os, v.imag());
  }
}

LatticeField read_field_binary(const LatticeGrid& grid, const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  LatticeField f(grid);
  for (auto& v : f.values()) {
    const double re = get_double(is);
    const double im = get_double(is);
    v = {re, im};
  }
  if (is.peek() != std::char_traits<char>::eof()) throw Error("binary field file has trailing data");
  return f;
}

}  // namespace dnls
