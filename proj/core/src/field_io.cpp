// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/field_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "anderson/error.hpp"

namespace anderson {
namespace {

template <typename U>
void put_le(std::ostream& os, U v) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream& is) {
  std::array<unsigned char, sizeof(U)> bytes{};
  is.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!is) fail(ErrorKind::Io, "truncated field stream");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
  return v;
}

}  // namespace

void write_field(std::ostream& os, const Field& f) {
  const auto& lat = f.lattice();
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(lat.dim));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(lat.points));
  put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(lat.extent));
  for (double v : f.values()) put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v));
  if (!os) fail(ErrorKind::Io, "failed writing field");
}

Field read_field(std::istream& is) {
  const auto dim = static_cast<int>(get_le<std::uint32_t>(is));
  const auto n = static_cast<int>(get_le<std::uint32_t>(is));
  const double extent = std::bit_cast<double>(get_le<std::uint64_t>(is));
  const auto lattice = make_lattice(dim, extent, n);
  std::vector<double> values(lattice.sites());
  for (auto& v : values) v = std::bit_cast<double>(get_le<std::uint64_t>(is));
  return Field(lattice, std::move(values));
}

void save_field(const std::filesystem::path& path, const Field& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorKind::Io, "cannot open " + path.string());
  write_field(os, f);
}

Field load_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::Io, "cannot open " + path.string());
  return read_field(is);
}

void write_field_csv(std::ostream& os, const Field& f) {
  const auto& lat = f.lattice();
  static constexpr std::array<const char*, 3> names{"i0", "i1", "i2"};
  for (int a = 0; a < lat.dim; ++a) os << names[a] << ',';
  os << "value\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto s = lat.unravel(i);
    for (int a = 0; a < lat.dim; ++a) os << s[a] << ',';
    os << f[i] << '\n';
  }
}

}  // namespace anderson
