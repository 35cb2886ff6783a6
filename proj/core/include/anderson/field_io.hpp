// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "anderson/lattice.hpp"

namespace anderson {

// Binary layout: u32 dim, u32 N, f64 L (all little-endian, 16 bytes), then
// N^dim little-endian f64 values in row-major order.
void write_field(std::ostream& os, const Field& f);
Field read_field(std::istream& is);

void save_field(const std::filesystem::path& path, const Field& f);
Field load_field(const std::filesystem::path& path);

/// CSV with one column per index axis plus `value`.
void write_field_csv(std::ostream& os, const Field& f);

}  // namespace anderson
