// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <span>

#include "anderson/lattice.hpp"

namespace anderson::detail {

// Plans are created once per (dim, N) under a mutex and only executed
// afterwards (new-array execute), which FFTW allows concurrently.
void execute_r2c(const LatticeSpec& lattice, std::span<const double> in,
                 std::span<std::complex<double>> out);
// Destroys `in`; callers pass a scratch copy. Not normalized.
void execute_c2r(const LatticeSpec& lattice, std::span<std::complex<double>> in,
                 std::span<double> out);

std::size_t half_size(const LatticeSpec& lattice);

}  // namespace anderson::detail
