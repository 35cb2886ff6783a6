// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "fft_plan.hpp"

namespace anderson::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.backward);
    }
  }

  const PlanPair& get(const LatticeSpec& lattice) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(lattice.dim, lattice.points);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    int n[3] = {lattice.points, lattice.points, lattice.points};
    const std::size_t real_size = lattice.sites();
    const std::size_t cplx_size = half_size(lattice);
    auto* r = fftw_alloc_real(real_size);
    auto* c = fftw_alloc_complex(cplx_size);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair plans;
    plans.forward = fftw_plan_dft_r2c(lattice.dim, n, r, c, flags);
    plans.backward = fftw_plan_dft_c2r(lattice.dim, n, c, r, flags);
    fftw_free(r);
    fftw_free(c);
    return plans_.emplace(key, plans).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

std::size_t half_size(const LatticeSpec& lattice) {
  return lattice.sites() / static_cast<std::size_t>(lattice.points) *
         static_cast<std::size_t>(lattice.points / 2 + 1);
}

void execute_r2c(const LatticeSpec& lattice, std::span<const double> in,
                 std::span<std::complex<double>> out) {
  const auto& plans = cache().get(lattice);
  // r2c leaves its input untouched.
  fftw_execute_dft_r2c(plans.forward, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void execute_c2r(const LatticeSpec& lattice, std::span<std::complex<double>> in,
                 std::span<double> out) {
  const auto& plans = cache().get(lattice);
  fftw_execute_dft_c2r(plans.backward, reinterpret_cast<fftw_complex*>(in.data()), out.data());
}

}  // namespace anderson::detail
