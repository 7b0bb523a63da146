#include "gbo/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <unordered_map>

namespace gbo {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is. Plans and
// their scratch buffers are cached per thread and per size, with a global
// mutex around the planner. FFTW_ESTIMATE keeps planning deterministic.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanEntry {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  PlanEntry() = default;
  PlanEntry(const PlanEntry&) = delete;
  PlanEntry& operator=(const PlanEntry&) = delete;
  PlanEntry(PlanEntry&& o) noexcept { *this = std::move(o); }
  PlanEntry& operator=(PlanEntry&& o) noexcept {
    std::swap(buf, o.buf);
    std::swap(fwd, o.fwd);
    std::swap(bwd, o.bwd);
    return *this;
  }
  ~PlanEntry() {
    if (!buf) return;
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
};

PlanEntry& plan_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, PlanEntry> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  PlanEntry e;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    e.buf = fftw_alloc_complex(n);
    const int ni = static_cast<int>(n);
    e.fwd = fftw_plan_dft_1d(ni, e.buf, e.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    e.bwd = fftw_plan_dft_1d(ni, e.buf, e.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  return cache.emplace(n, std::move(e)).first->second;
}

}  // namespace

void fft_inplace(std::span<complexd> data, int sign) {
  PlanEntry& e = plan_for(data.size());
  std::memcpy(e.buf, data.data(), data.size() * sizeof(complexd));
  fftw_execute(sign < 0 ? e.fwd : e.bwd);
  std::memcpy(data.data(), e.buf, data.size() * sizeof(complexd));
}

SpectralField forward_transform(const Field& f) {
  std::vector<complexd> c(f.values());
  fft_inplace(c, -1);
  const double inv_n = 1.0 / static_cast<double>(c.size());
  for (auto& v : c) v *= inv_n;
  return SpectralField(f.grid(), std::move(c));
}

Field inverse_transform(const SpectralField& c) {
  std::vector<complexd> v(c.coeffs());
  fft_inplace(v, +1);
  return Field(c.grid(), std::move(v), Parity::Complex);
}

Field inverse_transform_real(const SpectralField& c, double tol) {
  std::vector<complexd> v(c.coeffs());
  fft_inplace(v, +1);
  double max_abs = 0.0, max_imag = 0.0;
  for (const auto& z : v) {
    max_abs = std::max(max_abs, std::abs(z));
    max_imag = std::max(max_imag, std::abs(z.imag()));
  }
  if (max_imag > tol * std::max(max_abs, 1e-300))
    throw StructuralError(
        "inverse_transform_real: imaginary residue exceeds tolerance");
  for (auto& z : v) z.imag(0.0);
  return Field(c.grid(), std::move(v), Parity::Real);
}

SpectralField hermitian_project(const SpectralField& c) {
  std::vector<complexd> v(c.coeffs());
  const std::size_t n = v.size();
  v[0].imag(0.0);
  v[n / 2].imag(0.0);
  for (std::size_t i = 1; i < n / 2; ++i) {
    const complexd h = 0.5 * (v[i] + std::conj(v[n - i]));
    v[i] = h;
    v[n - i] = std::conj(h);
  }
  return SpectralField(c.grid(), std::move(v));
}

}  // namespace gbo
