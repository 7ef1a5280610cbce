#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "wigner_lab/error.hpp"
#include "wigner_lab/grid.hpp"

namespace wigner_lab::fft {

namespace detail {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (size, sign) under a lock.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find({n, sign});
    if (it != plans_.end()) return it->second;
    auto* buffer = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buffer, buffer, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buffer);
    plans_.emplace(std::make_pair(n, sign), plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

inline PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace detail

/// In-place unnormalized DFT: data[j] <- sum_k data[k] exp(sign * 2*pi*i*j*k/n).
inline void transform(std::span<complex> data, int sign) {
  if (data.empty()) return;
  fftw_plan plan = detail::plan_cache().get(data.size(), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

/// Smallest 2^a 3^b 5^c that is >= n.
inline std::size_t good_size(std::size_t n) {
  std::size_t best = 1;
  while (best < n) best *= 2;
  for (std::size_t p5 = 1; p5 < best; p5 *= 5)
    for (std::size_t p35 = p5; p35 < best; p35 *= 3) {
      std::size_t v = p35;
      while (v < n) v *= 2;
      if (v < best) best = v;
    }
  return best;
}

/// Transform length M implied by two grids, t.step * w.step * M = 2*pi.
inline std::size_t reciprocal_length(const Grid1D& t, const Grid1D& w) {
  const double m = 2.0 * std::numbers::pi / (t.step * w.step);
  const double rounded = std::round(m);
  require(rounded >= 1.0 && std::abs(m - rounded) <= 1e-8 * rounded, ErrorKind::invalid_argument,
          "grids are not discrete-Fourier reciprocal; step product gives length " + std::to_string(m));
  return static_cast<std::size_t>(rounded);
}

/// out[j] = sum_k in[k] exp(sign * i * t_k * w_j) for uniform grids t and w
/// whose step product is 2*pi/M with M >= max(t.count, w.count).
inline std::vector<complex> grid_fourier(std::span<const complex> in, const Grid1D& t, const Grid1D& w,
                                         int sign) {
  require(in.size() == t.count, ErrorKind::invalid_argument, "input length does not match grid");
  const std::size_t m = reciprocal_length(t, w);
  require(m >= t.count && m >= w.count, ErrorKind::invalid_argument,
          "reciprocal length shorter than one of the grids");
  const double s = sign < 0 ? -1.0 : 1.0;
  std::vector<complex> buffer(m, complex{0.0, 0.0});
  for (std::size_t k = 0; k < t.count; ++k)
    buffer[k] = in[k] * std::polar(1.0, s * static_cast<double>(k) * t.step * w.start);
  transform(buffer, sign);
  std::vector<complex> out(w.count);
  for (std::size_t j = 0; j < w.count; ++j) out[j] = buffer[j] * std::polar(1.0, s * t.start * w[j]);
  return out;
}

/// Same-length linear convolution with zero extension:
/// out[j] = sum_m kernel[m] * signal[j - (m - c)], c = (kernel.size() - 1) / 2.
inline std::vector<double> convolve_same(std::span<const double> signal, std::span<const double> kernel) {
  require(kernel.size() % 2 == 1, ErrorKind::invalid_argument, "kernel length must be odd");
  const std::size_t n = signal.size();
  const std::size_t k = kernel.size();
  const std::size_t c = (k - 1) / 2;
  const std::size_t len = good_size(n + k - 1);
  std::vector<complex> a(len), b(len);
  for (std::size_t i = 0; i < n; ++i) a[i] = signal[i];
  for (std::size_t i = 0; i < k; ++i) b[i] = kernel[i];
  transform(a, -1);
  transform(b, -1);
  for (std::size_t i = 0; i < len; ++i) a[i] *= b[i];
  transform(a, +1);
  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::size_t j = 0; j < n; ++j) out[j] = a[j + c].real() * scale;
  return out;
}

/// Direct-summation counterpart of convolve_same.
inline std::vector<double> convolve_same_direct(std::span<const double> signal, std::span<const double> kernel) {
  require(kernel.size() % 2 == 1, ErrorKind::invalid_argument, "kernel length must be odd");
  const auto n = static_cast<long>(signal.size());
  const auto k = static_cast<long>(kernel.size());
  const long c = (k - 1) / 2;
  std::vector<double> out(signal.size(), 0.0);
  for (long j = 0; j < n; ++j) {
    double acc = 0.0;
    for (long m = 0; m < k; ++m) {
      const long src = j - (m - c);
      if (src >= 0 && src < n) acc += kernel[static_cast<std::size_t>(m)] * signal[static_cast<std::size_t>(src)];
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

}  // namespace wigner_lab::fft
