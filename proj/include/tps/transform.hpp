#pragma once

// Unitary maps between periodic sequences and the w domain.
//
//   forward_e: e_k = 1/sqrt(N) sum_n E[n] W^{(k-1)(n-1)}
//   forward_h: h_k = 1/sqrt(N) SGN(k) sum_n H[n] W^{(k-1)(n-1/2)}
//
// with W = exp(i 2 pi / N). Both maps diagonalize the circulant difference
// operators; the magnetic map absorbs the half-step leapfrog offset. For real
// input only ceil((N+1)/2) bins are computed and the rest are mirrored, so
// the conjugate symmetry of the result is exact. Every coefficient is a
// fixed-order sequential sum, so results do not depend on the worker count.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "tps/errors.hpp"
#include "tps/parallel.hpp"
#include "tps/sequence.hpp"

namespace tps {

/// Relative tolerance on conjugate symmetry accepted by the inverse maps.
inline constexpr double kSymmetryTolerance = 1e-9;

namespace detail {

// exp(i 2 pi j / N) for j = 0..N-1.
inline std::vector<complex> twiddles(std::size_t n) {
  std::vector<complex> table(n);
  for (std::size_t j = 0; j < n; ++j) {
    table[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
  }
  return table;
}

// exp(i pi k0 / N): the half-sample phase W^{k0/2}.
inline complex half_step(std::size_t k0, std::size_t n) {
  return std::polar(1.0, std::numbers::pi * static_cast<double>(k0) / static_cast<double>(n));
}

inline bool has_nyquist(std::size_t n) { return n % 2 == 0; }

inline std::vector<complex> forward(std::span<const double> x, FieldKind kind, Workers workers) {
  const std::size_t n = x.size();
  const std::size_t half = half_count(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const auto table = twiddles(n);

  std::vector<complex> out(n);
  parallel_for(half, workers, [&](std::size_t k0) {
    if (has_nyquist(n) && k0 == n / 2) {
      // W^{(N/2) m} = (-1)^m exactly; the electric bin is real and the
      // magnetic one, W^{(N/2)(m+1/2)} = i (-1)^m, purely imaginary.
      double alternating = 0.0;
      for (std::size_t m = 0; m < n; ++m) alternating += (m % 2 == 0 ? x[m] : -x[m]);
      out[k0] = kind == FieldKind::electric ? complex(alternating * scale, 0.0)
                                            : complex(0.0, alternating * scale);
      return;
    }
    complex sum = 0.0;
    std::size_t idx = 0;
    for (std::size_t m = 0; m < n; ++m) {
      sum += x[m] * table[idx];
      idx += k0;
      if (idx >= n) idx -= n;
    }
    if (kind == FieldKind::magnetic) sum *= half_step(k0, n);  // SGN = +1 on this half
    if (k0 == 0) sum.imag(0.0);
    out[k0] = sum * scale;
  });
  for (std::size_t k0 = half; k0 < n; ++k0) out[k0] = std::conj(out[n - k0]);
  return out;
}

}  // namespace detail

inline WSpectrum forward_e(const PeriodicSequence& seq, Workers workers = {}) {
  return WSpectrum(detail::forward(seq.samples(), FieldKind::electric, workers), FieldKind::electric,
                   seq.dt());
}

inline WSpectrum forward_h(const PeriodicSequence& seq, Workers workers = {}) {
  return WSpectrum(detail::forward(seq.samples(), FieldKind::magnetic, workers), FieldKind::magnetic,
                   seq.dt());
}

/// Largest violation of the real-sequence symmetry, relative to the largest
/// coefficient magnitude. Covers c_{N+2-k} = conj(c_k), a real DC bin and the
/// even-N middle bin (real for electric spectra, imaginary for magnetic ones).
inline double symmetry_violation(const WSpectrum& spec) {
  const std::size_t n = spec.size();
  const auto c = spec.coefficients();
  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;

  double worst = std::abs(c[0].imag());
  for (std::size_t k0 = 1; k0 < n; ++k0) {
    if (detail::has_nyquist(n) && k0 == n / 2) continue;  // self-paired, checked below
    worst = std::max(worst, std::abs(c[n - k0] - std::conj(c[k0])));
  }
  if (detail::has_nyquist(n)) {
    const complex mid = c[n / 2];
    worst = std::max(worst, std::abs(spec.kind() == FieldKind::electric ? mid.imag() : mid.real()));
  }
  return worst / scale;
}

inline void require_symmetric(const WSpectrum& spec, const char* who) {
  const double violation = symmetry_violation(spec);
  if (violation > kSymmetryTolerance) {
    throw SymmetryError(std::string(who) + ": spectrum is not conjugate-symmetric (relative violation " +
                        std::to_string(violation) + ")");
  }
}

namespace detail {

inline std::vector<double> inverse(const WSpectrum& spec, Workers workers) {
  const std::size_t n = spec.size();
  const std::size_t half = half_count(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const auto c = spec.coefficients();
  const auto table = twiddles(n);
  const bool magnetic = spec.kind() == FieldKind::magnetic;

  // Fold each pair (k, N+2-k) into 2 Re(.) and pre-apply the half-step phase
  // of the magnetic basis, W^{-(k-1)/2}.
  std::vector<complex> folded(half);
  for (std::size_t k0 = 0; k0 < half; ++k0) {
    complex v = c[k0];
    if (magnetic) v *= std::conj(half_step(k0, n));
    const bool self_paired = k0 == 0 || (has_nyquist(n) && k0 == n / 2);
    folded[k0] = self_paired ? v : 2.0 * v;
  }

  std::vector<double> x(n);
  parallel_for(n, workers, [&](std::size_t m) {
    double sum = 0.0;
    std::size_t idx = 0;
    for (std::size_t k0 = 0; k0 < half; ++k0) {
      // Re(v * conj(W^{k0 m}))
      sum += folded[k0].real() * table[idx].real() + folded[k0].imag() * table[idx].imag();
      idx += m;
      if (idx >= n) idx -= n;
    }
    x[m] = sum * scale;
  });
  return x;
}

}  // namespace detail

/// E[n] = 1/sqrt(N) sum_k e_k W^{-(k-1)(n-1)}. Rejects spectra that are not
/// conjugate-symmetric within kSymmetryTolerance.
inline PeriodicSequence inverse_e(const WSpectrum& spec, Workers workers = {}) {
  if (spec.kind() != FieldKind::electric) throw KindError("inverse_e: spectrum came from the magnetic map");
  require_symmetric(spec, "inverse_e");
  return PeriodicSequence(detail::inverse(spec, workers), spec.dt());
}

/// H[n] = 1/sqrt(N) sum_k SGN(k) h_k W^{-(k-1)(n-1/2)}.
inline PeriodicSequence inverse_h(const WSpectrum& spec, Workers workers = {}) {
  if (spec.kind() != FieldKind::magnetic) throw KindError("inverse_h: spectrum came from the electric map");
  require_symmetric(spec, "inverse_h");
  return PeriodicSequence(detail::inverse(spec, workers), spec.dt());
}

}  // namespace tps
