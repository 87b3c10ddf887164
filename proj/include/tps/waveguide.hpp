#pragma once

// Analytic w-domain solutions of the rectangular waveguide.
//
// Each index k is an independent TE_ml problem at the quantized frequency
// w_k: kappa_k = w_k sqrt(eps mu) (or its Ohm-lossy counterpart), and the
// axial wavenumber is kappa_z = sqrt(kappa_k^2 - kappa_c^2), taken with
// Im >= 0 so that exp(i kappa_z z) never grows along +z. Bins of the upper
// half use -conj(kappa_z) of their mirror, which keeps the transfer
// conjugate-symmetric and the time-domain response real.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "tps/errors.hpp"
#include "tps/grid.hpp"
#include "tps/parallel.hpp"
#include "tps/sequence.hpp"
#include "tps/transform.hpp"

namespace tps {

namespace constants {
inline constexpr double c0 = 299792458.0;          // m/s
inline constexpr double mu0 = 1.25663706212e-6;    // H/m
inline constexpr double eps0 = 8.8541878128e-12;   // F/m
}  // namespace constants

struct WaveguideSpec {
  double a = 0.0;       // width, m
  double b = 0.0;       // height, m
  double length = 0.0;  // m
  double eps = constants::eps0;
  double mu = constants::mu0;
  double sigma = 0.0;  // S/m, volumetric loss only
};

inline void validate(const WaveguideSpec& wg) {
  if (!(wg.b > 0.0)) throw DomainError("waveguide height b must be positive");
  if (!(wg.a > wg.b)) throw DomainError("waveguide width a must exceed height b");
  if (!(wg.length >= 0.0) || !std::isfinite(wg.length)) throw DomainError("waveguide length must be >= 0");
  if (!(wg.eps > 0.0) || !(wg.mu > 0.0)) throw DomainError("eps and mu must be positive");
  if (!(wg.sigma >= 0.0)) throw DomainError("sigma must be non-negative");
}

struct ModeIndex {
  unsigned m = 1;
  unsigned l = 0;
};

inline void validate(ModeIndex mode) {
  if (mode.m == 0 && mode.l == 0) throw DomainError("mode (0,0) does not exist");
}

inline double kappa_x(ModeIndex mode, const WaveguideSpec& wg) { return mode.m * std::numbers::pi / wg.a; }
inline double kappa_y(ModeIndex mode, const WaveguideSpec& wg) { return mode.l * std::numbers::pi / wg.b; }

/// kappa_c = sqrt((m pi / a)^2 + (l pi / b)^2), rad/m.
inline double cutoff(ModeIndex mode, const WaveguideSpec& wg) {
  validate(mode);
  validate(wg);
  return std::hypot(kappa_x(mode, wg), kappa_y(mode, wg));
}

inline double cutoff_frequency(ModeIndex mode, const WaveguideSpec& wg) {
  return cutoff(mode, wg) / (2.0 * std::numbers::pi * std::sqrt(wg.eps * wg.mu));
}

/// Group velocity of the mode at frequency f (Hz); zero at or below cut-off.
inline double group_velocity(double f, ModeIndex mode, const WaveguideSpec& wg) {
  const double ratio = cutoff_frequency(mode, wg) / f;
  if (ratio >= 1.0) return 0.0;
  return std::sqrt(1.0 - ratio * ratio) / std::sqrt(wg.eps * wg.mu);
}

namespace detail {

inline void require_bin(std::size_t k, const FrequencyGrid& grid) {
  if (k < 1 || k > grid.n) throw IndexError("bin index k must lie in [1, N]");
}

// Axial wavenumber for kappa^2 on the first half; Im >= 0, and Re >= 0 when real.
inline complex axial(complex kappa_sq, double kc) {
  const complex d = kappa_sq - kc * kc;
  // Force +0 imaginary part so the principal root of a negative real is +i|.|.
  return std::sqrt(complex(d.real(), d.imag() == 0.0 ? 0.0 : d.imag()));
}

inline complex lossy_kappa_sq(std::size_t k, const FrequencyGrid& grid, double o_k, const WaveguideSpec& wg) {
  const double w = grid.w[k - 1];
  return complex(w * w * wg.eps * wg.mu, w * wg.mu * o_k);
}

}  // namespace detail

/// kappa_k = sqrt(w_k^2 eps mu + i w_k mu o_k), decaying along +z.
inline complex lossy_wavenumber(std::size_t k, const FrequencyGrid& grid, const OhmicGrid& ohmic,
                                const WaveguideSpec& wg) {
  detail::require_bin(k, grid);
  if (ohmic.size() != grid.n) throw LengthMismatch("ohmic grid and frequency grid lengths differ");
  const std::size_t base = k <= half_count(grid.n) ? k : grid.n + 2 - k;
  const complex kappa = std::sqrt(detail::lossy_kappa_sq(base, grid, ohmic.o[base - 1], wg));
  return base == k ? kappa : -std::conj(kappa);
}

/// kappa_{z,k} of the mode at bin k. Uses the lossy wavenumber when sigma > 0.
inline complex kz(std::size_t k, const FrequencyGrid& grid, ModeIndex mode, const WaveguideSpec& wg) {
  detail::require_bin(k, grid);
  const double kc = cutoff(mode, wg);
  const std::size_t base = k <= half_count(grid.n) ? k : grid.n + 2 - k;
  const double o_k = wg.sigma > 0.0 ? ohmic_weight(base, grid.n, wg.sigma) : 0.0;
  const complex value = detail::axial(detail::lossy_kappa_sq(base, grid, o_k, wg), kc);
  return base == k ? value : -std::conj(value);
}

struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct ModalFieldSample {
  Position position;
  complex e_x, e_y, h_x, h_y, h_z;
};

/// TE_ml field components at bin k for axial magnetic amplitude h_ml.
/// Transverse fields follow from h_z through the w-domain curl equations.
inline ModalFieldSample mode_fields(std::size_t k, const FrequencyGrid& grid, ModeIndex mode,
                                    const WaveguideSpec& wg, complex amplitude, Position p) {
  const double kx = kappa_x(mode, wg);
  const double ky = kappa_y(mode, wg);
  const double kc2 = kx * kx + ky * ky;
  const double w = grid.w_at(k);
  const complex beta = kz(k, grid, mode, wg);
  const complex i(0.0, 1.0);

  const complex prop = amplitude * std::exp(i * beta * p.z);
  const double cx = std::cos(kx * p.x), sx = std::sin(kx * p.x);
  const double cy = std::cos(ky * p.y), sy = std::sin(ky * p.y);

  ModalFieldSample out;
  out.position = p;
  out.h_z = prop * cx * cy;
  out.e_x = prop * (-i * wg.mu * ky * w / kc2) * cx * sy;
  out.e_y = prop * (i * wg.mu * kx * w / kc2) * sx * cy;
  out.h_x = prop * (-i * beta * kx / kc2) * sx * cy;
  out.h_y = prop * (-i * beta * ky / kc2) * cx * sy;
  return out;
}

/// exp(i kappa_z L) for the first ceil((N+1)/2) bins. The even-N middle bin
/// is its own mirror, so only the real part of its transfer is kept.
inline std::vector<complex> waveguide_transfer(ModeIndex mode, const WaveguideSpec& wg, const FrequencyGrid& grid,
                                               Workers workers = {}) {
  validate(wg);
  validate(mode);
  const std::size_t half = half_count(grid.n);
  std::vector<complex> h(half);
  parallel_for(half, workers, [&](std::size_t k0) {
    const complex t = std::exp(complex(0.0, 1.0) * kz(k0 + 1, grid, mode, wg) * wg.length);
    const bool self_paired = k0 == 0 || (grid.n % 2 == 0 && k0 == grid.n / 2);
    h[k0] = self_paired ? complex(t.real(), 0.0) : t;
  });
  return h;
}

/// Propagates a w-domain field spectrum over the waveguide length.
inline WSpectrum propagate(const WSpectrum& in, ModeIndex mode, const WaveguideSpec& wg, const FrequencyGrid& grid,
                           Workers workers = {}) {
  if (grid.n != in.size()) throw LengthMismatch("grid length does not match spectrum length");
  if (std::abs(grid.dt - in.dt()) > 1e-12 * in.dt()) throw LengthMismatch("grid dt does not match spectrum dt");
  require_symmetric(in, "propagate");

  const std::size_t n = in.size();
  const auto transfer = waveguide_transfer(mode, wg, grid, workers);
  std::vector<complex> out(n);
  for (std::size_t k0 = 0; k0 < transfer.size(); ++k0) out[k0] = in[k0] * transfer[k0];
  for (std::size_t k0 = transfer.size(); k0 < n; ++k0) out[k0] = std::conj(out[n - k0]);
  return WSpectrum(std::move(out), in.kind(), in.dt());
}

/// Time-domain convenience wrapper. A zero-length guide returns the input
/// unchanged, bit for bit.
inline PeriodicSequence propagate(const PeriodicSequence& in, ModeIndex mode, const WaveguideSpec& wg,
                                  const FrequencyGrid& grid, Workers workers = {}) {
  validate(wg);
  if (wg.length == 0.0) return in;
  return inverse_e(propagate(forward_e(in, workers), mode, wg, grid, workers), workers);
}

/// |w_k^(q) - omega_k| / omega_k, the relative error of the free-space
/// propagation constant. Upper-half bins use their mirror.
inline double dispersion_error_exact(std::size_t k, const FrequencyGrid& grid) {
  detail::require_bin(k, grid);
  if (k == 1) throw DomainError("dispersion error is undefined at k = 1 (omega_1 = 0)");
  const std::size_t base = k <= half_count(grid.n) ? k : grid.n + 2 - k;
  const double omega = grid.omega[base - 1];
  return std::abs(grid.w[base - 1] - omega) / omega;
}

/// Relative error of the axial wavenumber, |kz(w_k) - kz(omega_k)| / |kz(omega_k)|.
inline double dispersion_error_waveguide(std::size_t k, const FrequencyGrid& grid, ModeIndex mode,
                                         const WaveguideSpec& wg) {
  detail::require_bin(k, grid);
  if (k == 1) throw DomainError("dispersion error is undefined at k = 1 (omega_1 = 0)");
  FrequencyGrid ideal = grid;
  ideal.q = RecurrenceOrder::ideal();
  for (std::size_t j = 0; j < ideal.n; ++j) ideal.w[j] = ideal.sign[j] > 0 ? ideal.omega[j] : -ideal.omega[ideal.n - j];
  const complex reference = kz(k, ideal, mode, wg);
  if (std::abs(reference) == 0.0) throw DomainError("bin sits exactly at cut-off");
  return std::abs(kz(k, grid, mode, wg) - reference) / std::abs(reference);
}

/// Leading-order error laws pi^2 NBW^2 / 24, pi^4 NBW^4 / 288 and
/// pi^6 NBW^6 / 3456 for q = 0, 1, 2.
inline double dispersion_error_approx(double nbw, unsigned q) {
  if (!(nbw > 0.0 && nbw <= 1.0)) throw DomainError("NBW must lie in (0, 1]");
  constexpr double pi = std::numbers::pi;
  switch (q) {
    case 0:
      return pi * pi / 24.0 * std::pow(nbw, 2);
    case 1:
      return std::pow(pi, 4) / 288.0 * std::pow(nbw, 4);
    case 2:
      return std::pow(pi, 6) / 3456.0 * std::pow(nbw, 6);
    default:
      throw DomainError("closed-form dispersion error is available for q = 0, 1, 2 only");
  }
}

}  // namespace tps
