#pragma once

// Periodic responses of port networks.
//
// Transfer values are stored in the convention of network analysers and
// Touchstone files (time dependence exp(+j w t), so a delay tau reads
// exp(-j w tau)). The w-domain maps use the opposite sign, so respond()
// applies the conjugate of each stored value to the positive-index bins.
// With that, a stored exp(-j w_k tau) delays the excitation by tau and the
// spectral path reproduces the circular convolution with the impulse response.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tps/errors.hpp"
#include "tps/excitation.hpp"
#include "tps/grid.hpp"
#include "tps/parallel.hpp"
#include "tps/sequence.hpp"
#include "tps/touchstone.hpp"
#include "tps/transform.hpp"

namespace tps {

/// One (output port, input port) transfer sampled on the non-redundant bins
/// k = 1..ceil((N+1)/2) of a grid.
struct WTransfer {
  FrequencyGrid grid;
  std::vector<complex> h;
  bool dc_extrapolated = false;

  std::size_t size() const noexcept { return grid.n; }
};

namespace detail {

inline complex interpolate(const PortNetwork& net, std::size_t out_port, std::size_t in_port, double f) {
  const auto& fs = net.freqs_hz;
  if (f == fs.back()) return net.at(fs.size() - 1, out_port, in_port);
  const auto upper = std::upper_bound(fs.begin(), fs.end(), f);
  const std::size_t hi = static_cast<std::size_t>(upper - fs.begin());
  const std::size_t lo = hi - 1;
  const double t = (f - fs[lo]) / (fs[hi] - fs[lo]);
  const complex a = net.at(lo, out_port, in_port);
  const complex b = net.at(hi, out_port, in_port);
  return {a.real() + t * (b.real() - a.real()), a.imag() + t * (b.imag() - a.imag())};
}

inline void check_port(std::size_t port, const PortNetwork& net, const char* which) {
  if (port < 1 || port > net.n_ports) {
    throw IndexError(std::string(which) + " port " + std::to_string(port) + " is outside 1.." +
                     std::to_string(net.n_ports));
  }
}

}  // namespace detail

/// Interpolates S(out_port, in_port) linearly in real and imaginary parts at
/// |w_k^(q)| / (2 pi) for k = 2..max_index. Bins above max_index are zero.
/// The DC bin takes the real part of the lowest-frequency sample (exact when
/// the network includes 0 Hz; flagged otherwise).
inline WTransfer resample(const PortNetwork& net, const FrequencyGrid& grid, std::size_t out_port,
                          std::size_t in_port, std::optional<std::size_t> max_index = std::nullopt,
                          Workers workers = {}) {
  validate(net);
  detail::check_port(out_port, net, "output");
  detail::check_port(in_port, net, "input");
  const std::size_t half = half_count(grid.n);
  const std::size_t used = std::min(max_index.value_or(half), half);
  if (used < 1) throw DomainError("resample: max_index must be at least 1");

  WTransfer out{grid, std::vector<complex>(half, complex(0.0, 0.0)), false};
  out.h[0] = complex(net.at(0, out_port, in_port).real(), 0.0);
  out.dc_extrapolated = net.freqs_hz.front() != 0.0;

  const double f_min = net.freqs_hz.front();
  const double f_max = net.freqs_hz.back();
  auto bin_frequency = [&](std::size_t k) { return std::abs(grid.w[k - 1]) / (2.0 * std::numbers::pi); };
  for (std::size_t k = 2; k <= used; ++k) {
    const double f = bin_frequency(k);
    if (f < f_min || f > f_max) {
      throw ExtrapolationError(k, "frequency " + std::to_string(f) + " Hz lies outside the network band [" +
                                      std::to_string(f_min) + ", " + std::to_string(f_max) + "] Hz");
    }
  }
  parallel_for(used - 1, workers, [&](std::size_t i) {
    const std::size_t k = i + 2;
    out.h[k - 1] = detail::interpolate(net, out_port, in_port, bin_frequency(k));
  });
  if (grid.n % 2 == 0 && used == half) out.h[half - 1].imag(0.0);
  return out;
}

/// Transfer function of a real impulse response, H_k = sum_n h[n] exp(-i 2 pi (k-1)(n-1)/N).
inline WTransfer transfer_from_impulse_response(const PeriodicSequence& impulse, const FrequencyGrid& grid,
                                                Workers workers = {}) {
  if (impulse.size() != grid.n) throw LengthMismatch("impulse response and grid lengths differ");
  const WSpectrum spec = forward_e(impulse, workers);
  const double root_n = std::sqrt(static_cast<double>(grid.n));
  WTransfer out{grid, std::vector<complex>(half_count(grid.n)), false};
  for (std::size_t k0 = 0; k0 < out.h.size(); ++k0) out.h[k0] = std::conj(spec[k0]) * root_n;
  return out;
}

/// Multiplies the transfer by exp(+j |w_k| tau), removing a delay tau
/// (fixtures, cables) from the stored response.
inline WTransfer remove_delay(WTransfer transfer, double tau) {
  for (std::size_t k0 = 1; k0 < transfer.h.size(); ++k0) {
    transfer.h[k0] *= std::polar(1.0, std::abs(transfer.grid.w[k0]) * tau);
  }
  if (transfer.grid.n % 2 == 0) transfer.h.back().imag(0.0);
  return transfer;
}

/// Periodic response q = p (circular convolution) h, computed bin by bin in
/// the w domain.
inline PeriodicSequence respond(const PeriodicSequence& excitation, const WTransfer& transfer, Workers workers = {}) {
  const std::size_t n = excitation.size();
  if (transfer.size() != n || transfer.h.size() != half_count(n)) {
    throw LengthMismatch("excitation and transfer lengths differ");
  }
  const WSpectrum in = forward_e(excitation, workers);
  std::vector<complex> out(n);
  for (std::size_t k0 = 0; k0 < transfer.h.size(); ++k0) {
    const bool self_paired = k0 == 0 || (n % 2 == 0 && k0 == n / 2);
    const complex h = self_paired ? complex(transfer.h[k0].real(), 0.0) : std::conj(transfer.h[k0]);
    out[k0] = in[k0] * h;
  }
  for (std::size_t k0 = transfer.h.size(); k0 < n; ++k0) out[k0] = std::conj(out[n - k0]);
  return inverse_e(WSpectrum(std::move(out), FieldKind::electric, excitation.dt()), workers);
}

inline PeriodicSequence respond(const PeriodicExcitation& excitation, const WTransfer& transfer,
                                Workers workers = {}) {
  return respond(excitation.sequence, transfer, workers);
}

/// Direct O(N^2) circular convolution, (p (.) h)[n] = sum_m p[m] h[n - m mod N].
inline PeriodicSequence circular_convolve(const PeriodicSequence& p, const PeriodicSequence& h) {
  if (p.size() != h.size()) throw LengthMismatch("circular_convolve: sequences differ in length");
  const std::size_t n = p.size();
  std::vector<double> q(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t m = 0; m < n; ++m) sum += p[m] * h[(i + n - m) % n];
    q[i] = sum;
  }
  return PeriodicSequence(std::move(q), p.dt());
}

/// Generalized KL divergence sum { u ln(u/v) - u + v } of non-negative vectors.
inline double generalized_kl(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw LengthMismatch("generalized_kl: vectors differ in length");
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0) || !(v[i] > 0.0)) throw DomainError("generalized_kl: entries must be positive");
    d += std::max(0.0, u[i] * std::log(u[i] / v[i]) - u[i] + v[i]);  // each term is >= 0; drop rounding noise
  }
  return d;
}

/// KL divergence between two periodic responses, each magnitude normalised by
/// the L2 norm of the other sequence and offset by 1e-12.
inline double kl_divergence(const PeriodicSequence& q1, const PeriodicSequence& q2) {
  if (q1.size() != q2.size()) throw LengthMismatch("kl_divergence: sequences differ in length");
  constexpr double eps = 1e-12;
  double n1 = 0.0, n2 = 0.0;
  for (std::size_t i = 0; i < q1.size(); ++i) {
    n1 += q1[i] * q1[i];
    n2 += q2[i] * q2[i];
  }
  n1 = std::sqrt(n1);
  n2 = std::sqrt(n2);
  if (n1 == 0.0 || n2 == 0.0) throw DomainError("kl_divergence: sequence has zero norm");

  std::vector<double> u(q1.size()), v(q2.size());
  for (std::size_t i = 0; i < q1.size(); ++i) {
    u[i] = std::abs(q1[i]) / n2 + eps;
    v[i] = std::abs(q2[i]) / n1 + eps;
  }
  return generalized_kl(u, v);
}

}  // namespace tps
