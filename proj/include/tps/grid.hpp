#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "tps/errors.hpp"
#include "tps/sequence.hpp"

namespace tps {

/// SGN(k): +1 on the first ceil((N+1)/2) indices, -1 on the rest.
inline int sgn(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) throw IndexError("sgn: k must lie in [1, N]");
  return k <= half_count(n) ? 1 : -1;
}

/// Sa(x) = sin(x)/x, Sa(0) = 1.
inline double sa(double x) noexcept { return x == 0.0 ? 1.0 : std::sin(x) / x; }

/// Number of Sa-division refinements applied to the first-order quantized
/// spectrum. The ideal order stands for the limit q -> infinity, where the
/// quantized frequency equals the circular frequency 2*pi*(k-1)/T exactly.
class RecurrenceOrder {
 public:
  constexpr explicit RecurrenceOrder(unsigned q) : q_(q) {}
  static constexpr RecurrenceOrder ideal() { return RecurrenceOrder(kIdeal); }

  constexpr bool is_ideal() const noexcept { return q_ == kIdeal; }
  constexpr unsigned value() const noexcept { return q_; }

  std::string to_string() const { return is_ideal() ? "ideal" : std::to_string(q_); }

  friend constexpr bool operator==(RecurrenceOrder, RecurrenceOrder) = default;

 private:
  static constexpr unsigned kIdeal = std::numeric_limits<unsigned>::max();
  unsigned q_;
};

/// Circular frequency of bin k, 2*pi*(k-1)/T (rad/s).
inline double circular_frequency(std::size_t k, std::size_t n, double dt) {
  if (k < 1 || k > n) throw IndexError("circular_frequency: k must lie in [1, N]");
  return 2.0 * std::numbers::pi * static_cast<double>(k - 1) / (static_cast<double>(n) * dt);
}

namespace detail {

// Non-negative branch, 1 <= k <= ceil((N+1)/2).
inline double quantized_positive(std::size_t k, std::size_t n, double dt, RecurrenceOrder q) {
  if (k == 1) return 0.0;
  const double theta = std::numbers::pi * static_cast<double>(k - 1) / static_cast<double>(n);
  if (q.is_ideal()) return 2.0 * theta / dt;

  const double w0 = 2.0 / dt * std::sin(theta);
  double w = w0;
  for (unsigned i = 0; i < q.value(); ++i) {
    const double next = w0 / sa(w * dt / 2.0);
    if (next == w) break;  // fixed point reached, further steps are identities
    w = next;
  }
  return w;
}

}  // namespace detail

/// Quantized spectrum w_k^(q) in rad/s. q = 0 gives (2/dt) sin(pi(k-1)/N) SGN(k);
/// each further order divides the q = 0 value by Sa(w^(q-1) dt / 2).
/// The upper half is produced by anti-symmetry, w_k = -w_{N+2-k}.
inline double quantized_frequency(std::size_t k, std::size_t n, double dt, RecurrenceOrder q) {
  if (k < 1 || k > n) throw IndexError("quantized_frequency: k must lie in [1, N]");
  if (!(dt > 0.0)) throw DomainError("quantized_frequency: dt must be positive");
  if (k <= half_count(n)) return detail::quantized_positive(k, n, dt, q);
  return -detail::quantized_positive(n + 2 - k, n, dt, q);
}

/// Quantized spectrum of one sequence length and time step, batched over k.
struct FrequencyGrid {
  std::size_t n = 0;
  double dt = 0.0;
  RecurrenceOrder q{0};
  std::vector<double> w;      // w_k^(q), rad/s, 0-based storage
  std::vector<double> omega;  // 2*pi*(k-1)/T, rad/s
  std::vector<int> sign;      // SGN(k)

  std::size_t size() const noexcept { return n; }
  double period() const noexcept { return static_cast<double>(n) * dt; }

  // 1-based accessors.
  double w_at(std::size_t k) const { return w.at(k - 1); }
  double omega_at(std::size_t k) const { return omega.at(k - 1); }
  int sgn_at(std::size_t k) const { return sign.at(k - 1); }
};

inline FrequencyGrid build_grid(std::size_t n, double dt, RecurrenceOrder q) {
  if (n < 1) throw DomainError("build_grid: N must be at least 1");
  if (!(dt > 0.0)) throw DomainError("build_grid: dt must be positive");

  FrequencyGrid grid;
  grid.n = n;
  grid.dt = dt;
  grid.q = q;
  grid.w.resize(n);
  grid.omega.resize(n);
  grid.sign.resize(n);

  const std::size_t half = half_count(n);
  for (std::size_t k = 1; k <= n; ++k) {
    grid.omega[k - 1] = circular_frequency(k, n, dt);
    grid.sign[k - 1] = k <= half ? 1 : -1;
    if (k <= half) grid.w[k - 1] = detail::quantized_positive(k, n, dt, q);
  }
  for (std::size_t k = half + 1; k <= n; ++k) grid.w[k - 1] = -grid.w[n + 1 - k];
  return grid;
}

/// Per-bin conductivity weights o_k = sigma cos(pi(k-1)/N) SGN(k) of the
/// averaged Ohm-loss term. Non-negative and symmetric in k.
struct OhmicGrid {
  double sigma = 0.0;
  std::vector<double> o;

  std::size_t size() const noexcept { return o.size(); }
  double o_at(std::size_t k) const { return o.at(k - 1); }
};

/// o_k for one bin. Upper-half bins take the value of their mirror.
inline double ohmic_weight(std::size_t k, std::size_t n, double sigma) {
  if (k < 1 || k > n) throw IndexError("ohmic_weight: k must lie in [1, N]");
  const std::size_t base = k <= half_count(n) ? k : n + 2 - k;
  const double c = std::cos(std::numbers::pi * static_cast<double>(base - 1) / static_cast<double>(n));
  // cos(pi/2) rounds to ~6e-17; clamp so the even-N middle bin stays exactly >= 0.
  return sigma * std::max(c, 0.0);
}

inline OhmicGrid ohmic_grid(double sigma, std::size_t n) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw DomainError("ohmic_grid: conductivity must be finite and non-negative");
  }
  if (n < 1) throw DomainError("ohmic_grid: N must be at least 1");

  OhmicGrid grid{sigma, std::vector<double>(n)};
  const std::size_t half = half_count(n);
  for (std::size_t k = 1; k <= half; ++k) grid.o[k - 1] = ohmic_weight(k, n, sigma);
  for (std::size_t k = half + 1; k <= n; ++k) grid.o[k - 1] = grid.o[n + 1 - k];
  return grid;
}

}  // namespace tps
