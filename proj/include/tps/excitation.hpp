#pragma once

// Periodic sequential excitations built from transient pulse prototypes.
//
// A period holds K unit intervals (UI) of Ns samples each, N = K * Ns. Every
// prototype peaks at 1.0 at the sample floor(Ns/2) of the first UI. Shape
// parameters are dimensionless, so the largest occupied w-domain index k_max
// depends only on the shape and on K, never on Ns or dt.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "tps/errors.hpp"
#include "tps/grid.hpp"
#include "tps/sequence.hpp"

namespace tps {

/// Nyquist raised-cosine pulse with roll-off alpha in [0, 1]. Band-limited to
/// (1 + alpha) / (2 Ts).
struct RaisedCosine {
  double alpha = 1.0;
};

/// Symmetric trapezoid spanning one UI; rise and fall each take r * Ts,
/// r in (0, 0.5].
struct Trapezoid {
  double rise_ratio = 0.5;
};

/// Gaussian spanning one UI: the envelope is truncated where it falls to tp,
/// and its spectrum is cut off where it falls to fp (both in (0, 1)).
struct Gaussian {
  double tp = 0.01;
  double fp = 0.01;
};

/// Gaussian envelope times cos(2 pi c t / Ts), c = carrier cycles per UI.
struct ModulatedGaussian {
  Gaussian envelope;
  double carrier_cycles_per_ui = 1.0;
};

using PulseShape = std::variant<RaisedCosine, Trapezoid, Gaussian, ModulatedGaussian>;

inline const char* shape_name(const PulseShape& shape) {
  static constexpr const char* names[] = {"raised-cosine", "trapezoid", "gaussian", "modulated-gaussian"};
  return names[shape.index()];
}

namespace detail {

inline void require_open_unit(double v, const char* field) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError(std::string(field) + " must lie strictly inside (0, 1)");
}

inline void validate(const Gaussian& g) {
  require_open_unit(g.tp, "tp");
  require_open_unit(g.fp, "fp");
}

}  // namespace detail

inline void validate(const PulseShape& shape) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RaisedCosine>) {
          if (!(s.alpha >= 0.0 && s.alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
        } else if constexpr (std::is_same_v<T, Trapezoid>) {
          if (!(s.rise_ratio > 0.0 && s.rise_ratio <= 0.5)) throw DomainError("r must lie in (0, 0.5]");
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          detail::validate(s);
        } else {
          detail::validate(s.envelope);
          if (!(s.carrier_cycles_per_ui > 0.0) || !std::isfinite(s.carrier_cycles_per_ui)) {
            throw DomainError("carrier_cycles_per_ui must be positive");
          }
        }
      },
      shape);
}

/// tp of a Gaussian with time-bandwidth product BT.
inline double tp_from_bt(double bt) {
  if (!(bt > 0.0)) throw DomainError("BT must be positive");
  const double x = std::numbers::pi * bt / std::sqrt(2.0 * std::numbers::ln2);
  return std::exp(-x * x);
}

namespace detail {

inline double gaussian_g(const Gaussian& g) {
  return 2.0 / std::numbers::pi * std::sqrt(std::log(g.tp) * std::log(g.fp));
}

// Envelope standard deviation in UI: exp(-u^2 / (2 s^2)) reaches tp at u = 1/2.
inline double gaussian_sigma_ui(const Gaussian& g) {
  return 1.0 / (2.0 * std::sqrt(-2.0 * std::log(g.tp)));
}

// Guards floor() against products such as 3 * (1/3) landing one ulp low.
inline std::size_t floor_index(double v) {
  return static_cast<std::size_t>(std::floor(v * (1.0 + 1e-12)));
}

}  // namespace detail

/// Dimensionless cut-off f_c * Ts of the shape. For the modulated Gaussian
/// this is the baseband value plus the carrier offset in cycles per UI.
inline double g_factor(const PulseShape& shape) {
  validate(shape);
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RaisedCosine>) {
          return (1.0 + s.alpha) / 2.0;
        } else if constexpr (std::is_same_v<T, Trapezoid>) {
          return 1.0 / s.rise_ratio;
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          return detail::gaussian_g(s);
        } else {
          return detail::gaussian_g(s.envelope) + s.carrier_cycles_per_ui;
        }
      },
      shape);
}

/// Cut-off frequency in Hz for a unit interval of Ts seconds.
inline double cutoff_frequency(const PulseShape& shape, double ts) { return g_factor(shape) / ts; }

/// floor(g K), clamped to at least 1 (the DC bin always exists). The
/// modulated Gaussian adds its carrier index: round(c K) + 1 + floor(g_b K) - 1.
inline std::size_t kmax_explicit(const PulseShape& shape, std::size_t k_ui) {
  if (k_ui < 1) throw DomainError("K must be at least 1");
  validate(shape);
  const double kd = static_cast<double>(k_ui);
  std::size_t kmax = 0;
  if (const auto* mod = std::get_if<ModulatedGaussian>(&shape)) {
    const auto carrier = static_cast<std::size_t>(std::llround(mod->carrier_cycles_per_ui * kd)) + 1;
    const std::size_t baseband = detail::floor_index(detail::gaussian_g(mod->envelope) * kd);
    kmax = carrier + baseband - 1;
  } else {
    kmax = detail::floor_index(g_factor(shape) * kd);
  }
  return kmax == 0 ? 1 : kmax;
}

/// k_max from the quantized spectrum: one less than the largest index whose
/// w_k^(q) does not exceed 2 pi f_c. The offset aligns the scan with
/// floor(g K), which it reproduces as q and Ns grow.
inline std::size_t kmax_numeric(const PulseShape& shape, std::size_t k_ui, std::size_t ns, RecurrenceOrder q) {
  if (k_ui < 1) throw DomainError("K must be at least 1");
  if (ns < 1) throw DomainError("Ns must be at least 1");
  const std::size_t n = k_ui * ns;
  const double dt = 1.0 / static_cast<double>(ns);  // Ts = 1, so f_c = g
  const double limit = 2.0 * std::numbers::pi * g_factor(shape) * (1.0 + 1e-12);

  std::size_t last = 1;
  for (std::size_t k = 2; k <= half_count(n); ++k) {
    if (quantized_frequency(k, n, dt, q) > limit) break;
    last = k;
  }
  return last > 1 ? last - 1 : 1;
}

/// Anti-aliasing stipulation fs >= 2 (k_max - 1) / T.
inline bool check_sampling(std::size_t kmax, double period, double fs) {
  if (!(period > 0.0) || !(fs > 0.0)) throw DomainError("check_sampling: T and fs must be positive");
  if (kmax < 1) throw DomainError("check_sampling: k_max must be at least 1");
  const double required = 2.0 * static_cast<double>(kmax - 1);
  return fs * period >= required * (1.0 - 1e-12);
}

struct PeriodicExcitation {
  PeriodicSequence sequence;
  PulseShape shape;
  std::size_t samples_per_ui = 0;  // Ns
  std::size_t unit_intervals = 0;  // K
  std::size_t kmax = 1;
  double nbw = 0.0;        // 2 (k_max - 1) / N
  double cutoff_hz = 0.0;  // f_c used for k_max
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return sequence.size(); }
};

namespace detail {

// Raised-cosine spectrum normalised to 1 in the pass band, nu = f Ts.
inline double raised_cosine_spectrum(double alpha, double nu) {
  nu = std::abs(nu);
  const double lo = (1.0 - alpha) / 2.0;
  const double hi = (1.0 + alpha) / 2.0;
  if (alpha == 0.0) {
    if (nu < 0.5) return 1.0;
    return nu == 0.5 ? 0.5 : 0.0;  // midpoint of the brick-wall jump
  }
  if (nu <= lo) return 1.0;
  if (nu >= hi) return 0.0;
  return 0.5 * (1.0 + std::cos(std::numbers::pi / alpha * (nu - lo)));
}

// Time-limited prototypes on u = t / Ts in [-1/2, 1/2).
inline double time_limited_pulse(const PulseShape& shape, double u) {
  if (u < -0.5 || u >= 0.5) return 0.0;
  if (const auto* t = std::get_if<Trapezoid>(&shape)) {
    const double edge = 0.5 - std::abs(u);
    return edge >= t->rise_ratio ? 1.0 : edge / t->rise_ratio;
  }
  const Gaussian& g =
      std::holds_alternative<Gaussian>(shape) ? std::get<Gaussian>(shape) : std::get<ModulatedGaussian>(shape).envelope;
  const double s = gaussian_sigma_ui(g);
  double v = std::exp(-u * u / (2.0 * s * s));
  if (const auto* mod = std::get_if<ModulatedGaussian>(&shape)) {
    v *= std::cos(2.0 * std::numbers::pi * mod->carrier_cycles_per_ui * u);
  }
  return v;
}

}  // namespace detail

/// Samples the prototype into one period of N = K Ns samples.
///
/// The raised cosine has unbounded support; its exact periodic extension is
/// summed from its band-limited spectrum, which is equivalent to wrapping the
/// sampled pulse over infinitely many periods. The other shapes span one UI
/// and are wrapped directly.
inline PeriodicExcitation synth(const PulseShape& shape, std::size_t ns, std::size_t k_ui, double dt) {
  validate(shape);
  if (ns < 2) throw DomainError("Ns must be at least 2");
  if (k_ui < 1) throw DomainError("K must be at least 1");
  if (!(dt > 0.0)) throw DomainError("dt must be positive");

  const std::size_t n = k_ui * ns;
  const std::size_t center = ns / 2;
  std::vector<double> x(n, 0.0);

  if (const auto* rc = std::get_if<RaisedCosine>(&shape)) {
    // x[m] = (1/K) sum_j R(j/K) exp(i 2 pi j (m - c) / N), summed as cosines.
    const double kd = static_cast<double>(k_ui);
    std::vector<double> weight;
    for (std::size_t j = 0; j < half_count(n); ++j) {
      const double r = detail::raised_cosine_spectrum(rc->alpha, static_cast<double>(j) / kd);
      if (r == 0.0 && j > 0) break;
      const bool self_paired = j == 0 || (n % 2 == 0 && j == n / 2);
      weight.push_back((self_paired ? r : 2.0 * r) / kd);
    }
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t shift = (m + n - center) % n;
      double sum = 0.0;
      for (std::size_t j = 0; j < weight.size(); ++j) {
        const std::size_t phase = (j * shift) % n;
        sum += weight[j] * std::cos(2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(n));
      }
      x[m] = sum;
    }
  } else {
    const auto reach = static_cast<std::ptrdiff_t>(ns);
    for (std::ptrdiff_t i = -reach; i <= reach; ++i) {
      const double v = detail::time_limited_pulse(shape, static_cast<double>(i) / static_cast<double>(ns));
      if (v == 0.0) continue;
      const auto slot = (static_cast<std::ptrdiff_t>(center) + i) % static_cast<std::ptrdiff_t>(n);
      x[static_cast<std::size_t>(slot < 0 ? slot + static_cast<std::ptrdiff_t>(n) : slot)] += v;
    }
  }

  PeriodicExcitation exc{PeriodicSequence(std::move(x), dt), shape, ns, k_ui, 1, 0.0, 0.0, {}};
  const double ts = static_cast<double>(ns) * dt;
  exc.cutoff_hz = cutoff_frequency(shape, ts);

  std::size_t kmax = kmax_explicit(shape, k_ui);
  if (detail::floor_index(g_factor(shape) * static_cast<double>(k_ui)) == 0) {
    exc.warnings.push_back("floor(g K) is 0; k_max clamped to the DC bin");
  }
  if (kmax > half_count(n)) {
    exc.warnings.push_back("k_max " + std::to_string(kmax) + " exceeds ceil((N+1)/2) = " +
                           std::to_string(half_count(n)) + "; spectrum aliases, increase Ns");
    kmax = half_count(n);
  }
  exc.kmax = kmax;
  exc.nbw = 2.0 * static_cast<double>(kmax - 1) / static_cast<double>(n);
  if (!check_sampling(kmax, exc.sequence.period(), 1.0 / dt)) {
    exc.warnings.push_back("sampling rate below 2 (k_max - 1) / T");
  }
  return exc;
}

}  // namespace tps
