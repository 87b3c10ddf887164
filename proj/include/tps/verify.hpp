#pragma once

// Self-check suite behind `tps verify`. Every check reports the largest
// residual it saw next to the tolerance it was held to.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "tps/energy.hpp"
#include "tps/grid.hpp"
#include "tps/network.hpp"
#include "tps/operators.hpp"
#include "tps/parallel.hpp"
#include "tps/sequence.hpp"
#include "tps/transform.hpp"
#include "tps/waveguide.hpp"

namespace tps {

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  unsigned trials = 20;  // random cases per length
  std::size_t max_n = 64;
  /// Transforms H with the electric map and relabels it, which breaks the
  /// pairing the energy identity relies on. Test hook for the negative path.
  bool inject_symmetry_fault = false;
  Workers workers{};
};

namespace detail {

inline PeriodicSequence random_sequence(std::mt19937_64& rng, std::size_t n, double dt = 1.0) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = dist(rng);
  return PeriodicSequence(std::move(x), dt);
}

inline double max_abs_diff(const PeriodicSequence& a, const PeriodicSequence& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double norm2(const PeriodicSequence& s) {
  double sum = 0.0;
  for (double v : s.samples()) sum += v * v;
  return std::sqrt(sum);
}

inline CheckResult finish(std::string name, double residual, double tolerance) {
  return {std::move(name), residual, tolerance, residual <= tolerance};
}

}  // namespace detail

/// Least-squares slope of log p against log NBW.
inline double loglog_slope(const std::vector<double>& nbw, const std::vector<double>& p) {
  const std::size_t n = nbw.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(nbw[i]);
    const double y = std::log(p[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double nd = static_cast<double>(n);
  return (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
}

/// Free-space dispersion error at a normalized bandwidth, evaluated on a
/// grid of length n (k - 1 = nbw n / 2 must be an integer).
inline double dispersion_error_at(double nbw, RecurrenceOrder q, std::size_t n) {
  const auto k = static_cast<std::size_t>(std::llround(nbw * static_cast<double>(n) / 2.0)) + 1;
  const double w = quantized_frequency(k, n, 1.0, q);
  const double omega = circular_frequency(k, n, 1.0);
  return std::abs(w - omega) / omega;
}

/// NBW sample points 0.02, 0.03, ..., 0.20 on a length-2000 grid.
inline std::vector<double> slope_nbw_points() {
  std::vector<double> nbw;
  for (int i = 2; i <= 20; ++i) nbw.push_back(i / 100.0);
  return nbw;
}
inline constexpr std::size_t kSlopeGridLength = 2000;

inline std::vector<CheckResult> run_verification(const VerifyOptions& opt = {}) {
  std::mt19937_64 rng(opt.seed);
  std::vector<CheckResult> out;

  {
    double worst = 0.0;
    double asym = 0.0;
    for (std::size_t n = 1; n <= opt.max_n; ++n) {
      for (unsigned t = 0; t < opt.trials; ++t) {
        const auto x = detail::random_sequence(rng, n);
        const auto e = forward_e(x, opt.workers);
        const auto h = forward_h(x, opt.workers);
        worst = std::max(worst, detail::max_abs_diff(inverse_e(e, opt.workers), x));
        worst = std::max(worst, detail::max_abs_diff(inverse_h(h, opt.workers), x));
        asym = std::max({asym, symmetry_violation(e), symmetry_violation(h)});
      }
    }
    out.push_back(detail::finish("transform round trip", worst, 1e-12));
    out.push_back(detail::finish("conjugate symmetry", asym, 1e-12));
  }

  {
    // e(D_t x) = 2i sin(pi(k-1)/N) SGN(k) h(x);  e(D_tt x) = 4 sin^2(pi(k-1)/N) e(x).
    double worst_dt = 0.0, worst_dtt = 0.0;
    for (std::size_t n = 2; n <= opt.max_n; ++n) {
      for (unsigned t = 0; t < opt.trials; ++t) {
        const auto x = detail::random_sequence(rng, n);
        const auto lhs_dt = forward_e(apply_dt(x, TimeDifference::plain), opt.workers);
        const auto lhs_dtt = forward_e(apply_dtt(x), opt.workers);
        const auto e = forward_e(x, opt.workers);
        const auto h = forward_h(x, opt.workers);
        const double scale = std::max(detail::norm2(x), 1e-300);
        for (std::size_t k = 1; k <= n; ++k) {
          const double s = std::sin(std::numbers::pi * static_cast<double>(k - 1) / static_cast<double>(n));
          const complex lambda(0.0, 2.0 * s * sgn(k, n));
          worst_dt = std::max(worst_dt, std::abs(lhs_dt[k - 1] - lambda * h[k - 1]) / scale);
          worst_dtt = std::max(worst_dtt, std::abs(lhs_dtt[k - 1] - 4.0 * s * s * e[k - 1]) / scale);
        }
      }
    }
    out.push_back(detail::finish("diagonalization of D_t", worst_dt, 1e-10));
    out.push_back(detail::finish("diagonalization of D_tt", worst_dtt, 1e-10));
  }

  {
    double worst = 0.0;
    for (std::size_t n = 2; n <= opt.max_n; ++n) {
      for (unsigned t = 0; t < opt.trials; ++t) {
        std::array<PeriodicSequence, 3> e{detail::random_sequence(rng, n), detail::random_sequence(rng, n),
                                          detail::random_sequence(rng, n)};
        std::array<PeriodicSequence, 3> h{detail::random_sequence(rng, n), detail::random_sequence(rng, n),
                                          detail::random_sequence(rng, n)};
        const auto fp = make_field_pair(e, h);
        const Vec3 time = time_avg_poynting(fp);

        const auto es = forward_e(fp.e, opt.workers);
        SpectrumTriplet hs = forward_h(fp.h, opt.workers);
        if (opt.inject_symmetry_fault) {
          for (int c = 0; c < 3; ++c) {
            const auto wrong = forward_e(fp.h[c], opt.workers);
            hs[c] = WSpectrum(std::vector<complex>(wrong.coefficients().begin(), wrong.coefficients().end()),
                              FieldKind::magnetic, wrong.dt());
          }
        }
        const Vec3 spectral = w_domain_poynting(es, hs);

        double e2 = 0.0, h2 = 0.0;
        for (int c = 0; c < 3; ++c) {
          e2 += std::pow(detail::norm2(fp.e[c]), 2);
          h2 += std::pow(detail::norm2(fp.h[c]), 2);
        }
        const double scale = std::sqrt(e2 * h2) / static_cast<double>(n);
        for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(time[c] - spectral[c]) / scale);
      }
    }
    out.push_back(detail::finish("energy identity", worst, 1e-11));
  }

  {
    // |w^(q) - omega| never grows with q and w^(q) never overshoots omega.
    double worst = 0.0;
    for (std::size_t n : {8u, 64u, 729u}) {
      for (std::size_t k = 2; k <= half_count(n); ++k) {
        const double omega = circular_frequency(k, n, 1.0);
        double prev = std::abs(quantized_frequency(k, n, 1.0, RecurrenceOrder(0)) - omega);
        for (unsigned q = 0; q <= 8; ++q) {
          const double w = quantized_frequency(k, n, 1.0, RecurrenceOrder(q));
          const double err = std::abs(w - omega);
          worst = std::max({worst, (err - prev) / omega, (w - omega) / omega});
          prev = err;
        }
      }
    }
    out.push_back(detail::finish("recurrence monotone", std::max(worst, 0.0), 1e-15));
  }

  {
    const auto nbw = slope_nbw_points();
    double slope_dev = 0.0, approx_dev = 0.0;
    for (unsigned q = 0; q <= 2; ++q) {
      std::vector<double> p;
      for (double v : nbw) {
        p.push_back(dispersion_error_at(v, RecurrenceOrder(q), kSlopeGridLength));
        const double approx = dispersion_error_approx(v, q);
        approx_dev = std::max(approx_dev, std::abs(p.back() - approx) / approx);
      }
      slope_dev = std::max(slope_dev, std::abs(loglog_slope(nbw, p) - 2.0 * (q + 1)));
    }
    out.push_back(detail::finish("dispersion slope 2/4/6", slope_dev, 0.1));
    out.push_back(detail::finish("dispersion closed form", approx_dev, 0.05));
  }

  {
    double worst = 0.0;
    for (std::size_t n : {16u, 250u}) {
      const auto grid = build_grid(n, 1.0, RecurrenceOrder(2));
      for (unsigned t = 0; t < std::max(1u, opt.trials / 4); ++t) {
        const auto p = detail::random_sequence(rng, n);
        const auto h = detail::random_sequence(rng, n);
        const auto direct = circular_convolve(p, h);
        const auto spectral = respond(p, transfer_from_impulse_response(h, grid, opt.workers), opt.workers);
        worst = std::max(worst, detail::max_abs_diff(direct, spectral) / std::max(detail::norm2(direct), 1e-300));
      }
    }
    out.push_back(detail::finish("convolution equivalence", worst, 1e-10));
  }

  {
    const auto q = detail::random_sequence(rng, 128);
    out.push_back(detail::finish("KL self-divergence", std::abs(kl_divergence(q, q)), 1e-9));
  }

  {
    // WR-284 TE10 over a band that straddles cut-off.
    const WaveguideSpec wg{0.07214, 0.03404, 0.42};
    const auto grid = build_grid(2187, 1.0 / (729.0 * 1.5e9), RecurrenceOrder(2));
    const auto transfer = waveguide_transfer(ModeIndex{1, 0}, wg, grid, opt.workers);
    const double kc = cutoff(ModeIndex{1, 0}, wg);
    double worst = 0.0;
    for (std::size_t k0 = 1; k0 < transfer.size(); ++k0) {
      if (std::abs(grid.w[k0]) * std::sqrt(wg.eps * wg.mu) <= kc) continue;
      if (grid.n % 2 == 0 && k0 == grid.n / 2) continue;
      worst = std::max(worst, std::abs(std::abs(transfer[k0]) - 1.0));
    }
    out.push_back(detail::finish("lossless magnitude", worst, 1e-12));
  }

  {
    double worst = 0.0;
    for (std::size_t n : {7u, 8u, 64u}) {
      const auto o = ohmic_grid(1.0, n);
      for (std::size_t k = 1; k <= n; ++k) {
        worst = std::max({worst, -o.o_at(k), std::abs(o.o_at(k) - o.o_at(mirror_index(k, n)))});
      }
    }
    out.push_back(detail::finish("ohmic weights", std::max(worst, 0.0), 1e-15));
  }

  return out;
}

}  // namespace tps
