#pragma once

// Poynting balance of periodic sequences in both domains. The time-averaged
// Poynting vector of the leapfrog samples equals a cosine-weighted sum over
// the non-redundant w-domain bins, provided E goes through the electric map
// and H through the magnetic map.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>

#include "tps/errors.hpp"
#include "tps/grid.hpp"
#include "tps/sequence.hpp"
#include "tps/transform.hpp"

namespace tps {

using Vec3 = std::array<double, 3>;
using CVec3 = std::array<complex, 3>;
using SpectrumTriplet = std::array<WSpectrum, 3>;

/// E (V/m) on integer steps, H (A/m) on the half-shifted steps.
struct FieldPair {
  std::array<PeriodicSequence, 3> e;
  std::array<PeriodicSequence, 3> h;

  std::size_t size() const { return e[0].size(); }
};

inline void validate(const FieldPair& fp) {
  const std::size_t n = fp.e[0].size();
  const double dt = fp.e[0].dt();
  for (const auto* group : {&fp.e, &fp.h}) {
    for (const auto& s : *group) {
      if (s.size() != n) throw LengthMismatch("field components differ in length");
      if (s.dt() != dt) throw DomainError("field components differ in time step");
    }
  }
}

/// delta_k: 1 for the DC bin and the even-N middle bin, 2 otherwise.
inline int delta_weight(std::size_t k, std::size_t n) {
  if (k < 1 || k > half_count(n)) throw IndexError("delta_weight: k must lie in [1, ceil((N+1)/2)]");
  if (k == 1) return 1;
  if (n % 2 == 0 && k == n / 2 + 1) return 1;
  return 2;
}

inline FieldPair make_field_pair(std::array<PeriodicSequence, 3> e, std::array<PeriodicSequence, 3> h) {
  FieldPair fp{std::move(e), std::move(h)};
  validate(fp);
  return fp;
}

/// (1/N) sum_n E[n] x (H[n-1] + H[n]) / 2, with H[0] = H[N].
inline Vec3 time_avg_poynting(const FieldPair& fp) {
  validate(fp);
  const std::size_t n = fp.size();
  Vec3 s{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = i == 0 ? n - 1 : i - 1;
    Vec3 e{}, h{};
    for (int c = 0; c < 3; ++c) {
      e[c] = fp.e[c][i];
      h[c] = 0.5 * (fp.h[c][prev] + fp.h[c][i]);
    }
    s[0] += e[1] * h[2] - e[2] * h[1];
    s[1] += e[2] * h[0] - e[0] * h[2];
    s[2] += e[0] * h[1] - e[1] * h[0];
  }
  for (auto& v : s) v /= static_cast<double>(n);
  return s;
}

namespace detail {

inline void require_pairing(const SpectrumTriplet& e, const SpectrumTriplet& h) {
  const std::size_t n = e[0].size();
  for (int c = 0; c < 3; ++c) {
    if (e[c].kind() != FieldKind::electric) throw KindError("electric spectra must come from the electric map");
    if (h[c].kind() != FieldKind::magnetic) throw KindError("magnetic spectra must come from the magnetic map");
    if (e[c].size() != n || h[c].size() != n) throw LengthMismatch("spectra differ in length");
  }
}

inline double bin_weight(std::size_t k, std::size_t n) {
  return delta_weight(k, n) * std::cos(std::numbers::pi * static_cast<double>(k - 1) / static_cast<double>(n));
}

}  // namespace detail

/// Complex w-domain Poynting vector (1/N) sum_k delta_k (e_k x h_k*) cos(pi(k-1)/N).
inline CVec3 complex_poynting(const SpectrumTriplet& e, const SpectrumTriplet& h) {
  detail::require_pairing(e, h);
  const std::size_t n = e[0].size();
  CVec3 s{};
  for (std::size_t k = 1; k <= half_count(n); ++k) {
    const double weight = detail::bin_weight(k, n);
    CVec3 ek, hk;
    for (int c = 0; c < 3; ++c) {
      ek[c] = e[c][k - 1];
      hk[c] = std::conj(h[c][k - 1]);
    }
    s[0] += weight * (ek[1] * hk[2] - ek[2] * hk[1]);
    s[1] += weight * (ek[2] * hk[0] - ek[0] * hk[2]);
    s[2] += weight * (ek[0] * hk[1] - ek[1] * hk[0]);
  }
  for (auto& v : s) v /= static_cast<double>(n);
  return s;
}

/// Real part of complex_poynting; equals time_avg_poynting of the inverse maps.
inline Vec3 w_domain_poynting(const SpectrumTriplet& e, const SpectrumTriplet& h) {
  const CVec3 s = complex_poynting(e, h);
  return {s[0].real(), s[1].real(), s[2].real()};
}

struct PowerDensities {
  double electric = 0.0;  // p_e
  double magnetic = 0.0;  // p_h
  double ohmic = 0.0;     // p_j
};

/// Weighted sums of w_k eps |e_k|^2, w_k mu |h_k|^2 and o_k |e_k|^2 over the
/// non-redundant bins, with weights delta_k cos(pi(k-1)/N) / N.
inline PowerDensities power_densities(const SpectrumTriplet& e, const SpectrumTriplet& h, const FrequencyGrid& grid,
                                      const OhmicGrid& ohmic, double eps, double mu) {
  detail::require_pairing(e, h);
  const std::size_t n = e[0].size();
  if (grid.n != n || ohmic.size() != n) throw LengthMismatch("grid length does not match spectra");

  PowerDensities p;
  for (std::size_t k = 1; k <= half_count(n); ++k) {
    const double weight = detail::bin_weight(k, n);
    double e2 = 0.0, h2 = 0.0;
    for (int c = 0; c < 3; ++c) {
      e2 += std::norm(e[c][k - 1]);
      h2 += std::norm(h[c][k - 1]);
    }
    p.electric += weight * grid.w[k - 1] * eps * e2;
    p.magnetic += weight * grid.w[k - 1] * mu * h2;
    p.ohmic += weight * ohmic.o[k - 1] * e2;
  }
  p.electric /= static_cast<double>(n);
  p.magnetic /= static_cast<double>(n);
  p.ohmic /= static_cast<double>(n);
  return p;
}

inline SpectrumTriplet forward_e(const std::array<PeriodicSequence, 3>& seqs, Workers workers = {}) {
  return {forward_e(seqs[0], workers), forward_e(seqs[1], workers), forward_e(seqs[2], workers)};
}

inline SpectrumTriplet forward_h(const std::array<PeriodicSequence, 3>& seqs, Workers workers = {}) {
  return {forward_h(seqs[0], workers), forward_h(seqs[1], workers), forward_h(seqs[2], workers)};
}

}  // namespace tps
