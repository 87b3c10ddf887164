#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tps/errors.hpp"

namespace tps {

using complex = std::complex<double>;

/// Number of non-redundant w-domain bins, ceil((N+1)/2). Bins above it
/// mirror bins below it through conjugate symmetry.
constexpr std::size_t half_count(std::size_t n) noexcept { return n / 2 + 1; }

/// Mirror partner N+2-k of a 1-based index (k=1 maps to itself).
constexpr std::size_t mirror_index(std::size_t k, std::size_t n) noexcept {
  return k == 1 ? 1 : n + 2 - k;
}

/// One period of a uniformly sampled, time-periodic real signal.
/// Samples are stored 0-based; sample(n) uses the 1-based index.
class PeriodicSequence {
 public:
  PeriodicSequence(std::vector<double> samples, double dt)
      : samples_(std::move(samples)), dt_(dt) {
    if (samples_.empty()) throw DomainError("sequence must hold at least one sample");
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw DomainError("dt must be positive and finite");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (!std::isfinite(samples_[i])) {
        throw DomainError("sample n=" + std::to_string(i + 1) + " is not finite");
      }
    }
  }

  std::size_t size() const noexcept { return samples_.size(); }
  double dt() const noexcept { return dt_; }
  double period() const noexcept { return static_cast<double>(samples_.size()) * dt_; }

  std::span<const double> samples() const noexcept { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }

  double sample(std::size_t n) const {
    if (n < 1 || n > samples_.size()) throw IndexError("sample index out of range");
    return samples_[n - 1];
  }

  friend bool operator==(const PeriodicSequence&, const PeriodicSequence&) = default;

 private:
  std::vector<double> samples_;
  double dt_;
};

/// Which transform produced a spectrum. The electric map samples on integer
/// steps; the magnetic map carries the half-step shift and the SGN factor.
enum class FieldKind { electric, magnetic };

inline const char* to_string(FieldKind kind) {
  return kind == FieldKind::electric ? "electric" : "magnetic";
}

/// Coefficients of a sequence in the w domain.
class WSpectrum {
 public:
  WSpectrum(std::vector<complex> coefficients, FieldKind kind, double dt)
      : coefficients_(std::move(coefficients)), kind_(kind), dt_(dt) {
    if (coefficients_.empty()) throw DomainError("spectrum must hold at least one bin");
    if (!(dt_ > 0.0)) throw DomainError("dt must be positive");
  }

  std::size_t size() const noexcept { return coefficients_.size(); }
  FieldKind kind() const noexcept { return kind_; }
  double dt() const noexcept { return dt_; }
  double period() const noexcept { return static_cast<double>(coefficients_.size()) * dt_; }

  std::span<const complex> coefficients() const noexcept { return coefficients_; }
  const complex& operator[](std::size_t i) const { return coefficients_[i]; }

  /// 1-based access, k = 1..N.
  const complex& coefficient(std::size_t k) const {
    if (k < 1 || k > coefficients_.size()) throw IndexError("spectrum index out of range");
    return coefficients_[k - 1];
  }

  friend bool operator==(const WSpectrum&, const WSpectrum&) = default;

 private:
  std::vector<complex> coefficients_;
  FieldKind kind_;
  double dt_;
};

}  // namespace tps
