#pragma once

// Circulant time-difference and averaging stencils with periodic wrap.
// Applied directly in O(N); dense forms only appear in tests.

#include <cstddef>
#include <string>
#include <vector>

#include "tps/errors.hpp"
#include "tps/sequence.hpp"

namespace tps {

/// [D_t] (plain) acts on magnetic samples: y[n] = x[n-1] - x[n].
/// [D_t]^+ (adjoint) acts on electric samples: y[n] = x[n+1] - x[n].
enum class TimeDifference { plain, adjoint };

namespace detail {

inline void require_stencil_length(const PeriodicSequence& seq, const char* who) {
  if (seq.size() < 2) throw DomainError(std::string(who) + ": sequence needs at least two samples");
}

inline std::size_t prev(std::size_t i, std::size_t n) { return i == 0 ? n - 1 : i - 1; }
inline std::size_t next(std::size_t i, std::size_t n) { return i + 1 == n ? 0 : i + 1; }

}  // namespace detail

inline PeriodicSequence apply_dt(const PeriodicSequence& seq, TimeDifference which) {
  detail::require_stencil_length(seq, "apply_dt");
  const std::size_t n = seq.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = which == TimeDifference::plain ? detail::prev(i, n) : detail::next(i, n);
    y[i] = seq[j] - seq[i];
  }
  return PeriodicSequence(std::move(y), seq.dt());
}

/// [D_tt] = [D_t][D_t]^+: stencil {-1, 2, -1}.
inline PeriodicSequence apply_dtt(const PeriodicSequence& seq) {
  detail::require_stencil_length(seq, "apply_dtt");
  const std::size_t n = seq.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = 2.0 * seq[i] - seq[detail::prev(i, n)] - seq[detail::next(i, n)];
  }
  return PeriodicSequence(std::move(y), seq.dt());
}

/// [O]: y[n] = (x[n-1] + x[n]) / 2.
inline PeriodicSequence apply_avg(const PeriodicSequence& seq) {
  detail::require_stencil_length(seq, "apply_avg");
  const std::size_t n = seq.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = 0.5 * (seq[detail::prev(i, n)] + seq[i]);
  return PeriodicSequence(std::move(y), seq.dt());
}

}  // namespace tps
