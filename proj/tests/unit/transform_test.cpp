#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "tps/grid.hpp"
#include "tps/operators.hpp"
#include "tps/transform.hpp"

namespace {

using tps::complex;
using tps::FieldKind;
using tps::PeriodicSequence;

double max_diff(const PeriodicSequence& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

TEST(ForwardE, KnownValues) {
  const auto ones = tps::forward_e(PeriodicSequence({1, 1, 1, 1}, 1.0));
  EXPECT_NEAR(std::abs(ones[0] - complex(2.0, 0.0)), 0.0, 1e-15);
  for (std::size_t k0 = 1; k0 < 4; ++k0) EXPECT_NEAR(std::abs(ones[k0]), 0.0, 1e-15);

  const auto impulse = tps::forward_e(PeriodicSequence({1, 0, 0, 0}, 1.0));
  for (std::size_t k0 = 0; k0 < 4; ++k0) EXPECT_NEAR(std::abs(impulse[k0] - complex(0.5, 0.0)), 0.0, 1e-15);
  EXPECT_EQ(impulse.kind(), FieldKind::electric);
}

TEST(ForwardH, AllOnesHasOnlyDc) {
  const auto h = tps::forward_h(PeriodicSequence({1, 1, 1, 1}, 1.0));
  EXPECT_NEAR(std::abs(h[0] - complex(2.0, 0.0)), 0.0, 1e-15);
  for (std::size_t k0 = 1; k0 < 4; ++k0) EXPECT_NEAR(std::abs(h[k0]), 0.0, 1e-15);
  EXPECT_EQ(h.kind(), FieldKind::magnetic);
}

TEST(Inverse, KnownValues) {
  const tps::WSpectrum dc({2.0, 0.0, 0.0, 0.0}, FieldKind::electric, 1.0);
  const auto x = tps::inverse_e(dc);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(x[i], 1.0, 1e-15);
}

TEST(Transforms, MatchDenseOracleForAllSmallLengths) {
  std::mt19937_64 rng(1);
  for (std::size_t n = 1; n <= 64; ++n) {
    const auto fe = oracle::forward_e_matrix(n);
    const auto fh = oracle::forward_h_matrix(n);
    const auto x = oracle::random_vector(rng, n);
    const PeriodicSequence seq(x, 1.0);
    const auto ye = oracle::apply(fe, x);
    const auto yh = oracle::apply(fh, x);
    const auto e = tps::forward_e(seq);
    const auto h = tps::forward_h(seq);
    for (std::size_t k0 = 0; k0 < n; ++k0) {
      ASSERT_NEAR(std::abs(e[k0] - ye[k0]), 0.0, 1e-12) << "n=" << n << " k=" << k0 + 1;
      ASSERT_NEAR(std::abs(h[k0] - yh[k0]), 0.0, 1e-12) << "n=" << n << " k=" << k0 + 1;
    }
  }
}

TEST(Transforms, RoundTripAndParseval) {
  std::mt19937_64 rng(2);
  std::vector<std::size_t> lengths;
  for (std::size_t n = 1; n <= 64; ++n) lengths.push_back(n);
  lengths.push_back(729);
  lengths.push_back(4096);
  for (std::size_t n : lengths) {
    const auto x = oracle::random_vector(rng, n);
    const PeriodicSequence seq(x, 1e-9);
    const auto e = tps::forward_e(seq, tps::Workers{4});
    const auto h = tps::forward_h(seq, tps::Workers{4});
    EXPECT_LT(max_diff(tps::inverse_e(e), x), 1e-12) << n;
    EXPECT_LT(max_diff(tps::inverse_h(h), x), 1e-12) << n;

    double nx = 0.0, ne = 0.0, nh = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nx += x[i] * x[i];
      ne += std::norm(e[i]);
      nh += std::norm(h[i]);
    }
    EXPECT_NEAR(ne, nx, 1e-10 * nx) << n;
    EXPECT_NEAR(nh, nx, 1e-10 * nx) << n;
  }
}

TEST(Transforms, ConjugateSymmetryOfRealInput) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 64; ++n) {
    const PeriodicSequence seq(oracle::random_vector(rng, n), 1.0);
    for (const auto& s : {tps::forward_e(seq), tps::forward_h(seq)}) {
      EXPECT_EQ(s[0].imag(), 0.0);
      for (std::size_t k = 2; k <= n; ++k) {
        if (n % 2 == 0 && k == n / 2 + 1) continue;
        EXPECT_LT(std::abs(s.coefficient(n + 2 - k) - std::conj(s.coefficient(k))), 1e-12);
      }
      EXPECT_LT(tps::symmetry_violation(s), 1e-12);
    }
    if (n % 2 == 0) {
      // Middle bin: real for the electric map, imaginary for the magnetic one.
      EXPECT_EQ(tps::forward_e(seq).coefficient(n / 2 + 1).imag(), 0.0);
      EXPECT_EQ(tps::forward_h(seq).coefficient(n / 2 + 1).real(), 0.0);
    }
  }
}

TEST(Diagonalization, DtBetweenMagneticAndElectricBases) {
  for (std::size_t n = 2; n <= 64; ++n) {
    const auto fe = oracle::forward_e_matrix(n);
    const auto fh = oracle::forward_h_matrix(n);
    const auto m = oracle::multiply(oracle::multiply(fe, oracle::dt_matrix(n)), oracle::adjoint(fh));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double s = std::sin(std::numbers::pi * double(i) / double(n));
        const complex expect = i == j ? complex(0.0, 2.0 * s * oracle::sgn(i + 1, n)) : complex(0.0);
        worst = std::max(worst, std::abs(m(i, j) - expect));
      }
    }
    EXPECT_LT(worst, 1e-10) << n;
  }
}

TEST(Diagonalization, DttInElectricBasis) {
  for (std::size_t n = 2; n <= 64; ++n) {
    const auto fe = oracle::forward_e_matrix(n);
    const auto m = oracle::multiply(oracle::multiply(fe, oracle::dtt_matrix(n)), oracle::adjoint(fe));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double s = std::sin(std::numbers::pi * double(i) / double(n));
        const complex expect = i == j ? complex(4.0 * s * s) : complex(0.0);
        worst = std::max(worst, std::abs(m(i, j) - expect));
      }
    }
    EXPECT_LT(worst, 1e-10) << n;
  }
}

TEST(Diagonalization, EigenvaluesAreSymmetricInK) {
  for (std::size_t n = 2; n <= 33; ++n) {
    for (std::size_t k = 2; k <= n; ++k) {
      const double a = std::sin(std::numbers::pi * double(k - 1) / double(n));
      const double b = std::sin(std::numbers::pi * double(n + 1 - k) / double(n));
      EXPECT_NEAR(4 * a * a, 4 * b * b, 1e-14);
    }
  }
}

TEST(Diagonalization, StencilsAgreeWithSpectralProducts) {
  std::mt19937_64 rng(4);
  for (std::size_t n = 2; n <= 64; ++n) {
    const PeriodicSequence x(oracle::random_vector(rng, n), 1.0);
    const auto lhs = tps::forward_e(tps::apply_dt(x, tps::TimeDifference::plain));
    const auto h = tps::forward_h(x);
    for (std::size_t k = 1; k <= n; ++k) {
      const double s = std::sin(std::numbers::pi * double(k - 1) / double(n));
      EXPECT_LT(std::abs(lhs.coefficient(k) - complex(0.0, 2.0 * s * tps::sgn(k, n)) * h.coefficient(k)), 1e-10);
    }
  }
}

TEST(Inverse, RejectsAsymmetricSpectraAndWrongKind) {
  const tps::WSpectrum bad({1.0, {1.0, 1.0}, {0.0, 0.0}, {1.0, 1.0}}, FieldKind::electric, 1.0);
  EXPECT_THROW(tps::inverse_e(bad), tps::SymmetryError);
  const tps::WSpectrum dc_imag({{1.0, 0.5}, 0.0, 0.0}, FieldKind::electric, 1.0);
  EXPECT_THROW(tps::inverse_e(dc_imag), tps::SymmetryError);

  const auto e = tps::forward_e(PeriodicSequence({1, 2, 3}, 1.0));
  const auto h = tps::forward_h(PeriodicSequence({1, 2, 3}, 1.0));
  EXPECT_THROW(tps::inverse_h(e), tps::KindError);
  EXPECT_THROW(tps::inverse_e(h), tps::KindError);
}

TEST(Inverse, ToleratesRoundOffBelowThreshold) {
  std::vector<complex> c{1.0, {0.3, 0.2}, {0.3, -0.2 + 1e-12}};
  EXPECT_NO_THROW(tps::inverse_e(tps::WSpectrum(c, FieldKind::electric, 1.0)));
  c[2] = {0.3, -0.2 + 1e-6};
  EXPECT_THROW(tps::inverse_e(tps::WSpectrum(c, FieldKind::electric, 1.0)), tps::SymmetryError);
}

TEST(Transforms, WorkerCountDoesNotChangeBits) {
  std::mt19937_64 rng(5);
  const PeriodicSequence x(oracle::random_vector(rng, 1000), 1.0);
  const auto ref = tps::forward_h(x, tps::Workers{1});
  for (unsigned w : {2u, 3u, 8u, 0u}) {
    EXPECT_TRUE(tps::forward_h(x, tps::Workers{w}) == ref);
    EXPECT_TRUE(tps::inverse_h(ref, tps::Workers{w}) == tps::inverse_h(ref, tps::Workers{1}));
  }
}

}  // namespace
