#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tps/excitation.hpp"
#include "tps/transform.hpp"

namespace {

using tps::Gaussian;
using tps::ModulatedGaussian;
using tps::RaisedCosine;
using tps::RecurrenceOrder;
using tps::Trapezoid;

TEST(GFactor, KnownValues) {
  EXPECT_DOUBLE_EQ(tps::g_factor(RaisedCosine{1.0}), 1.0);
  EXPECT_DOUBLE_EQ(tps::g_factor(Trapezoid{0.5}), 2.0);
  EXPECT_NEAR(tps::g_factor(Gaussian{0.01, 0.01}), 2.93174, 5e-6);
  EXPECT_DOUBLE_EQ(tps::g_factor(Gaussian{0.01, 0.01}), 2.0 / std::numbers::pi * std::log(100.0));
  EXPECT_NEAR(tps::g_factor(Gaussian{0.01, 0.01}), 2.0 / std::numbers::pi * std::log(100.0), 1e-14);
}

TEST(GFactor, ModulatedAddsCarrier) {
  const ModulatedGaussian m{Gaussian{0.01, 0.1}, 5.0 / 3.0};
  EXPECT_NEAR(tps::g_factor(m), tps::g_factor(m.envelope) + 5.0 / 3.0, 1e-15);
}

TEST(Validate, NamesTheOffendingField) {
  try {
    tps::validate(RaisedCosine{1.5});
    FAIL() << "expected DomainError";
  } catch (const tps::DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
  }
  EXPECT_THROW(tps::validate(Trapezoid{0.0}), tps::DomainError);
  EXPECT_THROW(tps::validate(Trapezoid{0.6}), tps::DomainError);
  EXPECT_NO_THROW(tps::validate(Trapezoid{0.5}));
  EXPECT_THROW(tps::validate(Gaussian{0.0, 0.5}), tps::DomainError);
  EXPECT_THROW(tps::validate(Gaussian{0.5, 1.0}), tps::DomainError);
  EXPECT_THROW(tps::validate(ModulatedGaussian{Gaussian{}, 0.0}), tps::DomainError);
  EXPECT_NO_THROW(tps::validate(RaisedCosine{0.0}));
}

TEST(TpFromBt, KnownValues) {
  const double bt = std::sqrt(std::log(100.0)) * std::sqrt(2.0 * std::numbers::ln2) / std::numbers::pi;
  EXPECT_NEAR(tps::tp_from_bt(bt), 0.01, 1e-15);
  EXPECT_NEAR(tps::tp_from_bt(1e-9), 1.0, 1e-15);
  EXPECT_NEAR(tps::tp_from_bt(1.0), 8.0924e-4, 1e-8);
  EXPECT_THROW(tps::tp_from_bt(0.0), tps::DomainError);
}

TEST(KmaxExplicit, KnownValues) {
  EXPECT_EQ(tps::kmax_explicit(RaisedCosine{1.0}, 10), 10u);
  EXPECT_EQ(tps::kmax_explicit(Gaussian{0.01, 0.01}, 5), 14u);
  EXPECT_EQ(tps::kmax_explicit(Trapezoid{1.0 / 3.0}, 4), 12u);
}

TEST(KmaxExplicit, ClampsToDcAndRejectsZeroK) {
  EXPECT_EQ(tps::kmax_explicit(RaisedCosine{0.0}, 1), 1u);  // floor(0.5) = 0
  EXPECT_THROW(tps::kmax_explicit(RaisedCosine{0.0}, 0), tps::DomainError);
}

TEST(KmaxExplicit, ModulatedAddsCarrierIndex) {
  // round(5/3 * 3) + 1 = 6 and floor(2.0734 * 3) = 6, so 6 + 6 - 1.
  EXPECT_EQ(tps::kmax_explicit(ModulatedGaussian{Gaussian{0.01, 0.1}, 5.0 / 3.0}, 3), 11u);
}

TEST(KmaxNumeric, KnownValues) {
  EXPECT_EQ(tps::kmax_numeric(RaisedCosine{0.0}, 8, 64, RecurrenceOrder(2)), 4u);
  EXPECT_EQ(tps::kmax_explicit(RaisedCosine{0.0}, 8), 4u);
  for (std::size_t ns : {8u, 50u, 300u}) {
    EXPECT_EQ(tps::kmax_numeric(Gaussian{0.01, 0.01}, 5, ns, RecurrenceOrder(60)),
              tps::kmax_explicit(Gaussian{0.01, 0.01}, 5));
    EXPECT_EQ(tps::kmax_numeric(RaisedCosine{1.0}, 10, ns, RecurrenceOrder::ideal()), 10u);
  }
}

TEST(KmaxNumeric, AgreesWithExplicitWithinOneAtPracticalNs) {
  for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
    for (std::size_t k_ui : {2u, 5u, 8u}) {
      const auto ex = tps::kmax_explicit(RaisedCosine{alpha}, k_ui);
      for (std::size_t ns : {16u, 64u}) {
        const auto nu = tps::kmax_numeric(RaisedCosine{alpha}, k_ui, ns, RecurrenceOrder(2));
        EXPECT_LE(std::max(nu, ex) - std::min(nu, ex), 1u);
      }
    }
  }
}

TEST(KmaxExplicit, IndependentOfSamplingForAllShapes) {
  const std::vector<tps::PulseShape> shapes{RaisedCosine{0.35}, Trapezoid{0.2}, Gaussian{0.05, 0.02},
                                            ModulatedGaussian{Gaussian{0.01, 0.1}, 2.0}};
  for (const auto& s : shapes) {
    for (std::size_t k_ui : {1u, 3u, 7u}) {
      const auto ref = tps::synth(s, 10, k_ui, 1e-3).kmax;
      for (std::size_t ns : {50u, 200u}) {
        for (double dt : {1e-12, 0.5}) EXPECT_EQ(tps::synth(s, ns, k_ui, dt).kmax, ref);
      }
    }
  }
}

TEST(CheckSampling, KnownValues) {
  EXPECT_TRUE(tps::check_sampling(1, 1e-9, 1.0));
  EXPECT_TRUE(tps::check_sampling(10, 1e-9, 18e9));
  EXPECT_FALSE(tps::check_sampling(10, 1e-9, 17e9));
}

TEST(Synth, RaisedCosinePeaksAtPulseCentre) {
  const auto exc = tps::synth(RaisedCosine{1.0}, 50, 5, 1e-12);
  ASSERT_EQ(exc.size(), 250u);
  const auto s = exc.sequence.samples();
  const auto peak = std::max_element(s.begin(), s.end());
  EXPECT_EQ(peak - s.begin(), 25);
  EXPECT_NEAR(*peak, 1.0, 1e-12);
  EXPECT_EQ(exc.kmax, 5u);
  EXPECT_DOUBLE_EQ(exc.nbw, 2.0 * 4.0 / 250.0);
  // Zero crossings at the other unit-interval centres.
  for (std::size_t ui = 1; ui < 5; ++ui) EXPECT_NEAR(s[25 + 50 * ui], 0.0, 1e-12);
}

TEST(Synth, RaisedCosineIsBandLimited) {
  for (double alpha : {0.0, 0.3, 1.0}) {
    const auto exc = tps::synth(RaisedCosine{alpha}, 32, 6, 1.0);
    const auto e = tps::forward_e(exc.sequence);
    double peak = 0.0;
    for (const auto& c : e.coefficients()) peak = std::max(peak, std::abs(c));
    const double g = (1.0 + alpha) / 2.0;
    for (std::size_t k = 1; k <= tps::half_count(exc.size()); ++k) {
      if (static_cast<double>(k - 1) <= g * 6.0) continue;  // alpha = 0 keeps half weight on the edge bin
      EXPECT_LT(std::abs(e.coefficient(k)), 1e-12 * peak) << k;
    }
  }
}

TEST(Synth, GaussianSpectrumFallsBelowFpBeyondCutoff) {
  for (const Gaussian g : {Gaussian{0.01, 0.01}, Gaussian{0.01, 0.1}, Gaussian{0.05, 0.2}}) {
    const std::size_t k_ui = 5;
    const auto exc = tps::synth(g, 50, k_ui, 1.0);
    const auto e = tps::forward_e(exc.sequence);
    const double gk = tps::g_factor(g) * k_ui;
    for (std::size_t k = 2; k <= tps::half_count(exc.size()); ++k) {
      if (static_cast<double>(k - 1) >= gk) {
        EXPECT_LT(std::abs(e.coefficient(k)) / std::abs(e.coefficient(1)), g.fp * (1.0 + 5e-2)) << k;
      }
    }
  }
}

TEST(Synth, GaussianAndModulatedReferenceRuns) {
  const auto a = tps::synth(Gaussian{0.01, 0.01}, 50, 5, 1.0 / 50e9);
  EXPECT_EQ(a.size(), 250u);
  EXPECT_EQ(a.kmax, 14u);
  EXPECT_TRUE(a.warnings.empty());

  const auto e = tps::synth(ModulatedGaussian{Gaussian{0.01, 0.1}, 5.0 / 3.0}, 729, 3, 1.0 / (729 * 1.5e9));
  EXPECT_EQ(e.size(), 2187u);
  EXPECT_EQ(e.kmax, 11u);
  EXPECT_NEAR(e.sequence[364], 1.0, 1e-15);
  EXPECT_NEAR(e.cutoff_hz, (tps::g_factor(Gaussian{0.01, 0.1}) + 5.0 / 3.0) * 1.5e9, 1.0);
}

TEST(Synth, TrapezoidAndGaussianShapes) {
  const auto t = tps::synth(Trapezoid{0.25}, 8, 2, 1.0);
  // u = -4/8..3/8: edges ramp over a quarter UI.
  const std::vector<double> expect{0.0, 0.5, 1.0, 1.0, 1.0, 1.0, 1.0, 0.5, 0, 0, 0, 0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(t.sequence[i], expect[i], 1e-15) << i;

  const auto g = tps::synth(Gaussian{0.01, 0.01}, 40, 1, 1.0);
  EXPECT_NEAR(g.sequence[20], 1.0, 1e-15);
  EXPECT_NEAR(g.sequence[0], 0.01, 1e-15);  // truncation at u = -1/2 lands on tp
  for (std::size_t i = 1; i < 20; ++i) EXPECT_NEAR(g.sequence[20 - i], g.sequence[20 + i], 1e-15);
}

TEST(Synth, WarnsOnDegenerateScales) {
  const auto small = tps::synth(RaisedCosine{0.0}, 4, 1, 1.0);
  EXPECT_EQ(small.kmax, 1u);
  EXPECT_FALSE(small.warnings.empty());

  const auto aliased = tps::synth(Trapezoid{0.1}, 4, 2, 1.0);  // floor(10 * 2) = 20 > ceil(9/2)
  EXPECT_EQ(aliased.kmax, tps::half_count(8));
  EXPECT_FALSE(aliased.warnings.empty());
}

TEST(Synth, RejectsBadArguments) {
  EXPECT_THROW(tps::synth(RaisedCosine{1.0}, 1, 5, 1.0), tps::DomainError);
  EXPECT_THROW(tps::synth(RaisedCosine{1.0}, 4, 0, 1.0), tps::DomainError);
  EXPECT_THROW(tps::synth(RaisedCosine{1.0}, 4, 2, 0.0), tps::DomainError);
  EXPECT_THROW(tps::synth(RaisedCosine{2.0}, 4, 2, 1.0), tps::DomainError);
}

}  // namespace
