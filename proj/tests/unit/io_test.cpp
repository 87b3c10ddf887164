#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "tps/io.hpp"
#include "tps/transform.hpp"

namespace {

namespace io = tps::io;
using io::json;

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() /
             ("tps_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
              ::testing::UnitTest::GetInstance()->current_test_info()->name());
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(Csv, SequenceRoundTripIsExact) {
  std::mt19937_64 rng(31);
  auto values = oracle::random_vector(rng, 50);
  values.push_back(1e-300);
  values.push_back(-0.1);
  const tps::PeriodicSequence seq(values, 1e-11);
  std::stringstream buf;
  io::write_sequence_csv(buf, seq);
  EXPECT_EQ(buf.str().substr(0, 8), "n,value\n");
  EXPECT_EQ(io::read_sequence_csv(buf), values);
}

TEST(Csv, SpectrumRoundTripIsExact) {
  std::mt19937_64 rng(32);
  const auto spec = tps::forward_h(tps::PeriodicSequence(oracle::random_vector(rng, 12), 1.0));
  std::stringstream buf;
  io::write_spectrum_csv(buf, spec);
  const auto back = io::read_spectrum_csv(buf);
  ASSERT_EQ(back.size(), 12u);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(back[i], spec[i]);
}

void expect_line(const std::string& text, std::size_t line) {
  std::istringstream in(text);
  try {
    io::read_sequence_csv(in);
    FAIL() << "expected ParseError";
  } catch (const tps::ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
  }
}

TEST(Csv, ParseErrorsCarryLineNumbers) {
  expect_line("index,value\n1,0\n", 1);
  expect_line("n,value\n1,0\n2\n", 3);
  expect_line("n,value\n1,0\n3,1\n", 3);
  expect_line("n,value\n1,abc\n", 2);
  expect_line("n,value\n", 1);
  std::istringstream ok("\n n,value \n1, 2.5 \n\n2,-1\n");
  EXPECT_EQ(io::read_sequence_csv(ok), (std::vector<double>{2.5, -1.0}));
}

TEST(Metadata, RoundTripKeepsExtrasAndIdealOrder) {
  io::SequenceMetadata meta;
  meta.n = 250;
  meta.dt_seconds = 1e-11;
  meta.q = tps::RecurrenceOrder::ideal();
  meta.extra["kmax"] = 10;
  const json j = io::to_json(meta);
  EXPECT_EQ(j["q"], "ideal");
  const auto back = io::metadata_from_json(j);
  EXPECT_EQ(back.n, 250u);
  EXPECT_EQ(back.dt_seconds, 1e-11);
  ASSERT_TRUE(back.q.has_value());
  EXPECT_TRUE(back.q->is_ideal());
  EXPECT_EQ(back.extra["kmax"], 10);

  meta.q = tps::RecurrenceOrder(3);
  EXPECT_EQ(io::metadata_from_json(io::to_json(meta)).q->value(), 3u);
}

TEST(Metadata, RejectsBadFields) {
  EXPECT_THROW(io::metadata_from_json(json{{"dt_seconds", 1.0}}), tps::DomainError);
  EXPECT_THROW(io::metadata_from_json(json{{"N", 4}, {"dt_seconds", -1.0}}), tps::DomainError);
  EXPECT_THROW(io::metadata_from_json(json{{"N", 4}, {"dt_seconds", 1.0}, {"q", -1}}), tps::DomainError);
  EXPECT_THROW(io::metadata_from_json(json{{"N", 4}, {"dt_seconds", 1.0}, {"q", "best"}}), tps::DomainError);
}

TEST(LoadSequence, UsesSidecarOrExplicitDt) {
  const auto dir = scratch_dir();
  const auto csv = dir / "x.csv";
  std::ostringstream text;
  io::write_sequence_csv(text, tps::PeriodicSequence({1.0, 2.0, 3.0}, 1.0));
  io::write_text(csv, text.str());
  EXPECT_EQ(io::sidecar_path(csv), dir / "x.json");

  EXPECT_THROW(io::load_sequence(csv), tps::DomainError);
  EXPECT_EQ(io::load_sequence(csv, 0.5).dt(), 0.5);

  io::write_text(io::sidecar_path(csv), R"({"N": 3, "dt_seconds": 2e-9})");
  EXPECT_EQ(io::load_sequence(csv).dt(), 2e-9);
  io::write_text(io::sidecar_path(csv), R"({"N": 4, "dt_seconds": 2e-9})");
  EXPECT_THROW(io::load_sequence(csv), tps::LengthMismatch);
  io::write_text(io::sidecar_path(csv), "{not json");
  EXPECT_THROW(io::load_sequence(csv), tps::DomainError);
  std::filesystem::remove_all(dir);
}

TEST(Shape, ParsesEveryKind) {
  const auto rc = io::parse_shape(json::parse(R"({"kind": "raised-cosine", "alpha": 0.5})"));
  EXPECT_EQ(std::get<tps::RaisedCosine>(rc).alpha, 0.5);
  const auto tr = io::parse_shape(json::parse(R"({"kind": "trapezoid", "r": 0.2})"));
  EXPECT_EQ(std::get<tps::Trapezoid>(tr).rise_ratio, 0.2);
  const auto g = io::parse_shape(json::parse(R"({"kind": "gaussian", "bt": 1.0, "fp": 0.01})"));
  EXPECT_NEAR(std::get<tps::Gaussian>(g).tp, 8.0924e-4, 1e-8);
  const auto mg = io::parse_shape(
      json::parse(R"({"kind": "modulated-gaussian", "tp": 0.01, "fp": 0.1, "carrier_cycles_per_ui": 2})"));
  EXPECT_EQ(std::get<tps::ModulatedGaussian>(mg).carrier_cycles_per_ui, 2.0);

  for (const auto& shape : {rc, tr, g, mg}) {
    const auto again = io::parse_shape(io::shape_to_json(shape));
    EXPECT_EQ(io::shape_to_json(again), io::shape_to_json(shape));
  }
}

TEST(Shape, ErrorsNameTheField) {
  try {
    io::parse_shape(json::parse(R"({"kind": "raised-cosine", "alpha": 1.5})"));
    FAIL();
  } catch (const tps::DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos) << e.what();
  }
  try {
    io::parse_shape(json::parse(R"({"kind": "trapezoid"})"));
    FAIL();
  } catch (const tps::DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("'r'"), std::string::npos) << e.what();
  }
  EXPECT_THROW(io::parse_shape(json::parse(R"({"kind": "gaussian", "bt": 1, "tp": 0.01, "fp": 0.01})")),
               tps::DomainError);
  EXPECT_THROW(io::parse_shape(json::parse(R"({"kind": "square"})")), tps::DomainError);
  EXPECT_THROW(io::parse_shape(json::parse(R"({"alpha": 0.5})")), tps::DomainError);
}

TEST(Waveguide, ParsesConfig) {
  const auto cfg = io::parse_waveguide(json::parse(
      R"({"a_m": 0.07214, "b_m": 0.03404, "L_m": 0.42, "eps_r": 2.0, "mode": [2, 1], "q": "ideal"})"));
  EXPECT_EQ(cfg.spec.a, 0.07214);
  EXPECT_EQ(cfg.spec.length, 0.42);
  EXPECT_DOUBLE_EQ(cfg.spec.eps, 2.0 * tps::constants::eps0);
  EXPECT_EQ(cfg.spec.mu, tps::constants::mu0);
  EXPECT_EQ(cfg.mode.m, 2u);
  EXPECT_EQ(cfg.mode.l, 1u);
  EXPECT_TRUE(cfg.q.is_ideal());
  EXPECT_EQ(io::parse_waveguide(json::parse(R"({"a_m": 1, "b_m": 0.5, "L_m": 0})")).q.value(), 2u);

  EXPECT_THROW(io::parse_waveguide(json::parse(R"({"a_m": 1, "b_m": 0.5})")), tps::DomainError);
  EXPECT_THROW(io::parse_waveguide(json::parse(R"({"a_m": 1, "b_m": 0.5, "L_m": 1, "mode": [0, 0]})")),
               tps::DomainError);
  EXPECT_THROW(io::parse_waveguide(json::parse(R"({"a_m": 1, "b_m": 0.5, "L_m": 1, "mode": [1]})")),
               tps::DomainError);
}

TEST(FormatNumber, SeventeenSignificantDigits) {
  EXPECT_EQ(io::format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_number(1.0), "1");
  EXPECT_EQ(std::stod(io::format_number(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
