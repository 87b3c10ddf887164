#pragma once

// File formats.
//
//   sequence CSV   header "n,value", rows n = 1..N
//   sidecar JSON   {"N": .., "dt_seconds": .., "q": ..} plus optional extras
//   spectrum CSV   header "k,re,im", rows k = 1..N
//   shape JSON     {"kind": .., "alpha"|"r"|"tp"|"fp"|"bt": .., "Ns": .., "K": ..}
//   waveguide JSON {"a_m": .., "b_m": .., "L_m": .., "sigma": .., "mode": [m, l], "q": ..}
//
// Numbers are written with 17 significant digits so doubles round-trip.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "tps/errors.hpp"
#include "tps/excitation.hpp"
#include "tps/grid.hpp"
#include "tps/sequence.hpp"
#include "tps/waveguide.hpp"

namespace tps::io {

using json = nlohmann::ordered_json;

inline std::string format_number(double v) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, ptr);
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) cells.push_back(trim(cell));
  return cells;
}

inline double to_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(line, "invalid number '" + s + "'");
  return v;
}

inline std::size_t to_index(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(line, "invalid index '" + s + "'");
  return v;
}

// Reads rows of the given width after the expected header; checks the
// leading index column runs 1..N.
inline std::vector<std::vector<double>> read_indexed_csv(std::istream& in, const std::string& header,
                                                         std::size_t width) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line) != header) throw ParseError(line_no, "expected header '" + header + "'");

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != width) {
      throw ParseError(line_no, "expected " + std::to_string(width) + " columns, found " + std::to_string(cells.size()));
    }
    if (to_index(cells[0], line_no) != rows.size() + 1) {
      throw ParseError(line_no, "index column must run 1..N without gaps");
    }
    std::vector<double> row;
    for (std::size_t c = 1; c < width; ++c) row.push_back(to_double(cells[c], line_no));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(line_no, "no data rows");
  return rows;
}

}  // namespace detail

inline void write_sequence_csv(std::ostream& out, const PeriodicSequence& seq) {
  out << "n,value\n";
  for (std::size_t i = 0; i < seq.size(); ++i) out << (i + 1) << ',' << format_number(seq[i]) << '\n';
}

inline std::vector<double> read_sequence_csv(std::istream& in) {
  std::vector<double> values;
  for (auto& row : detail::read_indexed_csv(in, "n,value", 2)) values.push_back(row[0]);
  return values;
}

inline void write_spectrum_csv(std::ostream& out, const WSpectrum& spec) {
  out << "k,re,im\n";
  for (std::size_t i = 0; i < spec.size(); ++i) {
    out << (i + 1) << ',' << format_number(spec[i].real()) << ',' << format_number(spec[i].imag()) << '\n';
  }
}

inline std::vector<complex> read_spectrum_csv(std::istream& in) {
  std::vector<complex> values;
  for (auto& row : detail::read_indexed_csv(in, "k,re,im", 3)) values.emplace_back(row[0], row[1]);
  return values;
}

/// Sidecar metadata of a sequence file. Unknown keys are kept in extra.
struct SequenceMetadata {
  std::size_t n = 0;
  double dt_seconds = 0.0;
  std::optional<RecurrenceOrder> q;
  json extra = json::object();
};

inline json to_json(const SequenceMetadata& meta) {
  json j = json::object();
  j["N"] = meta.n;
  j["dt_seconds"] = meta.dt_seconds;
  if (meta.q) {
    if (meta.q->is_ideal()) j["q"] = "ideal";
    else j["q"] = meta.q->value();
  }
  for (const auto& [key, value] : meta.extra.items()) j[key] = value;
  return j;
}

inline RecurrenceOrder parse_order(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "ideal") return RecurrenceOrder::ideal();
    throw DomainError("q must be a non-negative integer or \"ideal\"");
  }
  if (!j.is_number_integer() || j.get<long long>() < 0) throw DomainError("q must be a non-negative integer");
  return RecurrenceOrder(j.get<unsigned>());
}

inline SequenceMetadata metadata_from_json(const json& j) {
  SequenceMetadata meta;
  if (!j.contains("N") || !j["N"].is_number_unsigned()) throw DomainError("sidecar: N missing or not an integer");
  if (!j.contains("dt_seconds") || !j["dt_seconds"].is_number()) throw DomainError("sidecar: dt_seconds missing");
  meta.n = j["N"].get<std::size_t>();
  meta.dt_seconds = j["dt_seconds"].get<double>();
  if (!(meta.dt_seconds > 0.0)) throw DomainError("sidecar: dt_seconds must be positive");
  if (j.contains("q")) meta.q = parse_order(j["q"]);
  for (const auto& [key, value] : j.items()) {
    if (key != "N" && key != "dt_seconds" && key != "q") meta.extra[key] = value;
  }
  return meta;
}

/// Sidecar path for a sequence file: same stem, ".json" extension.
inline std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto p = csv;
  return p.replace_extension(".json");
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw DomainError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

/// Reads a sequence CSV; dt comes from the sidecar unless given explicitly.
inline PeriodicSequence load_sequence(const std::filesystem::path& csv, std::optional<double> dt = std::nullopt) {
  std::istringstream in(read_text(csv));
  auto values = read_sequence_csv(in);
  if (!dt) {
    const auto side = sidecar_path(csv);
    if (!std::filesystem::exists(side)) {
      throw DomainError("no time step given and sidecar '" + side.string() + "' is missing");
    }
    const auto meta = metadata_from_json(read_json(side));
    if (meta.n != values.size()) throw LengthMismatch("sidecar N does not match the CSV row count");
    dt = meta.dt_seconds;
  }
  return PeriodicSequence(std::move(values), *dt);
}

namespace detail {

inline double require_number(const json& j, const char* key) {
  if (!j.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
  if (!j[key].is_number()) throw DomainError(std::string("field '") + key + "' must be a number");
  return j[key].get<double>();
}

inline Gaussian parse_gaussian(const json& j) {
  Gaussian g;
  if (j.contains("bt")) {
    if (j.contains("tp")) throw DomainError("give either 'tp' or 'bt', not both");
    g.tp = tp_from_bt(require_number(j, "bt"));
  } else {
    g.tp = require_number(j, "tp");
  }
  g.fp = require_number(j, "fp");
  return g;
}

}  // namespace detail

/// Shape part of a shape JSON document. Field-level range errors name the field.
inline PulseShape parse_shape(const json& j) {
  if (!j.contains("kind") || !j["kind"].is_string()) throw DomainError("missing field 'kind'");
  const auto kind = j["kind"].get<std::string>();
  PulseShape shape;
  if (kind == "raised-cosine") {
    shape = RaisedCosine{detail::require_number(j, "alpha")};
  } else if (kind == "trapezoid") {
    shape = Trapezoid{detail::require_number(j, "r")};
  } else if (kind == "gaussian") {
    shape = detail::parse_gaussian(j);
  } else if (kind == "modulated-gaussian") {
    shape = ModulatedGaussian{detail::parse_gaussian(j), detail::require_number(j, "carrier_cycles_per_ui")};
  } else {
    throw DomainError("unknown kind '" + kind + "'");
  }
  validate(shape);
  return shape;
}

inline json shape_to_json(const PulseShape& shape) {
  json j = json::object();
  j["kind"] = shape_name(shape);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RaisedCosine>) {
          j["alpha"] = s.alpha;
        } else if constexpr (std::is_same_v<T, Trapezoid>) {
          j["r"] = s.rise_ratio;
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          j["tp"] = s.tp;
          j["fp"] = s.fp;
        } else {
          j["tp"] = s.envelope.tp;
          j["fp"] = s.envelope.fp;
          j["carrier_cycles_per_ui"] = s.carrier_cycles_per_ui;
        }
      },
      shape);
  return j;
}

struct WaveguideConfig {
  WaveguideSpec spec;
  ModeIndex mode;
  RecurrenceOrder q{2};
};

inline WaveguideConfig parse_waveguide(const json& j) {
  WaveguideConfig cfg;
  cfg.spec.a = detail::require_number(j, "a_m");
  cfg.spec.b = detail::require_number(j, "b_m");
  cfg.spec.length = detail::require_number(j, "L_m");
  if (j.contains("sigma")) cfg.spec.sigma = detail::require_number(j, "sigma");
  if (j.contains("eps_r")) cfg.spec.eps = constants::eps0 * detail::require_number(j, "eps_r");
  if (j.contains("mu_r")) cfg.spec.mu = constants::mu0 * detail::require_number(j, "mu_r");
  if (j.contains("mode")) {
    const auto& m = j["mode"];
    if (!m.is_array() || m.size() != 2 || !m[0].is_number_unsigned() || !m[1].is_number_unsigned()) {
      throw DomainError("field 'mode' must be [m, l] with non-negative integers");
    }
    cfg.mode = ModeIndex{m[0].get<unsigned>(), m[1].get<unsigned>()};
  }
  if (j.contains("q")) cfg.q = parse_order(j["q"]);
  validate(cfg.spec);
  validate(cfg.mode);
  return cfg;
}

}  // namespace tps::io
