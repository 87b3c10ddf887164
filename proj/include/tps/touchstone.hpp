#pragma once

// Touchstone v1 (.sNp) reader. Produces S-parameters in real/imaginary form
// at frequencies in Hz.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tps/errors.hpp"
#include "tps/sequence.hpp"

namespace tps {

/// Frequency-sampled scattering matrix of an n-port.
struct PortNetwork {
  std::size_t n_ports = 0;
  std::vector<double> freqs_hz;
  std::vector<complex> s;  // [freq][out][in], row-major
  double z0 = 50.0;

  std::size_t n_freqs() const noexcept { return freqs_hz.size(); }

  /// Ports are 1-based; fi indexes freqs_hz.
  const complex& at(std::size_t fi, std::size_t out_port, std::size_t in_port) const {
    return s[(fi * n_ports + (out_port - 1)) * n_ports + (in_port - 1)];
  }
  complex& at(std::size_t fi, std::size_t out_port, std::size_t in_port) {
    return s[(fi * n_ports + (out_port - 1)) * n_ports + (in_port - 1)];
  }
};

inline void validate(const PortNetwork& net) {
  if (net.n_ports < 1) throw DomainError("network needs at least one port");
  if (net.freqs_hz.empty()) throw DomainError("network holds no frequency samples");
  if (net.s.size() != net.freqs_hz.size() * net.n_ports * net.n_ports) {
    throw LengthMismatch("S-parameter tensor does not match frequency count and port count");
  }
  for (std::size_t i = 1; i < net.freqs_hz.size(); ++i) {
    if (!(net.freqs_hz[i] > net.freqs_hz[i - 1])) throw DomainError("frequencies must be strictly ascending");
  }
  for (const auto& v : net.s) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("S-parameters must be finite");
  }
}

/// Port count encoded in a ".sNp" extension, 0 if absent.
inline std::size_t ports_from_filename(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext.size() < 4 || ext[1] != 's' || ext.back() != 'p') return 0;
  std::size_t ports = 0;
  const auto* first = ext.data() + 2;
  const auto* last = ext.data() + ext.size() - 1;
  const auto [ptr, ec] = std::from_chars(first, last, ports);
  return (ec == std::errc() && ptr == last) ? ports : 0;
}

namespace detail {

enum class DataFormat { ri, ma, db };

inline std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(line)};
  for (std::string t; in >> t;) tokens.push_back(t);
  return tokens;
}

inline double parse_number(const std::string& token, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
    throw ParseError(line, "invalid number '" + token + "'");
  }
  return v;
}

struct OptionLine {
  double unit_scale = 1e9;  // GHz default
  DataFormat format = DataFormat::ma;
  double z0 = 50.0;
};

inline OptionLine parse_option_line(std::string_view body, std::size_t line) {
  OptionLine opt;
  const auto tokens = split_ws(body);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string t = upper(tokens[i]);
    if (t == "HZ") opt.unit_scale = 1.0;
    else if (t == "KHZ") opt.unit_scale = 1e3;
    else if (t == "MHZ") opt.unit_scale = 1e6;
    else if (t == "GHZ") opt.unit_scale = 1e9;
    else if (t == "S") continue;
    else if (t == "Y" || t == "Z" || t == "H" || t == "G") throw ParseError(line, "only S-parameter files are supported");
    else if (t == "RI") opt.format = DataFormat::ri;
    else if (t == "MA") opt.format = DataFormat::ma;
    else if (t == "DB") opt.format = DataFormat::db;
    else if (t == "R") {
      if (i + 1 >= tokens.size()) throw ParseError(line, "option line: R needs a reference impedance");
      opt.z0 = parse_number(tokens[++i], line);
      if (!(opt.z0 > 0.0)) throw ParseError(line, "option line: reference impedance must be positive");
    } else {
      throw ParseError(line, "option line: unknown token '" + tokens[i] + "'");
    }
  }
  return opt;
}

inline complex to_complex(double a, double b, DataFormat format) {
  constexpr double deg = std::numbers::pi / 180.0;
  switch (format) {
    case DataFormat::ri:
      return {a, b};
    case DataFormat::ma:
      return std::polar(a, b * deg);
    case DataFormat::db:
      return std::polar(std::pow(10.0, a / 20.0), b * deg);
  }
  return {};
}

}  // namespace detail

/// Parses Touchstone v1 text for an n-port. Two-port records are ordered
/// S11 S21 S12 S22; larger networks list the matrix row by row and may wrap
/// a record over several lines. Only the first option line is honoured.
inline PortNetwork parse_touchstone(std::string_view text, std::size_t n_ports) {
  if (n_ports < 1) throw DomainError("port count must be at least 1");

  PortNetwork net;
  net.n_ports = n_ports;
  const std::size_t per_record = 1 + 2 * n_ports * n_ports;

  detail::OptionLine opt;
  bool seen_option = false;
  std::vector<double> pending;
  std::size_t record_line = 0;

  auto flush = [&](std::size_t line) {
    const double f = pending[0] * opt.unit_scale;
    if (!net.freqs_hz.empty() && !(f > net.freqs_hz.back())) {
      throw ParseError(line, "frequencies must be strictly ascending");
    }
    net.freqs_hz.push_back(f);
    const std::size_t base = net.s.size();
    net.s.resize(base + n_ports * n_ports);
    for (std::size_t j = 0; j < n_ports * n_ports; ++j) {
      const complex v = detail::to_complex(pending[1 + 2 * j], pending[2 + 2 * j], opt.format);
      std::size_t row = j / n_ports, col = j % n_ports;
      if (n_ports == 2) std::swap(row, col);  // S11 S21 S12 S22
      net.s[base + row * n_ports + col] = v;
    }
    pending.clear();
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto bang = line.find('!'); bang != std::string_view::npos) line = line.substr(0, bang);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    line = line.substr(first);

    if (line.front() == '#') {
      if (!seen_option) opt = detail::parse_option_line(line.substr(1), line_no);
      seen_option = true;
      continue;
    }
    if (line.front() == '[') throw ParseError(line_no, "Touchstone v2 keywords are not supported");

    const auto tokens = detail::split_ws(line);
    if (pending.empty()) {
      record_line = line_no;
      if (n_ports <= 2 && tokens.size() != per_record) {
        throw ParseError(line_no, "expected " + std::to_string(per_record) + " columns, found " +
                                      std::to_string(tokens.size()));
      }
    }
    if (pending.size() + tokens.size() > per_record) {
      throw ParseError(line_no, "record holds more than " + std::to_string(per_record) + " values");
    }
    for (const auto& t : tokens) pending.push_back(detail::parse_number(t, line_no));
    if (pending.size() == per_record) flush(record_line);
  }
  if (!pending.empty()) throw ParseError(record_line, "incomplete record at end of file");
  if (net.freqs_hz.empty()) throw ParseError(line_no, "file holds no data records");
  net.z0 = opt.z0;
  return net;
}

inline PortNetwork load_touchstone(const std::filesystem::path& path, std::size_t n_ports = 0) {
  if (n_ports == 0) n_ports = ports_from_filename(path);
  if (n_ports == 0) throw DomainError("cannot infer port count from '" + path.string() + "'");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_touchstone(buffer.str(), n_ports);
}

}  // namespace tps
