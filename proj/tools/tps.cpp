// tps: command-line front end.
//
//   tps synth       shape JSON -> periodic excitation CSV + sidecar JSON
//   tps propagate   sequence CSV + waveguide JSON -> propagated CSV
//   tps dispersion  NBW sweep -> nbw,q,p_exact,p_approx
//   tps respond     sequence CSV + Touchstone file -> response CSV, KL report
//   tps verify      self-check suite
//   tps verify-energy  the energy-identity check alone
//
// Exit codes: 0 ok, 2 invalid input, 3 runtime failure (including a failed
// verification).

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tps/tps.hpp"

namespace fs = std::filesystem;
using tps::io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct Common {
  std::string out;
  std::string format = "csv";
  unsigned workers = 0;
  std::string q;
};

void add_common(CLI::App* cmd, Common& c, bool with_q = true) {
  cmd->add_option("--out", c.out, "Output file (stdout when omitted)");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--workers", c.workers, "Worker threads, 0 = auto");
  if (with_q) cmd->add_option("--q", c.q, "Recurrence order (integer or 'ideal')");
}

tps::RecurrenceOrder parse_q(const std::string& text) {
  if (text == "ideal") return tps::RecurrenceOrder::ideal();
  std::size_t used = 0;
  long value = -1;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value < 0) throw tps::DomainError("--q must be a non-negative integer or 'ideal'");
  return tps::RecurrenceOrder(static_cast<unsigned>(value));
}

json order_json(tps::RecurrenceOrder q) { return q.is_ideal() ? json("ideal") : json(q.value()); }

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    tps::io::write_text(path, text);
  }
}

// Writes a sequence as CSV (plus sidecar when written to a file) or as one
// JSON document holding metadata and samples.
void emit_sequence(const tps::PeriodicSequence& seq, const tps::io::SequenceMetadata& meta, const Common& c) {
  if (c.format == "json") {
    json doc = tps::io::to_json(meta);
    json samples = json::array();
    for (double v : seq.samples()) samples.push_back(v);
    doc["samples"] = std::move(samples);
    emit(c.out, doc.dump(2) + "\n");
    return;
  }
  std::ostringstream csv;
  tps::io::write_sequence_csv(csv, seq);
  emit(c.out, csv.str());
  if (!c.out.empty()) tps::io::write_text(tps::io::sidecar_path(c.out), tps::io::to_json(meta).dump(2) + "\n");
}

// Sidecar of an input sequence, if one sits next to it.
std::optional<tps::io::SequenceMetadata> input_metadata(const std::string& csv) {
  const auto side = tps::io::sidecar_path(csv);
  if (!fs::exists(side)) return std::nullopt;
  return tps::io::metadata_from_json(tps::io::read_json(side));
}

// --- synth ---------------------------------------------------------------

struct SynthArgs {
  Common common;
  std::string config;
  std::optional<std::size_t> ns, k_ui;
  std::optional<double> dt, fs;
};

int run_synth(const SynthArgs& a) {
  const json cfg = tps::io::read_json(a.config);
  const tps::PulseShape shape = tps::io::parse_shape(cfg);

  auto size_field = [&](const std::optional<std::size_t>& flag, const char* key) -> std::size_t {
    if (flag) return *flag;
    if (cfg.contains(key) && cfg[key].is_number_unsigned()) return cfg[key].get<std::size_t>();
    throw tps::DomainError(std::string("missing field '") + key + "' (config or flag)");
  };
  const std::size_t ns = size_field(a.ns, "Ns");
  const std::size_t k_ui = size_field(a.k_ui, "K");

  std::optional<double> dt = a.dt;
  std::optional<double> fs = a.fs;
  if (!dt && !fs) {
    if (cfg.contains("dt")) dt = tps::io::detail::require_number(cfg, "dt");
    else if (cfg.contains("fs")) fs = tps::io::detail::require_number(cfg, "fs");
  }
  if (dt && fs) throw tps::DomainError("give either --dt or --fs, not both");
  if (fs) {
    if (!(*fs > 0.0)) throw tps::DomainError("fs must be positive");
    dt = 1.0 / *fs;
  }
  if (!dt) throw tps::DomainError("missing time step: pass --dt or --fs");

  const auto exc = tps::synth(shape, ns, k_ui, *dt);
  for (const auto& w : exc.warnings) warn(w);

  tps::io::SequenceMetadata meta;
  meta.n = exc.size();
  meta.dt_seconds = *dt;
  meta.q = a.common.q.empty() ? tps::RecurrenceOrder(2) : parse_q(a.common.q);
  meta.extra["shape"] = tps::io::shape_to_json(shape);
  meta.extra["Ns"] = ns;
  meta.extra["K"] = k_ui;
  meta.extra["kmax"] = exc.kmax;
  meta.extra["nbw"] = exc.nbw;
  meta.extra["fc_hz"] = exc.cutoff_hz;
  meta.extra["warnings"] = exc.warnings;
  emit_sequence(exc.sequence, meta, a.common);
  return kExitOk;
}

// --- propagate -----------------------------------------------------------

struct PropagateArgs {
  Common common;
  std::string in, config;
  std::optional<double> dt;
};

int run_propagate(const PropagateArgs& a) {
  const auto seq = tps::io::load_sequence(a.in, a.dt);
  auto cfg = tps::io::parse_waveguide(tps::io::read_json(a.config));
  if (!a.common.q.empty()) cfg.q = parse_q(a.common.q);
  const tps::Workers workers{a.common.workers};

  const auto grid = tps::build_grid(seq.size(), seq.dt(), cfg.q);
  const double kc = tps::cutoff(cfg.mode, cfg.spec);
  const double root_em = std::sqrt(cfg.spec.eps * cfg.spec.mu);

  // Energy share of the excitation in bins that cannot propagate.
  const auto spectrum = tps::forward_e(seq, workers);
  double total = 0.0, evanescent = 0.0;
  for (std::size_t k0 = 0; k0 < seq.size(); ++k0) {
    const double e = std::norm(spectrum[k0]);
    total += e;
    if (std::abs(grid.w[k0]) * root_em <= kc) evanescent += e;
  }
  const double evanescent_share = total > 0.0 ? evanescent / total : 0.0;

  std::vector<std::string> warnings;
  if (evanescent_share > 0.5) {
    std::ostringstream msg;
    msg << "input lies below cut-off: " << tps::io::format_number(100.0 * evanescent_share)
        << "% of its energy is in evanescent bins";
    warnings.push_back(msg.str());
  }
  for (const auto& w : warnings) warn(w);

  const auto out = tps::propagate(seq, cfg.mode, cfg.spec, grid, workers);

  tps::io::SequenceMetadata meta;
  if (const auto in_meta = input_metadata(a.in); in_meta && !a.dt) meta.extra = in_meta->extra;
  meta.n = out.size();
  meta.dt_seconds = out.dt();
  meta.q = cfg.q;
  meta.extra["mode"] = json::array({cfg.mode.m, cfg.mode.l});
  meta.extra["L_m"] = cfg.spec.length;
  meta.extra["cutoff_hz"] = tps::cutoff_frequency(cfg.mode, cfg.spec);
  meta.extra["evanescent_energy_fraction"] = evanescent_share;
  meta.extra["warnings"] = warnings;
  emit_sequence(out, meta, a.common);
  return kExitOk;
}

// --- dispersion ----------------------------------------------------------

struct DispersionArgs {
  Common common;
  std::string q_list = "0,1,2";
  double nbw_min = 0.02, nbw_max = 0.2;
  std::size_t points = 10;
  std::size_t n = 100000;
};

int run_dispersion(const DispersionArgs& a) {
  std::vector<tps::RecurrenceOrder> orders;
  std::stringstream list(a.q_list);
  for (std::string item; std::getline(list, item, ',');) orders.push_back(parse_q(item));
  if (orders.empty()) throw tps::DomainError("--q list is empty");
  if (a.points == 0) throw tps::DomainError("--points must be at least 1");
  if (!(a.nbw_min > 0.0) || !(a.nbw_max <= 1.0) || !(a.nbw_min <= a.nbw_max)) {
    throw tps::DomainError("NBW range is empty: need 0 < nbw-min <= nbw-max <= 1");
  }
  if (a.points > 1 && a.nbw_min == a.nbw_max) throw tps::DomainError("NBW range is empty for several points");
  if (a.n < 4) throw tps::DomainError("--n must be at least 4");

  // Log-spaced points, snapped to the bins of a length-n grid.
  std::vector<std::size_t> bins;
  for (std::size_t i = 0; i < a.points; ++i) {
    const double t = a.points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(a.points - 1);
    const double nbw = a.nbw_min * std::pow(a.nbw_max / a.nbw_min, t);
    auto k = static_cast<std::size_t>(std::llround(nbw * static_cast<double>(a.n) / 2.0)) + 1;
    k = std::clamp<std::size_t>(k, 2, tps::half_count(a.n));
    if (bins.empty() || bins.back() != k) bins.push_back(k);
  }

  std::ostringstream text;
  json rows = json::array();
  if (a.common.format == "csv") text << "nbw,q,p_exact,p_approx\n";
  for (const auto q : orders) {
    const auto grid = tps::build_grid(a.n, 1.0, q);
    for (std::size_t k : bins) {
      const double nbw = 2.0 * static_cast<double>(k - 1) / static_cast<double>(a.n);
      const double exact = tps::dispersion_error_exact(k, grid);
      std::optional<double> approx;
      if (!q.is_ideal() && q.value() <= 2) approx = tps::dispersion_error_approx(nbw, q.value());
      if (a.common.format == "csv") {
        text << tps::io::format_number(nbw) << ',' << q.to_string() << ',' << tps::io::format_number(exact) << ','
             << (approx ? tps::io::format_number(*approx) : std::string()) << '\n';
      } else {
        rows.push_back(json{{"nbw", nbw}, {"q", order_json(q)}, {"p_exact", exact},
                            {"p_approx", approx ? json(*approx) : json(nullptr)}});
      }
    }
  }
  emit(a.common.out, a.common.format == "csv" ? text.str() : rows.dump(2) + "\n");
  return kExitOk;
}

// --- respond -------------------------------------------------------------

struct RespondArgs {
  Common common;
  std::string in, touchstone, reference, report;
  std::vector<std::size_t> ports;
  std::size_t n_ports = 0;
  double delay = 0.0;
  std::optional<double> dt;
};

int run_respond(const RespondArgs& a) {
  const auto seq = tps::io::load_sequence(a.in, a.dt);
  const auto in_meta = a.dt ? std::nullopt : input_metadata(a.in);
  const auto net = tps::load_touchstone(a.touchstone, a.n_ports);
  const tps::Workers workers{a.common.workers};

  std::size_t out_port = 0, in_port = 0;
  if (a.ports.empty()) {
    if (net.n_ports != 2) throw tps::DomainError("--ports OUT,IN is required for a network that is not a two-port");
    out_port = 2;
    in_port = 1;
  } else if (a.ports.size() == 2) {
    out_port = a.ports[0];
    in_port = a.ports[1];
  } else {
    throw tps::DomainError("--ports takes two indices: OUT,IN");
  }

  tps::RecurrenceOrder q(2);
  if (!a.common.q.empty()) q = parse_q(a.common.q);
  else if (in_meta && in_meta->q) q = *in_meta->q;
  const auto grid = tps::build_grid(seq.size(), seq.dt(), q);

  std::optional<std::size_t> kmax;
  std::optional<double> nbw;
  if (in_meta && in_meta->extra.contains("kmax")) kmax = in_meta->extra["kmax"].get<std::size_t>();
  if (in_meta && in_meta->extra.contains("nbw")) nbw = in_meta->extra["nbw"].get<double>();

  // Bins beyond the measured band carry no transfer; bins up to k_max must be covered.
  std::size_t covered = 1;
  for (std::size_t k = 2; k <= tps::half_count(grid.n); ++k) {
    if (std::abs(grid.w_at(k)) / (2.0 * std::numbers::pi) > net.freqs_hz.back()) break;
    covered = k;
  }
  const std::size_t used = kmax ? std::max(covered, *kmax) : covered;
  auto transfer = tps::resample(net, grid, out_port, in_port, used, workers);
  if (a.delay != 0.0) transfer = tps::remove_delay(std::move(transfer), a.delay);
  if (transfer.dc_extrapolated) warn("network has no 0 Hz sample; DC transfer taken from the lowest frequency");
  if (!kmax && covered < tps::half_count(grid.n)) {
    warn("bins above k=" + std::to_string(covered) + " lie beyond the network band and are zeroed");
  }

  const auto response = tps::respond(seq, transfer, workers);

  json report = json::object();
  report["kl"] = nullptr;
  if (!a.reference.empty()) {
    const auto ref = tps::io::load_sequence(a.reference, seq.dt());
    report["kl"] = tps::kl_divergence(response, ref);
  }
  report["kmax"] = kmax ? json(*kmax) : json(nullptr);
  report["nbw"] = nbw ? json(*nbw) : json(nullptr);
  report["ports"] = json::array({out_port, in_port});
  report["q"] = order_json(q);
  report["bins_resampled"] = used;
  report["dc_extrapolated"] = transfer.dc_extrapolated;

  tps::io::SequenceMetadata meta;
  meta.n = response.size();
  meta.dt_seconds = response.dt();
  meta.q = q;
  meta.extra["report"] = report;
  emit_sequence(response, meta, a.common);

  const std::string report_text = report.dump(2) + "\n";
  if (!a.report.empty()) tps::io::write_text(a.report, report_text);
  else if (!a.common.out.empty()) std::cout << report_text;
  else std::cerr << report_text;
  return kExitOk;
}

// --- verify --------------------------------------------------------------

struct VerifyArgs {
  Common common;
  bool inject_fault = false;
  unsigned trials = 20;
  std::uint64_t seed = tps::VerifyOptions{}.seed;
  std::string only;  // keep a single check
};

int run_verify(const VerifyArgs& a) {
  tps::VerifyOptions opt;
  opt.inject_symmetry_fault = a.inject_fault;
  opt.trials = a.trials;
  opt.seed = a.seed;
  opt.workers = tps::Workers{a.common.workers};
  auto results = tps::run_verification(opt);
  if (!a.only.empty()) std::erase_if(results, [&](const tps::CheckResult& r) { return r.name != a.only; });

  bool all = true;
  json report = json::array();
  std::ostringstream table;
  for (const auto& r : results) {
    all = all && r.pass;
    report.push_back(json{{"check", r.name}, {"max_residual", r.max_residual}, {"tolerance", r.tolerance},
                          {"pass", r.pass}});
    char line[160];
    std::snprintf(line, sizeof(line), "%-4s  %-28s  max residual %-12.4g  tolerance %.1e\n", r.pass ? "PASS" : "FAIL",
                  r.name.c_str(), r.max_residual, r.tolerance);
    table << line;
  }
  const std::string json_text = json{{"pass", all}, {"checks", report}}.dump(2) + "\n";
  if (a.common.format == "json") {
    emit(a.common.out, json_text);
  } else {
    std::cout << table.str();
    if (!a.common.out.empty()) tps::io::write_text(a.common.out, json_text);
  }
  return all ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic-sequence toolkit: w-domain synthesis, propagation and verification"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize a periodic excitation");
  add_common(synth_cmd, synth.common);
  synth_cmd->add_option("--config", synth.config, "Shape JSON")->required();
  synth_cmd->add_option("--Ns", synth.ns, "Samples per unit interval");
  synth_cmd->add_option("--K", synth.k_ui, "Unit intervals per period");
  synth_cmd->add_option("--dt", synth.dt, "Time step in seconds");
  synth_cmd->add_option("--fs", synth.fs, "Sampling rate in Hz (dt = 1/fs)");

  PropagateArgs prop;
  auto* prop_cmd = app.add_subcommand("propagate", "Propagate a sequence through a rectangular waveguide");
  add_common(prop_cmd, prop.common);
  prop_cmd->add_option("--in", prop.in, "Sequence CSV")->required();
  prop_cmd->add_option("--config", prop.config, "Waveguide JSON")->required();
  prop_cmd->add_option("--dt", prop.dt, "Time step in seconds (overrides the sidecar)");

  DispersionArgs disp;
  auto* disp_cmd = app.add_subcommand("dispersion", "Sweep the dispersion error over NBW");
  add_common(disp_cmd, disp.common, false);
  disp_cmd->add_option("--q", disp.q_list, "Comma-separated recurrence orders");
  disp_cmd->add_option("--nbw-min", disp.nbw_min, "Smallest NBW");
  disp_cmd->add_option("--nbw-max", disp.nbw_max, "Largest NBW");
  disp_cmd->add_option("--points", disp.points, "Number of NBW points (log-spaced)");
  disp_cmd->add_option("--n", disp.n, "Grid length the NBW points are snapped to");

  RespondArgs resp;
  auto* resp_cmd = app.add_subcommand("respond", "Periodic response through a Touchstone network");
  add_common(resp_cmd, resp.common);
  resp_cmd->add_option("--in", resp.in, "Excitation CSV")->required();
  resp_cmd->add_option("--touchstone", resp.touchstone, "Touchstone v1 file (.sNp)")->required();
  resp_cmd->add_option("--ports", resp.ports, "Output and input port, OUT,IN")->delimiter(',');
  resp_cmd->add_option("--n-ports", resp.n_ports, "Port count when the extension does not say");
  resp_cmd->add_option("--reference", resp.reference, "Reference waveform CSV for the KL report");
  resp_cmd->add_option("--report", resp.report, "Write the JSON report here");
  resp_cmd->add_option("--delay", resp.delay, "Delay in seconds removed from the transfer");
  resp_cmd->add_option("--dt", resp.dt, "Time step in seconds (overrides the sidecar)");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Run the self-check suite");
  add_common(ver_cmd, ver.common, false);
  ver_cmd->add_flag("--inject-fault", ver.inject_fault, "Break the energy pairing on purpose");
  ver_cmd->add_option("--trials", ver.trials, "Random cases per length");
  ver_cmd->add_option("--seed", ver.seed, "Random seed");

  VerifyArgs ver_energy;
  ver_energy.only = "energy identity";
  auto* ver_energy_cmd = app.add_subcommand("verify-energy", "Run only the energy identity check");
  add_common(ver_energy_cmd, ver_energy.common, false);
  ver_energy_cmd->add_flag("--inject-fault", ver_energy.inject_fault, "Break the energy pairing on purpose");
  ver_energy_cmd->add_option("--trials", ver_energy.trials, "Random cases per length");
  ver_energy_cmd->add_option("--seed", ver_energy.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (synth_cmd->parsed()) return run_synth(synth);
    if (prop_cmd->parsed()) return run_propagate(prop);
    if (disp_cmd->parsed()) return run_dispersion(disp);
    if (resp_cmd->parsed()) return run_respond(resp);
    if (ver_cmd->parsed()) return run_verify(ver);
    if (ver_energy_cmd->parsed()) return run_verify(ver_energy);
  } catch (const tps::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
