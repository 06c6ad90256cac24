#include "slitsim/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "slitsim/config_file.hpp"
#include "slitsim/epr.hpp"
#include "slitsim/errors.hpp"
#include "slitsim/interference.hpp"
#include "slitsim/io.hpp"
#include "slitsim/qm_oracle.hpp"
#include "slitsim/trajectories.hpp"

namespace slitsim {

namespace {

namespace fs = std::filesystem;

PhaseMode effective_mode(const SimulationConfig& config,
                         const RunManifest& m) {
  return m.mode_override ? *m.mode_override : config.mode;
}

void ensure_out_dir(const std::string& out_dir) {
  if (out_dir.empty())
    throw invalid_config("invalid config: output directory must not be empty");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw io_error("cannot create output directory: " + out_dir + " (" +
                   ec.message() + ")");
}

std::string out_path(const RunManifest& m, std::string_view file) {
  return (fs::path(m.out_dir) / file).string();
}

// Accumulates large text output and flushes it to disk in 4 MB slabs so a
// full field dump never lives in memory twice.
class BufferedWriter {
 public:
  explicit BufferedWriter(const std::string& path)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw io_error("cannot open for writing: " + path);
    buffer_.reserve(kFlushThreshold + (1 << 12));
  }

  void append(std::string_view s) {
    buffer_.append(s);
    maybe_flush();
  }

  void append(char c) {
    buffer_.push_back(c);
    maybe_flush();
  }

  void finish() {
    flush();
    out_.flush();
    if (!out_) throw io_error("write failed: " + path_);
  }

 private:
  static constexpr std::size_t kFlushThreshold = std::size_t{1} << 22;

  void maybe_flush() {
    if (buffer_.size() >= kFlushThreshold) flush();
  }

  void flush() {
    out_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    if (!out_) throw io_error("write failed: " + path_);
    buffer_.clear();
  }

  std::string path_;
  std::ofstream out_;
  std::string buffer_;
};

// Human-facing number for report lines (CSV output uses format_double).
std::string fmt_g(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

}  // namespace

int cmd_fields(const RunManifest& m) {
  const SimulationConfig config = load_config(m.config_path);
  const PhaseMode mode = effective_mode(config, m);
  ensure_out_dir(m.out_dir);

  BufferedWriter csv(out_path(m, "fields.csv"));
  csv.append(kFieldsCsvHeader);
  csv.append('\n');

  std::vector<std::vector<double>> p_frames;
  p_frames.reserve(static_cast<std::size_t>(config.grid.nt));
  for (int j = 0; j < config.grid.nt; ++j) {
    FieldFrame frame = evaluate_frame(config, config.grid.t(j), mode);
    const std::string t_text = format_double(frame.t);
    for (int i = 0; i < config.grid.nx; ++i) {
      csv.append(t_text);
      csv.append(',');
      csv.append(format_double(frame.x[i]));
      csv.append(',');
      csv.append(format_double(frame.p_tot[i]));
      csv.append(',');
      csv.append(format_double(frame.j[i].total));
      csv.append(',');
      csv.append(format_double(frame.j[i].term_conv_1));
      csv.append(',');
      csv.append(format_double(frame.j[i].term_conv_2));
      csv.append(',');
      csv.append(format_double(frame.j[i].term_interf_conv));
      csv.append(',');
      csv.append(format_double(frame.j[i].term_entangling));
      csv.append(',');
      csv.append(format_double(frame.phi12[i]));
      csv.append(',');
      csv.append(format_double(frame.v_eff[i]));
      csv.append('\n');
    }
    p_frames.push_back(std::move(frame.p_tot));
  }
  csv.finish();

  write_file(out_path(m, "intensity.pgm"), render_intensity_pgm(p_frames));
  return 0;
}

int cmd_trajectories(const RunManifest& m) {
  const SimulationConfig config = load_config(m.config_path);
  const PhaseMode mode = effective_mode(config, m);
  ensure_out_dir(m.out_dir);

  const std::vector<double> seeds = seed_positions(config, m.seeds, mode);
  const TrajectorySet ts = integrate(config, seeds, mode);

  BufferedWriter csv(out_path(m, "trajectories.csv"));
  csv.append("traj_id,t,x\n");
  for (std::size_t k = 0; k < ts.paths.size(); ++k) {
    const std::string id_text = std::to_string(k + 1);
    for (const auto& [t, x] : ts.paths[k]) {
      csv.append(id_text);
      csv.append(',');
      csv.append(format_double(t));
      csv.append(',');
      csv.append(format_double(x));
      csv.append('\n');
    }
  }
  csv.finish();

  const CrossingReport report = no_crossing_check(ts);
  std::string text;
  if (report.ok) {
    text = "OK\n";
  } else {
    text = "VIOLATION at t=" + format_double(report.t) + ": trajectories " +
           std::to_string(report.first) + " and " +
           std::to_string(report.second) + " out of order (gap " +
           format_double(report.gap) + ")\n";
  }
  write_file(out_path(m, "trajectories_report.txt"), text);
  return report.ok ? 0 : 1;
}

int cmd_epr(const RunManifest& m) {
  // The scan itself depends only on the detector geometry; the config is
  // loaded so a broken file still fails fast like every other command.
  (void)load_config(m.config_path);
  ensure_out_dir(m.out_dir);
  (void)validate_setup(BeamSetup{});

  const DetectorPair p24 = make_detector_pair(Detector::D2, Detector::D4);
  const DetectorPair p23 = make_detector_pair(Detector::D2, Detector::D3);
  const DetectorPair p64 = make_detector_pair(Detector::D6, Detector::D4);

  constexpr int kScanPoints = 65;
  const auto scan24 = phi_scan(p24, kScanPoints);
  const auto scan23 = phi_scan(p23, kScanPoints);
  const auto scan64 = phi_scan(p64, kScanPoints);

  std::string csv = "phi,P_D2_D4,P_D2_D3,P_D6_D4\n";
  for (int i = 0; i < kScanPoints; ++i) {
    csv += format_double(scan24[i].first);
    csv += ',';
    csv += format_double(scan24[i].second);
    csv += ',';
    csv += format_double(scan23[i].second);
    csv += ',';
    csv += format_double(scan64[i].second);
    csv += '\n';
  }
  write_file(out_path(m, "epr_scan.csv"), csv);
  return 0;
}

int cmd_validate(const RunManifest& m) {
  const SimulationConfig config = load_config(m.config_path);
  const PhaseMode mode = effective_mode(config, m);
  ensure_out_dir(m.out_dir);

  std::string report;
  bool all_ok = true;
  auto check = [&](std::string_view name, bool ok, const std::string& detail) {
    report += std::string(name) + ": " + (ok ? "PASS" : "FAIL") + " (" +
              detail + ")\n";
    all_ok = all_ok && ok;
  };
  auto info = [&](const std::string& line) { report += line + "\n"; };

  // Field agreement with the quantum reference.
  {
    std::vector<double> t_samples;
    t_samples.reserve(static_cast<std::size_t>(config.grid.nt));
    for (int j = 0; j < config.grid.nt; ++j)
      t_samples.push_back(config.grid.t(j));
    const FieldComparison cmp = compare_fields(config, t_samples, mode);
    constexpr double kDensityTol = 1e-9;
    constexpr double kCurrentTol = 1e-9;
    constexpr double kVelocityTol = 1e-7;
    check("density_vs_reference", cmp.density.value < kDensityTol,
          "max rel err " + fmt_g(cmp.density.value) + " at t=" +
              fmt_g(cmp.density.t) + ", x=" + fmt_g(cmp.density.x) +
              "; tolerance " + fmt_g(kDensityTol));
    check("current_vs_reference", cmp.current.value < kCurrentTol,
          "max rel err " + fmt_g(cmp.current.value) + " at t=" +
              fmt_g(cmp.current.t) + ", x=" + fmt_g(cmp.current.x) +
              "; tolerance " + fmt_g(kCurrentTol));
    check("velocity_vs_reference", cmp.velocity.value < kVelocityTol,
          "max rel err " + fmt_g(cmp.velocity.value) + " at t=" +
              fmt_g(cmp.velocity.t) + ", x=" + fmt_g(cmp.velocity.x) +
              "; tolerance " + fmt_g(kVelocityTol));
  }

  // Local probability conservation on the configured grid.
  if (config.grid.nt >= 3 && config.grid.nx >= 3) {
    const ContinuityReport cont = continuity_residual(config, mode, config.grid);
    const double bound = 5e-4 * cont.max_dpdt;
    check("continuity_residual", cont.max_residual < bound,
          "max residual " + fmt_g(cont.max_residual) + " vs bound 5e-4 * max|dP/dt| = " +
              fmt_g(bound));
  } else {
    info("continuity_residual: SKIPPED (grid smaller than 3x3)");
  }

  // Order preservation of the averaged trajectories.
  {
    const std::vector<double> seeds = seed_positions(config, m.seeds, mode);
    const TrajectorySet ts = integrate(config, seeds, mode);
    const CrossingReport cr = no_crossing_check(ts);
    check("trajectory_order", cr.ok,
          cr.ok ? std::to_string(seeds.size()) +
                      " trajectories keep strict order at all " +
                      std::to_string(config.grid.nt) + " recorded times"
                : "trajectories " + std::to_string(cr.first) + " and " +
                      std::to_string(cr.second) + " out of order at t=" +
                      fmt_g(cr.t) + " (gap " + fmt_g(cr.gap) + ")");
  }

  // Detector-probability invariants of the two-particle interferometer.
  {
    const DetectorPair p24 = make_detector_pair(Detector::D2, Detector::D4);
    const DetectorPair p23 = make_detector_pair(Detector::D2, Detector::D3);
    const DetectorPair p64 = make_detector_pair(Detector::D6, Detector::D4);
    constexpr int kPhiSteps = 25;
    constexpr double kTol = 1e-12;

    double worst_sum = 0.0;
    double worst_shift = 0.0;
    bool flat = true;
    const double shifts[] = {0.3, 1.7, std::numbers::pi};
    for (int i = 0; i < kPhiSteps; ++i) {
      for (int j = 0; j < kPhiSteps; ++j) {
        const double Phi1 = 2.0 * std::numbers::pi * i / (kPhiSteps - 1);
        const double Phi2 = 2.0 * std::numbers::pi * j / (kPhiSteps - 1);
        const double sum = conditional_probability(p24, Phi1, Phi2) +
                           conditional_probability(p23, Phi1, Phi2);
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        for (const double delta : shifts) {
          const double moved =
              conditional_probability(p24, Phi1 + delta, Phi2 + delta);
          worst_shift = std::max(
              worst_shift,
              std::abs(moved - conditional_probability(p24, Phi1, Phi2)));
        }
        flat = flat && conditional_probability(p64, Phi1, Phi2) == 0.5;
      }
    }
    check("epr_complementarity", worst_sum <= kTol,
          "max |P(D2,D4) + P(D2,D3) - 1| = " + fmt_g(worst_sum));
    check("epr_shift_invariance", worst_shift <= kTol,
          "max probability change under a common shifter offset = " +
              fmt_g(worst_shift));
    check("epr_which_way_flatness", flat,
          "P(D6,D4) = 0.5 at every sampled shifter setting");

    const BeamSetup setup = validate_setup(BeamSetup{});
    const MomentumChannels ch = total_average_momentum(setup, 0.0, 0.0);
    const double bound =
        setup.N * setup.N * (ch.weight_direct + ch.weight_shifted) *
        (ch.weight_direct + ch.weight_shifted);
    double lo = bound;
    double hi = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double r = 20.0 * i / 400.0;
      const double intensity = correlated_intensity(setup, r);
      lo = std::min(lo, intensity);
      hi = std::max(hi, intensity);
    }
    check("epr_intensity_bounds",
          lo >= -kTol && hi <= bound * (1.0 + kTol),
          "intensity in [" + fmt_g(lo) + ", " + fmt_g(hi) +
              "], physical bound [0, " + fmt_g(bound) + "]");
  }

  // Informational reversal scan at the requested probes.
  for (const double probe : m.probes) {
    const std::optional<double> t_r = reversal_time(config, probe, mode);
    if (t_r) {
      info("probe x=" + fmt_g(probe) + ": current first changes sign at t = " +
           fmt_g(*t_r) + " (info)");
    } else {
      info("probe x=" + fmt_g(probe) +
           ": current never changes sign on the time grid (info)");
    }
  }

  report += std::string("RESULT: ") + (all_ok ? "PASS" : "FAIL") + "\n";
  write_file(out_path(m, "validation.txt"), report);
  std::cout << report;
  return all_ok ? 0 : 1;
}

int cmd_render(const RunManifest& m) {
  ensure_out_dir(m.out_dir);
  const FieldsTable table = read_fields_csv(out_path(m, "fields.csv"));
  write_file(out_path(m, "intensity.pgm"), render_intensity_pgm(table.p));
  return 0;
}

int run(const RunManifest& m) {
  try {
    switch (m.command) {
      case RunManifest::Command::fields:
        return cmd_fields(m);
      case RunManifest::Command::trajectories:
        return cmd_trajectories(m);
      case RunManifest::Command::epr:
        return cmd_epr(m);
      case RunManifest::Command::validate:
        return cmd_validate(m);
      case RunManifest::Command::render:
        return cmd_render(m);
    }
    throw invalid_config("invalid config: unknown command");
  } catch (const invalid_config& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const sim_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace slitsim
