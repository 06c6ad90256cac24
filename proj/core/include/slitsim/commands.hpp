#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slitsim/model.hpp"

namespace slitsim {

// One batch invocation: which command, where the config lives, where output
// goes, and the optional overrides.
struct RunManifest {
  enum class Command { fields, trajectories, epr, validate, render };

  Command command = Command::fields;
  std::string config_path;
  std::string out_dir;
  std::optional<PhaseMode> mode_override;  // --mode beats the config file
  int seeds = 200;                         // trajectory count
  std::vector<double> probes;              // reversal-time probe positions
};

// Exit codes shared by every command:
//   0 success / all validations passed
//   1 a validation or simulation-level check failed
//   2 invalid configuration (bad value, unknown key, broken invariant)
//   3 I/O failure (unreadable/unwritable/unparsable file)

// Writes fields.csv (one row per (t, x), row-major ascending t then x, see
// kFieldsCsvHeader) and intensity.pgm into out_dir.
int cmd_fields(const RunManifest& m);

// Writes trajectories.csv (header traj_id,t,x; ids 1-based ascending with
// seed position) and trajectories_report.txt ("OK" when the order check
// passes).  Returns 1 when the order check fails.
int cmd_trajectories(const RunManifest& m);

// Writes epr_scan.csv (header phi,P_D2_D4,P_D2_D3,P_D6_D4) scanning the
// detector-pair probabilities over 65 uniform phase values in [0, 2 pi].
int cmd_epr(const RunManifest& m);

// Runs the validation suite (field comparison against the quantum reference,
// continuity residual, trajectory order check, detector-probability
// invariants, plus an informational reversal scan per probe) and writes
// validation.txt.  Returns 0 iff every check passes.
int cmd_validate(const RunManifest& m);

// Re-renders intensity.pgm from an existing out_dir/fields.csv without
// recomputing anything; byte-identical to the image cmd_fields wrote.
int cmd_render(const RunManifest& m);

// Dispatches on m.command, mapping exceptions to the exit codes above and
// printing their messages to stderr.
int run(const RunManifest& m);

}  // namespace slitsim
