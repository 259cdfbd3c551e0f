#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "isl/serialization.hpp"

namespace isl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Every knob of every command. Keys in the config file use these names.
struct ExperimentConfig {
  std::string command;
  std::string potential;  // CSV "x,q"
  std::string data;       // scattering data JSON (Marchenko and Krein only)
  std::string out = "out";
  std::uint64_t seed = 1;

  double x_max = 2.0, x_step = 0.01;
  double k_max = 60.0, k_step = 0.01;
  double lambda_max = 0.0;  // 0 means k_max^2
  double lambda_step = 0.25;
  std::vector<std::string> methods{"marchenko", "gl", "krein"};

  // resonances
  double box_re_min = 0.5, box_re_max = 6.0, box_im_min = -3.0, box_im_max = -0.01;
  double zero_tol = 1e-10;
  double census_depth = 10.0;

  // phase shifts and ambiguity
  double energy_k = 1.0;
  int L = 30;
  double target_gap = 1e-3, min_gap = 0.5;
  int budget = 4000, restarts = 4;
  std::vector<double> q1_breaks{1.0}, q1_heights{1.0};

  // Born demonstration
  double q_scale = 1.0;
  double noise = 1e-3;
  double xi_max = 60.0, xi_step = 0.05;
  std::vector<double> cutoffs;  // empty means 2, 4, ..., xi_max
  std::string born_data = "born";  // born | exact

  json to_json() const;
};

/// Parses flat "key = value" text with # comments. Unknown keys and
/// malformed values throw ValidationError.
void apply_config_text(ExperimentConfig& cfg, const std::string& text);
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
/// Checks ranges and command-specific requirements.
void validate(const ExperimentConfig& cfg);

/// Runs the command, writes report.json (and CSV artifacts) into cfg.out and
/// returns the exit code. Errors are reported on `err`.
int run(const ExperimentConfig& cfg, std::ostream& err);

/// Command-line entry: isl <command> --config <path> [--seed N] [--out DIR]
/// [--x-max F] [--x-step F] [--k-max F] [--k-step F] [--set key=value]...
int main_entry(int argc, char** argv);

}  // namespace isl::cli
