// Experiment configuration, coefficient presets and the batch runners behind
// the command-line tool.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdgmg/elements.hpp"
#include "hdgmg/hdg.hpp"
#include "hdgmg/multigrid.hpp"
#include "hdgmg/smoothers.hpp"
#include "hdgmg/verify.hpp"

namespace hdgmg {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AuxSolver { VCycle, Exact };
enum class InitialGuess { Ones, Zero, Random };

struct ExperimentConfig {
  std::string id = "exp1";  // exp1, exp2, exp3, custom

  FamilyKind family = FamilyKind::Type3;
  std::vector<int> ks = {0, 1};
  double alpha = 1.0;    // Type 3 stabilization
  double c_alpha = 1.0;  // Type 4: alpha_T = c_alpha / h_T
  TraceBasis basis = TraceBasis::Nodal;
  Domain domain = Domain::LShape;
  std::string coefficient = "exp1";
  std::vector<int> levels = {1, 2, 3, 4, 5};

  SmootherKind smoother = SmootherKind::SymmetricGS;
  std::vector<int> m0s = {1, 2, 3};
  std::vector<int> m1s = {1, 2, 3};
  AuxSolver aux = AuxSolver::VCycle;
  CycleKind cycle = CycleKind::PreSmoothing;
  double reduction = 1e-8;
  int max_iter = 200;
  InitialGuess initial = InitialGuess::Ones;

  bool diagnostics = true;
  int diagnostics_max_dofs = 40000;  // skip spectral diagnostics above this size
  int dense_limit = 600;

  std::string out_dir = ".";
  std::string format = "csv";
  bool record_timing = true;

  /// Throws ConfigError when inconsistent.
  void validate() const;
  ElementFamily element_family(int k) const;
};

/// Defaults of the three reference experiments (and a small custom run).
ExperimentConfig experiment_preset(const std::string& id);

/// Reads `key = value` lines grouped in [sections] into cfg. Unknown keys,
/// malformed lines and bad values raise ConfigError.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);
void apply_config_text(ExperimentConfig& cfg, const std::string& text);
/// Sets one dotted key ("solver.m0") from its textual value.
void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

std::vector<int> parse_int_list(const std::string& text);

/// "exp1", "exp3", "identity", "variable".
CoefficientField coefficient_preset(const std::string& name);

struct RunRow {
  int level = 0;
  int dofs = 0;
  int k = 0;
  int m0 = 0;
  int m1 = 0;  // 0 when the auxiliary problem is solved exactly
  int iterations = 0;
  bool converged = false;
  std::optional<double> contraction;
  std::optional<double> Nh;
  std::optional<double> Mh;
  std::optional<double> seconds;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<RunRow> rows;
  bool all_converged() const;
};

RunReport run_experiment(const ExperimentConfig& cfg);

std::string report_csv(const RunReport& report);
std::string report_json(const RunReport& report);
/// Iteration counts laid out like the printed tables: one line per (k, m),
/// one column per level.
std::string report_table(const RunReport& report);

/// Structural and spectral checks for the configured family.
Report run_verification(const ExperimentConfig& cfg);

}  // namespace hdgmg
