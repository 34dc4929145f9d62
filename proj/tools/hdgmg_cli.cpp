// hdgmg: runs the reference experiments and the verification suite.
//
//   hdgmg experiment --experiment exp1 --k 0 --m0 1,2 --out results
//   hdgmg verify --family type3 --k 1
//
// Exit codes: 0 ok, 1 solver did not converge, 2 bad configuration,
// 3 verification failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hdgmg/experiment.hpp"

namespace {

enum Exit { kOk = 0, kNoConvergence = 1, kConfigError = 2, kVerifyFailure = 3 };

struct Options {
  std::string config;
  std::string experiment;
  std::string family;
  std::string k;
  std::string m0;
  std::string m1;
  std::string levels;
  std::optional<double> reduction;
  std::string out;
  std::string format;
  std::string coefficient;
  std::string smoother;
  std::string cycle;
  std::string basis;
  bool no_diagnostics = false;
  bool no_timing = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "key = value config file with [sections]");
  cmd->add_option("--experiment", o.experiment, "exp1, exp2, exp3 or custom");
  cmd->add_option("--family", o.family, "type1, type2, type3, type4 or wg");
  cmd->add_option("--k", o.k, "trace degree(s), comma separated");
  cmd->add_option("--m0", o.m0, "smoother sweeps, comma separated");
  cmd->add_option("--m1", o.m1, "V-cycle sweeps, comma separated");
  cmd->add_option("--levels", o.levels, "mesh levels, comma separated, or the finest level");
  cmd->add_option("--reduction", o.reduction, "energy-norm reduction target");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--format", o.format, "csv or json");
  cmd->add_option("--coefficient", o.coefficient, "exp1, exp3, identity or variable");
  cmd->add_option("--smoother", o.smoother, "sym-gs, gs, backward-gs, richardson, exact");
  cmd->add_option("--cycle", o.cycle, "pre-smoothing or symmetric");
  cmd->add_option("--basis", o.basis, "nodal or legendre");
  cmd->add_flag("--no-diagnostics", o.no_diagnostics, "skip contraction, Nh and Mh");
  cmd->add_flag("--no-timing", o.no_timing, "write null timings (byte-stable output)");
}

// A single integer N means "levels up to N": 1..N for uniform families,
// multiples of 5 (and N) on the graded family.
std::vector<int> expand_levels(const std::string& text, const hdgmg::ExperimentConfig& cfg) {
  std::vector<int> list = hdgmg::parse_int_list(text);
  if (list.size() != 1 || text.find(',') != std::string::npos) return list;
  const int n = list.front();
  list.clear();
  if (cfg.domain == hdgmg::Domain::GradedSquare) {
    for (int l = 5; l <= n; l += 5) list.push_back(l);
    if (list.empty() || list.back() != n) list.push_back(n);
  } else {
    for (int l = 1; l <= n; ++l) list.push_back(l);
  }
  return list;
}

hdgmg::ExperimentConfig build_config(const Options& o, const std::string& default_id) {
  using namespace hdgmg;
  ExperimentConfig cfg = experiment_preset(o.experiment.empty() ? default_id : o.experiment);
  if (!o.config.empty()) {
    apply_config_file(cfg, o.config);
    if (!o.experiment.empty() && o.experiment != cfg.id) {
      // the flag wins over the file, keeping the file's other settings
      apply_config_value(cfg, "experiment.id", o.experiment);
    }
  }
  if (!o.family.empty()) apply_config_value(cfg, "experiment.family", o.family);
  if (!o.k.empty()) apply_config_value(cfg, "experiment.k", o.k);
  if (!o.m0.empty()) apply_config_value(cfg, "solver.m0", o.m0);
  if (!o.m1.empty()) apply_config_value(cfg, "solver.m1", o.m1);
  if (!o.coefficient.empty()) apply_config_value(cfg, "experiment.coefficient", o.coefficient);
  if (!o.smoother.empty()) apply_config_value(cfg, "solver.smoother", o.smoother);
  if (!o.cycle.empty()) apply_config_value(cfg, "solver.cycle", o.cycle);
  if (!o.basis.empty()) apply_config_value(cfg, "experiment.basis", o.basis);
  if (!o.levels.empty()) cfg.levels = expand_levels(o.levels, cfg);
  if (o.reduction) cfg.reduction = *o.reduction;
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (!o.format.empty()) cfg.format = o.format;
  if (o.no_diagnostics) cfg.diagnostics = false;
  if (o.no_timing) cfg.record_timing = false;
  cfg.validate();
  return cfg;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int run_experiment_cmd(const Options& o) {
  const hdgmg::ExperimentConfig cfg = build_config(o, "exp1");
  const hdgmg::RunReport report = hdgmg::run_experiment(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path base = std::filesystem::path(cfg.out_dir) / cfg.id;
  if (cfg.format == "json") {
    write_file(base.string() + ".json", hdgmg::report_json(report));
  } else {
    write_file(base.string() + ".csv", hdgmg::report_csv(report));
  }
  std::cout << hdgmg::report_table(report);
  if (!report.all_converged()) {
    std::cerr << "warning: some runs did not converge within " << cfg.max_iter << " iterations\n";
    return kNoConvergence;
  }
  return kOk;
}

int run_verify_cmd(const Options& o) {
  hdgmg::ExperimentConfig cfg = build_config(o, "exp1");
  const hdgmg::Report report = hdgmg::run_verification(cfg);
  if (!o.out.empty() || !o.config.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path base = std::filesystem::path(cfg.out_dir) / "verify";
    write_file(base.string() + (cfg.format == "json" ? ".json" : ".txt"),
               cfg.format == "json" ? report.to_json() : report.to_text());
  }
  std::cout << (cfg.format == "json" ? report.to_json() + "\n" : report.to_text());
  return report.all_passed() ? kOk : kVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-level preconditioning for condensed HDG systems"};
  app.require_subcommand(1);
  Options exp_opts;
  Options ver_opts;
  CLI::App* exp = app.add_subcommand("experiment", "run an iteration-count experiment");
  CLI::App* ver = app.add_subcommand("verify", "run the verification checks");
  add_common(exp, exp_opts);
  add_common(ver, ver_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (exp->parsed()) return run_experiment_cmd(exp_opts);
    return run_verify_cmd(ver_opts);
  } catch (const hdgmg::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const hdgmg::UnsupportedFamily& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailure;
  }
}
