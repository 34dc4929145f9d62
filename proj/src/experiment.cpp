#include "hdgmg/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>

#include <Eigen/SparseCholesky>
#include <json.hpp>

#include "hdgmg/auxspace.hpp"
#include "hdgmg/two_level.hpp"

namespace hdgmg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': expected a number, got '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int i = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': expected an integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError("'" + key + "': expected a boolean, got '" + v + "'");
}

template <class Fn>
auto wrap(const std::string& key, Fn fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("'" + key + "': " + e.what());
  }
}

bool is_uniform(Domain d) { return d != Domain::GradedSquare; }

std::string opt_to_string(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return "null";
  std::ostringstream os;
  os << std::setprecision(8) << *v;
  return os.str();
}

nlohmann::ordered_json opt_to_json(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

// Meshes of the requested levels, sharing one hierarchy when uniform.
struct MeshSource {
  MeshHierarchy hierarchy;                     // uniform refinement
  std::vector<std::shared_ptr<const Mesh>> graded;  // graded refinement, index = level

  std::shared_ptr<const Mesh> level(int l) const {
    return graded.empty() ? hierarchy.levels[l] : graded[l];
  }
};

MeshSource build_meshes(const ExperimentConfig& cfg) {
  const int finest = *std::max_element(cfg.levels.begin(), cfg.levels.end());
  MeshSource src;
  if (is_uniform(cfg.domain)) {
    src.hierarchy = build_uniform_hierarchy(build_structured(cfg.domain), finest);
  } else {
    src.graded.push_back(std::make_shared<const Mesh>(build_structured(cfg.domain)));
    for (int l = 1; l <= finest; ++l) src.graded.push_back(std::make_shared<const Mesh>(refine_graded_center(*src.graded.back())));
  }
  return src;
}

Vector initial_vector(const ExperimentConfig& cfg, int n) {
  switch (cfg.initial) {
    case InitialGuess::Ones: return Vector::Ones(n);
    case InitialGuess::Zero: return Vector::Zero(n);
    case InitialGuess::Random: return random_vector(n, kDefaultSeed);
  }
  return Vector::Ones(n);
}

const ScalarFunction kZero = [](const Point&) { return 0.0; };

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_int("list", item));
  }
  if (out.empty()) throw ConfigError("empty list '" + text + "'");
  return out;
}

void ExperimentConfig::validate() const {
  if (id != "exp1" && id != "exp2" && id != "exp3" && id != "custom") throw ConfigError("unknown experiment '" + id + "'");
  if (!(reduction > 0.0 && reduction < 1.0)) throw ConfigError("reduction must lie in (0,1)");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (levels.empty() || ks.empty() || m0s.empty() || m1s.empty()) throw ConfigError("empty parameter list");
  for (int l : levels) {
    if (l < 1) throw ConfigError("levels must be >= 1");
  }
  for (int m : m0s) {
    if (m < 1) throw ConfigError("m0 must be >= 1");
  }
  for (int m : m1s) {
    if (m < 1) throw ConfigError("m1 must be >= 1");
  }
  for (int k : ks) {
    try {
      element_family(k).validate();
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }
  if (!is_uniform(domain) && aux == AuxSolver::VCycle)
    throw ConfigError("the V-cycle needs a uniformly refined hierarchy; use aux = exact on graded meshes");
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  coefficient_preset(coefficient);
}

ElementFamily ExperimentConfig::element_family(int k) const {
  ElementFamily fam = ElementFamily::make(family, k);
  if (family == FamilyKind::Type3 || family == FamilyKind::WG) fam.alpha = alpha;
  fam.c_alpha = c_alpha;
  return fam;
}

ExperimentConfig experiment_preset(const std::string& id) {
  ExperimentConfig cfg;
  cfg.id = id;
  if (id == "exp1") return cfg;
  if (id == "exp2") {
    cfg.smoother = SmootherKind::ForwardGS;
    cfg.m0s = {1};
    return cfg;
  }
  if (id == "exp3") {
    cfg.domain = Domain::GradedSquare;
    cfg.coefficient = "exp3";
    cfg.levels = {5, 10, 15, 20, 25};
    cfg.aux = AuxSolver::Exact;
    cfg.m1s = {1};
    return cfg;
  }
  if (id == "custom") {
    cfg.domain = Domain::Square;
    cfg.coefficient = "identity";
    cfg.ks = {0};
    cfg.levels = {1, 2, 3};
    cfg.m0s = {1};
    cfg.m1s = {1};
    return cfg;
  }
  throw ConfigError("unknown experiment '" + id + "'");
}

void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  const std::string& v = value;
  if (key == "experiment.id") {
    cfg.id = v;
  } else if (key == "experiment.family") {
    cfg.family = wrap(key, [&] { return parse_family(v); });
  } else if (key == "experiment.k") {
    cfg.ks = wrap(key, [&] { return parse_int_list(v); });
  } else if (key == "experiment.alpha") {
    cfg.alpha = parse_double(key, v);
  } else if (key == "experiment.c_alpha") {
    cfg.c_alpha = parse_double(key, v);
  } else if (key == "experiment.basis") {
    cfg.basis = wrap(key, [&] { return parse_trace_basis(v); });
  } else if (key == "experiment.domain") {
    cfg.domain = wrap(key, [&] { return parse_domain(v); });
  } else if (key == "experiment.coefficient") {
    cfg.coefficient = v;
  } else if (key == "experiment.levels") {
    cfg.levels = wrap(key, [&] { return parse_int_list(v); });
  } else if (key == "solver.smoother") {
    cfg.smoother = wrap(key, [&] { return parse_smoother(v); });
  } else if (key == "solver.m0") {
    cfg.m0s = wrap(key, [&] { return parse_int_list(v); });
  } else if (key == "solver.m1") {
    cfg.m1s = wrap(key, [&] { return parse_int_list(v); });
  } else if (key == "solver.aux") {
    if (v == "vcycle") {
      cfg.aux = AuxSolver::VCycle;
    } else if (v == "exact") {
      cfg.aux = AuxSolver::Exact;
    } else {
      throw ConfigError("'" + key + "': expected vcycle or exact");
    }
  } else if (key == "solver.cycle") {
    cfg.cycle = wrap(key, [&] { return parse_cycle(v); });
  } else if (key == "solver.reduction") {
    cfg.reduction = parse_double(key, v);
  } else if (key == "solver.max_iter") {
    cfg.max_iter = parse_int(key, v);
  } else if (key == "solver.initial") {
    if (v == "ones") {
      cfg.initial = InitialGuess::Ones;
    } else if (v == "zero") {
      cfg.initial = InitialGuess::Zero;
    } else if (v == "random") {
      cfg.initial = InitialGuess::Random;
    } else {
      throw ConfigError("'" + key + "': expected ones, zero or random");
    }
  } else if (key == "diagnostics.enabled") {
    cfg.diagnostics = parse_bool(key, v);
  } else if (key == "diagnostics.max_dofs") {
    cfg.diagnostics_max_dofs = parse_int(key, v);
  } else if (key == "diagnostics.dense_limit") {
    cfg.dense_limit = parse_int(key, v);
  } else if (key == "output.dir") {
    cfg.out_dir = v;
  } else if (key == "output.format") {
    cfg.format = v;
  } else if (key == "output.timing") {
    cfg.record_timing = parse_bool(key, v);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": key outside a section");
    pairs.emplace_back(section + "." + key, value);
  }
  // the experiment id selects the defaults the other keys refine
  for (const auto& [k, v] : pairs) {
    if (k == "experiment.id") cfg = experiment_preset(v);
  }
  for (const auto& [k, v] : pairs) apply_config_value(cfg, k, v);
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

CoefficientField coefficient_preset(const std::string& name) {
  if (name == "identity") return CoefficientField::identity();
  if (name == "exp1") {
    return CoefficientField::piecewise_scalar([](const Point& x) {
      if (x.x < 0.0) return 1.0;
      return x.y > 0.0 ? 5.0 : 10.0;
    });
  }
  if (name == "exp3") {
    return CoefficientField::piecewise_scalar([](const Point& x) {
      if (x.y < 0.0) return x.x < 0.0 ? 1.0 : 7.0;
      return x.x > 0.0 ? 17.0 : 3.0;
    });
  }
  if (name == "variable") {
    return CoefficientField::variable_scalar([](const Point& x) { return 1.0 + 0.5 * (x.x * x.x + x.y * x.y); });
  }
  throw ConfigError("unknown coefficient preset '" + name + "'");
}

bool RunReport::all_converged() const {
  return std::all_of(rows.begin(), rows.end(), [](const RunRow& r) { return r.converged; });
}

RunReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  RunReport report;
  report.config = cfg;
  const CoefficientField a = coefficient_preset(cfg.coefficient);
  const MeshSource meshes = build_meshes(cfg);
  AssemblyOptions opts;
  opts.basis = cfg.basis;

  for (int k : cfg.ks) {
    const ElementFamily fam = cfg.element_family(k);
    for (int level : cfg.levels) {
      const auto mesh = meshes.level(level);
      const CondensedSystem sys = assemble_condensed(mesh, fam, a, kZero, opts);
      const AuxiliarySpace aux = assemble_p1(mesh, a);
      const ProlongationMap p = build_prolongation(sys.trace, aux);
      const int n = sys.num_dofs();
      const bool diag = cfg.diagnostics && n <= cfg.diagnostics_max_dofs;
      std::optional<double> nh;
      if (diag) nh = compute_Nh(aux.stiffness, galerkin_coarse(sys.A, p), cfg.dense_limit);

      const std::vector<int> m1s = cfg.aux == AuxSolver::Exact ? std::vector<int>{0} : cfg.m1s;
      for (int m1 : m1s) {
        std::unique_ptr<AuxiliaryCorrector> corrector;
        if (cfg.aux == AuxSolver::Exact) {
          corrector = std::make_unique<ExactAuxiliarySolve>(aux.stiffness);
        } else {
          corrector = build_vcycle(meshes.hierarchy, static_cast<std::size_t>(level), a, m1, cfg.cycle);
        }
        std::optional<double> mh;
        if (diag) mh = compute_Mh(aux.stiffness, *corrector, nh.value_or(0.0), cfg.dense_limit).Mh;

        for (int m0 : cfg.m0s) {
          const auto start = std::chrono::steady_clock::now();
          const Smoother smoother(sys.A, {cfg.smoother, m0, 0.0});
          const TwoLevelPreconditioner prec(sys.A, p.matrix, smoother, *corrector);
          const SolveResult res =
              solve_two_level(sys.A, Vector::Zero(n), prec, initial_vector(cfg, n), cfg.reduction, cfg.max_iter);
          const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          RunRow row;
          row.level = level;
          row.dofs = n;
          row.k = k;
          row.m0 = m0;
          row.m1 = m1;
          row.iterations = res.iterations;
          row.converged = res.converged;
          row.Nh = nh;
          row.Mh = mh;
          if (cfg.record_timing) row.seconds = secs;
          if (diag) row.contraction = estimate_contraction(prec, cfg.dense_limit, false).value;
          report.rows.push_back(row);
        }
      }
    }
  }
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const RunRow& x, const RunRow& y) {
    return std::tie(x.k, x.m1, x.m0, x.level) < std::tie(y.k, y.m1, y.m0, y.level);
  });
  return report;
}

std::string report_csv(const RunReport& report) {
  std::ostringstream os;
  os << "level,dofs,k,m0,m1,iterations,contraction,Nh,Mh,seconds\n";
  for (const RunRow& r : report.rows) {
    os << r.level << ',' << r.dofs << ',' << r.k << ',' << r.m0 << ',' << r.m1 << ',' << r.iterations << ','
       << opt_to_string(r.contraction) << ',' << opt_to_string(r.Nh) << ',' << opt_to_string(r.Mh) << ','
       << opt_to_string(r.seconds) << '\n';
  }
  return os.str();
}

std::string report_json(const RunReport& report) {
  const ExperimentConfig& c = report.config;
  nlohmann::ordered_json j;
  j["experiment"] = c.id;
  j["family"] = to_string(c.family);
  j["smoother"] = to_string(c.smoother);
  j["aux"] = c.aux == AuxSolver::Exact ? "exact" : "vcycle";
  j["cycle"] = to_string(c.cycle);
  j["reduction"] = c.reduction;
  j["converged"] = report.all_converged();
  auto rows = nlohmann::ordered_json::array();
  for (const RunRow& r : report.rows) {
    nlohmann::ordered_json o;
    o["level"] = r.level;
    o["dofs"] = r.dofs;
    o["k"] = r.k;
    o["m0"] = r.m0;
    o["m1"] = r.m1;
    o["iterations"] = r.iterations;
    o["converged"] = r.converged;
    o["contraction"] = opt_to_json(r.contraction);
    o["Nh"] = opt_to_json(r.Nh);
    o["Mh"] = opt_to_json(r.Mh);
    o["seconds"] = opt_to_json(r.seconds);
    rows.push_back(o);
  }
  j["rows"] = rows;
  return j.dump(2);
}

std::string report_table(const RunReport& report) {
  std::map<std::tuple<int, int, int>, std::map<int, int>> cells;
  std::vector<int> levels;
  for (const RunRow& r : report.rows) {
    cells[{r.m1, r.k, r.m0}][r.level] = r.iterations;
    if (std::find(levels.begin(), levels.end(), r.level) == levels.end()) levels.push_back(r.level);
  }
  std::sort(levels.begin(), levels.end());
  std::ostringstream os;
  int current_m1 = -1;
  for (const auto& [key, row] : cells) {
    const auto [m1, k, m0] = key;
    if (m1 != current_m1) {
      current_m1 = m1;
      os << (m1 > 0 ? "m1 = " + std::to_string(m1) : std::string("exact auxiliary solve")) << '\n';
      os << " k m0 |";
      for (int l : levels) os << std::setw(5) << ("T" + std::to_string(l));
      os << '\n';
    }
    os << std::setw(2) << k << std::setw(3) << m0 << " |";
    for (int l : levels) {
      const auto it = row.find(l);
      if (it == row.end()) {
        os << std::setw(5) << '-';
      } else {
        os << std::setw(5) << it->second;
      }
    }
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Verification

namespace {

double relative_max_difference(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  const double scale = std::max(x.cwiseAbs().maxCoeff(), y.cwiseAbs().maxCoeff());
  return scale == 0.0 ? 0.0 : (x - y).cwiseAbs().maxCoeff() / scale;
}

double variation(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi == 0.0 ? 0.0 : (*hi - *lo) / *hi;
}

bool galerkin_exact_family(const ElementFamily& fam) {
  return fam.kind == FamilyKind::Type1 || fam.kind == FamilyKind::Type2 || fam.kind == FamilyKind::Type4 ||
         (fam.kind == FamilyKind::Type3 && fam.k >= 1);
}

}  // namespace

Report run_verification(const ExperimentConfig& cfg) {
  cfg.validate();
  Report rep;
  const CoefficientField a = coefficient_preset(cfg.coefficient);
  const Domain domain = is_uniform(cfg.domain) ? cfg.domain : Domain::Square;
  const MeshHierarchy hier = build_uniform_hierarchy(build_structured(domain), 3);
  const int m0 = cfg.m0s.front();
  const int m1 = cfg.m1s.front();
  rep.set("family", to_string(cfg.family));
  rep.set("coefficient", cfg.coefficient);
  rep.set("seed", static_cast<long long>(kDefaultSeed));
  AssemblyOptions opts;
  opts.basis = cfg.basis;

  for (int k : cfg.ks) {
    const ElementFamily fam = cfg.element_family(k);
    const std::string pre = "k" + std::to_string(k) + ".";
    std::vector<double> nh;
    std::vector<double> cmin;
    std::vector<double> cmax;
    std::vector<double> contraction;
    std::vector<double> inv_const;
    double galerkin_diff = 0.0;
    bool mh_ok = true;
    bool sym_ok = true;
    double smoother_eig_max = 0.0;
    double smoother_eig_min = 1.0;
    int rbar_violations = 0;
    for (std::size_t l = 1; l < hier.depth(); ++l) {
      const std::string lp = pre + "T" + std::to_string(l) + ".";
      const auto mesh = hier.levels[l];
      const CondensedSystem sys = assemble_condensed(mesh, fam, a, kZero, opts);
      const AuxiliarySpace aux = assemble_p1(mesh, a);
      const ProlongationMap p = build_prolongation(sys.trace, aux);
      const SparseMatrix gal = galerkin_coarse(sys.A, p);
      const int n = sys.num_dofs();
      rep.set(lp + "dofs", n);
      const double asym = relative_asymmetry(sys.A);
      rep.set(lp + "asymmetry", asym);
      sym_ok = sym_ok && asym <= 1e-12;

      galerkin_diff = std::max(galerkin_diff, relative_max_difference(to_dense(gal), to_dense(aux.stiffness)));
      nh.push_back(compute_Nh(aux.stiffness, gal, cfg.dense_limit));
      rep.set(lp + "Nh", nh.back());

      const EquivalenceRatios eq = check_assumption1(sys);
      cmin.push_back(eq.c_min);
      cmax.push_back(eq.c_max);
      rep.set(lp + "c_min", eq.c_min);
      rep.set(lp + "c_max", eq.c_max);

      const auto vc = build_vcycle(hier, l, a, m1, cfg.cycle);
      const MhReport mh = compute_Mh(aux.stiffness, *vc, nh.back(), cfg.dense_limit);
      rep.set(lp + "Mh", mh.Mh);
      rep.set(lp + "admissibility", mh.admissibility);
      mh_ok = mh_ok && mh.Mh < 1.0;

      const Smoother smoother(sys.A, {cfg.smoother, m0, 0.0});
      const TwoLevelPreconditioner prec(sys.A, p.matrix, smoother, *vc);
      const ContractionEstimate ce = estimate_contraction(prec, cfg.dense_limit, false);
      contraction.push_back(ce.value);
      rep.set(lp + "contraction", ce.value);

      if (n <= cfg.dense_limit) {
        const SmootherBounds sb = check_smoother_bounds(sys.A, smoother, sys.trace, 50, kDefaultSeed);
        smoother_eig_min = std::min(smoother_eig_min, sb.eig_min);
        smoother_eig_max = std::max(smoother_eig_max, sb.eig_max);
        rbar_violations += sb.rbar_violations;
      }
      inv_const.push_back(smoother_inverse_constant(sys.A, smoother, sys.trace, 50, kDefaultSeed));
      rep.set(lp + "smoother_inverse_constant", inv_const.back());

      if (l == 1) {
        // B symmetric in the dof pairing
        double worst = 0.0;
        for (int s = 0; s < 50; ++s) {
          const Vector x = random_vector(n, kDefaultSeed + 2 * s);
          const Vector y = random_vector(n, kDefaultSeed + 2 * s + 1);
          const Vector bx = prec.apply(x);
          const Vector by = prec.apply(y);
          worst = std::max(worst, std::abs(bx.dot(y) - x.dot(by)) / (bx.norm() * y.norm()));
        }
        rep.set(pre + "B_symmetry", worst);
        rep.check(pre + "B_symmetry", worst <= 1e-11);

        // sparse assembly against the definition of a_h
        const double dref = relative_max_difference(to_dense(sys.A), assemble_dense_reference(sys));
        rep.set(pre + "dense_reference", dref);
        rep.check(pre + "dense_reference", dref <= 1e-12);

        // recovered interior fields satisfy the full discrete system
        const ScalarFunction one = [](const Point&) { return 1.0; };
        const CondensedSystem loaded = assemble_condensed(mesh, fam, a, one, opts);
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol{Eigen::SparseMatrix<double>(loaded.A)};
        const Vector lambda = chol.solve(loaded.b);
        const Recovery rec = recover_interior(loaded, lambda, one);
        const HdgResidual hr = hdg_residual(loaded, lambda, one, rec);
        rep.set(pre + "recovery_local", hr.local);
        rep.set(pre + "recovery_global", hr.global);
        rep.check(pre + "recovery", hr.local <= 1e-10 && hr.global <= 1e-10);

        // identical inputs give bit-identical iterates
        const SolveResult r1 = solve_two_level(sys.A, Vector::Zero(n), prec, Vector::Ones(n), cfg.reduction, 20);
        const SolveResult r2 = solve_two_level(sys.A, Vector::Zero(n), prec, Vector::Ones(n), cfg.reduction, 20);
        rep.check(pre + "determinism", r1.x == r2.x && r1.history == r2.history);

        if (fam.kind == FamilyKind::Type3 && k == 0 && a.piecewise_constant()) {
          ElementFamily wg = ElementFamily::make(FamilyKind::WG, 0);
          wg.alpha = fam.alpha;
          const CondensedSystem wsys = wg_assemble(mesh, wg, a, kZero, opts);
          const double d = relative_max_difference(to_dense(wsys.A), to_dense(sys.A));
          rep.set(pre + "wg_equivalence", d);
          rep.check(pre + "wg_equivalence", d <= 1e-11);
        }
      }
    }
    rep.check(pre + "symmetry", sym_ok);
    rep.set(pre + "galerkin_max_difference", galerkin_diff);
    if (galerkin_exact_family(fam) && a.piecewise_constant()) {
      rep.check(pre + "Nh_zero", galerkin_diff <= 1e-9);
    } else {
      bool decreasing = true;
      for (std::size_t i = 1; i < nh.size(); ++i) decreasing = decreasing && nh[i] < nh[i - 1];
      rep.check(pre + "Nh_decreasing", decreasing);
    }
    rep.set(pre + "c_min_variation", variation(cmin));
    rep.set(pre + "c_max_variation", variation(cmax));
    rep.check(pre + "assumption1", *std::min_element(cmin.begin(), cmin.end()) > 0.0 && variation(cmin) < 0.25 &&
                                       variation(cmax) < 0.25);
    rep.check(pre + "Mh_below_one", mh_ok);
    const auto [cmn, cmx] = std::minmax_element(contraction.begin(), contraction.end());
    rep.set(pre + "contraction_spread", *cmx - *cmn);
    rep.check(pre + "contraction", *cmx < 1.0 && *cmx - *cmn < 0.1);
    if (smoother_eig_max > 0.0) {
      rep.set(pre + "smoother_eig_min", smoother_eig_min);
      rep.set(pre + "smoother_eig_max", smoother_eig_max);
      rep.set(pre + "rbar_violations", rbar_violations);
      if (cfg.smoother == SmootherKind::SymmetricGS)
        rep.check(pre + "smoother_spectrum", smoother_eig_min > 0.0 && smoother_eig_max <= 1.0 + 1e-10);
      rep.check(pre + "rbar_bound", rbar_violations == 0);
    }
    rep.set(pre + "smoother_inverse_variation", variation(inv_const));
    rep.check(pre + "smoother_inverse_constant", variation(inv_const) < 0.3);
  }
  return rep;
}

}  // namespace hdgmg
