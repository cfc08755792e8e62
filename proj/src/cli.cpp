#include "lambdadicke/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lambdadicke/config.hpp"
#include "lambdadicke/edoracle.hpp"
#include "lambdadicke/errors.hpp"
#include "lambdadicke/landscape.hpp"
#include "lambdadicke/nogo.hpp"
#include "lambdadicke/output.hpp"
#include "lambdadicke/phasemap.hpp"
#include "lambdadicke/solver.hpp"

#ifndef LAMBDADICKE_VERSION
#define LAMBDADICKE_VERSION "dev"
#endif

namespace ldk::cli {

namespace {

using output::format_bool;
using output::format_real;
using output::Record;

const std::vector<std::string> kToleranceNames{"grad_tol", "eps_sr",    "tie_tol",  "boundary_tol",
                                               "eps_jump", "tricritical_tol", "tail_tol", "sumrule_tol"};

struct Common {
  std::string params_path;
  std::string out_path;
  std::vector<std::string> overrides;
  std::vector<std::string> tolerances;
  std::uint64_t seed = 1;
  bool gnuplot = false;
  bool allow_parallel = false;
};

struct Flags {
  // scan
  int points = 101;
  double g1_max_trk = 1.5;
  double g2_max_trk = 1.5;
  bool columns = false;
  bool no_tricritical = false;
  unsigned threads = 1;
  // boundary / tricritical
  std::vector<double> g2_values;
  std::vector<double> g2_over_trk;
  std::optional<double> g2_lo, g2_hi;
  // sweep
  std::vector<double> chi{0.0, 0.4, 0.8, 1.2};
  std::vector<double> kappa{0.0, 0.6, 1.2};
  std::vector<std::string> rays{"gc_0", "0_gc", "gc_gc"};
  double g_max = 10.0;
  int steps = 200;
  // ed
  int n_atoms = 1;
  std::optional<int> cutoff1, cutoff2;
  int dense_max = 2000;
  std::size_t max_dim = 200000;
  // nogo / sumrule
  int count = 0;
  int dim = 12;
};

struct Context {
  std::string subcommand;
  Common common;
  Flags flags;
  std::map<std::string, double> tol;
  std::ostream* out;

  double tolerance(const std::string& name, double fallback) const {
    const auto it = tol.find(name);
    return it == tol.end() ? fallback : it->second;
  }
};

config::ParamSet load_param_set(const Context& c) {
  config::ParamSet set = c.common.params_path.empty() ? config::ParamSet{} : config::load_params(c.common.params_path);
  set.allow_parallel_polarizations = c.common.allow_parallel;
  config::apply_overrides(set, c.common.overrides);
  return set;
}

Record resolved_record(const config::ParamSet& set, const ModelParams& p) {
  Record r = set.describe();
  if (set.mode == config::Mode::Atomic) {
    // Abstract couplings the atomic description maps onto.
    r.emplace_back("resolved.chi1", format_real(p.chi1));
    r.emplace_back("resolved.chi2", format_real(p.chi2));
    r.emplace_back("resolved.kappa1", format_real(p.kappa1));
    r.emplace_back("resolved.kappa2", format_real(p.kappa2));
    r.emplace_back("resolved.kappa3", format_real(p.kappa3));
  }
  return r;
}

void open_output(std::ofstream& file, const std::string& path) {
  file.open(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write output file '" + path + "'");
}

std::string require_out(const Context& c) {
  if (c.common.out_path.empty()) throw ValidationError("subcommand '" + c.subcommand + "' needs --out PATH");
  return c.common.out_path;
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix;
}

void write_gnuplot(const std::string& csv_path, const std::string& script) {
  const std::string path = sibling_path(csv_path, ".gp");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write gnuplot script '" + path + "'");
  f << script;
}

void write_record_file(const Context& c, const Record& params, const Record& record) {
  if (c.common.out_path.empty()) return;
  std::ofstream f;
  open_output(f, c.common.out_path);
  output::write_header(f, LAMBDADICKE_VERSION, c.subcommand, params);
  output::write_record(f, record);
}

SolverOptions solver_options(const Context& c) {
  SolverOptions s;
  s.local.grad_tol = c.tolerance("grad_tol", s.local.grad_tol);
  s.eps_sr = c.tolerance("eps_sr", s.eps_sr);
  s.tie_tol = c.tolerance("tie_tol", s.tie_tol);
  return s;
}

BoundaryOptions boundary_options(const Context& c) {
  BoundaryOptions b;
  b.tol = c.tolerance("boundary_tol", b.tol);
  b.eps_jump = c.tolerance("eps_jump", b.eps_jump);
  b.solver = solver_options(c);
  return b;
}

Record solution_record(const MeanFieldSolution& s) {
  return {{"phase", to_string(s.phase)},
          {"e0", format_real(s.e0)},
          {"psi1", format_real(s.psi1)},
          {"psi2", format_real(s.psi2)},
          {"psi3", format_real(s.psi3)},
          {"phi1", format_real(s.phi1)},
          {"phi2", format_real(s.phi2)},
          {"order_parameter", format_real(s.order_parameter())},
          {"converged", format_bool(s.converged)},
          {"degenerate", format_bool(s.degenerate)},
          {"on_boundary", format_bool(s.on_boundary)},
          {"starts_used", std::to_string(s.starts_used)}};
}

// ---------------------------------------------------------------------------

int cmd_minimize(Context& c) {
  const auto set = load_param_set(c);
  const ModelParams p = set.resolve();
  const MeanFieldSolution s = solve_ground_state(p, solver_options(c));
  Record rec = solution_record(s);
  if (auto g1c = critical_coupling_g1c(p)) rec.emplace_back("g1c", format_real(*g1c));
  rec.emplace_back("normal_state_stable", format_bool(normal_state_stable(p)));
  write_record_file(c, resolved_record(set, p), rec);
  *c.out << "phase=" << to_string(s.phase) << " e0=" << format_real(s.e0) << " psi2=" << format_real(s.psi2)
         << " psi3=" << format_real(s.psi3) << '\n';
  return kOk;
}

output::TrkScale trk_scale(const config::ParamSet& set, const ModelParams& p) {
  const TrkBounds b = trk_bounds(p, set.trk_kappa());
  return {b.g1_trk, b.g2_trk};
}

std::vector<double> linear_axis(double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? 0.0 : hi * i / (n - 1);
  return out;
}

int cmd_scan(Context& c) {
  const std::string path = require_out(c);
  const auto set = load_param_set(c);
  const ModelParams p = set.resolve();
  const auto scale = trk_scale(set, p);
  if (!(scale.g1_trk > 0.0) || !(scale.g2_trk > 0.0))
    throw ValidationError("scan axes are in TRK units; the diamagnetic strength must be > 0");
  if (c.flags.points < 2) throw ValidationError("--points must be >= 2");

  ScanOptions opt;
  opt.direction = c.flags.columns ? ScanDirection::Columns : ScanDirection::Rows;
  opt.boundary = boundary_options(c);
  opt.find_tricritical = !c.flags.no_tricritical;
  opt.tricritical_tol = c.tolerance("tricritical_tol", opt.tricritical_tol);
  opt.threads = std::max(1u, c.flags.threads);
  const PhaseDiagram d = scan_grid(p, linear_axis(c.flags.g1_max_trk * scale.g1_trk, c.flags.points),
                                   linear_axis(c.flags.g2_max_trk * scale.g2_trk, c.flags.points), opt);

  const Record header = resolved_record(set, p);
  {
    std::ofstream f;
    open_output(f, path);
    output::write_header(f, LAMBDADICKE_VERSION, c.subcommand, header);
    output::write_scan_csv(f, d, scale);
  }
  const std::string boundary_path = sibling_path(path, "_boundary.csv");
  {
    std::ofstream f;
    open_output(f, boundary_path);
    output::write_header(f, LAMBDADICKE_VERSION, c.subcommand, header);
    output::write_boundary_csv(f, d.boundary);
  }
  if (c.common.gnuplot) write_gnuplot(path, output::scan_gnuplot_script(path));

  std::size_t superradiant = 0, failed = 0;
  for (std::size_t k = 0; k < d.cells.size(); ++k) {
    if (d.cell_failed[k]) ++failed;
    else if (d.cells[k].phase == Phase::Superradiant) ++superradiant;
  }
  *c.out << "cells=" << d.cells.size() << " superradiant=" << superradiant << " failed=" << failed
         << " boundary_points=" << d.boundary.size();
  if (d.tricritical)
    *c.out << " tricritical_g2=" << format_real(d.tricritical->g2)
           << " tricritical_g2_over_trk=" << format_real(d.tricritical->g2 / scale.g2_trk);
  *c.out << '\n';
  for (const auto& w : d.warnings) *c.out << "warning: " << w << '\n';
  return failed == 0 ? kOk : kNumerical;
}

int cmd_boundary(Context& c) {
  const std::string path = require_out(c);
  const auto set = load_param_set(c);
  const ModelParams p = set.resolve();
  std::vector<double> g2s = c.flags.g2_values;
  if (!c.flags.g2_over_trk.empty()) {
    const auto scale = trk_scale(set, p);
    if (!(scale.g2_trk > 0.0)) throw ValidationError("--g2-over-trk needs a diamagnetic strength > 0");
    for (double f : c.flags.g2_over_trk) g2s.push_back(f * scale.g2_trk);
  }
  if (g2s.empty()) g2s.push_back(p.g2);

  std::vector<TransitionProbe> probes;
  const BoundaryOptions opt = boundary_options(c);
  for (double g2 : g2s) probes.push_back(find_row_boundary(p, g2, opt));
  {
    std::ofstream f;
    open_output(f, path);
    output::write_header(f, LAMBDADICKE_VERSION, c.subcommand, resolved_record(set, p));
    output::write_boundary_csv(f, probes);
  }
  if (c.common.gnuplot) write_gnuplot(path, output::boundary_gnuplot_script(path));
  for (const auto& pr : probes)
    *c.out << "g2=" << format_real(pr.g2_fixed()) << " g1_star=" << format_real(pr.g1_star())
           << " jump=" << format_real(pr.jump) << " order=" << to_string(pr.order) << '\n';
  return kOk;
}

int cmd_tricritical(Context& c) {
  const auto set = load_param_set(c);
  const ModelParams p = set.resolve();
  const auto scale = trk_scale(set, p);
  double lo = 0.0, hi = 0.0;
  if (c.flags.g2_lo && c.flags.g2_hi) {
    lo = *c.flags.g2_lo;
    hi = *c.flags.g2_hi;
  } else {
    if (!(scale.g2_trk > 0.0)) throw ValidationError("tricritical needs --g2-lo/--g2-hi when the diamagnetic strength is 0");
    lo = c.flags.g2_lo.value_or(0.0);
    hi = c.flags.g2_hi.value_or(scale.g2_trk);
  }
  TricriticalOptions opt;
  opt.tol = c.tolerance("tricritical_tol", opt.tol);
  opt.boundary = boundary_options(c);
  const TricriticalPoint tp = locate_tricritical(p, lo, hi, opt);
  Record rec{{"g1", format_real(tp.g1)},
             {"g2", format_real(tp.g2)},
             {"g2_second_edge", format_real(tp.g2_second_edge)},
             {"g2_first_edge", format_real(tp.g2_first_edge)},
             {"g1c", tp.g1c ? format_real(*tp.g1c) : std::string("none")},
             {"g1_matches_g1c", format_bool(tp.g1_matches_g1c)}};
  if (scale.g2_trk > 0.0) {
    rec.emplace_back("g1_over_trk", format_real(tp.g1 / scale.g1_trk));
    rec.emplace_back("g2_over_trk", format_real(tp.g2 / scale.g2_trk));
  }
  write_record_file(c, resolved_record(set, p), rec);
  *c.out << "tricritical g1=" << format_real(tp.g1) << " g2=" << format_real(tp.g2);
  if (scale.g2_trk > 0.0) *c.out << " g2_over_trk=" << format_real(tp.g2 / scale.g2_trk);
  *c.out << '\n';
  return kOk;
}

int cmd_sweep(Context& c) {
  const std::string path = require_out(c);
  const auto set = load_param_set(c);
  const ModelParams p = set.resolve();
  std::vector<Ray> rays;
  for (const auto& r : c.flags.rays) {
    const auto parsed = parse_ray(r);
    if (!parsed) throw ValidationError("--rays: unknown ray '" + r + "' (gc_0, 0_gc, gc_gc)");
    rays.push_back(*parsed);
  }
  SweepOptions opt;
  opt.g_max = c.flags.g_max;
  opt.scan_steps = c.flags.steps;
  opt.tol = c.tolerance("boundary_tol", opt.tol);
  opt.solver = solver_options(c);
  const auto rows = sweep_chi_kappa(p, c.flags.chi, c.flags.kappa, rays, opt);
  {
    std::ofstream f;
    open_output(f, path);
    output::write_header(f, LAMBDADICKE_VERSION, c.subcommand, resolved_record(set, p));
    output::write_sweep_csv(f, rows);
  }
  if (c.common.gnuplot) write_gnuplot(path, output::sweep_gnuplot_script(path));
  std::size_t found = 0;
  for (const auto& r : rows) found += r.g_c.has_value();
  *c.out << "rows=" << rows.size() << " with_transition=" << found << '\n';
  return kOk;
}

int cmd_map_atomic(Context& c) {
  const auto set = load_param_set(c);
  if (set.mode != config::Mode::Atomic) throw ValidationError("map-atomic needs atomic-mode parameters (kappa, eps1, eps2, d31, d32)");
  const AtomicMapping m = from_atomic(set.atomic, set.allow_parallel_polarizations);
  const ModelParams& p = m.params;
  Record rec{{"chi1", format_real(p.chi1)},
             {"chi2", format_real(p.chi2)},
             {"kappa1", format_real(p.kappa1)},
             {"kappa2", format_real(p.kappa2)},
             {"kappa3", format_real(p.kappa3)},
             {"alpha", format_real(m.alpha)},
             {"alpha11", format_real(m.alpha11)},
             {"alpha12", format_real(m.alpha12)},
             {"alpha21", format_real(m.alpha21)},
             {"alpha22", format_real(m.alpha22)},
             {"g1_trk", format_real(m.bounds.g1_trk)},
             {"g2_trk", format_real(m.bounds.g2_trk)},
             {"trk_compliant", format_bool(m.compliance.compliant)},
             {"trk_slack1", format_real(m.compliance.slack1)},
             {"trk_slack2", format_real(m.compliance.slack2)}};
  if (auto g1c = critical_coupling_g1c(p)) {
    rec.emplace_back("g1c", format_real(*g1c));
    if (m.bounds.g1_trk > 0.0) rec.emplace_back("g1c_over_trk", format_real(*g1c / m.bounds.g1_trk));
  }
  write_record_file(c, set.describe(), rec);
  output::write_record(*c.out, rec);
  return kOk;
}

std::string join_reals(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_real(v[i]);
  return s;
}

int cmd_nogo(Context& c) {
  if (!c.common.params_path.empty()) {
    if (!c.common.overrides.empty()) throw ValidationError("nogo: --set is not supported for model files");
    const nogo::MultiLevelModel model = config::load_multilevel(c.common.params_path);
    const auto v = nogo::check_positive_definite(model);
    Record rec{{"levels", std::to_string(model.levels())},
               {"positive_definite", format_bool(v.positive_definite)},
               {"x", format_real(v.x)},
               {"omega", format_real(model.omega)},
               {"x_at_least_omega", format_bool(v.x_at_least_omega)},
               {"trk_satisfied", format_bool(v.trk)},
               {"minors", join_reals(v.minors)},
               {"min_eigenvalue", format_real(v.min_eigenvalue)}};
    write_record_file(c, {{"model", c.common.params_path}}, rec);
    *c.out << (v.positive_definite ? "positive-definite" : "not positive-definite") << ", X=" << format_real(v.x)
           << ", X>=omega: " << format_bool(v.x_at_least_omega) << ", TRK: " << format_bool(v.trk)
           << ", minors=" << join_reals(v.minors) << '\n';
    return kOk;
  }
  // No model file: seeded random TRK-compliant models.
  const int count = c.flags.count > 0 ? c.flags.count : 1000;
  std::mt19937_64 rng(c.common.seed);
  int pd = 0, x_ok = 0, trk = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < count; ++k) {
    const auto model = nogo::random_trk_model(rng);
    const auto v = nogo::check_positive_definite(model);
    pd += v.positive_definite;
    x_ok += v.x_at_least_omega;
    trk += v.trk;
    worst_margin = std::min(worst_margin, v.x - model.omega);
  }
  Record rec{{"models", std::to_string(count)},
             {"seed", std::to_string(c.common.seed)},
             {"trk_satisfied", std::to_string(trk)},
             {"positive_definite", std::to_string(pd)},
             {"x_at_least_omega", std::to_string(x_ok)},
             {"min_x_minus_omega", format_real(worst_margin)}};
  write_record_file(c, {{"seed", std::to_string(c.common.seed)}}, rec);
  *c.out << "models=" << count << " positive_definite=" << pd << " x_at_least_omega=" << x_ok
         << " min_x_minus_omega=" << format_real(worst_margin) << '\n';
  return pd == count && x_ok == count ? kOk : kNumerical;
}

std::string format_complex(std::complex<double> z) { return format_real(z.real()) + "," + format_real(z.imag()); }

int cmd_ed(Context& c) {
  const auto set = load_param_set(c);
  ed::EdConfig cfg;
  cfg.params = set.resolve();
  cfg.n_atoms = c.flags.n_atoms;
  cfg.cutoff1 = c.flags.cutoff1;
  cfg.cutoff2 = c.flags.cutoff2;
  cfg.dense_max_dimension = c.flags.dense_max;
  cfg.max_dimension = c.flags.max_dim;
  cfg.tail_tol = c.tolerance("tail_tol", cfg.tail_tol);
  const ed::EdResult r = ed::ground_state(cfg);

  Record rec{{"n_atoms", std::to_string(cfg.n_atoms)},
             {"cutoff1", std::to_string(r.cutoff1)},
             {"cutoff2", std::to_string(r.cutoff2)},
             {"dimension", std::to_string(r.dimension)},
             {"method", r.method},
             {"ground_energy", format_real(r.ground_energy)},
             {"ground_energy_per_atom", format_real(r.ground_energy_per_atom)},
             {"parity1_expect", format_complex(r.parity1_expect)},
             {"parity2_expect", format_complex(r.parity2_expect)},
             {"parity_total_expect", format_complex(r.parity_total_expect)}};
  for (const auto& [name, value] : r.commutator_norms) rec.emplace_back("commutator_norm." + name, format_real(value));
  rec.emplace_back("hamiltonian_norm", format_real(r.hamiltonian_norm));
  rec.emplace_back("boson_occupation1", format_real(r.boson_occupations[0]));
  rec.emplace_back("boson_occupation2", format_real(r.boson_occupations[1]));
  for (int l = 0; l < 3; ++l)
    rec.emplace_back("level_population" + std::to_string(l + 1), format_real(r.level_populations[l]));
  rec.emplace_back("tail_weight1", format_real(r.tail_weights[0]));
  rec.emplace_back("tail_weight2", format_real(r.tail_weights[1]));
  rec.emplace_back("cutoff_adequate", format_bool(r.cutoff_adequate));
  rec.emplace_back("cutoff_converged", format_bool(r.cutoff_converged));
  rec.emplace_back("cutoff_energy_change", format_real(r.cutoff_energy_change));
  rec.emplace_back("converged", format_bool(r.converged));

  write_record_file(c, resolved_record(set, cfg.params), rec);
  if (c.common.out_path.empty()) output::write_record(*c.out, rec);
  *c.out << "ground_energy_per_atom=" << format_real(r.ground_energy_per_atom) << " dimension=" << r.dimension
         << " cutoff_adequate=" << format_bool(r.cutoff_adequate) << '\n';
  return kOk;
}

int cmd_sumrule(Context& c) {
  const int count = c.flags.count > 0 ? c.flags.count : 200;
  if (c.flags.dim < 1) throw ValidationError("--dim must be >= 1");
  const double tol = c.tolerance("sumrule_tol", 1e-10);
  std::mt19937_64 rng(c.common.seed);
  std::uniform_int_distribution<int> dims(1, c.flags.dim);
  double worst = 0.0;
  int passed = 0;
  for (int k = 0; k < count; ++k) {
    const int d = dims(rng);
    const auto h = nogo::random_hermitian(rng, d);
    const auto o = nogo::random_hermitian(rng, d);
    std::uniform_int_distribution<int> level(0, d - 1);
    const auto chk = nogo::sum_rule_identity_check(h, o, level(rng));
    const double rel = chk.residual / std::max(1.0, std::abs(chk.rhs));
    worst = std::max(worst, rel);
    passed += rel < tol;
  }
  Record rec{{"pairs", std::to_string(count)},
             {"seed", std::to_string(c.common.seed)},
             {"max_dim", std::to_string(c.flags.dim)},
             {"max_relative_residual", format_real(worst)},
             {"passed", std::to_string(passed)}};
  write_record_file(c, {{"seed", std::to_string(c.common.seed)}}, rec);
  *c.out << "pairs=" << count << " passed=" << passed << " max_relative_residual=" << format_real(worst) << '\n';
  return passed == count ? kOk : kNumerical;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context c;
  c.out = &out;

  CLI::App app{"Mean-field phase diagram, exact diagonalization and sum-rule checks for the two-mode lambda model"};
  app.set_version_flag("--version", LAMBDADICKE_VERSION);
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool takes_params) {
    if (takes_params) sub->add_option("--params", c.common.params_path, "parameter file (key = value)")->check(CLI::ExistingFile);
    sub->add_option("--out", c.common.out_path, "output path");
    sub->add_option("--set", c.common.overrides, "override KEY=VALUE")->allow_extra_args(false);
    sub->add_option("--tol", c.common.tolerances, "tolerance NAME=VALUE")->allow_extra_args(false);
    sub->add_option("--seed", c.common.seed, "random seed");
    sub->add_flag("--gnuplot", c.common.gnuplot, "also write a gnuplot script next to the CSV");
    sub->add_flag("--allow-parallel-polarizations", c.common.allow_parallel, "accept eps1 . eps2 = 1 in atomic mode");
  };

  auto* minimize = app.add_subcommand("minimize", "mean-field ground state at one parameter point");
  add_common(minimize, true);

  auto* scan = app.add_subcommand("scan", "phase diagram on a (g1, g2) grid in TRK units");
  add_common(scan, true);
  scan->add_option("--points", c.flags.points, "grid points per axis")->check(CLI::PositiveNumber);
  scan->add_option("--g1-max", c.flags.g1_max_trk, "largest g1 / g1_TRK");
  scan->add_option("--g2-max", c.flags.g2_max_trk, "largest g2 / g2_TRK");
  scan->add_flag("--columns", c.flags.columns, "bisect boundaries along g2 columns instead of g1 rows");
  scan->add_flag("--no-tricritical", c.flags.no_tricritical, "skip the tricritical search");
  scan->add_option("--threads", c.flags.threads, "worker threads");

  auto* boundary = app.add_subcommand("boundary", "normal/superradiant boundary along g1 at fixed g2");
  add_common(boundary, true);
  boundary->add_option("--g2", c.flags.g2_values, "fixed g2 values")->delimiter(',');
  boundary->add_option("--g2-over-trk", c.flags.g2_over_trk, "fixed g2 values in units of g2_TRK")->delimiter(',');

  auto* tricritical = app.add_subcommand("tricritical", "point where the boundary changes order");
  add_common(tricritical, true);
  tricritical->add_option("--g2-lo", c.flags.g2_lo, "g2 with a second-order boundary (default: 0)");
  tricritical->add_option("--g2-hi", c.flags.g2_hi, "g2 with a first-order boundary (default: g2_TRK)");

  auto* sweep = app.add_subcommand("sweep", "critical coupling along rays for chi and kappa grids");
  add_common(sweep, true);
  sweep->add_option("--chi", c.flags.chi, "chi values")->delimiter(',');
  sweep->add_option("--kappa", c.flags.kappa, "kappa values")->delimiter(',');
  sweep->add_option("--rays", c.flags.rays, "rays: gc_0, 0_gc, gc_gc")->delimiter(',');
  sweep->add_option("--g-max", c.flags.g_max, "search range along each ray");
  sweep->add_option("--steps", c.flags.steps, "coarse steps along each ray")->check(CLI::PositiveNumber);

  auto* map_atomic = app.add_subcommand("map-atomic", "abstract couplings and TRK bounds of an atomic description");
  add_common(map_atomic, true);

  auto* nogo = app.add_subcommand("nogo", "normal-state Hessian of a multilevel model (file or seeded random set)");
  add_common(nogo, true);
  nogo->add_option("--count", c.flags.count, "random models when no --params is given");

  auto* ed = app.add_subcommand("ed", "finite-N exact diagonalization");
  add_common(ed, true);
  ed->add_option("--n-atoms", c.flags.n_atoms, "number of atoms")->check(CLI::PositiveNumber);
  ed->add_option("--cutoff1", c.flags.cutoff1, "max photons in mode 1 (default: adaptive)");
  ed->add_option("--cutoff2", c.flags.cutoff2, "max photons in mode 2 (default: adaptive)");
  ed->add_option("--dense-max", c.flags.dense_max, "largest dimension solved densely");
  ed->add_option("--max-dim", c.flags.max_dim, "basis dimension cap");

  auto* sumrule = app.add_subcommand("sumrule", "commutator sum-rule identity on random Hermitian pairs");
  add_common(sumrule, false);
  sumrule->add_option("--count", c.flags.count, "number of pairs");
  sumrule->add_option("--dim", c.flags.dim, "largest matrix dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();

  try {
    c.tol = config::parse_tolerances(c.common.tolerances, kToleranceNames);
    if (c.subcommand == "minimize") return cmd_minimize(c);
    if (c.subcommand == "scan") return cmd_scan(c);
    if (c.subcommand == "boundary") return cmd_boundary(c);
    if (c.subcommand == "tricritical") return cmd_tricritical(c);
    if (c.subcommand == "sweep") return cmd_sweep(c);
    if (c.subcommand == "map-atomic") return cmd_map_atomic(c);
    if (c.subcommand == "nogo") return cmd_nogo(c);
    if (c.subcommand == "ed") return cmd_ed(c);
    if (c.subcommand == "sumrule") return cmd_sumrule(c);
    err << "error: unknown subcommand\n";
    return kValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace ldk::cli
