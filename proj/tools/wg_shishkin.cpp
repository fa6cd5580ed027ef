// Command line driver for the weak Galerkin Shishkin-mesh convergence studies.
//
//   wg-shishkin run --example 1 --k 3 --eps 1,1e-2 --N 8,16,32 [--mesh uniform] ...
//   wg-shishkin table1 [--N 8,16,32,64] [--out table1.csv]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wg/assembly.hpp"
#include "wg/driver.hpp"

namespace {

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    if constexpr (std::is_integral_v<T>) {
      out.push_back(static_cast<T>(std::stoi(item, &used)));
    } else {
      out.push_back(static_cast<T>(std::stod(item, &used)));
    }
    if (used != item.size()) throw std::invalid_argument("malformed list entry '" + item + "'");
  }
  return out;
}

struct CommonOptions {
  std::string eps;
  std::string N;
  double alpha = 0;
  std::string mesh;
  int quad = 0;
  std::string solver = "direct";
  std::string condense = "auto";
  std::string out;
  int jobs = 1;
  double tol = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool sweep_required) {
  auto* eps = cmd->add_option("--eps", o.eps, "comma separated list of eps values");
  auto* n = cmd->add_option("--N", o.N, "comma separated list of cells per axis");
  if (sweep_required) {
    eps->required();
    n->required();
  }
  cmd->add_option("--alpha", o.alpha, "transition constant (default k+1)");
  cmd->add_option("--mesh", o.mesh, "shishkin or uniform")
      ->check(CLI::IsMember({"shishkin", "uniform"}));
  cmd->add_option("--quad", o.quad, "Gauss points per direction (default k+3)")
      ->check(CLI::Range(1, 32));
  cmd->add_option("--solver", o.solver, "direct or pcg")->check(CLI::IsMember({"direct", "pcg"}));
  cmd->add_option("--condense", o.condense, "auto, on or off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  cmd->add_option("--out", o.out, "CSV output path (default: standard output)");
  cmd->add_option("--jobs", o.jobs, "cases run concurrently")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", o.tol, "relative residual target (default 1e-12)")
      ->check(CLI::PositiveNumber);
}

void apply_common(const CommonOptions& o, wg::RunConfig& cfg) {
  if (!o.eps.empty()) cfg.eps = parse_list<double>(o.eps);
  if (!o.N.empty()) cfg.N = parse_list<int>(o.N);
  if (o.alpha > 0) cfg.alpha = o.alpha;
  if (!o.mesh.empty()) cfg.mesh = wg::mesh_kind_from_string(o.mesh);
  if (o.quad > 0) cfg.quad = o.quad;
  cfg.solver = wg::solver_method_from_string(o.solver);
  cfg.condense = wg::condense_mode_from_string(o.condense);
  cfg.jobs = o.jobs;
  if (o.tol > 0) cfg.tol = o.tol;
}

void progress_line(const wg::CaseResult& r) {
  std::fprintf(stderr,
               "[wg-shishkin] example=%d mesh=%s k=%d eps=%.0e N=%d error=%.3e unknowns=%d "
               "solver=%s iterations=%d residual=%.1e time=%.2fs\n",
               wg::to_int(r.record.example), wg::to_string(r.record.mesh).c_str(), r.record.k,
               r.record.eps, r.record.N, r.record.error, r.solved_dofs,
               r.solve.backend.c_str(), r.solve.iterations,
               r.solve.relative_residual, r.solve.seconds);
}

int execute(const wg::RunConfig& cfg, const std::string& out_path) {
  const auto records = wg::convergence_table(cfg, progress_line);
  if (out_path.empty()) {
    wg::write_csv(std::cout, records);
  } else {
    std::ofstream file(out_path);
    if (!file) throw std::runtime_error("cannot open " + out_path);
    wg::write_csv(file, records);
  }
  return 0;
}

void dump_matrix(const wg::RunConfig& cfg, const std::string& path) {
  const wg::CaseConfig c = cfg.cases().front();
  const auto mesh = wg::build_mesh({c.N, c.eps, c.k, c.alpha_or_default(), c.mesh});
  const wg::DofMap dofs(mesh, c.k);
  const wg::ExactSolution u(c.example, c.eps);
  const auto sys = wg::assemble_system(
      mesh, dofs, c.eps, [&u](double x, double y) { return u.forcing(x, y); },
      c.quad_or_default());
  wg::write_matrix_market(path, sys.matrix);
  std::fprintf(stderr, "[wg-shishkin] wrote %s (%s)\n", path.c_str(), c.describe().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak Galerkin solver for eps^2 Bilaplace(u) - Laplace(u) = f on Shishkin meshes"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  int example = 1;
  int k = 3;
  std::string dump_path;
  auto* run = app.add_subcommand("run", "run a sweep over eps and N");
  run->add_option("--example", example, "0 (polynomial), 1 or 2")->check(CLI::Range(0, 2));
  run->add_option("--k", k, "polynomial degree")->check(CLI::Range(3, 4));
  run->add_option("--dump-matrix", dump_path,
                  "write the assembled matrix of the first case in Matrix Market format");
  add_common(run, run_opts, true);

  std::vector<CommonOptions> table_opts(6);
  std::vector<CLI::App*> tables;
  for (int t = 1; t <= 6; ++t) {
    auto* cmd = app.add_subcommand("table" + std::to_string(t),
                                   "reproduce result table " + std::to_string(t));
    add_common(cmd, table_opts[t - 1], false);
    tables.push_back(cmd);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      wg::RunConfig cfg;
      cfg.example = wg::example_from_int(example);
      cfg.k = k;
      apply_common(run_opts, cfg);
      cfg.validate();
      if (!dump_path.empty()) dump_matrix(cfg, dump_path);
      return execute(cfg, run_opts.out);
    }
    for (int t = 0; t < 6; ++t) {
      if (!tables[t]->parsed()) continue;
      wg::RunConfig cfg = wg::table_preset(t + 1);
      apply_common(table_opts[t], cfg);
      return execute(cfg, table_opts[t].out);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "wg-shishkin: error: %s\n", e.what());
    return 1;
  }
  return 1;
}
