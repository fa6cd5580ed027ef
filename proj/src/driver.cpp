#include "wg/driver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "wg/assembly.hpp"

namespace wg {

CondenseMode condense_mode_from_string(const std::string& name) {
  if (name == "auto") return CondenseMode::automatic;
  if (name == "on") return CondenseMode::on;
  if (name == "off") return CondenseMode::off;
  throw std::invalid_argument("unknown condense mode '" + name + "' (expected auto, on or off)");
}

MeshKind mesh_kind_from_string(const std::string& name) {
  if (name == "shishkin") return MeshKind::shishkin;
  if (name == "uniform") return MeshKind::uniform;
  throw std::invalid_argument("unknown mesh '" + name + "' (expected shishkin or uniform)");
}

std::string to_string(MeshKind kind) {
  return kind == MeshKind::shishkin ? "shishkin" : "uniform";
}

double triple_bar_norm(const Eigen::VectorXd& free_coeffs, const ShishkinMesh& mesh,
                       const DofMap& dofs, double eps, int q) {
  if (free_coeffs.size() != dofs.n_free()) {
    throw std::invalid_argument("triple_bar_norm: coefficient vector has size " +
                                std::to_string(free_coeffs.size()) + ", expected " +
                                std::to_string(dofs.n_free()));
  }
  const Eigen::VectorXd raw = dofs.to_raw(free_coeffs);
  LocalOperatorCache ops(dofs.k(), eps, mesh.h_fine, mesh.H_coarse, q);
  double sum = 0;
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    const std::vector<int> idx = dofs.cell_dofs(mesh, static_cast<int>(c));
    Eigen::VectorXd v(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) v[static_cast<Eigen::Index>(a)] = raw[idx[a]];
    const LocalOperators& op = ops.get(mesh.cells[c]);
    sum += eps * eps * (op.L * v).squaredNorm() + (op.G * v).squaredNorm() + v.dot(op.S * v);
  }
  return std::sqrt(std::max(sum, 0.0));
}

std::string CaseConfig::describe() const {
  std::ostringstream os;
  os << "example=" << to_int(example) << " mesh=" << to_string(mesh) << " k=" << k
     << " eps=" << eps << " N=" << N;
  return os.str();
}

CaseResult run_case(const CaseConfig& config) {
  const MeshParams params{config.N, config.eps, config.k, config.alpha_or_default(),
                          config.mesh};
  const ShishkinMesh mesh = build_mesh(params);
  const DofMap dofs(mesh, config.k);
  const ExactSolution u(config.example, config.eps);
  const int q = config.quad_or_default();
  const ScalarField f = [&u](double x, double y) { return u.forcing(x, y); };

  CaseResult result;
  result.free_dofs = dofs.n_free();
  Eigen::VectorXd uh;
  try {
    if (config.condensed()) {
      const CondensedSystem cs = assemble_condensed_system(mesh, dofs, config.eps, f, q);
      SolveResult sol = solve_spd(cs.edge_system.matrix, cs.edge_system.rhs, config.solver,
                                  config.tol);
      result.solved_dofs = cs.edge_system.size();
      result.solve = sol.report;
      uh = cs.recover(sol.solution);
    } else {
      const SparseSystem sys = assemble_system(mesh, dofs, config.eps, f, q);
      SolveResult sol = solve_spd(sys.matrix, sys.rhs, config.solver, config.tol);
      result.solved_dofs = sys.size();
      result.solve = sol.report;
      uh = std::move(sol.solution);
    }
  } catch (const SolverError& e) {
    throw SolverError(config.describe() + ": " + e.what());
  }

  const Eigen::VectorXd qu = dofs.to_free(project_exact(mesh, dofs, u, q));
  result.record = {config.example, config.mesh, config.k, config.eps, config.N,
                   triple_bar_norm(qu - uh, mesh, dofs, config.eps, q), std::nullopt};
  result.projection_norm = triple_bar_norm(qu, mesh, dofs, config.eps, q);
  result.solution = std::move(uh);
  return result;
}

double convergence_order(double error_coarse, double error_fine) {
  if (error_coarse == error_fine) return 0.0;
  return std::log2(error_coarse / error_fine);
}

void assign_orders(std::vector<ConvergenceRecord>& records) {
  using Key = std::tuple<int, int, int, double, int>;
  std::map<Key, double> errors;
  for (const auto& r : records) {
    errors[{to_int(r.example), static_cast<int>(r.mesh), r.k, r.eps, r.N}] = r.error;
  }
  for (auto& r : records) {
    const auto it = errors.find({to_int(r.example), static_cast<int>(r.mesh), r.k, r.eps, 2 * r.N});
    if (it != errors.end()) {
      r.order = convergence_order(r.error, it->second);
    } else {
      r.order.reset();
    }
  }
}

void RunConfig::validate() const {
  if (k < 3) throw std::invalid_argument("k must be >= 3");
  if (eps.empty() || N.empty()) throw std::invalid_argument("eps and N lists must be non-empty");
  for (double e : eps) {
    if (!(e > 0)) throw std::invalid_argument("eps values must be positive");
  }
  for (int n : N) {
    if (n < 4 || n % 4 != 0) {
      throw std::invalid_argument("N values must be >= 4 and divisible by 4, got " +
                                  std::to_string(n));
    }
  }
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
}

std::vector<CaseConfig> RunConfig::cases() const {
  std::vector<double> eps_sorted = eps;
  std::sort(eps_sorted.begin(), eps_sorted.end(), std::greater<>());
  std::vector<int> N_sorted = N;
  std::sort(N_sorted.begin(), N_sorted.end());
  std::vector<CaseConfig> out;
  for (double e : eps_sorted) {
    for (int n : N_sorted) {
      CaseConfig c;
      c.example = example;
      c.mesh = mesh;
      c.k = k;
      c.eps = e;
      c.N = n;
      c.alpha = alpha;
      c.quad = quad;
      c.solver = solver;
      c.condense = condense;
      c.tol = tol;
      out.push_back(c);
    }
  }
  return out;
}

RunConfig table_preset(int table) {
  if (table < 1 || table > 6) throw std::invalid_argument("table must be 1..6");
  RunConfig cfg;
  cfg.example = table <= 3 ? Example::layer_sine : Example::layer_cubic;
  const int variant = (table - 1) % 3;
  cfg.mesh = variant == 1 ? MeshKind::uniform : MeshKind::shishkin;
  cfg.k = variant == 2 ? 4 : 3;
  const int n_eps = cfg.k == 4 ? 7 : 8;
  cfg.eps.clear();
  for (int i = 0; i < n_eps; ++i) cfg.eps.push_back(std::pow(10.0, -i));
  cfg.N = cfg.k == 4 ? std::vector<int>{8, 16, 32, 64} : std::vector<int>{8, 16, 32, 64, 128};
  // Tables use a fixed 5-point rule. For k=4 this moves the coarse-N
  // layer errors by up to 5% against k+3 points.
  cfg.quad = kTableQuadrature;
  return cfg;
}

std::vector<ConvergenceRecord> convergence_table(const RunConfig& config,
                                                 const ProgressCallback& progress) {
  config.validate();
  const std::vector<CaseConfig> cases = config.cases();
  std::vector<ConvergenceRecord> records(cases.size());
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next++;
      if (i >= cases.size()) return;
      {
        std::lock_guard lock(mutex);
        if (failure) return;
      }
      try {
        const CaseResult r = run_case(cases[i]);
        records[i] = r.record;
        if (progress) {
          std::lock_guard lock(mutex);
          progress(r);
        }
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int jobs = std::min<int>(config.jobs, static_cast<int>(cases.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  assign_orders(records);
  return records;
}

void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records) {
  out << "example,mesh,k,eps,N,error,order,error_full\n";
  char buf[64];
  for (const auto& r : records) {
    out << to_int(r.example) << ',' << to_string(r.mesh) << ',' << r.k << ',';
    std::snprintf(buf, sizeof buf, "%.0e", r.eps);
    out << buf << ',' << r.N << ',';
    std::snprintf(buf, sizeof buf, "%.2e", r.error);
    out << buf << ',';
    if (r.order) {
      std::snprintf(buf, sizeof buf, "%.2f", *r.order);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", r.error);
    out << ',' << buf << '\n';
  }
}

}  // namespace wg
