// mifno: method-of-increments / frozen-natural-orbital correlation energies
// with exact-diagonalization and VQE-UCCSD solvers, plus qubit and gate
// resource estimates.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mifno/fci.hpp"
#include "mifno/orchestrator.hpp"

namespace {

using namespace mifno;

// Flat key=value config file; CLI flags override file values.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw ConfigError("malformed config line: " + line);
      continue;
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config_file(RunConfig& config, const std::string& path) {
  static const std::set<std::string> known = {
      "fcidump",   "order",   "fno.occupancy", "fno.keep_count", "fno.scope",
      "solver",    "workers", "screen_threshold", "ledger",      "report",
      "timings",   "resource_estimates", "vqe.ftol"};
  for (const auto& [k, v] : read_config_file(path)) {
    if (!known.count(k)) throw ConfigError("unknown config key: " + k);
    if (k == "fcidump") config.fcidump_path = v;
    else if (k == "order") config.order = std::stoi(v);
    else if (k == "fno.occupancy") config.fno_occupancy = std::stod(v);
    else if (k == "fno.keep_count") config.fno_keep_count = std::stoi(v);
    else if (k == "fno.scope")
      config.fno_scope = (v == "global") ? RunConfig::FnoScope::global
                                         : RunConfig::FnoScope::per_increment;
    else if (k == "solver")
      config.solver = v == "fci"   ? RunConfig::Solver::fci
                      : v == "vqe" ? RunConfig::Solver::vqe_uccsd
                                   : RunConfig::Solver::both;
    else if (k == "workers") config.worker_count = std::stoi(v);
    else if (k == "screen_threshold") config.screen_threshold = std::stod(v);
    else if (k == "ledger") config.ledger_path = v;
    else if (k == "report") config.report_path = v;
    else if (k == "timings") config.include_timings = (v == "1" || v == "true");
    else if (k == "resource_estimates") config.resource_estimates = (v == "1" || v == "true");
    else if (k == "vqe.ftol") config.vqe_optimizer.ftol = std::stod(v);
  }
}

std::vector<double> parse_taus(const std::string& csv) {
  std::vector<double> taus;
  std::istringstream ss(csv);
  std::string part;
  while (std::getline(ss, part, ',')) taus.push_back(std::stod(part));
  return taus;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"method-of-increments correlation energies with FNO-truncated "
               "virtual spaces, FCI and VQE-UCCSD solvers, and quantum resource "
               "estimates"};
  app.require_subcommand(1);

  // ---- run ----
  RunConfig config;
  std::string config_file, fno_scope = "per-increment", solver = "fci", format = "table";
  double fno_occupancy = -1.0;
  int fno_keep = -1;
  auto* run_cmd = app.add_subcommand("run", "execute the increment pipeline");
  run_cmd->add_option("--config", config_file, "flat key=value config file");
  run_cmd->add_option("--fcidump", config.fcidump_path, "FCIDUMP input");
  run_cmd->add_option("--order", config.order, "expansion order n");
  run_cmd->add_option("--fno-occupancy", fno_occupancy, "occupancy fraction in (0,1]");
  run_cmd->add_option("--fno-keep", fno_keep, "kept virtual orbitals per increment");
  run_cmd->add_option("--fno-scope", fno_scope, "per-increment | global");
  run_cmd->add_option("--solver", solver, "fci | vqe | both");
  run_cmd->add_option("--workers", config.worker_count, "worker thread count");
  run_cmd->add_option("--screen", config.screen_threshold,
                      "energy screening threshold (hartree)");
  run_cmd->add_option("--ledger", config.ledger_path, "ledger file path");
  run_cmd->add_flag("--resume", config.resume, "resume from the ledger");
  run_cmd->add_option("--report", config.report_path, "write the JSON report here");
  run_cmd->add_option("--format", format, "stdout format: table | json");
  run_cmd->add_option("--max-solves", config.max_solves,
                      "stop after this many fresh solves (resume testing)");
  run_cmd->add_flag("--timings", config.include_timings, "include wall times in the report");
  run_cmd->add_option("--vqe-ftol", config.vqe_optimizer.ftol, "VQE objective tolerance");

  // ---- estimate-only ----
  std::string est_fcidump, est_spectrum, est_nv_at, est_format = "table";
  int est_nocc = -1, est_nvirt = -1, est_mi_order = 3;
  std::string est_taus = "0.99,0.9,0.8,0.7,0.6,0.5,0.4,0.3,0.2,0.1";
  auto* est_cmd = app.add_subcommand(
      "estimate-only", "qubit-count ladder over FNO occupancy thresholds, no solves");
  est_cmd->add_option("--fcidump", est_fcidump, "compute the spectrum from this FCIDUMP");
  est_cmd->add_option("--n-occ", est_nocc, "occupied spatial orbitals");
  est_cmd->add_option("--spectrum", est_spectrum, "file with one FNO eigenvalue per line");
  est_cmd->add_option("--n-virt", est_nvirt, "total virtual orbitals (with --nv-at)");
  est_cmd->add_option("--nv-at", est_nv_at, "explicit tau=N_v pairs, e.g. 0.99=295,0.9=...");
  est_cmd->add_option("--mi-order", est_mi_order, "expansion order n for the MI column");
  est_cmd->add_option("--taus", est_taus, "comma-separated occupancy ladder");
  est_cmd->add_option("--format", est_format, "table | json");

  // ---- render ----
  std::string render_in, render_format = "table";
  auto* render_cmd = app.add_subcommand("render", "re-render a JSON report");
  render_cmd->add_option("--report", render_in, "report JSON file")->required();
  render_cmd->add_option("--format", render_format, "table | json");

  // ---- fci (reference utility) ----
  std::string fci_fcidump;
  int fci_frozen = 0, fci_subspace = 12;
  double fci_tol = 1e-9;
  auto* fci_cmd =
      app.add_subcommand("fci", "full-space FCI ground-state energy of a FCIDUMP");
  fci_cmd->add_option("--fcidump", fci_fcidump, "FCIDUMP input")->required();
  fci_cmd->add_option("--frozen-core", fci_frozen, "freeze this many core spatial orbitals");
  fci_cmd->add_option("--max-subspace", fci_subspace, "Davidson subspace cap");
  fci_cmd->add_option("--tol", fci_tol, "Davidson residual tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      if (!config_file.empty()) apply_config_file(config, config_file);
      if (fno_occupancy > 0) config.fno_occupancy = fno_occupancy;
      if (fno_keep >= 0) config.fno_keep_count = fno_keep;
      if (run_cmd->count("--fno-scope") || config_file.empty())
        config.fno_scope = (fno_scope == "global") ? RunConfig::FnoScope::global
                                                   : RunConfig::FnoScope::per_increment;
      if (run_cmd->count("--solver") || config_file.empty())
        config.solver = solver == "fci"   ? RunConfig::Solver::fci
                        : solver == "vqe" ? RunConfig::Solver::vqe_uccsd
                                          : RunConfig::Solver::both;
      auto report = run(config);
      std::cout << report_render(
          report, format == "json" ? ReportFormat::json : ReportFormat::table);
      return report.status == "complete" ? 0 : 2;
    }
    if (*est_cmd) {
      QubitTable table;
      if (!est_fcidump.empty()) {
        table = estimate_only(est_fcidump, est_mi_order, parse_taus(est_taus));
      } else if (!est_spectrum.empty()) {
        if (est_nocc < 0) throw ConfigError("--n-occ is required with --spectrum");
        std::ifstream in(est_spectrum);
        if (!in) throw ConfigError("cannot open spectrum file: " + est_spectrum);
        std::vector<double> spec;
        double v;
        while (in >> v) spec.push_back(v);
        table = estimate_only(est_nocc, spec, est_mi_order, parse_taus(est_taus));
      } else if (!est_nv_at.empty()) {
        if (est_nocc < 0 || est_nvirt < 0)
          throw ConfigError("--n-occ and --n-virt are required with --nv-at");
        std::vector<std::pair<double, int>> pts;
        std::istringstream ss(est_nv_at);
        std::string part;
        while (std::getline(ss, part, ',')) {
          auto eq = part.find('=');
          if (eq == std::string::npos) throw ConfigError("expected tau=N_v, got " + part);
          pts.emplace_back(std::stod(part.substr(0, eq)), std::stoi(part.substr(eq + 1)));
        }
        table = estimate_only(est_nocc, est_nvirt, pts, est_mi_order);
      } else {
        throw ConfigError("estimate-only needs --fcidump, --spectrum, or --nv-at");
      }
      std::cout << qubit_table_render(
          table, est_format == "json" ? ReportFormat::json : ReportFormat::table);
      return 0;
    }
    if (*render_cmd) {
      std::ifstream in(render_in);
      if (!in) throw ConfigError("cannot open report: " + render_in);
      std::stringstream buf;
      buf << in.rdbuf();
      auto report = report_parse_json(buf.str());
      std::cout << report_render(
          report, render_format == "json" ? ReportFormat::json : ReportFormat::table);
      return 0;
    }
    if (*fci_cmd) {
      auto store = parse_fcidump_file(fci_fcidump);
      std::vector<int> frozen, active;
      for (int p = 0; p < store.n_spatial(); ++p) {
        const bool fz = p < fci_frozen;
        (fz ? frozen : active).push_back(so::alpha(p));
        (fz ? frozen : active).push_back(so::beta(p));
      }
      auto ham = fold_frozen(store, frozen, active);
      auto space = make_determinant_space(ham.n_active, ham.n_occ, ham.n_occ);
      DavidsonConfig cfg;
      cfg.max_subspace = fci_subspace;
      cfg.tol = fci_tol;
      std::fprintf(stderr, "determinants: %zu\n", space.size());
      auto res = davidson_lowest(ham, space, cfg);
      std::printf("E_HF   = %.10f\nE_FCI  = %.10f\nE_corr = %.10f\niterations = %d\n",
                  ham.e_hf(), res.energy, res.energy - ham.e_hf(), res.iterations);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
