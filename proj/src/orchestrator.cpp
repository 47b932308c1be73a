#include "mifno/orchestrator.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>

#include <json.hpp>
#include <sstream>
#include <thread>

#include "mifno/fci.hpp"
#include "mifno/jordan_wigner.hpp"

namespace mifno {

using nlohmann::json;

// --- config -----------------------------------------------------------------

void RunConfig::validate() const {
  if (fcidump_path.empty()) throw ConfigError("fcidump path is required");
  if (order < 1) throw ConfigError("expansion order must be >= 1");
  if (worker_count < 1) throw ConfigError("worker_count must be >= 1");
  if (fno_occupancy && fno_keep_count)
    throw ConfigError("fno.occupancy and fno.keep_count are mutually exclusive");
  if (fno_occupancy && !(*fno_occupancy > 0.0 && *fno_occupancy <= 1.0))
    throw ConfigError("fno.occupancy must lie in (0, 1]");
  if (fno_keep_count && *fno_keep_count < 0)
    throw ConfigError("fno.keep_count must be >= 0");
  if (screen_threshold < 0.0) throw ConfigError("screening threshold must be >= 0");
}

std::string RunConfig::fno_tag() const {
  std::ostringstream ss;
  if (fno_occupancy) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "occ:%.6g", *fno_occupancy);
    ss << buf;
  } else if (fno_keep_count) {
    ss << "keep:" << *fno_keep_count;
  } else {
    return "none";
  }
  ss << "/" << (fno_scope == FnoScope::per_increment ? "per_increment" : "global");
  return ss.str();
}

std::string RunConfig::solver_tag() const {
  switch (solver) {
    case Solver::fci:
      return "fci";
    case Solver::vqe_uccsd:
      return "vqe";
    default:
      return "both";
  }
}

std::string RunConfig::signature() const {
  std::ostringstream ss;
  ss << "order=" << order << " fno=" << fno_tag() << " solver=" << solver_tag()
     << " screen=" << screen_threshold;
  return ss.str();
}

std::vector<std::string> solver_tags(const RunConfig& config) {
  switch (config.solver) {
    case RunConfig::Solver::fci:
      return {"fci"};
    case RunConfig::Solver::vqe_uccsd:
      return {"vqe"};
    default:
      return {"fci", "vqe"};
  }
}

// --- ledger text format -------------------------------------------------------

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct LedgerEntry {
  IncrementRecord rec;  // e_c filled per solver as lines arrive
};

std::string ec_line(const IncrementRecord& r, const std::string& tag,
                    const std::string& fno, double e_c) {
  std::ostringstream ss;
  ss << "EC subset=" << r.inc.key() << " order=" << r.inc.order() << " solver=" << tag
     << " fno=" << fno << " e_c=" << fmt_double(e_c) << " kept=" << r.kept_virtuals
     << " discarded=" << r.discarded_virtuals << " qubits=" << r.n_qubits
     << " delta_mp2=" << fmt_double(r.delta_mp2) << " one_q=" << r.one_qubit_gates
     << " two_q=" << r.two_qubit_gates << " pauli_terms=" << r.n_pauli_terms
     << " params=" << r.n_parameters << " vqe_iters=" << r.vqe_iterations
     << " vqe_conv=" << (r.vqe_converged ? 1 : 0) << " wall_ms=" << fmt_double(r.wall_ms);
  return ss.str();
}

std::string eps_line(const Increment& inc, const std::string& tag, double eps) {
  std::ostringstream ss;
  ss << "EPS subset=" << inc.key() << " order=" << inc.order() << " solver=" << tag
     << " eps=" << fmt_double(eps);
  return ss.str();
}

std::map<std::string, std::string> parse_fields(const std::string& line) {
  std::map<std::string, std::string> out;
  std::istringstream ss(line);
  std::string tok;
  ss >> tok;  // record type
  out["_type"] = tok;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("malformed ledger token: " + tok);
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

std::vector<int> parse_subset(const std::string& s) {
  std::vector<int> out;
  std::istringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stoi(part));
  return out;
}

}  // namespace

// --- run --------------------------------------------------------------------

namespace {

struct SolveResult {
  IncrementRecord rec;
  std::vector<std::string> fresh_tags;  // tags solved in this process
};

FnoPolicy policy_of(const RunConfig& config) {
  if (config.fno_occupancy) return FnoPolicy::by_occupancy(*config.fno_occupancy);
  return FnoPolicy::by_keep_count(*config.fno_keep_count);
}

// Resource estimation cap: JW term counting on the full two-body tensor gets
// slow past this register size.
constexpr int kPauliCountCap = 24;

void estimate_into(IncrementRecord& rec, const ActiveSpaceHamiltonian& ham) {
  const auto est =
      estimate_gates(ham, true, /*count_hamiltonian_terms=*/ham.n_spin() <= kPauliCountCap);
  rec.n_parameters = est.n_variational_parameters;
  rec.one_qubit_gates = est.one_qubit_gates;
  rec.two_qubit_gates = est.two_qubit_gates;
  rec.n_pauli_terms = est.n_pauli_terms_hamiltonian;
}

}  // namespace

RunReport run(const RunConfig& config) {
  config.validate();
  const auto store = parse_fcidump_file(config.fcidump_path);
  const int n_occ_spatial = store.n_electrons() / 2;
  if (store.n_electrons() % 2 != 0)
    throw ConfigError("closed-shell reference required (even electron count)");
  if (config.order > n_occ_spatial)
    throw ConfigError("expansion order exceeds the occupied orbital count");

  const auto tags = solver_tags(config);
  RunReport report;
  report.config = config;

  // baseline
  const auto fock = build_fock(store, store.reference_occupied());
  report.e_hf = fock.e_hf;
  std::vector<int> all_spin;
  for (int P = 0; P < store.n_spin(); ++P) all_spin.push_back(P);
  const auto ham_full_system = fold_frozen(store, {}, all_spin);
  report.e_mp2 = mp2_energy(ham_full_system).e2;

  // global-scope FNO spectrum, computed once
  std::optional<FnoSubspace> global_fnos;
  if (config.fno_enabled() && config.fno_scope == RunConfig::FnoScope::global)
    global_fnos = fno_decompose(vv_density(ham_full_system));

  // ledger file: resume reads EC lines, every solve appends
  std::map<std::string, std::map<std::string, double>> resumed;  // key -> tag -> e_c
  std::map<std::string, IncrementRecord> resumed_meta;
  std::unique_ptr<std::ofstream> ledger_out;
  std::mutex ledger_mutex;
  if (!config.ledger_path.empty()) {
    if (config.resume) {
      std::ifstream in(config.ledger_path);
      std::string line;
      while (in && std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto f = parse_fields(line);
        if (f["_type"] == "CONFIG") {
          if (f["signature"] != "" && line.find(config.signature()) == std::string::npos)
            throw ConfigError("ledger was written under a different configuration");
          continue;
        }
        if (f["_type"] != "EC") continue;
        IncrementRecord rec;
        rec.inc = Increment{parse_subset(f.at("subset"))};
        rec.kept_virtuals = std::stoi(f.at("kept"));
        rec.discarded_virtuals = std::stoi(f.at("discarded"));
        rec.n_qubits = std::stoi(f.at("qubits"));
        rec.delta_mp2 = std::stod(f.at("delta_mp2"));
        rec.one_qubit_gates = std::stol(f.at("one_q"));
        rec.two_qubit_gates = std::stol(f.at("two_q"));
        rec.n_pauli_terms = std::stol(f.at("pauli_terms"));
        rec.n_parameters = std::stoi(f.at("params"));
        rec.vqe_iterations = std::stol(f.at("vqe_iters"));
        rec.vqe_converged = f.at("vqe_conv") == "1";
        rec.wall_ms = std::stod(f.at("wall_ms"));
        resumed[rec.inc.key()][f.at("solver")] = std::stod(f.at("e_c"));
        resumed_meta.emplace(rec.inc.key(), rec);
      }
    }
    ledger_out = std::make_unique<std::ofstream>(config.ledger_path, std::ios::app);
    if (!*ledger_out) throw ConfigError("cannot open ledger for writing: " + config.ledger_path);
    if (!config.resume)
      *ledger_out << "# mifno ledger v1\nCONFIG signature=" << config.signature() << "\n"
                  << std::flush;
  }

  // per-solver epsilon ledgers and shared record map
  std::map<std::string, IncrementLedger> ledgers;
  for (const auto& t : tags) ledgers[t];
  std::map<std::string, IncrementRecord> records;
  std::mutex results_mutex;
  std::atomic<long> solves_left{config.max_solves < 0 ? std::numeric_limits<long>::max()
                                                      : config.max_solves};

  auto solve_increment = [&](const Increment& inc) -> SolveResult {
    SolveResult out;
    out.rec.inc = inc;
    const auto t0 = std::chrono::steady_clock::now();

    auto ham_inc = make_increment_space(store, inc.occ);
    const int nv_full = ham_inc.n_active - ham_inc.n_occ;
    double delta = 0.0;
    ActiveSpaceHamiltonian ham_solve = ham_inc;
    int kept = nv_full;
    if (config.fno_enabled()) {
      const FnoSubspace spectrum =
          global_fnos ? *global_fnos : fno_decompose(vv_density(ham_inc));
      const auto truncated = fno_truncate(spectrum, policy_of(config));
      kept = truncated.kept;
      ham_solve = transform_virtuals(ham_inc, truncated);
      delta = delta_mp2(ham_inc, ham_solve);
    }
    out.rec.kept_virtuals = kept;
    out.rec.discarded_virtuals = nv_full - kept;
    out.rec.n_qubits = estimate_qubits(ham_solve.n_occ, kept);
    out.rec.delta_mp2 = delta;

    if (std::abs(ham_solve.e_hf() - report.e_hf) > 1e-8)
      throw ConsistencyError("active-space mean field drifted from the global reference");

    if (config.resource_estimates) estimate_into(out.rec, ham_solve);

    // resumed values short-circuit the solvers
    std::map<std::string, double> have;
    {
      auto it = resumed.find(inc.key());
      if (it != resumed.end()) have = it->second;
    }
    for (const auto& tag : tags) {
      if (have.count(tag)) {
        out.rec.e_c[tag] = have.at(tag);
        continue;
      }
      double e_solver = 0.0;
      if (tag == "fci") {
        e_solver = solve_increment_fci(ham_solve);
      } else {
        auto v = vqe_minimize(ham_solve, config.vqe_optimizer);
        e_solver = v.energy - ham_solve.e_hf();
        out.rec.vqe_iterations = v.iterations;
        out.rec.vqe_converged = v.converged;
      }
      out.rec.e_c[tag] = e_solver + delta;
      out.fresh_tags.push_back(tag);
    }
    // restore metadata recorded by the original process for resumed rows
    if (out.fresh_tags.empty()) {
      auto it = resumed_meta.find(inc.key());
      if (it != resumed_meta.end()) {
        const auto keep_ec = out.rec.e_c;
        out.rec = it->second;
        out.rec.e_c = keep_ec;
      }
    }
    out.rec.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    return out;
  };

  std::atomic<bool> truncated_run{false};
  bool failures = false;
  for (int m = 1; m <= config.order && !failures && !truncated_run; ++m) {
    // work list for this order
    std::vector<Increment> work;
    if (m == 1 || config.screen_threshold == 0.0) {
      for (auto& inc : enumerate_increments(n_occ_spatial, m))
        if (inc.order() == m) work.push_back(inc);
    } else {
      work = ledgers.begin()->second.screen(n_occ_spatial, m, config.screen_threshold);
    }

    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> any_failed{false};
    auto worker = [&]() {
      while (true) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= work.size()) return;
        const auto& inc = work[i];
        // count prospective fresh work against the solve budget
        bool fresh_needed = false;
        {
          auto it = resumed.find(inc.key());
          for (const auto& tag : tags)
            if (it == resumed.end() || !it->second.count(tag)) fresh_needed = true;
        }
        if (fresh_needed) {
          if (solves_left.fetch_sub(1) <= 0) {
            truncated_run = true;
            return;
          }
        }
        for (int attempt = 0;; ++attempt) {
          try {
            auto result = solve_increment(inc);
            std::lock_guard<std::mutex> lock(results_mutex);
            for (const auto& [tag, e_c] : result.rec.e_c) ledgers.at(tag).insert_ec(inc, e_c);
            records[inc.key()] = result.rec;
            if (ledger_out) {
              std::lock_guard<std::mutex> lk(ledger_mutex);
              for (const auto& tag : result.fresh_tags)
                *ledger_out << ec_line(result.rec, tag, config.fno_tag(),
                                       result.rec.e_c.at(tag))
                            << "\n"
                            << std::flush;
            }
            break;
          } catch (const Error& e) {
            if (attempt >= 2) {
              std::lock_guard<std::mutex> lock(results_mutex);
              IncrementRecord rec;
              rec.inc = inc;
              rec.status = "failed: " + std::string(e.what());
              records[inc.key()] = rec;
              for (const auto& tag : tags) ledgers.at(tag).mark_failed(inc);
              any_failed = true;
              break;
            }
          }
        }
      }
    };
    std::vector<std::thread> pool;
    const int nw = std::min<int>(config.worker_count, std::max<std::size_t>(work.size(), 1));
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    failures = any_failed.load();

    if (!failures && !truncated_run)
      for (auto& [tag, ledger] : ledgers) {
        ledger.reduce_order(m);
        if (ledger_out) {
          std::lock_guard<std::mutex> lk(ledger_mutex);
          for (const auto& [inc, val] : ledger.entries())
            if (inc.order() == m && val.has_eps)
              *ledger_out << eps_line(inc, tag, val.eps) << "\n" << std::flush;
        }
      }
  }

  // assemble records in canonical order
  for (const auto& inc : enumerate_increments(n_occ_spatial, config.order)) {
    auto it = records.find(inc.key());
    if (it == records.end()) {
      if (config.screen_threshold > 0.0) continue;  // screened away or unreached
      IncrementRecord rec;
      rec.inc = inc;
      rec.status = "pending";
      report.increments.push_back(rec);
      continue;
    }
    auto rec = it->second;
    for (const auto& tag : tags) {
      if (ledgers.at(tag).solved(inc)) {
        const auto& v = ledgers.at(tag).at(inc);
        if (v.has_eps) rec.eps[tag] = v.eps;
      }
    }
    report.increments.push_back(std::move(rec));
    report.max_qubits_over_increments =
        std::max(report.max_qubits_over_increments, report.increments.back().n_qubits);
  }

  // reconstruction per solver
  report.status = "complete";
  for (const auto& tag : tags) {
    try {
      report.expansion[tag] = ledgers.at(tag).reconstruct(config.order, report.e_hf);
    } catch (const IncompleteExpansion& e) {
      report.status = "partial";
      report.detail = e.what();
    }
  }
  if (truncated_run && report.status == "complete") {
    report.status = "partial";
    report.detail = "stopped after reaching the solve budget";
  }

  // full-system comparison row
  report.full_system_qubits = estimate_qubits(n_occ_spatial, store.n_spatial() - n_occ_spatial);
  if (config.resource_estimates) {
    IncrementRecord full;
    estimate_into(full, ham_full_system);
    report.full_system_one_qubit_gates = full.one_qubit_gates;
    report.full_system_two_qubit_gates = full.two_qubit_gates;
    report.full_system_pauli_terms = full.n_pauli_terms;
    report.full_system_parameters = full.n_parameters;
    report.caveats.push_back(
        std::string("gate totals follow the ") + kGateModelVersion +
        " upper-bound model (2(w-1) two-qubit + 2b+1 one-qubit per weight-w Pauli "
        "exponential, zero-amplitude excitations skipped); compiled circuits differ");
  }

  if (!config.report_path.empty()) {
    std::ofstream out(config.report_path);
    out << report_render(report, ReportFormat::json);
  }
  return report;
}

// --- report serialization -----------------------------------------------------

namespace {

json config_json(const RunConfig& c) {
  // execution-only knobs (workers, paths, budget) stay out of the report so
  // equivalent runs render identically
  json j;
  j["fcidump"] = c.fcidump_path;
  j["order"] = c.order;
  j["fno"] = c.fno_tag();
  j["solver"] = c.solver_tag();
  j["screen_threshold"] = c.screen_threshold;
  j["vqe_ftol"] = c.vqe_optimizer.ftol;
  return j;
}

json expansion_json(const ExpansionResult& e) {
  json j;
  j["n"] = e.n;
  j["e_corr"] = e.e_corr;
  j["e_total"] = e.e_total;
  json per;
  for (const auto& [ord, v] : e.per_order_sums) per[std::to_string(ord)] = v;
  j["per_order"] = per;
  return j;
}

ExpansionResult expansion_from_json(const json& j) {
  ExpansionResult e;
  e.n = j.at("n").get<int>();
  e.e_corr = j.at("e_corr").get<double>();
  e.e_total = j.at("e_total").get<double>();
  for (const auto& [k, v] : j.at("per_order").items())
    e.per_order_sums[std::stoi(k)] = v.get<double>();
  return e;
}

}  // namespace

std::string report_render(const RunReport& r, ReportFormat format) {
  if (format == ReportFormat::json) {
    json j;
    j["schema_version"] = r.schema_version;
    j["gate_model"] = r.gate_model;
    j["config"] = config_json(r.config);
    j["e_hf"] = r.e_hf;
    j["e_mp2_corr"] = r.e_mp2;
    j["status"] = r.status;
    if (!r.detail.empty()) j["detail"] = r.detail;
    json incs = json::array();
    for (const auto& rec : r.increments) {
      json ji;
      ji["subset"] = rec.inc.occ;
      ji["order"] = rec.inc.order();
      ji["status"] = rec.status;
      ji["kept_virtuals"] = rec.kept_virtuals;
      ji["discarded_virtuals"] = rec.discarded_virtuals;
      ji["qubits"] = rec.n_qubits;
      ji["delta_mp2"] = rec.delta_mp2;
      ji["e_c"] = rec.e_c;
      ji["eps"] = rec.eps;
      if (rec.one_qubit_gates >= 0) {
        ji["gates"] = {{"one_qubit", rec.one_qubit_gates},
                       {"two_qubit", rec.two_qubit_gates},
                       {"pauli_terms", rec.n_pauli_terms},
                       {"parameters", rec.n_parameters}};
      }
      if (rec.e_c.count("vqe")) {
        ji["vqe"] = {{"iterations", rec.vqe_iterations}, {"converged", rec.vqe_converged}};
      }
      if (r.config.include_timings) ji["wall_ms"] = rec.wall_ms;
      incs.push_back(ji);
    }
    j["increments"] = incs;
    json ex;
    for (const auto& [tag, e] : r.expansion) ex[tag] = expansion_json(e);
    j["expansion"] = ex;
    j["resources"] = {{"max_qubits_over_increments", r.max_qubits_over_increments},
                      {"full_system_qubits", r.full_system_qubits},
                      {"full_system_one_qubit_gates", r.full_system_one_qubit_gates},
                      {"full_system_two_qubit_gates", r.full_system_two_qubit_gates},
                      {"full_system_pauli_terms", r.full_system_pauli_terms},
                      {"full_system_parameters", r.full_system_parameters}};
    j["caveats"] = r.caveats;
    return j.dump(2) + "\n";
  }

  // fixed-width table
  std::ostringstream ss;
  auto pct = [](double part, double whole) {
    if (whole <= 0) return std::string("-");
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * (1.0 - part / whole));
    return std::string(buf);
  };
  ss << "status: " << r.status << "\n";
  char line[256];
  std::snprintf(line, sizeof(line), "E_HF  = %18.9f hartree\nE_MP2 = %18.9f hartree\n",
                r.e_hf, r.e_mp2);
  ss << line;
  for (const auto& [tag, e] : r.expansion) {
    std::snprintf(line, sizeof(line),
                  "%-4s  E_corr = %14.9f  E_total = %16.9f hartree\n", tag.c_str(), e.e_corr,
                  e.e_total);
    ss << line;
  }
  ss << "\n";
  static const char* body_names[] = {"", "one-body", "two-body", "three-body", "four-body",
                                     "five-body"};
  std::snprintf(line, sizeof(line), "%-22s %-14s %-18s %-18s\n", "increment", "qubits",
                "one-qubit gates", "two-qubit gates");
  ss << line;
  for (const auto& rec : r.increments) {
    const int ord = rec.inc.order();
    std::string name = (ord <= 5 ? body_names[ord] : std::to_string(ord) + "-body");
    name += " (" + rec.inc.label() + ")";
    std::string q = std::to_string(rec.n_qubits) + " (" +
                    pct(rec.n_qubits, r.full_system_qubits) + ")";
    std::string g1 = rec.one_qubit_gates < 0
                         ? "-"
                         : std::to_string(rec.one_qubit_gates) + " (" +
                               pct(static_cast<double>(rec.one_qubit_gates),
                                   static_cast<double>(r.full_system_one_qubit_gates)) +
                               ")";
    std::string g2 = rec.two_qubit_gates < 0
                         ? "-"
                         : std::to_string(rec.two_qubit_gates) + " (" +
                               pct(static_cast<double>(rec.two_qubit_gates),
                                   static_cast<double>(r.full_system_two_qubit_gates)) +
                               ")";
    std::snprintf(line, sizeof(line), "%-22s %-14s %-18s %-18s\n", name.c_str(), q.c_str(),
                  g1.c_str(), g2.c_str());
    ss << line;
  }
  std::string fq = std::to_string(r.full_system_qubits);
  std::snprintf(line, sizeof(line), "%-22s %-14s %-18s %-18s\n", "Full system", fq.c_str(),
                std::to_string(r.full_system_one_qubit_gates).c_str(),
                std::to_string(r.full_system_two_qubit_gates).c_str());
  ss << line;
  if (!r.caveats.empty()) {
    ss << "\n";
    for (const auto& c : r.caveats) ss << "note: " << c << "\n";
  }
  return ss.str();
}

RunReport report_parse_json(const std::string& text) {
  json j = json::parse(text);
  RunReport r;
  r.schema_version = j.at("schema_version").get<int>();
  r.gate_model = j.at("gate_model").get<std::string>();
  const auto& jc = j.at("config");
  r.config.fcidump_path = jc.at("fcidump").get<std::string>();
  r.config.order = jc.at("order").get<int>();
  const std::string fno = jc.at("fno").get<std::string>();
  if (fno != "none") {
    auto slash = fno.find('/');
    const std::string sel = fno.substr(0, slash);
    r.config.fno_scope = fno.substr(slash + 1) == "global"
                             ? RunConfig::FnoScope::global
                             : RunConfig::FnoScope::per_increment;
    if (sel.rfind("occ:", 0) == 0)
      r.config.fno_occupancy = std::stod(sel.substr(4));
    else
      r.config.fno_keep_count = std::stoi(sel.substr(5));
  }
  const std::string sol = jc.at("solver").get<std::string>();
  r.config.solver = sol == "fci" ? RunConfig::Solver::fci
                    : sol == "vqe" ? RunConfig::Solver::vqe_uccsd
                                   : RunConfig::Solver::both;
  r.config.screen_threshold = jc.at("screen_threshold").get<double>();
  r.config.vqe_optimizer.ftol = jc.at("vqe_ftol").get<double>();
  r.e_hf = j.at("e_hf").get<double>();
  r.e_mp2 = j.at("e_mp2_corr").get<double>();
  r.status = j.at("status").get<std::string>();
  if (j.contains("detail")) r.detail = j.at("detail").get<std::string>();
  for (const auto& ji : j.at("increments")) {
    IncrementRecord rec;
    rec.inc.occ = ji.at("subset").get<std::vector<int>>();
    rec.status = ji.at("status").get<std::string>();
    rec.kept_virtuals = ji.at("kept_virtuals").get<int>();
    rec.discarded_virtuals = ji.at("discarded_virtuals").get<int>();
    rec.n_qubits = ji.at("qubits").get<int>();
    rec.delta_mp2 = ji.at("delta_mp2").get<double>();
    rec.e_c = ji.at("e_c").get<std::map<std::string, double>>();
    rec.eps = ji.at("eps").get<std::map<std::string, double>>();
    if (ji.contains("gates")) {
      rec.one_qubit_gates = ji["gates"].at("one_qubit").get<long>();
      rec.two_qubit_gates = ji["gates"].at("two_qubit").get<long>();
      rec.n_pauli_terms = ji["gates"].at("pauli_terms").get<long>();
      rec.n_parameters = ji["gates"].at("parameters").get<int>();
    }
    if (ji.contains("vqe")) {
      rec.vqe_iterations = ji["vqe"].at("iterations").get<long>();
      rec.vqe_converged = ji["vqe"].at("converged").get<bool>();
    }
    if (ji.contains("wall_ms")) {
      rec.wall_ms = ji.at("wall_ms").get<double>();
      r.config.include_timings = true;
    }
    r.increments.push_back(rec);
  }
  for (const auto& [tag, je] : j.at("expansion").items())
    r.expansion[tag] = expansion_from_json(je);
  const auto& jr = j.at("resources");
  r.max_qubits_over_increments = jr.at("max_qubits_over_increments").get<int>();
  r.full_system_qubits = jr.at("full_system_qubits").get<int>();
  r.full_system_one_qubit_gates = jr.at("full_system_one_qubit_gates").get<long>();
  r.full_system_two_qubit_gates = jr.at("full_system_two_qubit_gates").get<long>();
  r.full_system_pauli_terms = jr.at("full_system_pauli_terms").get<long>();
  r.full_system_parameters = jr.at("full_system_parameters").get<int>();
  r.caveats = j.at("caveats").get<std::vector<std::string>>();
  return r;
}

// --- estimate-only -------------------------------------------------------------

QubitTable estimate_only(int n_occ, const std::vector<double>& spectrum, int mi_order,
                         const std::vector<double>& taus) {
  if (n_occ < 0 || mi_order < 1) throw ConfigError("invalid orbital counts");
  std::vector<double> desc = spectrum;
  std::sort(desc.begin(), desc.end(), std::greater<double>());
  QubitTable t;
  t.n_occ = n_occ;
  t.n_virt_total = static_cast<int>(desc.size());
  t.mi_order = mi_order;
  t.full_system_qubits = estimate_qubits(n_occ, t.n_virt_total);
  for (double tau : taus) {
    QubitTableRow row;
    row.tau = tau;
    row.n_virt = kept_at_occupancy(desc, tau);
    row.fno_qubits = estimate_qubits(n_occ, row.n_virt);
    row.mi_fno_qubits = estimate_qubits(mi_order, row.n_virt);
    t.rows.push_back(row);
  }
  return t;
}

QubitTable estimate_only(int n_occ, int n_virt_total,
                         const std::vector<std::pair<double, int>>& nv_at_tau, int mi_order) {
  QubitTable t;
  t.n_occ = n_occ;
  t.n_virt_total = n_virt_total;
  t.mi_order = mi_order;
  t.full_system_qubits = estimate_qubits(n_occ, n_virt_total);
  for (const auto& [tau, nv] : nv_at_tau) {
    if (nv < 0 || nv > n_virt_total) throw ConfigError("N_v outside [0, N_v_total]");
    QubitTableRow row;
    row.tau = tau;
    row.n_virt = nv;
    row.fno_qubits = estimate_qubits(n_occ, nv);
    row.mi_fno_qubits = estimate_qubits(mi_order, nv);
    t.rows.push_back(row);
  }
  return t;
}

QubitTable estimate_only(const std::string& fcidump_path, int mi_order,
                         const std::vector<double>& taus) {
  const auto store = parse_fcidump_file(fcidump_path);
  std::vector<int> all;
  for (int P = 0; P < store.n_spin(); ++P) all.push_back(P);
  const auto ham = fold_frozen(store, {}, all);
  const auto fnos = fno_decompose(vv_density(ham));
  std::vector<double> spectrum(fnos.eigenvalues.data(),
                               fnos.eigenvalues.data() + fnos.eigenvalues.size());
  return estimate_only(store.n_electrons() / 2, spectrum, mi_order, taus);
}

std::string qubit_table_render(const QubitTable& t, ReportFormat format) {
  if (format == ReportFormat::json) {
    json j;
    j["n_occ"] = t.n_occ;
    j["n_virt_total"] = t.n_virt_total;
    j["mi_order"] = t.mi_order;
    j["full_system_qubits"] = t.full_system_qubits;
    json rows = json::array();
    for (const auto& r : t.rows)
      rows.push_back({{"occupancy", r.tau},
                      {"n_virt", r.n_virt},
                      {"fno_qubits", r.fno_qubits},
                      {"mi_fno_qubits", r.mi_fno_qubits}});
    j["rows"] = rows;
    return j.dump(2) + "\n";
  }
  std::ostringstream ss;
  char line[160];
  std::snprintf(line, sizeof(line), "%-14s %-8s %-12s %-14s\n", "FNO occupancy", "N_v",
                "FNO qubits", "MI(n)-FNO qubits");
  ss << line;
  for (const auto& r : t.rows) {
    std::snprintf(line, sizeof(line), "%-14.6g %-8d %-12d %-14d\n", r.tau, r.n_virt,
                  r.fno_qubits, r.mi_fno_qubits);
    ss << line;
  }
  std::snprintf(line, sizeof(line), "%-14s %-8d %-12d\n", "Full system", t.n_virt_total,
                t.full_system_qubits);
  ss << line;
  return ss.str();
}

}  // namespace mifno
