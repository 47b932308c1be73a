#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mifno/increments.hpp"
#include "mifno/mp2_fno.hpp"
#include "mifno/resources.hpp"
#include "mifno/vqe.hpp"

namespace mifno {

// Pipeline configuration. Exactly one FNO selector may be set; none disables
// virtual-space truncation.
struct RunConfig {
  std::string fcidump_path;
  int order = 1;
  std::optional<double> fno_occupancy;
  std::optional<int> fno_keep_count;
  enum class FnoScope { per_increment, global };
  FnoScope fno_scope = FnoScope::per_increment;
  enum class Solver { fci, vqe_uccsd, both };
  Solver solver = Solver::fci;
  double screen_threshold = 0.0;  // 0 disables energy screening
  int worker_count = 1;
  std::string ledger_path;  // empty: in-memory only
  bool resume = false;
  std::string report_path;
  bool include_timings = false;      // wall times live in the ledger otherwise
  bool resource_estimates = true;
  long max_solves = -1;              // stop-after-k hook for resume testing
  OptimizerConfig vqe_optimizer;

  void validate() const;
  bool fno_enabled() const { return fno_occupancy.has_value() || fno_keep_count.has_value(); }
  std::string fno_tag() const;     // "none" | "occ:0.99" | "keep:7", plus scope
  std::string solver_tag() const;  // "fci" | "vqe" | "both"
  std::string signature() const;   // resume compatibility check
};

std::vector<std::string> solver_tags(const RunConfig& config);

// Everything recorded about one increment's subproblem.
struct IncrementRecord {
  Increment inc;
  int kept_virtuals = 0;
  int discarded_virtuals = 0;
  int n_qubits = 0;
  double delta_mp2 = 0.0;
  std::map<std::string, double> e_c;   // solver tag -> correlation energy
  std::map<std::string, double> eps;   // solver tag -> increment energy
  long one_qubit_gates = -1;           // -1: not estimated
  long two_qubit_gates = -1;
  long n_pauli_terms = -1;
  int n_parameters = -1;
  long vqe_iterations = 0;
  bool vqe_converged = true;
  std::string status = "solved";  // solved | pending | failed
  double wall_ms = 0.0;
};

struct RunReport {
  int schema_version = 1;
  std::string gate_model = kGateModelVersion;
  RunConfig config;
  double e_hf = 0.0;
  double e_mp2 = 0.0;
  std::string status = "complete";  // complete | partial
  std::string detail;               // IncompleteExpansion text for partial runs
  std::vector<IncrementRecord> increments;  // canonical order
  std::map<std::string, ExpansionResult> expansion;  // per solver tag
  int max_qubits_over_increments = 0;
  int full_system_qubits = 0;
  long full_system_one_qubit_gates = -1;
  long full_system_two_qubit_gates = -1;
  long full_system_pauli_terms = -1;
  int full_system_parameters = -1;
  std::vector<std::string> caveats;
};

// Runs the pipeline: parse -> HF/MP2 baseline -> per-increment fold, FNO,
// solve -> epsilon recursion -> reconstruction. Deterministic report for a
// fixed config regardless of worker_count; resumable from the ledger.
RunReport run(const RunConfig& config);

enum class ReportFormat { json, table };
std::string report_render(const RunReport& report, ReportFormat format);
RunReport report_parse_json(const std::string& text);

// Qubit-count table over an occupancy-threshold ladder (no solves).
struct QubitTableRow {
  double tau = 1.0;
  int n_virt = 0;
  int fno_qubits = 0;     // 2 (N_v + N_occ)
  int mi_fno_qubits = 0;  // 2 (N_v + n)
};
struct QubitTable {
  int n_occ = 0;
  int n_virt_total = 0;
  int mi_order = 3;
  int full_system_qubits = 0;  // 2 (N_occ + N_v_total)
  std::vector<QubitTableRow> rows;
};

// Ladder from an explicit descending occupation spectrum.
QubitTable estimate_only(int n_occ, const std::vector<double>& spectrum, int mi_order,
                         const std::vector<double>& taus);
// Ladder from explicit (tau, N_v) points.
QubitTable estimate_only(int n_occ, int n_virt_total,
                         const std::vector<std::pair<double, int>>& nv_at_tau, int mi_order);
// Ladder from a FCIDUMP: the spectrum is the global-occupied FNO spectrum.
QubitTable estimate_only(const std::string& fcidump_path, int mi_order,
                         const std::vector<double>& taus);

std::string qubit_table_render(const QubitTable& table, ReportFormat format);

}  // namespace mifno
