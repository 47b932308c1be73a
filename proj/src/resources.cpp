#include "mifno/resources.hpp"

#include <cmath>

#include "mifno/jordan_wigner.hpp"
#include "mifno/uccsd.hpp"

namespace mifno {

GateCounts pauli_exponential_cost(const PauliTerm& t) {
  GateCounts g;
  const int w = t.weight();
  if (w == 0) return g;
  g.two_qubit = 2 * (w - 1);
  g.one_qubit = 2 * t.basis_changes() + 1;
  return g;
}

int estimate_qubits(int n_occ_active, int n_virt_kept) {
  if (n_occ_active < 0 || n_virt_kept < 0) throw ConfigError("orbital counts must be >= 0");
  return 2 * (n_occ_active + n_virt_kept);
}

ResourceEstimate estimate_gates(const ActiveSpaceHamiltonian& ham,
                                bool prune_zero_amplitudes, bool count_hamiltonian_terms) {
  ResourceEstimate out;
  out.n_qubits = estimate_qubits(ham.n_occ, ham.n_active - ham.n_occ);
  out.pruned_zero_amplitudes = prune_zero_amplitudes;

  const auto amps = mbpt1_initial_amplitudes(ham);
  out.n_variational_parameters = static_cast<int>(amps.n_parameters());
  if (out.n_variational_parameters > 0)
    out.one_qubit_gates = 2 * ham.n_occ;  // X gates preparing the reference
  for (const auto& op : uccsd_excitation_ops(amps)) {
    if (prune_zero_amplitudes && std::abs(op.theta) < 1e-12) continue;
    for (const auto& t : op.strings.terms()) {
      const auto g = pauli_exponential_cost(t);
      out.one_qubit_gates += g.one_qubit;
      out.two_qubit_gates += g.two_qubit;
    }
  }
  out.n_pauli_terms_hamiltonian =
      count_hamiltonian_terms
          ? static_cast<long>(hamiltonian_to_qubit(ham, /*allow_large=*/true).terms.size())
          : -1;
  return out;
}

int kept_at_occupancy(const std::vector<double>& descending, double tau) {
  if (!(tau > 0.0) || tau > 1.0) throw PolicyError("occupancy fraction must be in (0, 1]");
  double total = 0.0;
  for (double v : descending) total += v;
  if (total <= 1e-300) return static_cast<int>(descending.size());
  double acc = 0.0;
  int kept = 0;
  while (kept < static_cast<int>(descending.size()) && acc / total < tau - 1e-14) {
    acc += descending[kept];
    ++kept;
  }
  return kept;
}

}  // namespace mifno
