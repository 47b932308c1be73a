#pragma once

#include <string>
#include <vector>

#include "mifno/active_space.hpp"
#include "mifno/pauli.hpp"

namespace mifno {

// Gate-count model "pauli-ladder-v1": every exponential of a weight-w Pauli
// string costs 2(w-1) two-qubit gates (CNOT ladder up and down) plus
// 2 * (number of X/Y positions) basis changes and one rotation as one-qubit
// gates. The totals are an upper-bound proxy; compiled circuits can differ.
inline constexpr const char* kGateModelVersion = "pauli-ladder-v1";

struct GateCounts {
  long one_qubit = 0;
  long two_qubit = 0;
};

GateCounts pauli_exponential_cost(const PauliTerm& t);

struct ResourceEstimate {
  int n_qubits = 0;
  long one_qubit_gates = 0;
  long two_qubit_gates = 0;
  long n_pauli_terms_hamiltonian = 0;
  int n_variational_parameters = 0;
  bool pruned_zero_amplitudes = false;
  std::string model = kGateModelVersion;
};

// Qubit requirement of an active problem: 2 (occupied + kept virtual)
// spatial orbitals.
int estimate_qubits(int n_occ_active, int n_virt_kept);

// Resources of one increment's Trotterized UCCSD circuit. With
// prune_zero_amplitudes, excitations whose MBPT(1) amplitude vanishes (all
// singles and symmetry-zero doubles) contribute no gates, mirroring a
// compiler that skips identity rotations; the parameter count stays
// structural either way.
ResourceEstimate estimate_gates(const ActiveSpaceHamiltonian& ham,
                                bool prune_zero_amplitudes = true,
                                bool count_hamiltonian_terms = true);

// Minimal prefix of a descending occupation spectrum reaching the given
// cumulative share.
int kept_at_occupancy(const std::vector<double>& descending_eigenvalues, double tau);

}  // namespace mifno
