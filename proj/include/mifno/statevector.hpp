#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mifno/pauli.hpp"

namespace mifno {

using Statevector = std::vector<std::complex<double>>;

// Basis state |occupation_mask> on n_qubits (little-endian).
Statevector basis_state(int n_qubits, uint64_t occupation_mask);

// In-place exp(i * angle * P) |psi>; norm preserving.
void apply_pauli_exponential(Statevector& psi, int n_qubits, const PauliTerm& p,
                             double angle);

// Applies exp(i c_k P_k) for every generator term, in the generator's term
// order, to the reference basis state (single first-order Trotter step).
// Generator coefficients must be purely imaginary (i * c_k).
Statevector trotter_state(const PauliSum& generator, int n_qubits, uint64_t reference);

// Exact term-by-term statevector contraction <psi|H|psi>.
double expectation(const Statevector& psi, const QubitHamiltonian& ham);

}  // namespace mifno
