#pragma once

#include <array>
#include <map>
#include <vector>

#include "mifno/active_space.hpp"
#include "mifno/pauli.hpp"

namespace mifno {

// UCCSD cluster amplitudes over active-local spin orbitals. Doubles are
// stored once per unique quadruple (i < j, a < b); sign-related redundant
// entries are implied by antisymmetry.
struct UccsdAmplitudes {
  std::map<std::pair<int, int>, double> singles;        // (i, a), same spin
  std::map<std::array<int, 4>, double> doubles;         // (i, j, a, b), Sz conserving

  std::size_t n_parameters() const { return singles.size() + doubles.size(); }
};

// The full spin-conserving singles+doubles structure of an active space,
// all amplitudes zero.
UccsdAmplitudes uccsd_parameter_structure(const ActiveSpaceHamiltonian& ham);

// First-order perturbation amplitudes: doubles <IJ||AB> / eps^{AB}_{IJ},
// singles zero.
UccsdAmplitudes mbpt1_initial_amplitudes(const ActiveSpaceHamiltonian& ham);

// One excitation of the cluster operator with its Jordan-Wigner image of
// theta * (T_k - T_k+). The strings of one excitation mutually commute, so
// their ordered product equals the exact group exponential.
struct ExcitationOp {
  bool is_double = false;
  std::array<int, 4> idx{};  // (i, a, -, -) or (i, j, a, b)
  double theta = 0.0;
  PauliSum strings;  // purely imaginary coefficients, i * c_k
};

// Excitation list in deterministic order: singles sorted by (i, a), then
// doubles sorted by (i, j, a, b).
std::vector<ExcitationOp> uccsd_excitation_ops(const UccsdAmplitudes& amps);

// JW image of T - T+ as one flat sum, excitation groups contiguous and in
// the same deterministic order as uccsd_excitation_ops.
PauliSum uccsd_generator(const UccsdAmplitudes& amps);

}  // namespace mifno
