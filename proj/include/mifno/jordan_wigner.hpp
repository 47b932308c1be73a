#pragma once

#include <vector>

#include "mifno/active_space.hpp"
#include "mifno/pauli.hpp"

namespace mifno {

// One normal-ordered product of ladder operators with a real coefficient,
// e.g. coeff * a+_p a+_q a_s a_r. Operators apply right to left.
struct FermionMonomial {
  double coeff = 0.0;
  struct Op {
    int index;    // spin orbital / qubit
    bool dagger;  // creation if true
  };
  std::vector<Op> ops;
};

// Jordan-Wigner image of one monomial:
// a+_p -> 1/2 (X_p - i Y_p) Z_{p-1} ... Z_0, a_p the conjugate.
PauliSum jordan_wigner(const FermionMonomial& m);

// Image of a sum of monomials, simplified with like-term merging.
PauliSum jordan_wigner(const std::vector<FermionMonomial>& ms);

// Qubit Hamiltonian of an active space; qubit 2k/2k+1 hold the alpha/beta
// spin orbitals of active spatial k, and the identity term carries eff_core.
// Spaces beyond kStatevectorCap spin orbitals are refused unless allow_large
// is set (resource estimation does not need a statevector).
QubitHamiltonian hamiltonian_to_qubit(const ActiveSpaceHamiltonian& ham,
                                      bool allow_large = false);

inline constexpr int kStatevectorCap = 24;

}  // namespace mifno
