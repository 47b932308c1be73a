#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mifno/integrals.hpp"

namespace mifno {

// Effective Hamiltonian of a spin-paired active subspace: frozen occupied
// orbitals are folded into a dressed one-body term and a core scalar so the
// active space sees them as a static mean field.
//
// Active orbitals are re-indexed: spatial k in [0, n_active) maps to spin
// orbitals 2k/2k+1, with the reference-occupied spatials placed first.
// parent_spatial records the originating orbital of each active spatial
// (-1 once virtuals have been rotated into a natural-orbital basis).
struct ActiveSpaceHamiltonian {
  int n_active = 0;           // active spatial orbitals
  int n_occ = 0;              // reference-occupied active spatial orbitals
  double eff_core = 0.0;      // core + frozen-occupied contributions
  Eigen::MatrixXd eff_h1;     // dressed one-electron integrals (spatial)
  std::vector<double> h2;     // (pq|rs) restricted to active spatials
  std::vector<int> parent_spatial;

  int n_spin() const { return 2 * n_active; }
  int n_electrons() const { return 2 * n_occ; }

  double eri(int p, int q, int r, int s) const {
    return h2[((static_cast<std::size_t>(p) * n_active + q) * n_active + r) * n_active + s];
  }
  double& eri_ref(int p, int q, int r, int s) {
    return h2[((static_cast<std::size_t>(p) * n_active + q) * n_active + r) * n_active + s];
  }

  // Spin-orbital views over active indices (interleaved).
  double so_h1(int P, int Q) const {
    return so::spin(P) == so::spin(Q) ? eff_h1(so::spatial(P), so::spatial(Q)) : 0.0;
  }
  double so_coulomb(int P, int Q, int R, int S) const {
    if (so::spin(P) != so::spin(R) || so::spin(Q) != so::spin(S)) return 0.0;
    return eri(so::spatial(P), so::spatial(R), so::spatial(Q), so::spatial(S));
  }
  double so_antisym(int P, int Q, int R, int S) const {
    return so_coulomb(P, Q, R, S) - so_coulomb(P, Q, S, R);
  }

  // Active spin orbitals in parent-store labels (spec field); empty parent
  // labels are omitted for transformed virtuals.
  std::vector<int> active_spin_orbitals() const;

  // Reference-occupied active spin orbitals, local indices 0..2*n_occ-1.
  std::vector<int> occupied_spin() const;
  // Virtual active spin orbitals, local indices.
  std::vector<int> virtual_spin() const;

  // Hartree-Fock determinant energy of the active reference,
  // eff_core + sum_I h_II + 1/2 sum_IJ <IJ||IJ>.
  double e_hf() const;

  // Spin-orbital Fock matrix with the active reference occupation.
  Eigen::MatrixXd fock() const;
  std::vector<double> fock_diagonal() const;
};

// Folds frozen occupied spin orbitals into an effective Hamiltonian over the
// given active spin orbitals. Both sets must be spin-paired (alpha/beta of
// each spatial together), disjoint, and together cover the reference-occupied
// spin orbitals of the store.
ActiveSpaceHamiltonian fold_frozen(const IntegralStore& store,
                                   const std::vector<int>& frozen_occ,
                                   const std::vector<int>& active);

// Increment convenience: keep the occupied spatials in `occ_subset` active
// (plus every virtual), freeze the remaining occupied spatials.
ActiveSpaceHamiltonian make_increment_space(const IntegralStore& store,
                                            const std::vector<int>& occ_subset);

}  // namespace mifno
