#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "mifno/active_space.hpp"

namespace mifno {

// Full CI determinant basis over an active space. Determinants are pairs of
// alpha/beta spatial-orbital occupation strings, indexed alpha-string major
// with strings in ascending numeric (lexicographic bitstring) order, so the
// Hartree-Fock determinant is dets[0]. Fermionic phases follow the
// interleaved spin-orbital ordering (spatial p -> qubits 2p, 2p+1), matching
// the Jordan-Wigner convention of the qubit solver.
struct DeterminantSpace {
  int n_spatial = 0;
  int n_alpha = 0;
  int n_beta = 0;
  std::vector<uint32_t> alpha_strings;
  std::vector<uint32_t> beta_strings;

  std::size_t size() const { return alpha_strings.size() * beta_strings.size(); }
  std::size_t index(std::size_t ia, std::size_t ib) const {
    return ia * beta_strings.size() + ib;
  }
  // Interleaved spin-orbital occupation mask of determinant (ia, ib).
  uint64_t interleaved(std::size_t ia, std::size_t ib) const;
};

DeterminantSpace make_determinant_space(int n_spatial, int n_alpha, int n_beta);

// Spread an (alpha, beta) spatial string pair into the interleaved mask.
uint64_t interleave_strings(uint32_t a, uint32_t b);

// Fermionic phases in the interleaved ordering.
int phase_single(uint64_t det, int I, int A);               // a+_A a_I
int phase_double(uint64_t det, int I, int J, int A, int B);  // a+_A a+_B a_J a_I

// Matrix-free H*c via Slater-Condon rules (eff_core included on the
// diagonal). Dispatches to a string-driven kernel for large spaces.
std::vector<double> sigma_apply(const ActiveSpaceHamiltonian& ham,
                                const DeterminantSpace& space,
                                const std::vector<double>& c);

// The two kernels behind sigma_apply, exposed so they can be cross-checked.
std::vector<double> sigma_apply_direct(const ActiveSpaceHamiltonian& ham,
                                       const DeterminantSpace& space,
                                       const std::vector<double>& c);
std::vector<double> sigma_apply_strings(const ActiveSpaceHamiltonian& ham,
                                        const DeterminantSpace& space,
                                        const std::vector<double>& c);

// Dense determinant-basis Hamiltonian; small spaces only.
Eigen::MatrixXd dense_hamiltonian(const ActiveSpaceHamiltonian& ham,
                                  const DeterminantSpace& space);

// Diagonal <D|H|D> for preconditioning.
std::vector<double> hamiltonian_diagonal(const ActiveSpaceHamiltonian& ham,
                                         const DeterminantSpace& space);

struct DavidsonConfig {
  int max_subspace = 20;
  double tol = 1e-9;  // residual norm
  int max_iter = 200;
};

struct FciResult {
  double energy = 0.0;
  Eigen::VectorXd wavefunction;  // over DeterminantSpace indexing
  int iterations = 0;
};

// Lowest eigenpair of a symmetric operator given its action and diagonal.
// seed < 0 starts from the unit vector with the lowest diagonal entry.
FciResult davidson_generic(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
    const std::vector<double>& diagonal, const DavidsonConfig& cfg,
    std::ptrdiff_t seed = -1);

// Lowest eigenpair of the active-space Hamiltonian. Dense diagonalization
// below kDenseCutoff determinants, Davidson above it.
FciResult davidson_lowest(const ActiveSpaceHamiltonian& ham, const DeterminantSpace& space,
                          const DavidsonConfig& cfg = DavidsonConfig());

inline constexpr std::size_t kDenseCutoff = 2000;

// FCI correlation energy of a folded active space:
// E_FCI(active) - E_HF(active), <= 0 by the variational principle.
double solve_increment_fci(const ActiveSpaceHamiltonian& ham,
                           const DavidsonConfig& cfg = DavidsonConfig());

// <S^2> of a CI vector.
double s2_expectation(const DeterminantSpace& space, const Eigen::VectorXd& c);

}  // namespace mifno
