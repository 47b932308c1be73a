#pragma once

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "mifno/active_space.hpp"

namespace mifno {

// MBPT(2) correlation energy with its pair decomposition.
struct Mp2Result {
  double e2 = 0.0;
  // (I < J) spin-orbital pairs (active-local indices) -> pair energy
  std::map<std::pair<int, int>, double> pair_energies;
};

// Virtual-virtual block of the MBPT(2) one-particle density matrix,
// dimensionless occupation numbers over virtual spin orbitals.
struct VvDensityBlock {
  Eigen::MatrixXd d;                 // (|virt| x |virt|), symmetric PSD
  std::vector<int> virt;             // active-local spin orbitals indexing d
  std::vector<int> occupied_context; // occupied spin orbitals summed over
};

// Frozen natural orbitals of one virtual space. The alpha and beta density
// blocks of a spin-restricted reference are identical, so eigenvalues and the
// transform are stored per spatial orbital; each eigenvalue is doubly
// degenerate in the spin-orbital picture and alpha/beta partners are kept or
// dropped together by construction.
struct FnoSubspace {
  Eigen::VectorXd eigenvalues;  // descending occupation numbers (per spin)
  Eigen::MatrixXd u;            // (n_virt x n_virt), columns are FNOs
  int kept = 0;                 // retained spatial virtuals
  double occupancy_fraction = 1.0;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

// Truncation policy: exactly one selector active.
struct FnoPolicy {
  enum class Kind { occupancy, keep_count };
  Kind kind = Kind::occupancy;
  double occupancy = 1.0;
  int keep_count = 0;

  static FnoPolicy by_occupancy(double tau) {
    FnoPolicy p;
    p.kind = Kind::occupancy;
    p.occupancy = tau;
    return p;
  }
  static FnoPolicy by_keep_count(int k) {
    FnoPolicy p;
    p.kind = Kind::keep_count;
    p.keep_count = k;
    return p;
  }
};

// E2 = 1/4 sum_{IJAB} |<IJ||AB>|^2 / (f_II + f_JJ - f_AA - f_BB) over the
// given occupied/virtual active spin orbitals. Near-zero denominators with a
// nonvanishing numerator raise DegeneracyError.
Mp2Result mp2_energy(const ActiveSpaceHamiltonian& ham, const std::vector<int>& occ,
                     const std::vector<int>& virt);

// Reference spaces of the Hamiltonian itself.
Mp2Result mp2_energy(const ActiveSpaceHamiltonian& ham);

// D_ab = 1/2 sum_{cij} <cb||ij><ij||ca> / (eps^cb_ij eps^ca_ij).
VvDensityBlock vv_density(const ActiveSpaceHamiltonian& ham, const std::vector<int>& occ,
                          const std::vector<int>& virt);
VvDensityBlock vv_density(const ActiveSpaceHamiltonian& ham);

// Diagonalizes the density block; kept = all.
FnoSubspace fno_decompose(const VvDensityBlock& d);

// Applies a truncation policy: occupancy tau keeps the minimal prefix of the
// descending eigenvalues whose cumulative share reaches tau; keep_count keeps
// exactly k spatial virtuals.
FnoSubspace fno_truncate(const FnoSubspace& s, const FnoPolicy& policy);

// Rotates the virtual space into the kept FNOs and semicanonicalizes it
// (diagonal virtual-virtual Fock block) so MBPT denominators stay defined.
// Occupied orbitals are untouched.
ActiveSpaceHamiltonian transform_virtuals(const ActiveSpaceHamiltonian& ham,
                                          const FnoSubspace& s);

// Delta-MBPT(2) correction: E2(full) - E2(truncated) over the shared
// occupied space.
double delta_mp2(const ActiveSpaceHamiltonian& ham_full,
                 const ActiveSpaceHamiltonian& ham_truncated);

// Closed-shell spatial Fock matrix of the active reference.
Eigen::MatrixXd spatial_fock(const ActiveSpaceHamiltonian& ham);

}  // namespace mifno
