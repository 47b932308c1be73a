#pragma once

#include <Eigen/Dense>
#include <functional>

#include "mifno/fci.hpp"
#include "mifno/uccsd.hpp"

namespace mifno {

// Derivative-free minimizer settings. ftol is the objective decrease per
// sweep below which the search stops (two consecutive quiet sweeps).
struct OptimizerConfig {
  double ftol = 1e-5;
  double initial_step = 1e-2;
  long max_evals = 400000;
};

struct OptimizerResult {
  Eigen::VectorXd x;
  double f = 0.0;
  long evals = 0;
  bool converged = false;
};

// Powell's conjugate-direction method with Brent line searches; derivative
// free and bound free.
OptimizerResult minimize_powell(const std::function<double(const Eigen::VectorXd&)>& f,
                                const Eigen::VectorXd& x0, const OptimizerConfig& cfg);

// Simulates the Trotterized UCCSD circuit inside the particle-number sector
// of the reference. Each excitation's Jordan-Wigner strings commute, so the
// ordered product of their exponentials equals the exact group exponential,
// which acts on determinant pairs as a plane rotation; amplitudes and phases
// are identical to the full statevector circuit (interleaved convention).
class UccsdSectorSimulator {
 public:
  UccsdSectorSimulator(const ActiveSpaceHamiltonian& ham,
                       const std::vector<ExcitationOp>& ops);

  int n_parameters() const { return static_cast<int>(pairs_.size()); }
  const DeterminantSpace& space() const { return space_; }

  // Sector amplitudes of the prepared state, ordered like the space.
  Eigen::VectorXd state(const Eigen::VectorXd& thetas) const;
  double energy(const Eigen::VectorXd& thetas) const;

 private:
  struct Pair {
    uint32_t from, to;
    int8_t sign;
  };
  const ActiveSpaceHamiltonian& ham_;
  DeterminantSpace space_;
  std::vector<std::vector<Pair>> pairs_;  // per excitation
  Eigen::MatrixXd hmat_;                  // dense sector Hamiltonian (small spaces)
  bool dense_ = false;
};

struct VqeOutcome {
  double energy = 0.0;
  UccsdAmplitudes amplitudes;
  long iterations = 0;  // objective evaluations
  bool converged = false;
};

// Minimizes the UCCSD energy of the active space from the given starting
// amplitudes (missing entries of the full spin-conserving structure are
// zero-filled). Exceeding the evaluation budget returns the best point with
// converged = false.
VqeOutcome vqe_minimize(const ActiveSpaceHamiltonian& ham, const UccsdAmplitudes& init,
                        const OptimizerConfig& cfg = OptimizerConfig());

// MBPT(1) initial guess: first-order doubles, zero singles.
VqeOutcome vqe_minimize(const ActiveSpaceHamiltonian& ham,
                        const OptimizerConfig& cfg = OptimizerConfig());

// Reference check path: energy of the Trotterized circuit evaluated with the
// full statevector and term-by-term expectation.
double uccsd_statevector_energy(const ActiveSpaceHamiltonian& ham,
                                const UccsdAmplitudes& amps);

}  // namespace mifno
