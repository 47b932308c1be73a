#pragma once

#include <Eigen/Dense>
#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mifno/errors.hpp"

namespace mifno {

// One weighted Pauli string on up to 64 qubits, symplectic encoding:
// X where only x bit set, Z where only z, Y where both.
struct PauliTerm {
  std::complex<double> coeff{0.0, 0.0};
  uint64_t x = 0;
  uint64_t z = 0;

  int weight() const { return std::popcount(x | z); }
  int basis_changes() const { return std::popcount(x); }  // X or Y positions
  bool is_identity() const { return (x | z) == 0; }

  // sparse ops view, qubit -> 'X' | 'Y' | 'Z'
  std::map<int, char> ops() const;
  std::string str(int n_qubits = 0) const;

  friend bool operator==(const PauliTerm& a, const PauliTerm& b) {
    return a.x == b.x && a.z == b.z && a.coeff == b.coeff;
  }
};

// Product of two Pauli strings, tracking the i-power phase.
PauliTerm pauli_mul(const PauliTerm& a, const PauliTerm& b);

// A sum of Pauli strings. Terms with coefficients below kDropTol are removed
// by simplify(); like terms merge.
class PauliSum {
 public:
  static constexpr double kDropTol = 1e-12;

  PauliSum() = default;
  explicit PauliSum(std::vector<PauliTerm> terms) : terms_(std::move(terms)) {}

  void add(const PauliTerm& t) { terms_.push_back(t); }
  void append(const PauliSum& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  }

  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  // Merge like terms (preserving first-appearance order) and drop negligible
  // coefficients.
  PauliSum simplified(double drop_tol = kDropTol) const;

  // Highest qubit index touched, plus one.
  int min_qubits() const;

  // Dense matrix over n_qubits (little-endian basis ordering).
  Eigen::MatrixXcd dense(int n_qubits) const;

 private:
  std::vector<PauliTerm> terms_;
};

// Hermitian qubit operator: a PauliSum whose coefficients are real.
struct QubitHamiltonian {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;  // coefficients have zero imaginary part

  std::size_t size() const { return terms.size(); }
  Eigen::MatrixXd dense() const;
};

}  // namespace mifno
