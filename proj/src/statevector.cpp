#include "mifno/statevector.hpp"

#include <bit>
#include <cmath>

#include "mifno/jordan_wigner.hpp"

namespace mifno {

namespace {

void check_qubits(int n_qubits) {
  if (n_qubits < 0 || n_qubits > kStatevectorCap)
    throw CapacityError("statevector limited to " + std::to_string(kStatevectorCap) +
                        " qubits, requested " + std::to_string(n_qubits));
}

// lambda(n): P|n> = lambda(n) |n ^ x>
inline std::complex<double> basis_phase(const PauliTerm& t, uint64_t n) {
  static const std::complex<double> ip[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::complex<double> v = ip[std::popcount(t.x & t.z) & 3];
  return (std::popcount(n & t.z) & 1) ? -v : v;
}

}  // namespace

Statevector basis_state(int n_qubits, uint64_t mask) {
  check_qubits(n_qubits);
  Statevector psi(std::size_t(1) << n_qubits, {0.0, 0.0});
  psi[mask] = {1.0, 0.0};
  return psi;
}

void apply_pauli_exponential(Statevector& psi, int n_qubits, const PauliTerm& p,
                             double angle) {
  check_qubits(n_qubits);
  const std::size_t dim = std::size_t(1) << n_qubits;
  if (psi.size() != dim) throw ShapeError("statevector dimension mismatch");
  const double c = std::cos(angle), s = std::sin(angle);
  const std::complex<double> is{0.0, s};
  if (p.x == 0) {
    // diagonal: psi[n] *= exp(i angle lambda(n)), lambda = +-1
    for (uint64_t n = 0; n < dim; ++n) {
      const bool neg = std::popcount(n & p.z) & 1;
      psi[n] *= std::complex<double>(c, neg ? -s : s);
    }
    return;
  }
  const uint64_t hbit = uint64_t(1) << (63 - std::countl_zero(p.x));
  for (uint64_t n = 0; n < dim; ++n) {
    if (n & hbit) continue;  // visit each (n, n^x) pair once
    const uint64_t m = n ^ p.x;
    const auto ln = basis_phase(p, n);   // P|n> = ln |m>
    const auto lm = basis_phase(p, m);   // P|m> = lm |n>
    const auto an = psi[n], am = psi[m];
    psi[n] = c * an + is * (lm * am);
    psi[m] = c * am + is * (ln * an);
  }
}

Statevector trotter_state(const PauliSum& generator, int n_qubits, uint64_t reference) {
  check_qubits(n_qubits);
  if (generator.min_qubits() > n_qubits)
    throw ShapeError("generator touches qubits beyond the register");
  Statevector psi = basis_state(n_qubits, reference);
  for (const auto& t : generator.terms()) {
    if (std::abs(t.coeff.real()) > 1e-12)
      throw ConsistencyError("generator coefficient is not purely imaginary");
    PauliTerm p = t;
    p.coeff = {1.0, 0.0};
    apply_pauli_exponential(psi, n_qubits, p, t.coeff.imag());
  }
  return psi;
}

double expectation(const Statevector& psi, const QubitHamiltonian& ham) {
  const std::size_t dim = std::size_t(1) << ham.n_qubits;
  if (psi.size() != dim) throw ShapeError("statevector does not match the Hamiltonian");
  double energy = 0.0;
  for (const auto& t : ham.terms) {
    std::complex<double> acc{0.0, 0.0};
    for (uint64_t n = 0; n < dim; ++n) {
      const uint64_t m = n ^ t.x;
      acc += std::conj(psi[m]) * basis_phase(t, n) * psi[n];
    }
    energy += t.coeff.real() * acc.real();
  }
  return energy;
}

}  // namespace mifno
