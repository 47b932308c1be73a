#include "mifno/jordan_wigner.hpp"

#include <cmath>

namespace mifno {

namespace {

// 1/2 (X_p -+ i Y_p) Z_{p-1..0}
std::pair<PauliTerm, PauliTerm> ladder(int p, bool dagger) {
  const uint64_t chain = (uint64_t(1) << p) - 1;
  PauliTerm tx;
  tx.coeff = {0.5, 0.0};
  tx.x = uint64_t(1) << p;
  tx.z = chain;
  PauliTerm ty;
  ty.coeff = {0.0, dagger ? -0.5 : 0.5};
  ty.x = uint64_t(1) << p;
  ty.z = chain | (uint64_t(1) << p);
  return {tx, ty};
}

}  // namespace

PauliSum jordan_wigner(const FermionMonomial& m) {
  PauliSum acc;
  PauliTerm unit;
  unit.coeff = {m.coeff, 0.0};
  acc.add(unit);
  // multiply factors left to right: coeff * op[0] * op[1] * ...
  for (const auto& op : m.ops) {
    auto [tx, ty] = ladder(op.index, op.dagger);
    PauliSum next;
    for (const auto& t : acc.terms()) {
      next.add(pauli_mul(t, tx));
      next.add(pauli_mul(t, ty));
    }
    acc = next;
  }
  return acc.simplified();
}

PauliSum jordan_wigner(const std::vector<FermionMonomial>& ms) {
  PauliSum acc;
  for (const auto& m : ms) acc.append(jordan_wigner(m));
  return acc.simplified();
}

QubitHamiltonian hamiltonian_to_qubit(const ActiveSpaceHamiltonian& ham, bool allow_large) {
  const int nso = ham.n_spin();
  if (nso > kStatevectorCap && !allow_large)
    throw CapacityError("active space needs " + std::to_string(nso) +
                        " qubits, beyond the statevector cap of " +
                        std::to_string(kStatevectorCap));

  PauliSum acc;
  PauliTerm core;
  core.coeff = {ham.eff_core, 0.0};
  acc.add(core);

  for (int P = 0; P < nso; ++P)
    for (int Q = 0; Q < nso; ++Q) {
      const double h = ham.so_h1(P, Q);
      if (h == 0.0) continue;
      acc.append(jordan_wigner({h, {{P, true}, {Q, false}}}));
    }
  // 1/2 sum <PQ|RS> a+_P a+_Q a_S a_R
  for (int P = 0; P < nso; ++P)
    for (int Q = 0; Q < nso; ++Q) {
      if (P == Q) continue;
      for (int R = 0; R < nso; ++R) {
        if ((P & 1) != (R & 1)) continue;
        for (int S = 0; S < nso; ++S) {
          if ((Q & 1) != (S & 1) || R == S) continue;
          const double v = ham.so_coulomb(P, Q, R, S);
          if (v == 0.0) continue;
          acc.append(
              jordan_wigner({0.5 * v, {{P, true}, {Q, true}, {S, false}, {R, false}}}));
        }
      }
      if (acc.size() > 2'000'000) acc = acc.simplified();
    }

  auto simplified = acc.simplified();
  QubitHamiltonian out;
  out.n_qubits = nso;
  out.terms.reserve(simplified.size());
  for (auto t : simplified.terms()) {
    if (std::abs(t.coeff.imag()) > 1e-10)
      throw ConsistencyError("qubit Hamiltonian coefficient has an imaginary part");
    t.coeff = {t.coeff.real(), 0.0};
    out.terms.push_back(t);
  }
  return out;
}

}  // namespace mifno
