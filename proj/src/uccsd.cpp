#include "mifno/uccsd.hpp"

#include <cmath>

#include "mifno/jordan_wigner.hpp"

namespace mifno {

UccsdAmplitudes uccsd_parameter_structure(const ActiveSpaceHamiltonian& ham) {
  UccsdAmplitudes amps;
  const auto occ = ham.occupied_spin();
  const auto virt = ham.virtual_spin();
  for (int I : occ)
    for (int A : virt)
      if ((I & 1) == (A & 1)) amps.singles[{I, A}] = 0.0;
  for (std::size_t i = 0; i < occ.size(); ++i)
    for (std::size_t j = i + 1; j < occ.size(); ++j)
      for (std::size_t a = 0; a < virt.size(); ++a)
        for (std::size_t b = a + 1; b < virt.size(); ++b) {
          const int I = occ[i], J = occ[j], A = virt[a], B = virt[b];
          if (((I & 1) + (J & 1)) != ((A & 1) + (B & 1))) continue;
          amps.doubles[{I, J, A, B}] = 0.0;
        }
  return amps;
}

UccsdAmplitudes mbpt1_initial_amplitudes(const ActiveSpaceHamiltonian& ham) {
  UccsdAmplitudes amps = uccsd_parameter_structure(ham);
  const auto fd = ham.fock_diagonal();
  for (auto& [key, theta] : amps.doubles) {
    const auto [I, J, A, B] = key;
    const double num = ham.so_antisym(I, J, A, B);
    const double eps = fd[I] + fd[J] - fd[A] - fd[B];
    if (std::abs(eps) > 1e-8) theta = num / eps;
  }
  return amps;
}

namespace {

// Unit-amplitude images: theta multiplies the string coefficients only when
// a weighted generator is assembled, so the structure is reusable across
// optimizer iterations.
ExcitationOp make_single(int I, int A, double theta) {
  if (I == A) throw InvalidAmplitude("amplitude indices collide");
  ExcitationOp op;
  op.is_double = false;
  op.idx = {I, A, -1, -1};
  op.theta = theta;
  // a+_A a_I - a+_I a_A
  op.strings = jordan_wigner({{1.0, {{A, true}, {I, false}}},
                              {-1.0, {{I, true}, {A, false}}}});
  return op;
}

ExcitationOp make_double(int I, int J, int A, int B, double theta) {
  if (I == J || A == B || I == A || I == B || J == A || J == B)
    throw InvalidAmplitude("amplitude indices collide");
  ExcitationOp op;
  op.is_double = true;
  op.idx = {I, J, A, B};
  op.theta = theta;
  // a+_A a+_B a_J a_I - a+_I a+_J a_B a_A
  op.strings = jordan_wigner(
      {{1.0, {{A, true}, {B, true}, {J, false}, {I, false}}},
       {-1.0, {{I, true}, {J, true}, {B, false}, {A, false}}}});
  return op;
}

}  // namespace

std::vector<ExcitationOp> uccsd_excitation_ops(const UccsdAmplitudes& amps) {
  std::vector<ExcitationOp> ops;
  ops.reserve(amps.n_parameters());
  for (const auto& [key, theta] : amps.singles)
    ops.push_back(make_single(key.first, key.second, theta));
  for (const auto& [key, theta] : amps.doubles)
    ops.push_back(make_double(key[0], key[1], key[2], key[3], theta));
  return ops;
}

PauliSum uccsd_generator(const UccsdAmplitudes& amps) {
  PauliSum acc;
  for (const auto& op : uccsd_excitation_ops(amps)) {
    for (auto t : op.strings.terms()) {
      t.coeff *= op.theta;
      acc.add(t);
    }
  }
  auto out = acc.simplified();
  for (const auto& t : out.terms())
    if (std::abs(t.coeff.real()) > 1e-12)
      throw ConsistencyError("UCCSD generator coefficient is not purely imaginary");
  return out;
}

}  // namespace mifno
