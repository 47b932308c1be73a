#include "mifno/pauli.hpp"

#include <bit>
#include <sstream>
#include <unordered_map>

namespace mifno {

std::map<int, char> PauliTerm::ops() const {
  std::map<int, char> out;
  uint64_t any = x | z;
  while (any) {
    int q = std::countr_zero(any);
    bool bx = (x >> q) & 1, bz = (z >> q) & 1;
    out[q] = bx ? (bz ? 'Y' : 'X') : 'Z';
    any &= any - 1;
  }
  return out;
}

std::string PauliTerm::str(int) const {
  std::ostringstream ss;
  ss << coeff.real();
  if (coeff.imag() != 0.0) ss << (coeff.imag() > 0 ? "+" : "") << coeff.imag() << "i";
  ss << " ";
  auto o = ops();
  if (o.empty()) ss << "I";
  for (const auto& [q, c] : o) ss << c << q << " ";
  return ss.str();
}

PauliTerm pauli_mul(const PauliTerm& a, const PauliTerm& b) {
  PauliTerm r;
  r.x = a.x ^ b.x;
  r.z = a.z ^ b.z;
  // phase: product over qubits of single-qubit Pauli products
  int ipow = 0;  // power of i, mod 4
  uint64_t both = (a.x | a.z) & (b.x | b.z);
  while (both) {
    int q = std::countr_zero(both);
    both &= both - 1;
    int pa = ((a.x >> q) & 1) | (((a.z >> q) & 1) << 1);  // 1=X, 2=Z, 3=Y
    int pb = ((b.x >> q) & 1) | (((b.z >> q) & 1) << 1);
    if (pa == pb) continue;  // same op: identity, no phase
    // cyclic XY=iZ, YZ=iX, ZX=iY; reversed order gives -i
    static constexpr int8_t phase[4][4] = {
        {0, 0, 0, 0}, {0, 0, -1, 1}, {0, 1, 0, -1}, {0, -1, 1, 0}};
    // table index: 1=X, 3=Y, 2=Z; phase[pa][pb] in units of i
    ipow += phase[pa][pb];
  }
  ipow = ((ipow % 4) + 4) % 4;
  static const std::complex<double> ip[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  r.coeff = a.coeff * b.coeff * ip[ipow];
  return r;
}

PauliSum PauliSum::simplified(double drop_tol) const {
  std::vector<PauliTerm> out;
  std::unordered_map<uint64_t, std::size_t> pos;  // weak key, verify on hit
  auto key = [](const PauliTerm& t) { return t.x * 0x9e3779b97f4a7c15ull ^ t.z; };
  for (const auto& t : terms_) {
    auto k = key(t);
    auto it = pos.find(k);
    bool merged = false;
    if (it != pos.end() && out[it->second].x == t.x && out[it->second].z == t.z) {
      out[it->second].coeff += t.coeff;
      merged = true;
    } else {
      // resolve rare hash collisions by linear probe over the suffix
      for (std::size_t i = 0; i < out.size() && !merged; ++i)
        if (out[i].x == t.x && out[i].z == t.z) {
          out[i].coeff += t.coeff;
          merged = true;
        }
    }
    if (!merged) {
      pos[k] = out.size();
      out.push_back(t);
    }
  }
  std::vector<PauliTerm> kept;
  kept.reserve(out.size());
  for (auto& t : out)
    if (std::abs(t.coeff) > drop_tol) kept.push_back(t);
  return PauliSum(std::move(kept));
}

int PauliSum::min_qubits() const {
  uint64_t any = 0;
  for (const auto& t : terms_) any |= t.x | t.z;
  return any ? 64 - std::countl_zero(any) : 0;
}

namespace {

// lambda(n) for P|n> = lambda(n) |n ^ x>; see apply rules in statevector.cpp
std::complex<double> basis_phase(const PauliTerm& t, uint64_t n) {
  static const std::complex<double> ip[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  int ny = std::popcount(t.x & t.z);
  int sign = std::popcount(n & t.z) & 1;
  std::complex<double> v = ip[ny & 3];
  return sign ? -v : v;
}

}  // namespace

Eigen::MatrixXcd PauliSum::dense(int n_qubits) const {
  if (n_qubits > 24) throw CapacityError("dense Pauli matrix beyond 24 qubits");
  const std::size_t dim = std::size_t(1) << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms_) {
    for (uint64_t n = 0; n < dim; ++n) m(n ^ t.x, n) += t.coeff * basis_phase(t, n);
  }
  return m;
}

Eigen::MatrixXd QubitHamiltonian::dense() const {
  PauliSum s;
  for (const auto& t : terms) s.add(t);
  Eigen::MatrixXcd m = s.dense(n_qubits);
  if (m.imag().cwiseAbs().maxCoeff() > 1e-10)
    throw ConsistencyError("qubit Hamiltonian matrix is not real");
  return m.real();
}

}  // namespace mifno
