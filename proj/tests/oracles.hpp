#pragma once

// Test-only reference implementations, kept independent of the library's
// Slater-Condon machinery: Hamiltonians are built by literally applying
// second-quantized operator strings to occupation masks.

#include <Eigen/Dense>
#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "mifno/active_space.hpp"
#include "mifno/fci.hpp"
#include "mifno/integrals.hpp"

namespace oracle {

struct OpResult {
  int sign = 1;
  uint64_t det = 0;
  bool ok = false;
};

inline OpResult annihilate(uint64_t d, int P) {
  OpResult r;
  uint64_t bit = uint64_t(1) << P;
  if (!(d & bit)) return r;
  r.sign = (std::popcount(d & (bit - 1)) & 1) ? -1 : 1;
  r.det = d & ~bit;
  r.ok = true;
  return r;
}

inline OpResult create(uint64_t d, int P) {
  OpResult r;
  uint64_t bit = uint64_t(1) << P;
  if (d & bit) return r;
  r.sign = (std::popcount(d & (bit - 1)) & 1) ? -1 : 1;
  r.det = d | bit;
  r.ok = true;
  return r;
}

// <det'| a+_P a_Q |det>, accumulated into a column map.
inline void add_one_body(std::map<uint64_t, double>& col, uint64_t det, int P, int Q,
                         double coeff) {
  auto a = annihilate(det, Q);
  if (!a.ok) return;
  auto c = create(a.det, P);
  if (!c.ok) return;
  col[c.det] += coeff * a.sign * c.sign;
}

// <det'| a+_P a+_Q a_S a_R |det>
inline void add_two_body(std::map<uint64_t, double>& col, uint64_t det, int P, int Q, int R,
                         int S, double coeff) {
  auto a1 = annihilate(det, R);
  if (!a1.ok) return;
  auto a2 = annihilate(a1.det, S);
  if (!a2.ok) return;
  auto c1 = create(a2.det, Q);
  if (!c1.ok) return;
  auto c2 = create(c1.det, P);
  if (!c2.ok) return;
  col[c2.det] += coeff * a1.sign * a2.sign * c1.sign * c2.sign;
}

// Dense Hamiltonian over an explicit determinant list by operator application:
// H = core + sum h_PQ a+_P a_Q + 1/4 sum <PQ||RS> a+_P a+_Q a_S a_R.
template <typename H1, typename Anti>
Eigen::MatrixXd dense_from_ops(const std::vector<uint64_t>& dets, int nso, double core,
                               H1 h1, Anti anti) {
  std::map<uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < dets.size(); ++i) index[dets[i]] = i;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dets.size(), dets.size());
  for (std::size_t j = 0; j < dets.size(); ++j) {
    std::map<uint64_t, double> col;
    for (int P = 0; P < nso; ++P)
      for (int Q = 0; Q < nso; ++Q) {
        double v = h1(P, Q);
        if (v != 0.0) add_one_body(col, dets[j], P, Q, v);
      }
    for (int P = 0; P < nso; ++P)
      for (int Q = 0; Q < nso; ++Q)
        for (int R = 0; R < nso; ++R)
          for (int S = 0; S < nso; ++S) {
            double v = anti(P, Q, R, S);
            if (v != 0.0) add_two_body(col, dets[j], P, Q, R, S, 0.25 * v);
          }
    for (const auto& [d, v] : col) {
      auto it = index.find(d);
      if (it != index.end()) H(it->second, j) += v;
    }
  }
  H += core * Eigen::MatrixXd::Identity(dets.size(), dets.size());
  return H;
}

inline Eigen::MatrixXd dense_hamiltonian(const mifno::ActiveSpaceHamiltonian& ham,
                                         const mifno::DeterminantSpace& space) {
  std::vector<uint64_t> dets;
  for (std::size_t ia = 0; ia < space.alpha_strings.size(); ++ia)
    for (std::size_t ib = 0; ib < space.beta_strings.size(); ++ib)
      dets.push_back(space.interleaved(ia, ib));
  return dense_from_ops(
      dets, 2 * space.n_spatial, ham.eff_core,
      [&](int P, int Q) { return ham.so_h1(P, Q); },
      [&](int P, int Q, int R, int S) { return ham.so_antisym(P, Q, R, S); });
}

// Frozen-core FCI on the raw integral store: the frozen spin orbitals stay
// occupied in every determinant.
inline double frozen_core_fci(const mifno::IntegralStore& store,
                              const std::vector<int>& frozen_spin) {
  namespace so = mifno::so;
  uint64_t fmask = 0;
  for (int P : frozen_spin) fmask |= uint64_t(1) << P;
  const int n_sp = store.n_spatial();
  int na = 0, nb = 0;
  for (int I : store.reference_occupied())
    (so::spin(I) == 0 ? na : nb)++;
  int fa = 0, fb = 0;
  for (int P : frozen_spin) (so::spin(P) == 0 ? fa : fb)++;
  // enumerate active alpha/beta choices over non-frozen spatials
  std::vector<int> free_sp;
  for (int p = 0; p < n_sp; ++p)
    if (!((fmask >> so::alpha(p)) & 1)) free_sp.push_back(p);
  std::vector<uint64_t> dets;
  const int ka = na - fa, kb = nb - fb;
  const int m = static_cast<int>(free_sp.size());
  for (uint32_t sa = 0; sa < (1u << m); ++sa) {
    if (std::popcount(sa) != ka) continue;
    for (uint32_t sb = 0; sb < (1u << m); ++sb) {
      if (std::popcount(sb) != kb) continue;
      uint64_t d = fmask;
      for (int i = 0; i < m; ++i) {
        if ((sa >> i) & 1) d |= uint64_t(1) << so::alpha(free_sp[i]);
        if ((sb >> i) & 1) d |= uint64_t(1) << so::beta(free_sp[i]);
      }
      dets.push_back(d);
    }
  }
  Eigen::MatrixXd H = dense_from_ops(
      dets, store.n_spin(), store.core_energy(),
      [&](int P, int Q) { return store.so_h1(P, Q); },
      [&](int P, int Q, int R, int S) { return mifno::antisym_eri(store, P, Q, R, S); });
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  return es.eigenvalues()(0);
}

// Random Hermitian integral store with full 8-fold symmetry.
inline mifno::IntegralStore random_store(int n, int nelec, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  mifno::IntegralStore store(n, nelec, u(rng));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) store.set_h1(p, q, u(rng) - (p == q ? 2.0 * (n - p) : 0.0));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r) {
        int smax = (r == p) ? q : r;
        for (int s = 0; s <= smax; ++s) store.set_eri(p, q, r, s, 0.1 * u(rng));
      }
  return store;
}

}  // namespace oracle
