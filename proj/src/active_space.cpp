#include "mifno/active_space.hpp"

#include <algorithm>
#include <set>

namespace mifno {

std::vector<int> ActiveSpaceHamiltonian::active_spin_orbitals() const {
  std::vector<int> out;
  for (int k = 0; k < n_active; ++k) {
    if (parent_spatial[k] < 0) continue;
    out.push_back(so::alpha(parent_spatial[k]));
    out.push_back(so::beta(parent_spatial[k]));
  }
  return out;
}

std::vector<int> ActiveSpaceHamiltonian::occupied_spin() const {
  std::vector<int> out;
  for (int k = 0; k < n_occ; ++k) {
    out.push_back(so::alpha(k));
    out.push_back(so::beta(k));
  }
  return out;
}

std::vector<int> ActiveSpaceHamiltonian::virtual_spin() const {
  std::vector<int> out;
  for (int k = n_occ; k < n_active; ++k) {
    out.push_back(so::alpha(k));
    out.push_back(so::beta(k));
  }
  return out;
}

double ActiveSpaceHamiltonian::e_hf() const {
  double e = eff_core;
  const auto occ = occupied_spin();
  for (int I : occ) e += so_h1(I, I);
  for (int I : occ)
    for (int J : occ) e += 0.5 * so_antisym(I, J, I, J);
  return e;
}

Eigen::MatrixXd ActiveSpaceHamiltonian::fock() const {
  const int nso = n_spin();
  const auto occ = occupied_spin();
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(nso, nso);
  for (int P = 0; P < nso; ++P)
    for (int Q = P; Q < nso; ++Q) {
      double v = so_h1(P, Q);
      for (int I : occ) v += so_antisym(P, I, Q, I);
      f(P, Q) = v;
      f(Q, P) = v;
    }
  return f;
}

std::vector<double> ActiveSpaceHamiltonian::fock_diagonal() const {
  const int nso = n_spin();
  const auto occ = occupied_spin();
  std::vector<double> d(nso);
  for (int P = 0; P < nso; ++P) {
    double v = so_h1(P, P);
    for (int I : occ) v += so_antisym(P, I, P, I);
    d[P] = v;
  }
  return d;
}

namespace {

// Validates spin pairing and returns the sorted spatial indices of a
// spin-orbital set.
std::vector<int> paired_spatials(const std::vector<int>& spins, const char* what) {
  std::set<int> seen(spins.begin(), spins.end());
  if (seen.size() != spins.size())
    throw InvalidPartition(std::string(what) + " contains duplicate spin orbitals");
  std::vector<int> spatials;
  for (int P : spins) {
    int partner = P ^ 1;
    if (!seen.count(partner))
      throw InvalidPartition(std::string(what) +
                             " must be spin-paired (alpha/beta of each spatial together)");
    if (so::spin(P) == 0) spatials.push_back(so::spatial(P));
  }
  std::sort(spatials.begin(), spatials.end());
  return spatials;
}

}  // namespace

ActiveSpaceHamiltonian fold_frozen(const IntegralStore& store,
                                   const std::vector<int>& frozen_occ,
                                   const std::vector<int>& active) {
  for (int P : frozen_occ)
    if (P < 0 || P >= store.n_spin()) throw IndexError("frozen spin orbital out of range");
  for (int P : active)
    if (P < 0 || P >= store.n_spin()) throw IndexError("active spin orbital out of range");

  std::set<int> frozen_set(frozen_occ.begin(), frozen_occ.end());
  for (int P : active)
    if (frozen_set.count(P))
      throw InvalidPartition("frozen and active spin orbitals overlap at " + std::to_string(P));

  const auto frozen_sp = paired_spatials(frozen_occ, "frozen set");
  const auto active_sp = paired_spatials(active, "active list");

  // Coverage: frozen + active-occupied must equal the reference occupation.
  std::set<int> occ_ref;
  for (int I : store.reference_occupied()) occ_ref.insert(I);
  std::set<int> covered(frozen_occ.begin(), frozen_occ.end());
  for (int P : active)
    if (occ_ref.count(P)) covered.insert(P);
  for (int I : occ_ref)
    if (!covered.count(I))
      throw InvalidPartition("occupied spin orbital " + std::to_string(I) +
                             " neither frozen nor active");
  for (int P : frozen_occ)
    if (!occ_ref.count(P))
      throw InvalidPartition("frozen spin orbital " + std::to_string(P) + " is not occupied");

  // Canonical active layout: occupied spatials first, then virtuals, ascending.
  std::set<int> occ_spatial_ref;
  for (int I : store.reference_occupied())
    if (so::spin(I) == 0) occ_spatial_ref.insert(so::spatial(I));
  std::vector<int> layout;
  for (int p : active_sp)
    if (occ_spatial_ref.count(p)) layout.push_back(p);
  const int n_occ_act = static_cast<int>(layout.size());
  for (int p : active_sp)
    if (!occ_spatial_ref.count(p)) layout.push_back(p);

  ActiveSpaceHamiltonian ham;
  ham.n_active = static_cast<int>(layout.size());
  ham.n_occ = n_occ_act;
  ham.parent_spatial = layout;

  // eff_core = core + sum_I h_II + 1/2 sum_IJ <IJ||IJ> over frozen spins.
  double ec = store.core_energy();
  for (int I : frozen_occ) ec += store.so_h1(I, I);
  for (int I : frozen_occ)
    for (int J : frozen_occ) ec += 0.5 * antisym_eri(store, I, J, I, J);
  ham.eff_core = ec;

  // eff_h1_PQ = h_PQ + sum_I <PI||QI>; spin-paired frozen sets make the
  // alpha and beta blocks identical, so one spatial matrix suffices.
  const int n = ham.n_active;
  ham.eff_h1 = Eigen::MatrixXd::Zero(n, n);
  for (int kp = 0; kp < n; ++kp)
    for (int kq = 0; kq <= kp; ++kq) {
      int P = so::alpha(layout[kp]), Q = so::alpha(layout[kq]);
      double v = store.so_h1(P, Q);
      for (int I : frozen_occ) v += antisym_eri(store, P, I, Q, I);
      ham.eff_h1(kp, kq) = v;
      ham.eff_h1(kq, kp) = v;
    }

  ham.h2.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          ham.eri_ref(p, q, r, s) = store.eri(layout[p], layout[q], layout[r], layout[s]);
  return ham;
}

ActiveSpaceHamiltonian make_increment_space(const IntegralStore& store,
                                            const std::vector<int>& occ_subset) {
  const int n_occ_sp = store.n_electrons() / 2;
  std::set<int> subset(occ_subset.begin(), occ_subset.end());
  for (int p : occ_subset)
    if (p < 0 || p >= n_occ_sp)
      throw IndexError("occupied spatial index out of range: " + std::to_string(p));
  std::vector<int> frozen, active;
  for (int p = 0; p < n_occ_sp; ++p) {
    if (!subset.count(p)) {
      frozen.push_back(so::alpha(p));
      frozen.push_back(so::beta(p));
    } else {
      active.push_back(so::alpha(p));
      active.push_back(so::beta(p));
    }
  }
  for (int p = n_occ_sp; p < store.n_spatial(); ++p) {
    active.push_back(so::alpha(p));
    active.push_back(so::beta(p));
  }
  return fold_frozen(store, frozen, active);
}

}  // namespace mifno
