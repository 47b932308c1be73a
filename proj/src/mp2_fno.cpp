#include "mifno/mp2_fno.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mifno {

namespace {

constexpr double kDegenTol = 1e-8;

void check_spaces(const ActiveSpaceHamiltonian& ham, const std::vector<int>& occ,
                  const std::vector<int>& virt) {
  for (int P : occ)
    if (P < 0 || P >= ham.n_spin()) throw IndexError("occupied spin orbital out of range");
  for (int P : virt)
    if (P < 0 || P >= ham.n_spin()) throw IndexError("virtual spin orbital out of range");
}

}  // namespace

Eigen::MatrixXd spatial_fock(const ActiveSpaceHamiltonian& ham) {
  const int n = ham.n_active;
  Eigen::MatrixXd f = ham.eff_h1;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      double v = 0.0;
      for (int i = 0; i < ham.n_occ; ++i)
        v += 2.0 * ham.eri(p, q, i, i) - ham.eri(p, i, i, q);
      f(p, q) += v;
    }
  return f;
}

Mp2Result mp2_energy(const ActiveSpaceHamiltonian& ham, const std::vector<int>& occ,
                     const std::vector<int>& virt) {
  check_spaces(ham, occ, virt);
  const auto fdiag = ham.fock_diagonal();
  Mp2Result out;
  double total = 0.0;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    for (std::size_t j = i + 1; j < occ.size(); ++j) {
      const int I = occ[i], J = occ[j];
      double pair = 0.0;
      for (std::size_t a = 0; a < virt.size(); ++a) {
        for (std::size_t b = a + 1; b < virt.size(); ++b) {
          const int A = virt[a], B = virt[b];
          const double num = ham.so_antisym(I, J, A, B);
          const double eps = fdiag[I] + fdiag[J] - fdiag[A] - fdiag[B];
          if (std::abs(eps) < kDegenTol) {
            if (std::abs(num) > 1e-12)
              throw DegeneracyError("vanishing MBPT denominator for a coupled quadruple");
            continue;
          }
          pair += num * num / eps;
        }
      }
      out.pair_energies[{I, J}] = pair;
      total += pair;
    }
  }
  out.e2 = total;
  return out;
}

Mp2Result mp2_energy(const ActiveSpaceHamiltonian& ham) {
  return mp2_energy(ham, ham.occupied_spin(), ham.virtual_spin());
}

VvDensityBlock vv_density(const ActiveSpaceHamiltonian& ham, const std::vector<int>& occ,
                          const std::vector<int>& virt) {
  check_spaces(ham, occ, virt);
  const auto fdiag = ham.fock_diagonal();
  const int nv = static_cast<int>(virt.size());
  VvDensityBlock out;
  out.virt = virt;
  out.occupied_context = occ;
  out.d = Eigen::MatrixXd::Zero(nv, nv);

  auto denom = [&](int C, int X, int I, int J) -> double {
    const double eps = fdiag[I] + fdiag[J] - fdiag[C] - fdiag[X];
    return eps;
  };

  for (int a = 0; a < nv; ++a) {
    for (int b = a; b < nv; ++b) {
      const int A = virt[a], B = virt[b];
      double v = 0.0;
      for (int c = 0; c < nv; ++c) {
        const int C = virt[c];
        for (std::size_t i = 0; i < occ.size(); ++i) {
          for (std::size_t j = 0; j < occ.size(); ++j) {
            const int I = occ[i], J = occ[j];
            const double num1 = ham.so_antisym(C, B, I, J);
            const double num2 = ham.so_antisym(I, J, C, A);
            if (num1 == 0.0 || num2 == 0.0) continue;
            const double e1 = denom(C, B, I, J);
            const double e2 = denom(C, A, I, J);
            if (std::abs(e1) < kDegenTol || std::abs(e2) < kDegenTol)
              throw DegeneracyError("vanishing MBPT denominator in the vv density");
            v += 0.5 * num1 * num2 / (e1 * e2);
          }
        }
      }
      out.d(a, b) = v;
      out.d(b, a) = v;
    }
  }
  return out;
}

VvDensityBlock vv_density(const ActiveSpaceHamiltonian& ham) {
  return vv_density(ham, ham.occupied_spin(), ham.virtual_spin());
}

namespace {

// Deterministic eigenvector gauge: largest-magnitude component positive.
void fix_gauge(Eigen::MatrixXd& u) {
  for (int c = 0; c < u.cols(); ++c) {
    int imax = 0;
    for (int r = 1; r < u.rows(); ++r)
      if (std::abs(u(r, c)) > std::abs(u(imax, c))) imax = r;
    if (u(imax, c) < 0.0) u.col(c) = -u.col(c);
  }
}

}  // namespace

FnoSubspace fno_decompose(const VvDensityBlock& block) {
  const int nso = static_cast<int>(block.virt.size());
  if (block.d.rows() != nso || block.d.cols() != nso)
    throw ShapeError("density dimension does not match its virtual list");
  if ((block.d - block.d.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw ConsistencyError("vv density is not symmetric");
  if (nso % 2 != 0) throw InvalidPartition("virtual space must be spin-paired");
  const int nv = nso / 2;

  // Spin blocks: even rows/cols alpha, odd beta; cross blocks vanish and the
  // two diagonal blocks coincide for a spin-restricted reference.
  Eigen::MatrixXd daa(nv, nv), dbb(nv, nv), dab(nv, nv);
  for (int a = 0; a < nv; ++a)
    for (int b = 0; b < nv; ++b) {
      daa(a, b) = block.d(2 * a, 2 * b);
      dbb(a, b) = block.d(2 * a + 1, 2 * b + 1);
      dab(a, b) = block.d(2 * a, 2 * b + 1);
    }
  if (dab.cwiseAbs().maxCoeff() > 1e-12)
    throw ConsistencyError("vv density couples alpha and beta virtuals");
  if ((daa - dbb).cwiseAbs().maxCoeff() > 1e-10)
    throw ConsistencyError("vv density is not spin-restricted");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(daa);
  Eigen::VectorXd ev = es.eigenvalues();
  Eigen::MatrixXd vec = es.eigenvectors();
  for (int i = 0; i < nv; ++i) {
    if (ev(i) < -1e-10) throw ConsistencyError("vv density has a negative eigenvalue");
    if (ev(i) > 2.0 + 1e-10) throw ConsistencyError("vv density eigenvalue exceeds 2");
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  // descending order with stable ties (ascending solver index)
  std::vector<int> order(nv);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return ev(x) > ev(y); });

  FnoSubspace s;
  s.eigenvalues.resize(nv);
  s.u.resize(nv, nv);
  for (int i = 0; i < nv; ++i) {
    s.eigenvalues(i) = ev(order[i]);
    s.u.col(i) = vec.col(order[i]);
  }
  fix_gauge(s.u);
  s.kept = nv;
  s.occupancy_fraction = 1.0;
  return s;
}

FnoSubspace fno_truncate(const FnoSubspace& s, const FnoPolicy& policy) {
  const int nv = s.dim();
  FnoSubspace out = s;
  const double total = s.eigenvalues.sum();
  int kept = 0;
  if (policy.kind == FnoPolicy::Kind::occupancy) {
    const double tau = policy.occupancy;
    if (!(tau > 0.0) || tau > 1.0) throw PolicyError("occupancy fraction must be in (0, 1]");
    if (total <= 1e-300) {
      kept = nv;  // no occupation to rank on
    } else {
      double acc = 0.0;
      while (kept < nv && acc / total < tau - 1e-14) {
        acc += s.eigenvalues(kept);
        ++kept;
      }
    }
  } else {
    if (policy.keep_count < 0 || policy.keep_count > nv)
      throw PolicyError("keep_count outside [0, " + std::to_string(nv) + "]");
    kept = policy.keep_count;
  }
  out.kept = kept;
  out.occupancy_fraction =
      (kept == nv) ? 1.0 : (total <= 1e-300 ? 1.0 : s.eigenvalues.head(kept).sum() / total);
  return out;
}

ActiveSpaceHamiltonian transform_virtuals(const ActiveSpaceHamiltonian& ham,
                                          const FnoSubspace& s) {
  const int n = ham.n_active;
  const int no = ham.n_occ;
  const int nv = n - no;
  if (s.dim() != nv) throw ShapeError("FNO subspace does not match the virtual space");
  if (s.kept > nv) throw ShapeError("kept count exceeds the virtual dimension");
  if ((s.u.transpose() * s.u - Eigen::MatrixXd::Identity(nv, nv)).cwiseAbs().maxCoeff() > 1e-10)
    throw ConsistencyError("FNO transform is not column-orthogonal");

  Eigen::MatrixXd b = s.u.leftCols(s.kept);

  // Semicanonicalize: diagonalize the virtual-virtual Fock block within the
  // kept FNO space.
  Eigen::MatrixXd c = b;
  if (s.kept > 0) {
    const Eigen::MatrixXd f = spatial_fock(ham);
    const Eigen::MatrixXd fvv = f.block(no, no, nv, nv);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.transpose() * fvv * b);
    Eigen::MatrixXd z = es.eigenvectors();
    fix_gauge(z);
    c = b * z;
  }

  const int n2 = no + s.kept;
  // Combined orbital mixing: occupied identity, virtuals -> kept FNOs.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n2);
  for (int i = 0; i < no; ++i) m(i, i) = 1.0;
  m.block(no, no, nv, s.kept) = c;

  ActiveSpaceHamiltonian out;
  out.n_active = n2;
  out.n_occ = no;
  out.eff_core = ham.eff_core;
  out.eff_h1 = m.transpose() * ham.eff_h1 * m;
  out.parent_spatial.assign(n2, -1);
  for (int i = 0; i < no; ++i) out.parent_spatial[i] = ham.parent_spatial[i];

  // quarter transforms of (pq|rs)
  const auto idx = [](int a, int b, int c2, int d, int nb, int nc, int nd) {
    return ((static_cast<std::size_t>(a) * nb + b) * nc + c2) * nd + d;
  };
  std::vector<double> t1(static_cast<std::size_t>(n2) * n * n * n, 0.0);
  for (int P = 0; P < n2; ++P)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int t = 0; t < n; ++t) {
          double acc = 0.0;
          for (int p = 0; p < n; ++p) acc += m(p, P) * ham.eri(p, q, r, t);
          t1[idx(P, q, r, t, n, n, n)] = acc;
        }
  std::vector<double> t2(static_cast<std::size_t>(n2) * n2 * n * n, 0.0);
  for (int P = 0; P < n2; ++P)
    for (int Q = 0; Q < n2; ++Q)
      for (int r = 0; r < n; ++r)
        for (int t = 0; t < n; ++t) {
          double acc = 0.0;
          for (int q = 0; q < n; ++q) acc += m(q, Q) * t1[idx(P, q, r, t, n, n, n)];
          t2[idx(P, Q, r, t, n2, n, n)] = acc;
        }
  std::vector<double> t3(static_cast<std::size_t>(n2) * n2 * n2 * n, 0.0);
  for (int P = 0; P < n2; ++P)
    for (int Q = 0; Q < n2; ++Q)
      for (int R = 0; R < n2; ++R)
        for (int t = 0; t < n; ++t) {
          double acc = 0.0;
          for (int r = 0; r < n; ++r) acc += m(r, R) * t2[idx(P, Q, r, t, n2, n, n)];
          t3[idx(P, Q, R, t, n2, n2, n)] = acc;
        }
  out.h2.assign(static_cast<std::size_t>(n2) * n2 * n2 * n2, 0.0);
  for (int P = 0; P < n2; ++P)
    for (int Q = 0; Q < n2; ++Q)
      for (int R = 0; R < n2; ++R)
        for (int S = 0; S < n2; ++S) {
          double acc = 0.0;
          for (int t = 0; t < n; ++t) acc += m(t, S) * t3[idx(P, Q, R, t, n2, n2, n)];
          out.eri_ref(P, Q, R, S) = acc;
        }
  return out;
}

double delta_mp2(const ActiveSpaceHamiltonian& ham_full,
                 const ActiveSpaceHamiltonian& ham_truncated) {
  if (ham_full.n_occ != ham_truncated.n_occ)
    throw InvalidPartition("delta-MBPT(2) requires a shared occupied space");
  const double e_mo = mp2_energy(ham_full).e2;
  const double e_fno = mp2_energy(ham_truncated).e2;
  return e_mo - e_fno;
}

}  // namespace mifno
