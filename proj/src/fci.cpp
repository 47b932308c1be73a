#include "mifno/fci.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace mifno {

namespace {

std::vector<uint32_t> enumerate_strings(int n, int k) {
  std::vector<uint32_t> out;
  if (k < 0 || k > n) return out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  uint64_t v = (uint64_t(1) << k) - 1;
  const uint64_t limit = (uint64_t(1) << n) - 1;
  while (v <= limit) {
    out.push_back(static_cast<uint32_t>(v));
    // Gosper's hack: next k-bit combination
    uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
  }
  return out;
}

inline int count_below(uint64_t det, int pos) {
  return std::popcount(det & ((uint64_t(1) << pos) - 1));
}

// Occupied/virtual spin-orbital lists of an interleaved mask.
void occ_lists(uint64_t det, int nso, std::vector<int>& occ, std::vector<int>& vir) {
  occ.clear();
  vir.clear();
  for (int P = 0; P < nso; ++P)
    ((det >> P) & 1 ? occ : vir).push_back(P);
}

}  // namespace

uint64_t interleave_strings(uint32_t a, uint32_t b) {
  uint64_t d = 0;
  while (a) {
    int p = std::countr_zero(a);
    d |= uint64_t(1) << (2 * p);
    a &= a - 1;
  }
  while (b) {
    int p = std::countr_zero(b);
    d |= uint64_t(1) << (2 * p + 1);
    b &= b - 1;
  }
  return d;
}

uint64_t DeterminantSpace::interleaved(std::size_t ia, std::size_t ib) const {
  return interleave_strings(alpha_strings[ia], beta_strings[ib]);
}

DeterminantSpace make_determinant_space(int n_spatial, int n_alpha, int n_beta) {
  if (n_spatial < 0 || n_spatial > 32)
    throw CapacityError("determinant strings support up to 32 spatial orbitals");
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n_spatial || n_beta > n_spatial)
    throw InvalidOccupation("electron counts incompatible with active space");
  DeterminantSpace s;
  s.n_spatial = n_spatial;
  s.n_alpha = n_alpha;
  s.n_beta = n_beta;
  s.alpha_strings = enumerate_strings(n_spatial, n_alpha);
  s.beta_strings = enumerate_strings(n_spatial, n_beta);
  return s;
}

int phase_single(uint64_t det, int I, int A) {
  int lo = std::min(I, A), hi = std::max(I, A);
  uint64_t mask = ((uint64_t(1) << hi) - 1) & ~((uint64_t(1) << (lo + 1)) - 1);
  return (std::popcount(det & mask) & 1) ? -1 : 1;
}

int phase_double(uint64_t det, int I, int J, int A, int B) {
  // sign of a+_A a+_B a_J a_I |det>, applied right to left
  int sign = 1;
  uint64_t d = det;
  sign *= (count_below(d, I) & 1) ? -1 : 1;
  d &= ~(uint64_t(1) << I);
  sign *= (count_below(d, J) & 1) ? -1 : 1;
  d &= ~(uint64_t(1) << J);
  sign *= (count_below(d, B) & 1) ? -1 : 1;
  d |= uint64_t(1) << B;
  sign *= (count_below(d, A) & 1) ? -1 : 1;
  return sign;
}

std::vector<double> hamiltonian_diagonal(const ActiveSpaceHamiltonian& ham,
                                         const DeterminantSpace& space) {
  std::vector<double> diag(space.size());
  const int nso = 2 * space.n_spatial;
  std::vector<int> occ, vir;
  for (std::size_t ia = 0; ia < space.alpha_strings.size(); ++ia) {
    for (std::size_t ib = 0; ib < space.beta_strings.size(); ++ib) {
      uint64_t det = space.interleaved(ia, ib);
      occ_lists(det, nso, occ, vir);
      double e = ham.eff_core;
      for (int P : occ) e += ham.so_h1(P, P);
      for (int P : occ)
        for (int Q : occ) e += 0.5 * ham.so_antisym(P, Q, P, Q);
      diag[space.index(ia, ib)] = e;
    }
  }
  return diag;
}

namespace {

// Direct Slater-Condon sigma; fine for small spaces and the validation path.
void sigma_direct(const ActiveSpaceHamiltonian& ham, const DeterminantSpace& space,
                  const std::vector<double>& c, std::vector<double>& out) {
  const int nso = 2 * space.n_spatial;
  const std::size_t na = space.alpha_strings.size();
  const std::size_t nb = space.beta_strings.size();
  std::unordered_map<uint32_t, std::size_t> arank, brank;
  arank.reserve(na * 2);
  brank.reserve(nb * 2);
  for (std::size_t i = 0; i < na; ++i) arank[space.alpha_strings[i]] = i;
  for (std::size_t i = 0; i < nb; ++i) brank[space.beta_strings[i]] = i;

  const auto diag = hamiltonian_diagonal(ham, space);
  std::vector<int> occ, vir;
  for (std::size_t ia = 0; ia < na; ++ia) {
    for (std::size_t ib = 0; ib < nb; ++ib) {
      const std::size_t j = space.index(ia, ib);
      const double cj = c[j];
      if (cj == 0.0) continue;
      out[j] += diag[j] * cj;
      uint64_t det = space.interleaved(ia, ib);
      occ_lists(det, nso, occ, vir);

      auto dest_index = [&](uint64_t d) {
        uint32_t as = 0, bs = 0;
        uint64_t dd = d;
        while (dd) {
          int P = std::countr_zero(dd);
          if (P & 1)
            bs |= 1u << (P >> 1);
          else
            as |= 1u << (P >> 1);
          dd &= dd - 1;
        }
        return space.index(arank.at(as), brank.at(bs));
      };

      // singles (spin conserving)
      for (int I : occ) {
        for (int A : vir) {
          if ((I & 1) != (A & 1)) continue;
          double v = ham.so_h1(A, I);
          for (int P : occ) v += ham.so_antisym(A, P, I, P);
          if (std::abs(v) < 1e-15) continue;
          uint64_t d2 = (det & ~(uint64_t(1) << I)) | (uint64_t(1) << A);
          out[dest_index(d2)] += phase_single(det, I, A) * v * cj;
        }
      }
      // doubles (Sz conserving)
      for (std::size_t oi = 0; oi < occ.size(); ++oi) {
        for (std::size_t oj = oi + 1; oj < occ.size(); ++oj) {
          const int I = occ[oi], J = occ[oj];
          for (std::size_t va = 0; va < vir.size(); ++va) {
            for (std::size_t vb = va + 1; vb < vir.size(); ++vb) {
              const int A = vir[va], B = vir[vb];
              if (((I & 1) + (J & 1)) != ((A & 1) + (B & 1))) continue;
              const double v = ham.so_antisym(A, B, I, J);
              if (std::abs(v) < 1e-15) continue;
              uint64_t d2 = (det & ~(uint64_t(1) << I) & ~(uint64_t(1) << J)) |
                            (uint64_t(1) << A) | (uint64_t(1) << B);
              out[dest_index(d2)] += phase_double(det, I, J, A, B) * v * cj;
            }
          }
        }
      }
    }
  }
}

// --- String-driven sigma (Olsen-style), used for large spaces. -------------
//
// Internally works in the alpha-block gauge where same-spin phases factorize
// per string; the conversion to the public interleaved gauge is a diagonal
// sign flip applied on entry and exit.

struct SingleExc {
  uint32_t to;   // destination string rank
  int16_t p, q;  // E_pq label (q -> p), spatial
  int8_t sign;
};

// Single-excitation lists E_pq |str> for every string, including p == q.
std::vector<std::vector<SingleExc>> build_singles(const std::vector<uint32_t>& strings,
                                                  int n_spatial) {
  std::unordered_map<uint32_t, uint32_t> rank;
  rank.reserve(strings.size() * 2);
  for (std::size_t i = 0; i < strings.size(); ++i) rank[strings[i]] = i;
  std::vector<std::vector<SingleExc>> lists(strings.size());
  for (std::size_t k = 0; k < strings.size(); ++k) {
    const uint32_t s = strings[k];
    for (int q = 0; q < n_spatial; ++q) {
      if (!((s >> q) & 1)) continue;
      for (int p = 0; p < n_spatial; ++p) {
        if (p != q && ((s >> p) & 1)) continue;
        uint32_t t = (s & ~(1u << q)) | (1u << p);
        // phase within one spin string: bits strictly between p and q
        int lo = std::min(p, q), hi = std::max(p, q);
        uint32_t mask = ((1u << hi) - 1) & ~((1u << (lo + 1)) - 1);
        int sign = (std::popcount(s & mask) & 1) ? -1 : 1;
        lists[k].push_back({rank.at(t), static_cast<int16_t>(p), static_cast<int16_t>(q),
                            static_cast<int8_t>(sign)});
      }
    }
  }
  return lists;
}

// Sign converting a block-gauge determinant to the interleaved gauge:
// each occupied beta spatial k crosses the occupied alphas above k.
int block_to_interleaved_sign(uint32_t as, uint32_t bs) {
  int crossings = 0;
  uint32_t b = bs;
  while (b) {
    int k = std::countr_zero(b);
    crossings += std::popcount(as & ~((2u << k) - 1));
    b &= b - 1;
  }
  return (crossings & 1) ? -1 : 1;
}

class StringSigma {
 public:
  StringSigma(const ActiveSpaceHamiltonian& ham, const DeterminantSpace& space)
      : ham_(ham), space_(space) {
    const int n = ham.n_active;
    k1_ = Eigen::MatrixXd::Zero(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        double v = ham.eff_h1(p, q);
        for (int r = 0; r < n; ++r) v -= 0.5 * ham.eri(p, r, r, q);
        k1_(p, q) = v;
      }
    asing_ = build_singles(space.alpha_strings, n);
    bsing_ = build_singles(space.beta_strings, n);
    gauge_.resize(space.size());
    for (std::size_t ia = 0; ia < space.alpha_strings.size(); ++ia)
      for (std::size_t ib = 0; ib < space.beta_strings.size(); ++ib)
        gauge_[space.index(ia, ib)] =
            block_to_interleaved_sign(space.alpha_strings[ia], space.beta_strings[ib]);
  }

  void apply(const std::vector<double>& c_inter, std::vector<double>& out_inter) const {
    const std::size_t na = space_.alpha_strings.size();
    const std::size_t nb = space_.beta_strings.size();
    const std::size_t nd = na * nb;
    std::vector<double> c(nd), sig(nd, 0.0);
    for (std::size_t i = 0; i < nd; ++i) c[i] = gauge_[i] * c_inter[i];

    // core shift
    for (std::size_t i = 0; i < nd; ++i) sig[i] += ham_.eff_core * c[i];

    // sigma2: pure-alpha one- and two-body terms; rows are contiguous.
    same_spin_apply(asing_, nb, c, sig);

    // sigma1: pure-beta terms on the transposed layout.
    {
      std::vector<double> ct(nd), st(nd, 0.0);
      for (std::size_t ia = 0; ia < na; ++ia)
        for (std::size_t ib = 0; ib < nb; ++ib) ct[ib * na + ia] = c[ia * nb + ib];
      same_spin_apply(bsing_, na, ct, st);
      for (std::size_t ia = 0; ia < na; ++ia)
        for (std::size_t ib = 0; ib < nb; ++ib) sig[ia * nb + ib] += st[ib * na + ia];
    }

    // sigma3: alpha single x beta single, coefficient (pq|rs).
    const int n = ham_.n_active;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t ia = 0; ia < na; ++ia) {
      for (const auto& ea : asing_[ia]) {
        const double* crow = c.data() + std::size_t(ea.to) * nb;
        double* srow = sig.data() + ia * nb;
        const double* g = ham_.h2.data() +
                          (static_cast<std::size_t>(ea.p) * n + ea.q) * n * n;
        for (std::size_t ib = 0; ib < nb; ++ib) {
          double acc = 0.0;
          for (const auto& eb : bsing_[ib])
            acc += eb.sign * g[static_cast<std::size_t>(eb.p) * n + eb.q] * crow[eb.to];
          srow[ib] += ea.sign * acc;
        }
      }
    }

    for (std::size_t i = 0; i < nd; ++i) out_inter[i] += gauge_[i] * sig[i];
  }

 private:
  // Same-spin contribution: one-body k1 plus 1/2 (pq|rs) E_pq E_rs composed
  // from two single-excitation passes. `minor` is the length of the
  // contiguous other-spin dimension.
  void same_spin_apply(const std::vector<std::vector<SingleExc>>& singles, std::size_t minor,
                       const std::vector<double>& c, std::vector<double>& sig) const {
    const std::size_t nk = singles.size();
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < nk; ++k) {
      // F[k''] over destination strings from string k
      std::unordered_map<uint32_t, double> F;
      F.reserve(singles[k].size() * 4);
      for (const auto& e1 : singles[k]) {
        F[e1.to] += e1.sign * k1_(e1.p, e1.q);
        for (const auto& e2 : singles[e1.to]) {
          F[e2.to] += 0.5 * e1.sign * e2.sign * ham_.eri(e2.p, e2.q, e1.p, e1.q);
        }
      }
      double* srow = sig.data() + k * minor;
      for (const auto& [kpp, f] : F) {
        if (f == 0.0) continue;
        const double* crow = c.data() + std::size_t(kpp) * minor;
        for (std::size_t m = 0; m < minor; ++m) srow[m] += f * crow[m];
      }
    }
  }

  const ActiveSpaceHamiltonian& ham_;
  const DeterminantSpace& space_;
  Eigen::MatrixXd k1_;
  std::vector<std::vector<SingleExc>> asing_, bsing_;
  std::vector<int8_t> gauge_;
};

}  // namespace

std::vector<double> sigma_apply(const ActiveSpaceHamiltonian& ham,
                                const DeterminantSpace& space,
                                const std::vector<double>& c) {
  if (c.size() != space.size())
    throw ShapeError("coefficient vector length " + std::to_string(c.size()) +
                     " != determinant count " + std::to_string(space.size()));
  std::vector<double> out(c.size(), 0.0);
  if (space.size() < kDenseCutoff) {
    sigma_direct(ham, space, c, out);
  } else {
    StringSigma s(ham, space);
    s.apply(c, out);
  }
  return out;
}

std::vector<double> sigma_apply_direct(const ActiveSpaceHamiltonian& ham,
                                       const DeterminantSpace& space,
                                       const std::vector<double>& c) {
  if (c.size() != space.size()) throw ShapeError("coefficient vector length mismatch");
  std::vector<double> out(c.size(), 0.0);
  sigma_direct(ham, space, c, out);
  return out;
}

std::vector<double> sigma_apply_strings(const ActiveSpaceHamiltonian& ham,
                                        const DeterminantSpace& space,
                                        const std::vector<double>& c) {
  if (c.size() != space.size()) throw ShapeError("coefficient vector length mismatch");
  std::vector<double> out(c.size(), 0.0);
  StringSigma s(ham, space);
  s.apply(c, out);
  return out;
}

Eigen::MatrixXd dense_hamiltonian(const ActiveSpaceHamiltonian& ham,
                                  const DeterminantSpace& space) {
  const std::size_t nd = space.size();
  Eigen::MatrixXd H(nd, nd);
  std::vector<double> unit(nd, 0.0), col(nd);
  for (std::size_t j = 0; j < nd; ++j) {
    unit[j] = 1.0;
    col.assign(nd, 0.0);
    sigma_direct(ham, space, unit, col);
    for (std::size_t i = 0; i < nd; ++i) H(i, j) = col[i];
    unit[j] = 0.0;
  }
  return H;
}

FciResult davidson_generic(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
    const std::vector<double>& diagonal, const DavidsonConfig& cfg, std::ptrdiff_t seed_in) {
  const std::size_t n = diagonal.size();
  if (n == 0) throw ShapeError("empty space");
  if (cfg.max_subspace < 2 || cfg.tol <= 0) throw ConfigError("invalid Davidson config");

  const std::size_t seed =
      seed_in >= 0 && seed_in < static_cast<std::ptrdiff_t>(n)
          ? static_cast<std::size_t>(seed_in)
          : static_cast<std::size_t>(
                std::min_element(diagonal.begin(), diagonal.end()) - diagonal.begin());
  if (n == 1) {
    FciResult r;
    r.energy = diagonal[0];
    r.wavefunction = Eigen::VectorXd::Ones(1);
    return r;
  }

  std::vector<Eigen::VectorXd> V, HV;
  Eigen::VectorXd v0 = Eigen::VectorXd::Zero(n);
  v0(seed) = 1.0;
  V.push_back(v0);

  double best_residual = 1e30;
  double theta = diagonal[seed];
  Eigen::VectorXd x, r;
  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    while (HV.size() < V.size()) {
      Eigen::VectorXd hv = Eigen::VectorXd::Zero(n);
      apply(V[HV.size()], hv);
      HV.push_back(std::move(hv));
    }
    const int k = static_cast<int>(V.size());
    Eigen::MatrixXd T(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) T(i, j) = V[i].dot(HV[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (T + T.transpose()));
    theta = es.eigenvalues()(0);
    Eigen::VectorXd s = es.eigenvectors().col(0);
    x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd hx = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < k; ++i) {
      x += s(i) * V[i];
      hx += s(i) * HV[i];
    }
    r = hx - theta * x;
    const double rnorm = r.norm();
    best_residual = std::min(best_residual, rnorm);
    if (rnorm <= cfg.tol || static_cast<std::size_t>(k) >= n) {
      FciResult res;
      res.energy = theta;
      res.wavefunction = x;
      res.iterations = iter;
      if (rnorm > cfg.tol)
        throw ConvergenceError("Davidson stalled: subspace exhausted", rnorm);
      return res;
    }
    // preconditioned correction
    Eigen::VectorXd t(n);
    for (std::size_t i = 0; i < n; ++i) {
      double d = theta - diagonal[i];
      if (std::abs(d) < 1e-8) d = (d < 0 ? -1e-8 : 1e-8);
      t(i) = r(i) / d;
    }
    // restart: collapse to the current Ritz vector
    if (k + 1 > cfg.max_subspace) {
      V.clear();
      HV.clear();
      double xn = x.norm();
      V.push_back(x / xn);
      Eigen::VectorXd hxn = hx / xn;
      HV.push_back(hxn);
    }
    // orthogonalize twice against the basis
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : V) t -= v.dot(t) * v;
    double tn = t.norm();
    if (tn < 1e-12) {
      // deterministic fallback direction
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e(iter % n) = 1.0;
      for (const auto& v : V) e -= v.dot(e) * v;
      tn = e.norm();
      if (tn < 1e-12)
        throw ConvergenceError("Davidson could not expand subspace", best_residual);
      t = e;
    }
    V.push_back(t / tn);
  }
  throw ConvergenceError("Davidson did not converge in " + std::to_string(cfg.max_iter) +
                             " iterations",
                         best_residual);
}

FciResult davidson_lowest(const ActiveSpaceHamiltonian& ham, const DeterminantSpace& space,
                          const DavidsonConfig& cfg) {
  const std::size_t nd = space.size();
  if (nd == 0) throw ShapeError("empty determinant space");
  const auto diag = hamiltonian_diagonal(ham, space);
  if (nd < kDenseCutoff) {
    Eigen::MatrixXd H = dense_hamiltonian(ham, space);
    auto apply = [&H](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
      out.noalias() = H * in;
    };
    return davidson_generic(apply, diag, cfg, /*seed=*/0);  // HF determinant
  }
  StringSigma sig(ham, space);
  std::vector<double> cin(nd), cout(nd);
  auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
    for (std::size_t i = 0; i < nd; ++i) cin[i] = in(i);
    std::fill(cout.begin(), cout.end(), 0.0);
    sig.apply(cin, cout);
    for (std::size_t i = 0; i < nd; ++i) out(i) = cout[i];
  };
  return davidson_generic(apply, diag, cfg, /*seed=*/0);  // HF determinant
}

double solve_increment_fci(const ActiveSpaceHamiltonian& ham, const DavidsonConfig& cfg) {
  const auto space = make_determinant_space(ham.n_active, ham.n_occ, ham.n_occ);
  if (ham.n_active == ham.n_occ || space.size() == 1) return 0.0;
  const auto res = davidson_lowest(ham, space, cfg);
  return res.energy - ham.e_hf();
}

double s2_expectation(const DeterminantSpace& space, const Eigen::VectorXd& c) {
  if (static_cast<std::size_t>(c.size()) != space.size())
    throw ShapeError("CI vector does not match determinant space");
  const double sz = 0.5 * (space.n_alpha - space.n_beta);
  double s2 = sz * (sz + 1.0);
  if (space.n_beta == 0) return s2;
  // <S- S+> = |S+ psi|^2 in the raised sector
  auto raised = make_determinant_space(space.n_spatial, space.n_alpha + 1, space.n_beta - 1);
  std::unordered_map<uint32_t, std::size_t> ar, br;
  for (std::size_t i = 0; i < raised.alpha_strings.size(); ++i) ar[raised.alpha_strings[i]] = i;
  for (std::size_t i = 0; i < raised.beta_strings.size(); ++i) br[raised.beta_strings[i]] = i;
  std::vector<double> w(raised.size(), 0.0);
  for (std::size_t ia = 0; ia < space.alpha_strings.size(); ++ia) {
    for (std::size_t ib = 0; ib < space.beta_strings.size(); ++ib) {
      const double amp = c(space.index(ia, ib));
      if (amp == 0.0) continue;
      const uint64_t det = space.interleaved(ia, ib);
      const uint32_t as = space.alpha_strings[ia], bs = space.beta_strings[ib];
      for (int p = 0; p < space.n_spatial; ++p) {
        if (!((bs >> p) & 1) || ((as >> p) & 1)) continue;
        // a+_{p alpha} a_{p beta}: adjacent interleaved positions 2p, 2p+1
        int sign = phase_single(det, so::beta(p), so::alpha(p));
        uint32_t as2 = as | (1u << p), bs2 = bs & ~(1u << p);
        w[raised.index(ar.at(as2), br.at(bs2))] += sign * amp;
      }
    }
  }
  double nrm2 = 0.0;
  for (double v : w) nrm2 += v * v;
  return s2 + nrm2;
}

}  // namespace mifno
