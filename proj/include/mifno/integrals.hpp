#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mifno/errors.hpp"

namespace mifno {

// Spin orbitals are interleaved by ascending spatial index:
// spatial p -> alpha = 2p, beta = 2p+1.
namespace so {
inline int spatial(int P) { return P >> 1; }
inline int spin(int P) { return P & 1; }
inline int alpha(int p) { return 2 * p; }
inline int beta(int p) { return 2 * p + 1; }
}  // namespace so

// Spatial-orbital one-/two-electron integrals in chemists' notation (pq|rs),
// stored dense with full 8-fold symmetry expanded at parse time.
// Immutable after construction; all accessors are pure reads.
class IntegralStore {
 public:
  // Dense storage cutoff. Desk-scale systems (<= ~34 spatial orbitals) are
  // far below it; n^4 doubles at 64 orbitals is ~134 MB.
  static constexpr int kMaxSpatial = 64;

  IntegralStore(int n_spatial, int n_electrons, double core_energy);

  int n_spatial() const { return n_; }
  int n_spin() const { return 2 * n_; }
  int n_electrons() const { return nelec_; }
  int ms2() const { return ms2_; }
  void set_ms2(int m) { ms2_ = m; }
  double core_energy() const { return core_; }
  void set_core_energy(double e) { core_ = e; }

  double h1(int p, int q) const { return h1_[p * n_ + q]; }
  // (pq|rs), chemists' notation.
  double eri(int p, int q, int r, int s) const {
    return h2_[((static_cast<std::size_t>(p) * n_ + q) * n_ + r) * n_ + s];
  }

  // Setters expand the full permutational symmetry.
  void set_h1(int p, int q, double v);
  void set_eri(int p, int q, int r, int s, double v);

  // Spin-orbital views (interleaved indices in [0, 2 n_spatial)).
  // <PQ|RS> = (p r|q s) when spins match pairwise (P,R) and (Q,S), else 0.
  double so_coulomb(int P, int Q, int R, int S) const {
    double v = 0.0;
    if (so::spin(P) == so::spin(R) && so::spin(Q) == so::spin(S))
      v = eri(so::spatial(P), so::spatial(R), so::spatial(Q), so::spatial(S));
    return v;
  }
  double so_h1(int P, int Q) const {
    return so::spin(P) == so::spin(Q) ? h1(so::spatial(P), so::spatial(Q)) : 0.0;
  }

  const std::vector<int>& orbsym() const { return orbsym_; }
  std::vector<int>& orbsym() { return orbsym_; }

  // Occupied spin orbitals of the aufbau closed-shell reference.
  std::vector<int> reference_occupied() const;

  void check_index(int p) const {
    if (p < 0 || p >= n_) throw IndexError("orbital index out of range: " + std::to_string(p));
  }

 private:
  int n_;
  int nelec_;
  int ms2_ = 0;
  double core_;
  std::vector<double> h1_;
  std::vector<double> h2_;
  std::vector<int> orbsym_;
};

// Antisymmetrized spin-orbital integral <PQ||RS> = <PQ|RS> - <PQ|SR>
// (physicists' notation).
double antisym_eri(const IntegralStore& store, int P, int Q, int R, int S);

// Spin-orbital Fock matrix for a given occupied set,
// f_PQ = h_PQ + sum_I <PI||QI>, plus the Hartree-Fock energy of that set.
struct FockMatrix {
  Eigen::MatrixXd f;             // (2n x 2n)
  std::vector<double> diagonal;  // cached f_PP
  double e_hf = 0.0;
};

FockMatrix build_fock(const IntegralStore& store, const std::vector<int>& occupied);

// --- FCIDUMP I/O (Molpro convention, 1-based indices) ---------------------

IntegralStore parse_fcidump(std::istream& in);
IntegralStore parse_fcidump_file(const std::string& path);
void write_fcidump(const IntegralStore& store, std::ostream& out);
std::string fcidump_string(const IntegralStore& store);

}  // namespace mifno
