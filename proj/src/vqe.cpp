#include "mifno/vqe.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "mifno/jordan_wigner.hpp"
#include "mifno/statevector.hpp"

namespace mifno {

namespace {

constexpr std::size_t kDenseSectorLimit = 4096;

// Brent minimization of g on a bracket (a < b < c with g(b) below both ends).
double brent(const std::function<double(double)>& g, double ax, double bx, double cx,
             double fbx, long& evals, long max_evals, double& fmin) {
  const double gold = 0.3819660112501051;
  const double tol = 1e-8;
  double a = std::min(ax, cx), b = std::max(ax, cx);
  double x = bx, w = bx, v = bx;
  double fx = fbx, fw = fbx, fv = fbx;
  double d = 0.0, e = 0.0;
  for (int it = 0; it < 60 && evals < max_evals; ++it) {
    const double xm = 0.5 * (a + b);
    const double tol1 = tol * std::abs(x) + 1e-12;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    bool golden = true;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etmp = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * etmp) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (xm - x >= 0 ? tol1 : -tol1);
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm ? a - x : b - x);
      d = gold * e;
    }
    const double u = (std::abs(d) >= tol1 ? x + d : x + (d >= 0 ? tol1 : -tol1));
    const double fu = g(u);
    ++evals;
    if (fu <= fx) {
      if (u >= x)
        a = x;
      else
        b = x;
      v = w;
      w = x;
      x = u;
      fv = fw;
      fw = fx;
      fx = fu;
    } else {
      if (u < x)
        a = u;
      else
        b = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  fmin = fx;
  return x;
}

// Minimize f along x + alpha*dir; updates x and fx.
void line_minimize(const std::function<double(const Eigen::VectorXd&)>& f, Eigen::VectorXd& x,
                   const Eigen::VectorXd& dir, double& fx, long& evals, long max_evals) {
  auto g = [&](double alpha) { return f(x + alpha * dir); };
  // bracket the minimum around alpha = 0
  double a = 0.0, fa = fx;
  double b = 1.0, fb = g(b);
  ++evals;
  if (fb > fa) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = b + 1.618033988749895 * (b - a);
  double fc = g(c);
  ++evals;
  int guard = 0;
  while (fc < fb && ++guard < 60 && evals < max_evals) {
    a = b;
    fa = fb;
    b = c;
    fb = fc;
    c = b + 1.618033988749895 * (b - a);
    fc = g(c);
    ++evals;
  }
  if (fc < fb) {  // ran out of budget while still descending
    x += c * dir;
    fx = fc;
    return;
  }
  double fmin = fb;
  const double alpha = brent(g, a, b, c, fb, evals, max_evals, fmin);
  if (fmin < fx) {
    x += alpha * dir;
    fx = fmin;
  }
}

}  // namespace

OptimizerResult minimize_powell(const std::function<double(const Eigen::VectorXd&)>& f,
                                const Eigen::VectorXd& x0, const OptimizerConfig& cfg) {
  if (cfg.ftol <= 0 || cfg.initial_step <= 0) throw ConfigError("invalid optimizer settings");
  const int n = static_cast<int>(x0.size());
  OptimizerResult res;
  res.x = x0;
  res.f = f(res.x);
  res.evals = 1;
  if (n == 0) {
    res.converged = true;
    return res;
  }
  Eigen::MatrixXd dirs = Eigen::MatrixXd::Identity(n, n) * cfg.initial_step;
  int quiet_sweeps = 0;
  while (res.evals < cfg.max_evals) {
    const double f_start = res.f;
    const Eigen::VectorXd x_start = res.x;
    double biggest_drop = 0.0;
    int biggest_i = -1;
    for (int i = 0; i < n && res.evals < cfg.max_evals; ++i) {
      const double before = res.f;
      line_minimize(f, res.x, dirs.col(i), res.f, res.evals, cfg.max_evals);
      if (before - res.f > biggest_drop) {
        biggest_drop = before - res.f;
        biggest_i = i;
      }
    }
    const double sweep_drop = f_start - res.f;
    if (sweep_drop <= cfg.ftol) {
      if (++quiet_sweeps >= 2) {
        res.converged = true;
        return res;
      }
    } else {
      quiet_sweeps = 0;
    }
    // Powell direction replacement (Numerical Recipes acceptance test)
    if (biggest_i >= 0 && res.evals < cfg.max_evals) {
      Eigen::VectorXd extrap = 2.0 * res.x - x_start;
      const double f_e = f(extrap);
      ++res.evals;
      if (f_e < f_start) {
        const double t = 2.0 * (f_start - 2.0 * res.f + f_e) *
                             (f_start - res.f - biggest_drop) *
                             (f_start - res.f - biggest_drop) -
                         biggest_drop * (f_start - f_e) * (f_start - f_e);
        if (t < 0.0) {
          Eigen::VectorXd new_dir = res.x - x_start;
          if (new_dir.norm() > 0) {
            line_minimize(f, res.x, new_dir, res.f, res.evals, cfg.max_evals);
            dirs.col(biggest_i) = dirs.col(n - 1);
            dirs.col(n - 1) = new_dir;
          }
        }
      }
    }
  }
  res.converged = false;
  return res;
}

UccsdSectorSimulator::UccsdSectorSimulator(const ActiveSpaceHamiltonian& ham,
                                           const std::vector<ExcitationOp>& ops)
    : ham_(ham), space_(make_determinant_space(ham.n_active, ham.n_occ, ham.n_occ)) {
  const std::size_t nd = space_.size();
  pairs_.resize(ops.size());
  const std::size_t na = space_.alpha_strings.size();
  const std::size_t nb = space_.beta_strings.size();
  std::unordered_map<uint32_t, uint32_t> ar, br;
  for (std::size_t i = 0; i < na; ++i) ar[space_.alpha_strings[i]] = i;
  for (std::size_t i = 0; i < nb; ++i) br[space_.beta_strings[i]] = i;

  auto index_of = [&](uint64_t det) {
    uint32_t as = 0, bs = 0;
    while (det) {
      int P = std::countr_zero(det);
      if (P & 1)
        bs |= 1u << (P >> 1);
      else
        as |= 1u << (P >> 1);
      det &= det - 1;
    }
    return static_cast<uint32_t>(space_.index(ar.at(as), br.at(bs)));
  };

  for (std::size_t k = 0; k < ops.size(); ++k) {
    const auto& op = ops[k];
    for (std::size_t ia = 0; ia < na; ++ia) {
      for (std::size_t ib = 0; ib < nb; ++ib) {
        const uint64_t det = space_.interleaved(ia, ib);
        if (!op.is_double) {
          const int I = op.idx[0], A = op.idx[1];
          if (!((det >> I) & 1) || ((det >> A) & 1)) continue;
          const uint64_t to = (det & ~(uint64_t(1) << I)) | (uint64_t(1) << A);
          pairs_[k].push_back({static_cast<uint32_t>(space_.index(ia, ib)), index_of(to),
                               static_cast<int8_t>(phase_single(det, I, A))});
        } else {
          const int I = op.idx[0], J = op.idx[1], A = op.idx[2], B = op.idx[3];
          if (!((det >> I) & 1) || !((det >> J) & 1) || ((det >> A) & 1) ||
              ((det >> B) & 1))
            continue;
          const uint64_t to = (det & ~(uint64_t(1) << I) & ~(uint64_t(1) << J)) |
                              (uint64_t(1) << A) | (uint64_t(1) << B);
          pairs_[k].push_back({static_cast<uint32_t>(space_.index(ia, ib)), index_of(to),
                               static_cast<int8_t>(phase_double(det, I, J, A, B))});
        }
      }
    }
  }
  if (nd <= kDenseSectorLimit) {
    hmat_ = dense_hamiltonian(ham_, space_);
    dense_ = true;
  }
}

Eigen::VectorXd UccsdSectorSimulator::state(const Eigen::VectorXd& thetas) const {
  if (thetas.size() != static_cast<Eigen::Index>(pairs_.size()))
    throw ShapeError("theta vector does not match the excitation list");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(space_.size());
  c(0) = 1.0;  // Hartree-Fock reference is dets[0]
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    const double th = thetas(k);
    if (th == 0.0) continue;
    const double cs = std::cos(th), sn = std::sin(th);
    for (const auto& p : pairs_[k]) {
      const double cf = c(p.from), ct = c(p.to);
      c(p.from) = cs * cf - p.sign * sn * ct;
      c(p.to) = p.sign * sn * cf + cs * ct;
    }
  }
  return c;
}

double UccsdSectorSimulator::energy(const Eigen::VectorXd& thetas) const {
  const Eigen::VectorXd c = state(thetas);
  if (dense_) return c.dot(hmat_ * c);
  std::vector<double> cv(c.data(), c.data() + c.size());
  const auto hc = sigma_apply(ham_, space_, cv);
  double e = 0.0;
  for (std::size_t i = 0; i < hc.size(); ++i) e += cv[i] * hc[i];
  return e;
}

namespace {

UccsdAmplitudes merge_into_structure(const ActiveSpaceHamiltonian& ham,
                                     const UccsdAmplitudes& init) {
  UccsdAmplitudes amps = uccsd_parameter_structure(ham);
  for (auto& [k, v] : amps.singles) {
    auto it = init.singles.find(k);
    if (it != init.singles.end()) v = it->second;
  }
  for (auto& [k, v] : amps.doubles) {
    auto it = init.doubles.find(k);
    if (it != init.doubles.end()) v = it->second;
  }
  return amps;
}

}  // namespace

VqeOutcome vqe_minimize(const ActiveSpaceHamiltonian& ham, const UccsdAmplitudes& init,
                        const OptimizerConfig& cfg) {
  if (ham.n_spin() > kStatevectorCap)
    throw CapacityError("VQE-UCCSD limited to " + std::to_string(kStatevectorCap) +
                        " spin orbitals");
  VqeOutcome out;
  if (ham.n_active == ham.n_occ || ham.n_occ == 0) {
    out.energy = ham.e_hf();
    out.converged = true;
    return out;
  }
  UccsdAmplitudes amps = merge_into_structure(ham, init);
  auto ops = uccsd_excitation_ops(amps);
  UccsdSectorSimulator sim(ham, ops);

  Eigen::VectorXd x0(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) x0(k) = ops[k].theta;
  auto objective = [&](const Eigen::VectorXd& t) { return sim.energy(t); };
  auto opt = minimize_powell(objective, x0, cfg);

  out.energy = opt.f;
  out.iterations = opt.evals;
  out.converged = opt.converged;
  std::size_t k = 0;
  for (auto& [key, v] : amps.singles) v = opt.x(k++);
  for (auto& [key, v] : amps.doubles) v = opt.x(k++);
  out.amplitudes = amps;
  return out;
}

VqeOutcome vqe_minimize(const ActiveSpaceHamiltonian& ham, const OptimizerConfig& cfg) {
  return vqe_minimize(ham, mbpt1_initial_amplitudes(ham), cfg);
}

double uccsd_statevector_energy(const ActiveSpaceHamiltonian& ham,
                                const UccsdAmplitudes& amps) {
  const int nq = ham.n_spin();
  uint64_t hf = 0;
  for (int I : ham.occupied_spin()) hf |= uint64_t(1) << I;
  const auto gen = uccsd_generator(amps);
  const auto psi = trotter_state(gen, nq, hf);
  return expectation(psi, hamiltonian_to_qubit(ham));
}

}  // namespace mifno
