#include "mifno/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace mifno {

IntegralStore::IntegralStore(int n_spatial, int n_electrons, double core_energy)
    : n_(n_spatial), nelec_(n_electrons), core_(core_energy) {
  if (n_spatial < 0 || n_spatial > kMaxSpatial)
    throw CapacityError("dense integral storage supports up to " +
                        std::to_string(kMaxSpatial) + " spatial orbitals, got " +
                        std::to_string(n_spatial));
  if (n_electrons < 0 || n_electrons > 2 * n_spatial)
    throw ConsistencyError("electron count incompatible with orbital count");
  h1_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  h2_.assign(static_cast<std::size_t>(n_) * n_ * n_ * n_, 0.0);
  orbsym_.assign(n_, 1);
}

void IntegralStore::set_h1(int p, int q, double v) {
  check_index(p);
  check_index(q);
  h1_[p * n_ + q] = v;
  h1_[q * n_ + p] = v;
}

void IntegralStore::set_eri(int p, int q, int r, int s, double v) {
  check_index(p);
  check_index(q);
  check_index(r);
  check_index(s);
  const int idx[8][4] = {{p, q, r, s}, {q, p, r, s}, {p, q, s, r}, {q, p, s, r},
                         {r, s, p, q}, {s, r, p, q}, {r, s, q, p}, {s, r, q, p}};
  for (const auto& t : idx)
    h2_[((static_cast<std::size_t>(t[0]) * n_ + t[1]) * n_ + t[2]) * n_ + t[3]] = v;
}

std::vector<int> IntegralStore::reference_occupied() const {
  std::vector<int> occ(nelec_);
  for (int i = 0; i < nelec_; ++i) occ[i] = i;
  return occ;
}

double antisym_eri(const IntegralStore& store, int P, int Q, int R, int S) {
  return store.so_coulomb(P, Q, R, S) - store.so_coulomb(P, Q, S, R);
}

FockMatrix build_fock(const IntegralStore& store, const std::vector<int>& occupied) {
  if (static_cast<int>(occupied.size()) != store.n_electrons())
    throw InvalidOccupation("occupied set size " + std::to_string(occupied.size()) +
                            " != n_electrons " + std::to_string(store.n_electrons()));
  const int nso = store.n_spin();
  FockMatrix fm;
  fm.f = Eigen::MatrixXd::Zero(nso, nso);
  for (int P = 0; P < nso; ++P) {
    for (int Q = P; Q < nso; ++Q) {
      double v = store.so_h1(P, Q);
      for (int I : occupied) v += antisym_eri(store, P, I, Q, I);
      fm.f(P, Q) = v;
      fm.f(Q, P) = v;
    }
  }
  fm.diagonal.resize(nso);
  for (int P = 0; P < nso; ++P) fm.diagonal[P] = fm.f(P, P);
  double e = store.core_energy();
  for (int I : occupied) e += store.so_h1(I, I);
  for (int I : occupied)
    for (int J : occupied) e += 0.5 * antisym_eri(store, I, J, I, J);
  fm.e_hf = e;
  return fm;
}

// --- FCIDUMP ----------------------------------------------------------------

namespace {

// Extracts "KEY=<int>" from the header text; throws if required and absent.
bool header_int(const std::string& header, const std::string& key, int& out) {
  auto pos = header.find(key);
  while (pos != std::string::npos) {
    // must be a token boundary
    if (pos == 0 || !std::isalpha(static_cast<unsigned char>(header[pos - 1]))) {
      auto eq = header.find('=', pos + key.size());
      if (eq == std::string::npos) return false;
      const char* c = header.c_str() + eq + 1;
      char* end = nullptr;
      long v = std::strtol(c, &end, 10);
      if (end == c) return false;
      out = static_cast<int>(v);
      return true;
    }
    pos = header.find(key, pos + 1);
  }
  return false;
}

std::vector<int> header_int_list(const std::string& header, const std::string& key) {
  std::vector<int> vals;
  auto pos = header.find(key);
  if (pos == std::string::npos) return vals;
  auto eq = header.find('=', pos + key.size());
  if (eq == std::string::npos) return vals;
  std::size_t i = eq + 1;
  while (i < header.size()) {
    while (i < header.size() &&
           (std::isspace(static_cast<unsigned char>(header[i])) || header[i] == ','))
      ++i;
    if (i >= header.size() || !(std::isdigit(static_cast<unsigned char>(header[i])) ||
                                header[i] == '-' || header[i] == '+'))
      break;
    char* end = nullptr;
    long v = std::strtol(header.c_str() + i, &end, 10);
    std::size_t adv = end - (header.c_str() + i);
    if (adv == 0) break;
    vals.push_back(static_cast<int>(v));
    i += adv;
    // stop at the next KEY= token
    std::size_t j = i;
    while (j < header.size() && std::isspace(static_cast<unsigned char>(header[j]))) ++j;
    if (j < header.size() && std::isalpha(static_cast<unsigned char>(header[j]))) break;
  }
  return vals;
}

// Canonical compound index over the 8-fold symmetry class of (pq|rs).
std::size_t pair_index(int a, int b) {
  int hi = std::max(a, b), lo = std::min(a, b);
  return static_cast<std::size_t>(hi) * (hi + 1) / 2 + lo;
}
std::size_t quad_index(int p, int q, int r, int s) {
  std::size_t pq = pair_index(p, q), rs = pair_index(r, s);
  std::size_t hi = std::max(pq, rs), lo = std::min(pq, rs);
  return hi * (hi + 1) / 2 + lo;
}

}  // namespace

IntegralStore parse_fcidump(std::istream& in) {
  // Header: everything up to &END (or END, or a line-terminating '/').
  std::string header;
  {
    std::string line;
    bool done = false;
    while (!done && std::getline(in, line)) {
      auto amp_end = line.find("&END");
      if (amp_end == std::string::npos) amp_end = line.find("$END");
      auto slash = line.find('/');
      if (amp_end != std::string::npos) {
        header += line.substr(0, amp_end);
        done = true;
      } else if (slash != std::string::npos) {
        header += line.substr(0, slash);
        done = true;
      } else {
        header += line;
      }
      header += ' ';
    }
    if (!done) throw ParseError("FCIDUMP header not terminated by &END or /");
  }
  if (header.find("&FCI") == std::string::npos && header.find("$FCI") == std::string::npos)
    throw ParseError("missing &FCI marker in FCIDUMP header");

  int norb = 0, nelec = 0, ms2 = 0;
  if (!header_int(header, "NORB", norb)) throw ParseError("header missing NORB");
  if (!header_int(header, "NELEC", nelec)) throw ParseError("header missing NELEC");
  header_int(header, "MS2", ms2);
  if (norb <= 0) throw ParseError("NORB must be positive");

  IntegralStore store(norb, nelec, 0.0);
  store.set_ms2(ms2);
  auto syms = header_int_list(header, "ORBSYM");
  if (static_cast<int>(syms.size()) == norb) store.orbsym() = syms;

  const std::size_t npair = static_cast<std::size_t>(norb) * (norb + 1) / 2;
  std::vector<double> seen2(npair * (npair + 1) / 2, 0.0);
  std::vector<uint8_t> have2(npair * (npair + 1) / 2, 0);
  std::vector<double> seen1(npair, 0.0);
  std::vector<uint8_t> have1(npair, 0);
  double core = 0.0;

  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    // Fortran writers may emit D exponents
    for (auto& ch : line)
      if (ch == 'D' || ch == 'd') ch = 'E';
    std::istringstream ls(line);
    double v;
    int p, q, r, s;
    if (!(ls >> v >> p >> q >> r >> s))
      throw ParseError("malformed integral line: '" + line + "'");
    auto check = [&](int i) {
      if (i < 1 || i > norb)
        throw IndexError("orbital index " + std::to_string(i) + " outside [1, " +
                         std::to_string(norb) + "] in line: '" + line + "'");
    };
    if (p == 0 && q == 0 && r == 0 && s == 0) {
      core = v;
    } else if (r == 0 && s == 0 && q == 0) {
      check(p);  // orbital-energy record; accepted and ignored
    } else if (r == 0 && s == 0) {
      check(p);
      check(q);
      std::size_t k = pair_index(p - 1, q - 1);
      if (have1[k] && std::abs(seen1[k] - v) > 1e-10)
        throw ConsistencyError("conflicting duplicate h1 entry at (" + std::to_string(p) +
                               "," + std::to_string(q) + ")");
      seen1[k] = v;
      have1[k] = 1;
      store.set_h1(p - 1, q - 1, v);
    } else {
      check(p);
      check(q);
      check(r);
      check(s);
      std::size_t k = quad_index(p - 1, q - 1, r - 1, s - 1);
      if (have2[k] && std::abs(seen2[k] - v) > 1e-10)
        throw ConsistencyError("conflicting duplicate eri entry at (" + std::to_string(p) +
                               "," + std::to_string(q) + "|" + std::to_string(r) + "," +
                               std::to_string(s) + ")");
      seen2[k] = v;
      have2[k] = 1;
      store.set_eri(p - 1, q - 1, r - 1, s - 1, v);
    }
  }
  store.set_core_energy(core);
  return store;
}

IntegralStore parse_fcidump_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open FCIDUMP file: " + path);
  return parse_fcidump(f);
}

void write_fcidump(const IntegralStore& store, std::ostream& out) {
  const int n = store.n_spatial();
  out << "&FCI NORB=" << n << ",NELEC=" << store.n_electrons() << ",MS2=" << store.ms2()
      << ",\n ORBSYM=";
  for (int p = 0; p < n; ++p) out << store.orbsym()[p] << ",";
  out << "\n ISYM=1,\n&END\n";
  char buf[80];
  auto emit = [&](double v, int p, int q, int r, int s) {
    std::snprintf(buf, sizeof(buf), "%23.16E%4d%4d%4d%4d\n", v, p, q, r, s);
    out << buf;
  };
  const double thresh = 1e-12;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r) {
        int smax = (r == p) ? q : r;
        for (int s = 0; s <= smax; ++s) {
          double v = store.eri(p, q, r, s);
          if (std::abs(v) > thresh) emit(v, p + 1, q + 1, r + 1, s + 1);
        }
      }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      if (std::abs(store.h1(p, q)) > thresh) emit(store.h1(p, q), p + 1, q + 1, 0, 0);
  emit(store.core_energy(), 0, 0, 0, 0);
}

std::string fcidump_string(const IntegralStore& store) {
  std::ostringstream ss;
  write_fcidump(store, ss);
  return ss.str();
}

}  // namespace mifno
