#include <doctest.h>

#include <Eigen/Dense>
#include <fstream>
#include <random>
#include <sstream>

#include "mifno/active_space.hpp"
#include "mifno/fci.hpp"
#include "mifno/integrals.hpp"
#include "oracles.hpp"

using namespace mifno;

namespace {
std::string fixture(const std::string& name) {
  return std::string(MIFNO_FIXTURE_DIR) + "/" + name;
}
std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("parse minimal one-orbital FCIDUMP") {
  std::istringstream in(
      "&FCI NORB=1,NELEC=2,MS2=0,\n ORBSYM=1,\n ISYM=1,\n&END\n"
      " 0.5 1 1 1 1\n"
      "-1.0 1 1 0 0\n"
      " 0.7 0 0 0 0\n");
  auto store = parse_fcidump(in);
  CHECK(store.n_spatial() == 1);
  CHECK(store.n_electrons() == 2);
  CHECK(store.h1(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(store.eri(0, 0, 0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(store.core_energy() == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("parse accepts slash-terminated namelist header") {
  std::istringstream in(
      "&FCI NORB=2,NELEC=2,MS2=0,\n ORBSYM=1,1,\n ISYM=1,\n /\n"
      " 0.25 2 1 2 1\n"
      " 0.5 0 0 0 0\n");
  auto store = parse_fcidump(in);
  CHECK(store.eri(1, 0, 1, 0) == doctest::Approx(0.25));
  CHECK(store.core_energy() == doctest::Approx(0.5));
}

TEST_CASE("8-fold symmetry expansion from canonical lines") {
  std::istringstream in(
      "&FCI NORB=3,NELEC=2,MS2=0,\n ORBSYM=1,1,1,\n ISYM=1,\n&END\n"
      " 0.111 2 1 3 1\n"
      " 0.0 0 0 0 0\n");
  auto store = parse_fcidump(in);
  double v = 0.111;
  CHECK(store.eri(1, 0, 2, 0) == doctest::Approx(v));
  CHECK(store.eri(0, 1, 2, 0) == doctest::Approx(v));
  CHECK(store.eri(1, 0, 0, 2) == doctest::Approx(v));
  CHECK(store.eri(0, 1, 0, 2) == doctest::Approx(v));
  CHECK(store.eri(2, 0, 1, 0) == doctest::Approx(v));
  CHECK(store.eri(0, 2, 1, 0) == doctest::Approx(v));
  CHECK(store.eri(2, 0, 0, 1) == doctest::Approx(v));
  CHECK(store.eri(0, 2, 0, 1) == doctest::Approx(v));
}

TEST_CASE("parser error paths") {
  SUBCASE("malformed header") {
    std::istringstream in("&FCI NELEC=2,\n&END\n 0.0 0 0 0 0\n");
    CHECK_THROWS_AS(parse_fcidump(in), ParseError);
  }
  SUBCASE("missing terminator") {
    std::istringstream in("&FCI NORB=1,NELEC=2,\n");
    CHECK_THROWS_AS(parse_fcidump(in), ParseError);
  }
  SUBCASE("index out of range") {
    std::istringstream in("&FCI NORB=2,NELEC=2,\n&END\n 0.5 3 1 1 1\n");
    CHECK_THROWS_AS(parse_fcidump(in), IndexError);
  }
  SUBCASE("conflicting duplicates") {
    std::istringstream in(
        "&FCI NORB=2,NELEC=2,\n&END\n 0.5 2 1 2 1\n 0.5000001 1 2 1 2\n");
    CHECK_THROWS_AS(parse_fcidump(in), ConsistencyError);
  }
  SUBCASE("agreeing duplicates are fine") {
    std::istringstream in(
        "&FCI NORB=2,NELEC=2,\n&END\n 0.5 2 1 2 1\n 0.5 1 2 1 2\n 0.0 0 0 0 0\n");
    auto store = parse_fcidump(in);
    CHECK(store.eri(1, 0, 1, 0) == doctest::Approx(0.5));
  }
}

TEST_CASE("H2 fixture: byte-exact parse/serialize round trip") {
  const auto text = slurp(fixture("h2_sto3g.fcidump"));
  std::istringstream in(text);
  auto store = parse_fcidump(in);
  CHECK(fcidump_string(store) == text);
}

TEST_CASE("parse -> serialize -> parse reproduces integrals (random stores)") {
  for (unsigned seed : {1u, 2u, 3u}) {
    auto store = oracle::random_store(5, 4, seed);
    std::istringstream in(fcidump_string(store));
    auto re = parse_fcidump(in);
    REQUIRE(re.n_spatial() == store.n_spatial());
    for (int p = 0; p < 5; ++p)
      for (int q = 0; q < 5; ++q) {
        CHECK(re.h1(p, q) == doctest::Approx(store.h1(p, q)).epsilon(1e-12));
        for (int r = 0; r < 5; ++r)
          for (int s = 0; s < 5; ++s)
            CHECK(re.eri(p, q, r, s) == doctest::Approx(store.eri(p, q, r, s)).epsilon(1e-12));
      }
    CHECK(re.core_energy() == doctest::Approx(store.core_energy()).epsilon(1e-12));
  }
}

TEST_CASE("antisym_eri") {
  auto store = parse_fcidump_file(fixture("h2_sto3g.fcidump"));
  SUBCASE("P == Q vanishes exactly") {
    CHECK(antisym_eri(store, 2, 2, 1, 3) == 0.0);
    for (int P = 0; P < 4; ++P)
      for (int R = 0; R < 4; ++R)
        for (int S = 0; S < 4; ++S) CHECK(antisym_eri(store, P, P, R, S) == 0.0);
  }
  SUBCASE("same-spatial alternating spins reduce to (pp|pp)") {
    for (int p = 0; p < 2; ++p) {
      int A = so::alpha(p), B = so::beta(p);
      CHECK(antisym_eri(store, A, B, A, B) == doctest::Approx(store.eri(p, p, p, p)));
    }
  }
  SUBCASE("antisymmetry relations hold exactly") {
    for (int P = 0; P < 4; ++P)
      for (int Q = 0; Q < 4; ++Q)
        for (int R = 0; R < 4; ++R)
          for (int S = 0; S < 4; ++S) {
            CHECK(antisym_eri(store, P, Q, R, S) == -antisym_eri(store, Q, P, R, S));
            CHECK(antisym_eri(store, P, Q, R, S) == -antisym_eri(store, P, Q, S, R));
          }
  }
  SUBCASE("random tuples match brute-force evaluation from chemists' storage") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(0, 3);
    for (int k = 0; k < 50; ++k) {
      int P = d(rng), Q = d(rng), R = d(rng), S = d(rng);
      auto coul = [&](int a, int b, int c, int e) -> double {
        if ((a & 1) != (c & 1) || (b & 1) != (e & 1)) return 0.0;
        return store.eri(a >> 1, c >> 1, b >> 1, e >> 1);
      };
      CHECK(antisym_eri(store, P, Q, R, S) ==
            doctest::Approx(coul(P, Q, R, S) - coul(P, Q, S, R)).epsilon(1e-14));
    }
  }
}

TEST_CASE("build_fock") {
  SUBCASE("one-orbital toy: f_aa = h + (00|00)") {
    IntegralStore store(1, 2, 0.0);
    store.set_h1(0, 0, -1.0);
    store.set_eri(0, 0, 0, 0, 0.5);
    auto fm = build_fock(store, {0, 1});
    CHECK(fm.f(0, 0) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(fm.f(1, 1) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(fm.e_hf == doctest::Approx(-2.0 + 0.5).epsilon(1e-14));
  }
  SUBCASE("occupation size mismatch throws") {
    IntegralStore store(1, 2, 0.0);
    CHECK_THROWS_AS(build_fock(store, {0}), InvalidOccupation);
  }
  SUBCASE("H2 fixture: E_HF matches the recorded SCF energy") {
    auto store = parse_fcidump_file(fixture("h2_sto3g.fcidump"));
    auto fm = build_fock(store, store.reference_occupied());
    CHECK(fm.e_hf == doctest::Approx(-1.116684390).epsilon(1e-8));
  }
  SUBCASE("Brillouin: occupied-virtual block vanishes on converged fixtures") {
    for (const char* name :
         {"h2_sto3g.fcidump", "h4_toy.fcidump", "beh2_ccpvdz.fcidump"}) {
      auto store = parse_fcidump_file(fixture(name));
      auto occ = store.reference_occupied();
      auto fm = build_fock(store, occ);
      for (int I : occ)
        for (int A = store.n_electrons(); A < store.n_spin(); ++A)
          CHECK(std::abs(fm.f(I, A)) <= 1e-6);
      CHECK((fm.f - fm.f.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("E_HF equals the determinant-machinery expectation value (cross-module)") {
  for (const char* name : {"h2_sto3g.fcidump", "h4_toy.fcidump"}) {
    auto store = parse_fcidump_file(fixture(name));
    auto fm = build_fock(store, store.reference_occupied());
    auto ham = fold_frozen(store, {}, [&] {
      std::vector<int> all;
      for (int P = 0; P < store.n_spin(); ++P) all.push_back(P);
      return all;
    }());
    auto space = make_determinant_space(ham.n_active, ham.n_occ, ham.n_occ);
    std::vector<double> hf(space.size(), 0.0);
    hf[0] = 1.0;
    auto sig = sigma_apply(ham, space, hf);
    CHECK(sig[0] == doctest::Approx(fm.e_hf).epsilon(1e-10));
    CHECK(ham.e_hf() == doctest::Approx(fm.e_hf).epsilon(1e-10));
  }
}

TEST_CASE("fold_frozen") {
  auto store = parse_fcidump_file(fixture("h4_toy.fcidump"));
  std::vector<int> all;
  for (int P = 0; P < store.n_spin(); ++P) all.push_back(P);

  SUBCASE("no frozen orbitals is the identity folding") {
    auto ham = fold_frozen(store, {}, all);
    CHECK(ham.eff_core == store.core_energy());
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) CHECK(ham.eff_h1(p, q) == store.h1(p, q));
  }
  SUBCASE("freezing every occupied orbital leaves the mean field") {
    auto fm = build_fock(store, store.reference_occupied());
    std::vector<int> virt;
    for (int P = store.n_electrons(); P < store.n_spin(); ++P) virt.push_back(P);
    auto ham = fold_frozen(store, store.reference_occupied(), virt);
    CHECK(ham.eff_core == doctest::Approx(fm.e_hf).epsilon(1e-10));
    CHECK(ham.n_occ == 0);
  }
  SUBCASE("active-space HF energy equals the full-system HF energy") {
    auto fm = build_fock(store, store.reference_occupied());
    auto ham = make_increment_space(store, {1});
    CHECK(ham.e_hf() == doctest::Approx(fm.e_hf).epsilon(1e-10));
  }
  SUBCASE("folded FCI equals frozen-core FCI on the full integral set") {
    auto ham = make_increment_space(store, {1});  // freeze occupied spatial 0
    auto space = make_determinant_space(ham.n_active, ham.n_occ, ham.n_occ);
    auto res = davidson_lowest(ham, space);
    double ref = oracle::frozen_core_fci(store, {0, 1});
    CHECK(res.energy == doctest::Approx(ref).epsilon(1e-10));
  }
  SUBCASE("frozen/active overlap is rejected") {
    CHECK_THROWS_AS(fold_frozen(store, {0, 1}, all), InvalidPartition);
  }
  SUBCASE("unpaired sets are rejected") {
    std::vector<int> most(all.begin() + 1, all.end());
    CHECK_THROWS_AS(fold_frozen(store, {0}, most), InvalidPartition);
  }
  SUBCASE("solver energy invariant under active-list permutation") {
    auto ham1 = fold_frozen(store, {0, 1}, {2, 3, 4, 5, 6, 7});
    auto ham2 = fold_frozen(store, {0, 1}, {6, 7, 3, 2, 4, 5});
    auto s1 = make_determinant_space(ham1.n_active, ham1.n_occ, ham1.n_occ);
    auto s2 = make_determinant_space(ham2.n_active, ham2.n_occ, ham2.n_occ);
    CHECK(davidson_lowest(ham1, s1).energy ==
          doctest::Approx(davidson_lowest(ham2, s2).energy).epsilon(1e-10));
  }
}

TEST_CASE("parser accepts Fortran D exponents") {
  std::istringstream in(
      "&FCI NORB=1,NELEC=2,MS2=0,\n ORBSYM=1,\n ISYM=1,\n&END\n"
      " 5.0D-01 1 1 1 1\n"
      "-0.1D+01 1 1 0 0\n"
      " 7.0d-1 0 0 0 0\n");
  auto store = parse_fcidump(in);
  CHECK(store.eri(0, 0, 0, 0) == doctest::Approx(0.5));
  CHECK(store.h1(0, 0) == doctest::Approx(-1.0));
  CHECK(store.core_energy() == doctest::Approx(0.7));
}
