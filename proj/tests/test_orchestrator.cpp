#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mifno/fci.hpp"
#include "mifno/integrals.hpp"
#include "mifno/orchestrator.hpp"

using namespace mifno;

namespace {
std::string fixture(const std::string& name) {
  return std::string(MIFNO_FIXTURE_DIR) + "/" + name;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("mifno_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

RunConfig h4_config() {
  RunConfig c;
  c.fcidump_path = fixture("h4_toy.fcidump");
  c.order = 2;
  c.fno_occupancy = 0.9;
  c.solver = RunConfig::Solver::both;
  return c;
}
}  // namespace

TEST_CASE("config validation") {
  RunConfig c;
  c.fcidump_path = fixture("h2_sto3g.fcidump");
  CHECK_NOTHROW(c.validate());
  SUBCASE("both FNO selectors rejected") {
    c.fno_occupancy = 0.99;
    c.fno_keep_count = 7;
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }
  SUBCASE("bad occupancy rejected") {
    c.fno_occupancy = 1.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }
  SUBCASE("bad worker count rejected") {
    c.worker_count = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }
  SUBCASE("order beyond the occupied count fails at run time") {
    c.order = 5;
    CHECK_THROWS_AS(run(c), ConfigError);
  }
}

TEST_CASE("H2 single-increment run reproduces FCI") {
  RunConfig c;
  c.fcidump_path = fixture("h2_sto3g.fcidump");
  c.order = 1;
  auto report = run(c);
  CHECK(report.status == "complete");
  CHECK(report.expansion.at("fci").e_total == doctest::Approx(-1.137270175).epsilon(1e-8));
  CHECK(report.e_hf + report.expansion.at("fci").e_corr ==
        doctest::Approx(report.expansion.at("fci").e_total).epsilon(1e-12));
  CHECK(report.max_qubits_over_increments <= report.full_system_qubits);
}

TEST_CASE("reports are deterministic across worker counts") {
  auto c1 = h4_config();
  c1.worker_count = 1;
  auto c4 = h4_config();
  c4.worker_count = 4;
  const auto r1 = report_render(run(c1), ReportFormat::json);
  const auto r4 = report_render(run(c4), ReportFormat::json);
  CHECK(r1 == r4);
}

TEST_CASE("json report round trip is byte stable") {
  auto report = run(h4_config());
  const auto once = report_render(report, ReportFormat::json);
  const auto twice = report_render(report_parse_json(once), ReportFormat::json);
  CHECK(once == twice);
}

TEST_CASE("kill/resume cycle completes to an identical report") {
  TempDir tmp;
  auto uninterrupted = h4_config();
  const auto ref = report_render(run(uninterrupted), ReportFormat::json);

  auto first = h4_config();
  first.ledger_path = tmp.file("ledger.txt");
  first.max_solves = 1;
  auto partial = run(first);
  CHECK(partial.status == "partial");

  auto second = h4_config();
  second.ledger_path = tmp.file("ledger.txt");
  second.resume = true;
  auto resumed = run(second);
  CHECK(resumed.status == "complete");
  CHECK(report_render(resumed, ReportFormat::json) == ref);
}

TEST_CASE("resume rejects a ledger from a different configuration") {
  TempDir tmp;
  auto first = h4_config();
  first.ledger_path = tmp.file("ledger.txt");
  run(first);
  auto second = h4_config();
  second.order = 1;
  second.ledger_path = tmp.file("ledger.txt");
  second.resume = true;
  CHECK_THROWS_AS(run(second), ConfigError);
}

TEST_CASE("ledger lines carry the record fields") {
  TempDir tmp;
  auto c = h4_config();
  c.ledger_path = tmp.file("ledger.txt");
  run(c);
  std::ifstream in(c.ledger_path);
  std::string line;
  int n_ec = 0, n_eps = 0;
  while (std::getline(in, line)) {
    if (line.rfind("EC ", 0) == 0) {
      ++n_ec;
      for (const char* field : {"subset=", "order=", "solver=", "fno=", "e_c=",
                                "qubits=", "wall_ms="})
        CHECK(line.find(field) != std::string::npos);
    }
    if (line.rfind("EPS ", 0) == 0) ++n_eps;
  }
  // 3 increments x 2 solvers
  CHECK(n_ec == 6);
  CHECK(n_eps == 6);
}

TEST_CASE("partial reports carry the unresolved-increment detail") {
  TempDir tmp;
  auto c = h4_config();
  c.ledger_path = tmp.file("ledger.txt");
  c.max_solves = 1;
  auto report = run(c);
  CHECK(report.status == "partial");
  CHECK(!report.detail.empty());
  const auto text = report_render(report, ReportFormat::json);
  CHECK(text.find("partial") != std::string::npos);
}

TEST_CASE("table render shows per-increment resource rows") {
  RunConfig c;
  c.fcidump_path = fixture("beh2_ccpvdz.fcidump");
  c.order = 2;
  c.fno_keep_count = 7;
  auto report = run(c);
  const auto table = report_render(report, ReportFormat::table);
  CHECK(table.find("two-body (2,3)") != std::string::npos);
  auto row = table.substr(table.find("two-body (2,3)"));
  CHECK(row.substr(0, row.find('\n')).find("18") != std::string::npos);
  CHECK(table.find("one-body (1)") != std::string::npos);
  CHECK(table.find("Full system") != std::string::npos);

  SUBCASE("exactly three 16-qubit and three 18-qubit increments") {
    int q16 = 0, q18 = 0;
    for (const auto& rec : report.increments) {
      if (rec.n_qubits == 16) ++q16;
      if (rec.n_qubits == 18) ++q18;
    }
    CHECK(q16 == 3);
    CHECK(q18 == 3);
  }
  SUBCASE("gate counts sit within a factor of 3 of reference compiler output") {
    const auto& first = report.increments.front();
    CHECK(first.one_qubit_gates > 794 / 3);
    CHECK(first.one_qubit_gates < 794 * 3);
    CHECK(first.two_qubit_gates > 848 / 3);
    CHECK(first.two_qubit_gates < 848 * 3);
  }
  SUBCASE("caveat flag rides along") {
    REQUIRE(!report.caveats.empty());
    CHECK(report.caveats.front().find(kGateModelVersion) != std::string::npos);
  }
}

TEST_CASE("estimate_only") {
  SUBCASE("explicit table rows (catalyst qubit counts)") {
    auto t = estimate_only(89, 389, {{0.99, 295}}, 3);
    CHECK(t.full_system_qubits == 956);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].fno_qubits == 768);
    CHECK(t.rows[0].mi_fno_qubits == 596);
  }
  SUBCASE("uniform synthetic spectrum keeps ceil(tau n)") {
    std::vector<double> spec(20, 1.0);
    auto t = estimate_only(10, spec, 3, {0.99, 0.5, 0.05});
    CHECK(t.rows[0].n_virt == 20);
    CHECK(t.rows[1].n_virt == 10);
    CHECK(t.rows[2].n_virt == 1);
    for (const auto& r : t.rows) {
      CHECK(r.fno_qubits == 2 * (r.n_virt + 10));
      CHECK(r.mi_fno_qubits == 2 * (r.n_virt + 3));
    }
  }
  SUBCASE("fcidump route matches the module chain") {
    auto t = estimate_only(fixture("h4_toy.fcidump"), 2, {1.0, 0.5});
    CHECK(t.n_occ == 2);
    CHECK(t.n_virt_total == 2);
    CHECK(t.full_system_qubits == 8);
    CHECK(t.rows[0].n_virt == 2);
  }
  SUBCASE("table render contains the full-system row") {
    auto t = estimate_only(89, 389, {{0.99, 295}}, 3);
    auto text = qubit_table_render(t, ReportFormat::table);
    CHECK(text.find("956") != std::string::npos);
    CHECK(text.find("768") != std::string::npos);
    CHECK(text.find("596") != std::string::npos);
  }
}

TEST_CASE("global FNO scope uses one shared truncation") {
  RunConfig c;
  c.fcidump_path = fixture("h4_toy.fcidump");
  c.order = 2;
  c.fno_occupancy = 0.9;
  c.fno_scope = RunConfig::FnoScope::global;
  auto report = run(c);
  CHECK(report.status == "complete");
  // every increment keeps the same number of virtuals under the global scope
  const int kept = report.increments.front().kept_virtuals;
  for (const auto& rec : report.increments) CHECK(rec.kept_virtuals == kept);
}

TEST_CASE("screening prunes higher-order work") {
  RunConfig c;
  c.fcidump_path = fixture("h4_toy.fcidump");
  c.order = 2;
  c.screen_threshold = 1.0;  // absurdly large: every pair pruned
  auto report = run(c);
  CHECK(report.status == "complete");
  for (const auto& rec : report.increments) CHECK(rec.inc.order() == 1);
}

TEST_CASE("empty report renders as valid JSON with zero records") {
  RunReport empty;
  empty.config.fcidump_path = "none";
  const auto text = report_render(empty, ReportFormat::json);
  const auto back = report_parse_json(text);
  CHECK(back.increments.empty());
  CHECK(report_render(back, ReportFormat::json) == text);
}

TEST_CASE("reduction percentages follow 100 (1 - increment/full)") {
  RunConfig c;
  c.fcidump_path = fixture("beh2_ccpvdz.fcidump");
  c.order = 2;
  c.fno_keep_count = 7;
  auto table = report_render(run(c), ReportFormat::table);
  CHECK(table.find("16 (66.7%)") != std::string::npos);  // 100 (1 - 16/48)
  CHECK(table.find("18 (62.5%)") != std::string::npos);  // 100 (1 - 18/48)
}

TEST_CASE("BeH2 MI(2) without truncation lands within 2e-3 of full FCI") {
  RunConfig c;
  c.fcidump_path = fixture("beh2_ccpvdz.fcidump");
  c.order = 2;
  c.resource_estimates = false;
  c.worker_count = 2;
  auto report = run(c);
  CHECK(std::abs(report.expansion.at("fci").e_total - (-15.8363604425)) < 2e-3);
}

TEST_CASE("higher expansion order does not worsen the error on shipped fixtures") {
  auto erro = [&](const std::string& fix, int order, double e_ref) {
    RunConfig c;
    c.fcidump_path = fixture(fix);
    c.order = order;
    c.resource_estimates = false;
    c.worker_count = 2;
    return std::abs(run(c).expansion.at("fci").e_total - e_ref);
  };
  const double h4_ref = -2.180316616;
  CHECK(erro("h4_toy.fcidump", 2, h4_ref) <= erro("h4_toy.fcidump", 1, h4_ref) + 1e-12);
  const double beh2_ref = -15.8363604425;
  CHECK(erro("beh2_ccpvdz.fcidump", 2, beh2_ref) <=
        erro("beh2_ccpvdz.fcidump", 1, beh2_ref) + 1e-12);
}

TEST_CASE("an increment failing after retries yields a partial report") {
  // a VQE increment beyond the statevector cap (26 qubits untruncated)
  // fails with CapacityError after its retries
  RunConfig c;
  c.fcidump_path = fixture("beh2_ccpvdz.fcidump");
  c.order = 1;
  c.fno_keep_count = 12;  // 1 occ + 12 virt = 26 qubits
  c.solver = RunConfig::Solver::vqe_uccsd;
  c.resource_estimates = false;
  auto report = run(c);
  CHECK(report.status == "partial");
  CHECK(!report.detail.empty());
  REQUIRE(!report.increments.empty());
  CHECK(report.increments.front().status.rfind("failed", 0) == 0);
  const auto text = report_render(report, ReportFormat::json);
  CHECK(text.find("failed") != std::string::npos);
}

TEST_CASE("energy screening on a real fixture stays close to the unscreened run") {
  RunConfig full;
  full.fcidump_path = fixture("beh2_ccpvdz.fcidump");
  full.order = 2;
  full.fno_keep_count = 7;
  full.resource_estimates = false;
  full.worker_count = 2;
  auto unscreened = run(full);

  auto screened_cfg = full;
  screened_cfg.screen_threshold = 1e-3;  // prunes pairs of tiny one-body increments
  auto screened = run(screened_cfg);
  CHECK(screened.status == "complete");
  CHECK(screened.increments.size() <= unscreened.increments.size());
  CHECK(std::abs(screened.expansion.at("fci").e_corr -
                 unscreened.expansion.at("fci").e_corr) < 5e-3);
}
