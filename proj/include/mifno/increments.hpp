#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mifno/errors.hpp"

namespace mifno {

// An ordered subset of occupied spatial orbitals defining one subproblem.
struct Increment {
  std::vector<int> occ;  // strictly ascending

  int order() const { return static_cast<int>(occ.size()); }
  std::string label() const;       // "2,3" (1-based, mirrors report tables)
  std::string key() const;         // "1,2" (0-based, ledger key)

  friend bool operator==(const Increment& a, const Increment& b) { return a.occ == b.occ; }
  // order first, then lexicographic: canonical processing order
  friend bool operator<(const Increment& a, const Increment& b) {
    if (a.occ.size() != b.occ.size()) return a.occ.size() < b.occ.size();
    return a.occ < b.occ;
  }
};

Increment make_increment(std::vector<int> occ, int n_occupied);

// All subsets of sizes 1..n in canonical order; count is sum_m C(n_occ, m).
std::vector<Increment> enumerate_increments(int n_occ, int n);

uint64_t increment_count(int n_occ, int n);

enum class IncrementStatus { pending, solved, failed };

struct IncrementValue {
  double e_c = 0.0;
  double eps = 0.0;
  bool has_eps = false;
  IncrementStatus status = IncrementStatus::pending;
};

struct ExpansionResult {
  int n = 0;
  double e_corr = 0.0;
  double e_total = 0.0;
  std::map<int, double> per_order_sums;
};

// Correlation-energy cache and the epsilon recursion over it. Values are
// tracked per solver tag so cross-solver runs stay separate.
class IncrementLedger {
 public:
  // Registers an increment as pending work.
  void expect(const Increment& inc);

  // Records E_c(S); concurrent duplicate inserts must agree to 1e-9
  // (last write wins on identical values).
  void insert_ec(const Increment& inc, double e_c);
  void mark_failed(const Increment& inc);

  bool solved(const Increment& inc) const;
  const IncrementValue& at(const Increment& inc) const;

  // eps_S = E_c(S) - sum over proper nonempty subsets' eps; requires all
  // lower orders solved (DependencyError otherwise). Stores and returns.
  double increment_epsilon(const Increment& inc);

  // Runs the epsilon recursion for every solved increment of the order.
  void reduce_order(int order);

  // Sums eps by order; e_total = e_hf + e_corr. Pending or failed
  // increments up to order n raise IncompleteExpansion naming them.
  ExpansionResult reconstruct(int n, double e_hf) const;

  // Work list for the next order: candidates whose order-m sub-increments
  // all have |eps| < threshold are pruned (threshold 0 prunes nothing).
  std::vector<Increment> screen(int n_occ, int next_order, double threshold) const;

  const std::map<Increment, IncrementValue>& entries() const { return map_; }
  std::size_t size() const { return map_.size(); }

 private:
  std::map<Increment, IncrementValue> map_;
};

}  // namespace mifno
