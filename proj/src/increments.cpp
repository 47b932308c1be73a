#include "mifno/increments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace mifno {

std::string Increment::label() const {
  std::ostringstream ss;
  for (std::size_t i = 0; i < occ.size(); ++i) ss << (i ? "," : "") << occ[i] + 1;
  return ss.str();
}

std::string Increment::key() const {
  std::ostringstream ss;
  for (std::size_t i = 0; i < occ.size(); ++i) ss << (i ? "," : "") << occ[i];
  return ss.str();
}

Increment make_increment(std::vector<int> occ, int n_occupied) {
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (occ[i] < 0 || occ[i] >= n_occupied)
      throw IndexError("occupied index " + std::to_string(occ[i]) + " out of range");
    if (i > 0 && occ[i] <= occ[i - 1])
      throw ConsistencyError("increment indices must be strictly ascending");
  }
  if (occ.empty()) throw ConsistencyError("increment cannot be empty");
  return Increment{std::move(occ)};
}

uint64_t increment_count(int n_occ, int n) {
  uint64_t total = 0;
  for (int m = 1; m <= n; ++m) {
    uint64_t c = 1;
    for (int k = 0; k < m; ++k) c = c * (n_occ - k) / (k + 1);
    total += c;
  }
  return total;
}

std::vector<Increment> enumerate_increments(int n_occ, int n) {
  if (n < 1 || n > n_occ)
    throw OrderError("expansion order " + std::to_string(n) + " outside [1, " +
                     std::to_string(n_occ) + "]");
  std::vector<Increment> out;
  out.reserve(increment_count(n_occ, n));
  for (int m = 1; m <= n; ++m) {
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    while (true) {
      out.push_back(Increment{idx});
      int i = m - 1;
      while (i >= 0 && idx[i] == n_occ - m + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

void IncrementLedger::expect(const Increment& inc) { map_.emplace(inc, IncrementValue{}); }

void IncrementLedger::insert_ec(const Increment& inc, double e_c) {
  auto it = map_.find(inc);
  if (it == map_.end()) {
    IncrementValue v;
    v.e_c = e_c;
    v.status = IncrementStatus::solved;
    map_.emplace(inc, v);
    return;
  }
  if (it->second.status == IncrementStatus::solved &&
      std::abs(it->second.e_c - e_c) > 1e-9)
    throw ConsistencyError("conflicting correlation energies for increment {" + inc.key() +
                           "}: " + std::to_string(it->second.e_c) + " vs " +
                           std::to_string(e_c));
  it->second.e_c = e_c;
  it->second.status = IncrementStatus::solved;
}

void IncrementLedger::mark_failed(const Increment& inc) {
  map_[inc].status = IncrementStatus::failed;
}

bool IncrementLedger::solved(const Increment& inc) const {
  auto it = map_.find(inc);
  return it != map_.end() && it->second.status == IncrementStatus::solved;
}

const IncrementValue& IncrementLedger::at(const Increment& inc) const {
  auto it = map_.find(inc);
  if (it == map_.end()) throw DependencyError("increment {" + inc.key() + "} not present");
  return it->second;
}

double IncrementLedger::increment_epsilon(const Increment& inc) {
  auto it = map_.find(inc);
  if (it == map_.end() || it->second.status != IncrementStatus::solved)
    throw DependencyError("increment {" + inc.key() + "} has no correlation energy");
  const int m = inc.order();
  double eps = it->second.e_c;
  // subtract every proper nonempty sub-increment's epsilon
  for (uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
    Increment sub;
    for (int i = 0; i < m; ++i)
      if ((mask >> i) & 1) sub.occ.push_back(inc.occ[i]);
    auto sit = map_.find(sub);
    if (sit == map_.end() || !sit->second.has_eps)
      throw DependencyError("missing sub-increment {" + sub.key() + "} of {" + inc.key() +
                            "}");
    eps -= sit->second.eps;
  }
  it->second.eps = eps;
  it->second.has_eps = true;
  return eps;
}

void IncrementLedger::reduce_order(int order) {
  for (auto& [inc, val] : map_) {
    if (inc.order() != order || val.status != IncrementStatus::solved) continue;
    increment_epsilon(inc);
  }
}

ExpansionResult IncrementLedger::reconstruct(int n, double e_hf) const {
  std::vector<std::string> missing;
  ExpansionResult result;
  result.n = n;
  for (const auto& [inc, val] : map_) {
    if (inc.order() > n) continue;
    if (val.status != IncrementStatus::solved || !val.has_eps) {
      missing.push_back(inc.key());
      continue;
    }
    result.per_order_sums[inc.order()] += val.eps;
  }
  if (!missing.empty()) {
    std::ostringstream ss;
    ss << "expansion incomplete; unresolved increments:";
    for (const auto& k : missing) ss << " {" << k << "}";
    throw IncompleteExpansion(ss.str());
  }
  double e = 0.0;
  for (const auto& [ord, v] : result.per_order_sums) e += v;
  result.e_corr = e;
  result.e_total = e_hf + e;
  return result;
}

std::vector<Increment> IncrementLedger::screen(int n_occ, int next_order,
                                               double threshold) const {
  auto all = enumerate_increments(n_occ, next_order);
  std::vector<Increment> out;
  for (const auto& inc : all) {
    if (inc.order() != next_order) continue;
    if (threshold > 0.0 && next_order >= 2) {
      bool all_small = true;
      const int m = inc.order();
      for (uint32_t mask = 1; mask + 1 < (1u << m) && all_small; ++mask) {
        if (std::popcount(mask) != m - 1) continue;
        Increment sub;
        for (int i = 0; i < m; ++i)
          if ((mask >> i) & 1) sub.occ.push_back(inc.occ[i]);
        auto it = map_.find(sub);
        if (it == map_.end() || !it->second.has_eps)
          throw DependencyError("screening requires solved order-" + std::to_string(m - 1) +
                                " increments");
        if (std::abs(it->second.eps) >= threshold) all_small = false;
      }
      if (all_small) continue;
    }
    out.push_back(inc);
  }
  return out;
}

}  // namespace mifno
