#include "ncc/set_cover.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace ncc {

namespace {

class Solver {
 public:
  Solver(std::size_t universe, const std::vector<Bitset>& sets, std::vector<std::size_t> live)
      : universe_(universe), sets_(sets), live_(std::move(live)), containing_(universe) {
    for (std::size_t s : live_) {
      max_size_ = std::max(max_size_, sets_[s].count());
      for (std::size_t e = sets_[s].next(0); e < universe_; e = sets_[s].next(e + 1))
        containing_[e].push_back(s);
    }
  }

  std::vector<std::size_t> greedy() const {
    Bitset uncovered(universe_);
    for (std::size_t e = 0; e < universe_; ++e) uncovered.set(e);
    std::vector<std::size_t> chosen;
    while (!uncovered.none()) {
      std::size_t best = live_.front(), gain = 0;
      for (std::size_t s : live_) {
        std::size_t c = sets_[s].count_and(uncovered);
        if (c > gain) {
          gain = c;
          best = s;
        }
      }
      chosen.push_back(best);
      uncovered.subtract(sets_[best]);
    }
    return chosen;
  }

  SetCoverResult solve() {
    best_ = greedy();
    Bitset uncovered(universe_);
    for (std::size_t e = 0; e < universe_; ++e) uncovered.set(e);
    std::vector<std::size_t> chosen;
    search(uncovered, chosen);
    SetCoverResult r;
    r.feasible = true;
    r.chosen = best_;
    std::sort(r.chosen.begin(), r.chosen.end());
    r.nodes = nodes_;
    return r;
  }

 private:
  // Elements whose containing families are pairwise disjoint each need their own set.
  std::size_t lower_bound(const Bitset& uncovered) const {
    const std::size_t left = uncovered.count();
    std::size_t by_size = (left + max_size_ - 1) / max_size_;
    Bitset used(sets_.size());
    std::size_t disjoint = 0;
    for (std::size_t e = uncovered.next(0); e < universe_; e = uncovered.next(e + 1)) {
      bool clash = false;
      for (std::size_t s : containing_[e])
        if (used.test(s)) {
          clash = true;
          break;
        }
      if (clash) continue;
      ++disjoint;
      for (std::size_t s : containing_[e]) used.set(s);
    }
    return std::max(by_size, disjoint);
  }

  void search(const Bitset& uncovered, std::vector<std::size_t>& chosen) {
    ++nodes_;
    if (uncovered.none()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + lower_bound(uncovered) >= best_.size()) return;
    std::size_t pick = universe_, fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t e = uncovered.next(0); e < universe_; e = uncovered.next(e + 1))
      if (containing_[e].size() < fewest) {
        fewest = containing_[e].size();
        pick = e;
      }
    for (std::size_t s : containing_[pick]) {
      Bitset next = uncovered;
      next.subtract(sets_[s]);
      chosen.push_back(s);
      search(next, chosen);
      chosen.pop_back();
    }
  }

  std::size_t universe_;
  const std::vector<Bitset>& sets_;
  std::vector<std::size_t> live_;
  std::vector<std::vector<std::size_t>> containing_;
  std::size_t max_size_ = 1;
  std::vector<std::size_t> best_;
  std::size_t nodes_ = 0;
};

}  // namespace

SetCoverResult min_set_cover(std::size_t universe, const std::vector<Bitset>& sets) {
  SetCoverResult r;
  if (universe == 0) {
    r.feasible = true;
    return r;
  }
  Bitset all(universe);
  for (const auto& s : sets) all |= s;
  if (all.count() != universe) return r;

  // drop empty, duplicate and dominated sets, keeping the lowest index
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].none()) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < sets.size() && !dominated; ++j) {
      if (i == j || !sets[i].subset_of(sets[j])) continue;
      dominated = sets[i] != sets[j] || j < i;
    }
    if (!dominated) live.push_back(i);
  }
  return Solver(universe, sets, std::move(live)).solve();
}

}  // namespace ncc
