#include "absint/reducer/ddmin.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>

namespace absint::reducer {

namespace {

class Memo {
 public:
  explicit Memo(const SubsetOracle& o) : oracle_(o) {}

  bool operator()(const Subset& s) {
    {
      std::lock_guard lk(mu_);
      if (auto it = cache_.find(s); it != cache_.end()) return it->second;
    }
    bool r = oracle_(s);
    std::lock_guard lk(mu_);
    cache_.emplace(s, r);
    return r;
  }
  std::size_t calls() const { return cache_.size(); }

 private:
  const SubsetOracle& oracle_;
  std::mutex mu_;
  std::map<Subset, bool> cache_;
};

std::vector<Subset> split(const Subset& c, std::size_t n) {
  std::vector<Subset> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t end = start + (c.size() - start) / (n - i);
    parts.emplace_back(c.begin() + static_cast<long>(start), c.begin() + static_cast<long>(end));
    start = end;
  }
  return parts;
}

Subset minus(const Subset& c, const Subset& part) {
  Subset out;
  std::set_difference(c.begin(), c.end(), part.begin(), part.end(), std::back_inserter(out));
  return out;
}

// Index of the first interesting candidate.
std::optional<std::size_t> first_interesting(const std::vector<Subset>& cands, Memo& memo,
                                             bool parallel) {
  if (!parallel) {
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (memo(cands[i])) return i;
    return std::nullopt;
  }
  const long n = static_cast<long>(cands.size());
  std::vector<char> hit(cands.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) hit[static_cast<std::size_t>(i)] = memo(cands[static_cast<std::size_t>(i)]);
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (hit[i]) return i;
  return std::nullopt;
}

}  // namespace

DdminResult ddmin(std::size_t n, const SubsetOracle& oracle, const DdminOptions& opts) {
  Memo memo(oracle);
  Subset c(n);
  std::iota(c.begin(), c.end(), std::size_t{0});
  if (!memo(c)) throw ReductionError("initial input not interesting");
  DdminResult res;
  if (memo(Subset{})) {
    res.oracle_calls = memo.calls();
    res.reducible = n > 0;
    return res;
  }

  std::size_t parts = 2;
  while (c.size() >= 2) {
    auto subsets = split(c, std::min(parts, c.size()));
    std::vector<Subset> cands = subsets;
    for (const auto& p : subsets) cands.push_back(minus(c, p));
    // Singleton parts and a two-way split make subsets and complements
    // coincide; drop the duplicates so each is probed once.
    if (subsets.size() == 2) cands.resize(2);

    if (auto hit = first_interesting(cands, memo, opts.parallel)) {
      if (*hit < subsets.size()) {
        c = cands[*hit];
        parts = 2;
      } else {
        c = cands[*hit];
        parts = std::max<std::size_t>(subsets.size() - 1, 2);
      }
      continue;
    }
    if (subsets.size() >= c.size()) break;
    parts = std::min(c.size(), subsets.size() * 2);
  }
  res.units = c;
  res.reducible = c.size() < n;
  res.oracle_calls = memo.calls();
  return res;
}

}  // namespace absint::reducer
