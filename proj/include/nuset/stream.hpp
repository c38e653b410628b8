#pragma once

// Dependent streams of indexed ν-sets: a prefix plus a head rule producing
// the family of the next dimension from everything below it.  Generated
// levels are memoized in state shared by all streams derived via next().

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nuset/error.hpp"
#include "nuset/indexed.hpp"

namespace nuset {

/// Given the prefix D_{<n}, the family at n.  Must be total over
/// enumerate_frames(prefix, n, n); checked when a level is generated.
using HeadRule = std::function<Family(const IndexedNuSet& prefix)>;

class NuSetStream {
 public:
  NuSetStream(IndexedNuSet base, HeadRule rule)
      : memo_(std::make_shared<Memo>(std::move(base), std::move(rule))), offset_(0) {}

  /// Dimension whose family head() produces.
  int dimension() const { return memo_->base_trunc + 1 + static_cast<int>(offset_); }

  /// The prefix below dimension(), i.e. the state of this stream.
  IndexedNuSet prefix() const { return memo_->upto(dimension() - 1); }

  Family head() const { return memo_->upto(dimension()).family(dimension()); }

  NuSetStream next() const { return NuSetStream(memo_, offset_ + 1); }

  /// The truncation at N: the base itself below its own truncation,
  /// generated levels above it.
  IndexedNuSet take(int N) const { return memo_->upto(N); }

  /// Levels generated so far (shared across derived streams).
  std::size_t generated() const {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    return memo_->levels.size();
  }

 private:
  struct Memo {
    Memo(IndexedNuSet b, HeadRule r)
        : base(std::move(b)), rule(std::move(r)), base_trunc(base.truncation()) {}

    IndexedNuSet upto(int N) {
      if (N < -1)
        throw Error(ErrorKind::DimensionOutOfRange, "cannot take below dimension -1");
      std::lock_guard<std::mutex> lock(mutex);
      if (N <= base_trunc) return base.truncated(N);
      IndexedNuSet cur = base;
      for (const Family& f : levels) cur = cur.extended(f);
      while (cur.truncation() < N) {
        Family f = rule(cur);
        check_total(cur, f);
        levels.push_back(f);
        cur = cur.extended(std::move(f));
      }
      return cur.truncated(N);
    }

    static void check_total(const IndexedNuSet& prefix, const Family& f) {
      const int n = prefix.truncation() + 1;
      std::set<std::string> want;
      for (const Frame& d : enumerate_frames(prefix, n, n)) want.insert(serialize(d));
      for (const auto& entry : f)
        if (!want.erase(entry.first))
          throw Error(ErrorKind::ValidationFailure,
                      "head rule produced orphan frame " + entry.first + " at dimension " +
                          std::to_string(n));
      if (!want.empty())
        throw Error(ErrorKind::ValidationFailure, "head rule missed frame " + *want.begin() +
                                                      " at dimension " + std::to_string(n));
    }

    IndexedNuSet base;
    HeadRule rule;
    int base_trunc;
    std::vector<Family> levels;
    std::mutex mutex;
  };

  NuSetStream(std::shared_ptr<Memo> memo, std::size_t offset)
      : memo_(std::move(memo)), offset_(offset) {}

  std::shared_ptr<Memo> memo_;
  std::size_t offset_;
};

/// Every new full frame gets a one-element fibre.
inline Family singleton_family(const IndexedNuSet& prefix) {
  const int n = prefix.truncation() + 1;
  Family f;
  for (const Frame& d : enumerate_frames(prefix, n, n)) f.emplace(serialize(d), FinSet::sized(1));
  return f;
}

inline NuSetStream extend_singleton(const IndexedNuSet& D) {
  Report r = validate_indexed(D, false);
  if (!r.ok())
    throw Error(ErrorKind::ValidationFailure,
                r.violations.front().kind + ": " + r.violations.front().detail);
  return NuSetStream(D, singleton_family);
}

inline IndexedNuSet take(const NuSetStream& s, int N) { return s.take(N); }

}  // namespace nuset
