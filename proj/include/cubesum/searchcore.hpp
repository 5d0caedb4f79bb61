#pragma once

// Meet-in-the-middle search for representations of an integer as a sum of
// k cubes (k = 3, 4, 5) of base elements.
//
// A 4-term representation e1 <= e2 <= e3 <= e4 is found exactly once, as the
// pair (e1, e2) from the low end of a sorted pair-sum index matched against
// the pair (e3, e4) from the high end with e2 <= e3. k = 3 and k = 5 loop over
// the largest element and fall back to pair lookup and the 4-term sweep.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cubesum/basegen.hpp"

namespace cubesum {

inline constexpr u64 kDefaultBudgetBytes = u64{512} << 20;

struct PairEntry {
  u64 sum;
  std::uint32_t a;
  std::uint32_t b;

  friend bool operator==(const PairEntry&, const PairEntry&) = default;
};

/// All pairs a <= b of base elements with a^3 + b^3 <= max_sum, sorted by
/// (sum, a). Immutable after construction.
class PairSumIndex {
 public:
  /// Throws BudgetError before allocating if the entries would not fit in
  /// budget_bytes, std::invalid_argument if max_sum < 2.
  static PairSumIndex build(BaseKind kind, u64 max_sum, u64 budget_bytes = kDefaultBudgetBytes);

  /// Number of entries build() would create, without allocating them.
  static std::size_t count_entries(BaseKind kind, u64 max_sum);

  BaseKind kind() const { return kind_; }
  u64 max_sum() const { return max_sum_; }
  std::span<const PairEntry> entries() const { return entries_; }
  /// Base elements whose cube is <= max_sum.
  std::span<const u64> base() const { return base_; }

  /// Entries whose sum equals s.
  std::span<const PairEntry> with_sum(u64 s) const;

 private:
  BaseKind kind_ = BaseKind::Primes;
  u64 max_sum_ = 0;
  std::vector<u64> base_;
  std::vector<PairEntry> entries_;
};

struct Tuple {
  std::vector<u64> parts;  // nondecreasing
  u64 sum = 0;

  friend bool operator==(const Tuple& l, const Tuple& r) { return l.parts == r.parts; }
  friend auto operator<=>(const Tuple& l, const Tuple& r) { return l.parts <=> r.parts; }
};

struct RepresentationRecord {
  u64 target = 0;
  BaseKind kind = BaseKind::Primes;
  int k = 4;
  std::vector<Tuple> tuples;  // lexicographic by parts

  std::size_t count() const { return tuples.size(); }
};

enum class ScanMode { Existence, FullEnumeration };

/// Answers representation queries for every target <= max_target from one
/// shared pair index. Safe to share between threads.
class CubeSearcher {
 public:
  CubeSearcher(BaseKind kind, u64 max_target, u64 budget_bytes = kDefaultBudgetBytes);

  BaseKind kind() const { return kind_; }
  u64 max_target() const { return max_target_; }
  const PairSumIndex& index() const { return index_; }

  RepresentationRecord representations(u64 target, int k) const;
  bool is_representable(u64 target, int k) const;
  /// Record holding only the first tuple the search meets (or none).
  RepresentationRecord first_representation(u64 target, int k) const;

 private:
  using Visitor = std::function<bool(std::span<const u64>)>;  // true stops the search
  bool search(u64 target, int k, const Visitor& visit) const;
  bool sweep4(u64 target, u64 max_part, const Visitor& visit) const;
  bool pairs3(u64 target, const Visitor& visit) const;

  BaseKind kind_;
  u64 max_target_;
  PairSumIndex index_;
};

/// Throws std::invalid_argument unless k is 3, 4 or 5.
void require_supported_k(int k);

/// One-shot query; builds an index sized for this target.
RepresentationRecord representations(u64 target, BaseKind kind, int k, u64 budget_bytes = kDefaultBudgetBytes);
bool is_representable(u64 target, BaseKind kind, int k, u64 budget_bytes = kDefaultBudgetBytes);

struct ScanOptions {
  ScanMode mode = ScanMode::Existence;
  unsigned threads = 1;
  u64 budget_bytes = kDefaultBudgetBytes;
};

/// One record per n in [lo, hi] passing the filter, ascending in n. Output
/// does not depend on the thread count.
std::vector<RepresentationRecord> scan_range(u64 lo, u64 hi, BaseKind kind, int k,
                                             const std::function<bool(u64)>& filter, const ScanOptions& options = {});

/// All positive x <= y with x^3 + y^3 = n, ascending in x. Uses the divisor
/// s = x + y of n, so it needs no index and works over the full exact range.
std::vector<std::pair<u64, u64>> two_cube_splits(u64 n);

}  // namespace cubesum
