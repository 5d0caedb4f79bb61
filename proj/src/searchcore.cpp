#include "cubesum/searchcore.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "cubesum/errors.hpp"
#include "cubesum/parallel.hpp"

namespace cubesum {

namespace {

using u128 = unsigned __int128;

std::vector<u64> cubes_of(std::span<const u64> base) {
  std::vector<u64> cubes;
  cubes.reserve(base.size());
  for (u64 e : base) cubes.push_back(checked_cube(e));
  return cubes;
}

// Every emitted tuple is re-checked against its target.
void check_emission(std::span<const u64> parts, u64 target) {
  if (cube_sum(parts) != target) throw std::logic_error("emitted tuple does not sum to " + std::to_string(target));
}

Tuple make_tuple(std::span<const u64> parts, u64 target) {
  check_emission(parts, target);
  Tuple t;
  t.parts.assign(parts.begin(), parts.end());
  t.sum = target;
  return t;
}

void collect_divisors(const std::vector<std::pair<u64, unsigned>>& factors, std::size_t i, u64 current, u64 limit,
                      std::vector<u64>& out) {
  if (i == factors.size()) {
    out.push_back(current);
    return;
  }
  const auto [p, mult] = factors[i];
  u64 d = current;
  for (unsigned e = 0; e <= mult; ++e) {
    collect_divisors(factors, i + 1, d, limit, out);
    if (e == mult || static_cast<u128>(d) * p > limit) break;
    d *= p;
  }
}

}  // namespace

void require_supported_k(int k) {
  if (k < 3 || k > 5) throw std::invalid_argument("k must be 3, 4 or 5 (got " + std::to_string(k) + ")");
}

std::size_t PairSumIndex::count_entries(BaseKind kind, u64 max_sum) {
  const std::vector<u64> base = base_elements(kind, max_sum);
  const std::vector<u64> cubes = cubes_of(base);
  std::size_t count = 0;
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    const u64 room = max_sum - cubes[i];
    if (cubes[i] > room) break;
    count += static_cast<std::size_t>(std::upper_bound(cubes.begin() + static_cast<std::ptrdiff_t>(i), cubes.end(), room) -
                                      (cubes.begin() + static_cast<std::ptrdiff_t>(i)));
  }
  return count;
}

PairSumIndex PairSumIndex::build(BaseKind kind, u64 max_sum, u64 budget_bytes) {
  if (max_sum < 2) throw std::invalid_argument("pair index needs max_sum >= 2");
  if (max_sum > kExactMax) throw RangeError("pair index max_sum " + std::to_string(max_sum) + " exceeds 2^63-1");

  const std::size_t count = count_entries(kind, max_sum);
  const u128 bytes = static_cast<u128>(count) * sizeof(PairEntry);
  if (bytes > budget_bytes) {
    throw BudgetError("pair index for max_sum " + std::to_string(max_sum) + " needs " + std::to_string(count) +
                      " entries (" + std::to_string(static_cast<u64>(bytes)) + " bytes), budget is " +
                      std::to_string(budget_bytes) + " bytes");
  }

  PairSumIndex index;
  index.kind_ = kind;
  index.max_sum_ = max_sum;
  index.base_ = base_elements(kind, max_sum);
  const std::vector<u64> cubes = cubes_of(index.base_);
  index.entries_.reserve(count);
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    const u64 room = max_sum - cubes[i];
    if (cubes[i] > room) break;
    for (std::size_t j = i; j < cubes.size() && cubes[j] <= room; ++j) {
      index.entries_.push_back({cubes[i] + cubes[j], static_cast<std::uint32_t>(index.base_[i]),
                                static_cast<std::uint32_t>(index.base_[j])});
    }
  }
  std::sort(index.entries_.begin(), index.entries_.end(), [](const PairEntry& l, const PairEntry& r) {
    return l.sum != r.sum ? l.sum < r.sum : l.a < r.a;
  });
  return index;
}

std::span<const PairEntry> PairSumIndex::with_sum(u64 s) const {
  auto lo = std::lower_bound(entries_.begin(), entries_.end(), s, [](const PairEntry& e, u64 v) { return e.sum < v; });
  auto hi = std::upper_bound(lo, entries_.end(), s, [](u64 v, const PairEntry& e) { return v < e.sum; });
  return {lo, hi};
}

CubeSearcher::CubeSearcher(BaseKind kind, u64 max_target, u64 budget_bytes)
    : kind_(kind), max_target_(max_target), index_(PairSumIndex::build(kind, std::max<u64>(max_target, 2), budget_bytes)) {}

bool CubeSearcher::sweep4(u64 target, u64 max_part, const Visitor& visit) const {
  const auto entries = index_.entries();
  const auto end =
      std::upper_bound(entries.begin(), entries.end(), target, [](u64 v, const PairEntry& e) { return v < e.sum; });
  if (end == entries.begin()) return false;
  std::size_t i = 0;
  std::size_t j = static_cast<std::size_t>(end - entries.begin()) - 1;
  const std::size_t stop = j + 1;
  std::array<u64, 4> parts{};
  while (i <= j) {
    const u64 left = entries[i].sum;
    if (left > target - left) break;  // the low pair never outweighs the high pair
    const u64 right = entries[j].sum;
    const u64 s = left + right;
    if (s < target) {
      ++i;
    } else if (s > target) {
      if (j == 0) break;
      --j;
    } else {
      std::size_t i_end = i;
      while (i_end < stop && entries[i_end].sum == left) ++i_end;
      std::size_t j_begin = j;
      while (j_begin > 0 && entries[j_begin - 1].sum == right) --j_begin;
      for (std::size_t l = i; l < i_end; ++l) {
        for (std::size_t r = j_begin; r <= j; ++r) {
          const PairEntry& lo = entries[l];
          const PairEntry& hi = entries[r];
          if (lo.b > hi.a || hi.b > max_part) continue;
          parts = {lo.a, lo.b, hi.a, hi.b};
          if (visit(parts)) return true;
        }
      }
      if (left == right || j_begin == 0) break;
      i = i_end;
      j = j_begin - 1;
    }
  }
  return false;
}

bool CubeSearcher::pairs3(u64 target, const Visitor& visit) const {
  std::array<u64, 3> parts{};
  for (u64 e : index_.base()) {
    const u64 c = e * e * e;
    if (c > target) break;
    if (static_cast<u128>(c) * 3 < target) continue;
    for (const PairEntry& p : index_.with_sum(target - c)) {
      if (p.b > e) continue;
      parts = {p.a, p.b, e};
      if (visit(parts)) return true;
    }
  }
  return false;
}

bool CubeSearcher::search(u64 target, int k, const Visitor& visit) const {
  require_supported_k(k);
  if (target > max_target_)
    throw std::out_of_range("target " + std::to_string(target) + " exceeds searcher capacity " +
                            std::to_string(max_target_));
  switch (k) {
    case 3:
      return pairs3(target, visit);
    case 4:
      return sweep4(target, UINT64_MAX, visit);
    default: {
      std::array<u64, 5> parts{};
      for (u64 e : index_.base()) {
        const u64 c = e * e * e;
        if (c > target) break;
        if (static_cast<u128>(c) * 5 < target) continue;
        const bool stop = sweep4(target - c, e, [&](std::span<const u64> four) {
          std::copy(four.begin(), four.end(), parts.begin());
          parts[4] = e;
          return visit(parts);
        });
        if (stop) return true;
      }
      return false;
    }
  }
}

RepresentationRecord CubeSearcher::representations(u64 target, int k) const {
  RepresentationRecord rec{target, kind_, k, {}};
  search(target, k, [&](std::span<const u64> parts) {
    rec.tuples.push_back(make_tuple(parts, target));
    return false;
  });
  std::sort(rec.tuples.begin(), rec.tuples.end());
  return rec;
}

RepresentationRecord CubeSearcher::first_representation(u64 target, int k) const {
  RepresentationRecord rec{target, kind_, k, {}};
  search(target, k, [&](std::span<const u64> parts) {
    rec.tuples.push_back(make_tuple(parts, target));
    return true;
  });
  return rec;
}

bool CubeSearcher::is_representable(u64 target, int k) const {
  return search(target, k, [&](std::span<const u64> parts) {
    check_emission(parts, target);
    return true;
  });
}

RepresentationRecord representations(u64 target, BaseKind kind, int k, u64 budget_bytes) {
  require_supported_k(k);
  return CubeSearcher(kind, target, budget_bytes).representations(target, k);
}

bool is_representable(u64 target, BaseKind kind, int k, u64 budget_bytes) {
  require_supported_k(k);
  return CubeSearcher(kind, target, budget_bytes).is_representable(target, k);
}

std::vector<RepresentationRecord> scan_range(u64 lo, u64 hi, BaseKind kind, int k,
                                             const std::function<bool(u64)>& filter, const ScanOptions& options) {
  require_supported_k(k);
  if (lo > hi) throw std::invalid_argument("scan range is empty (lo > hi)");
  const CubeSearcher searcher(kind, hi, options.budget_bytes);

  const u64 length = hi - lo + 1;
  const u64 chunk = std::max<u64>(256, length / (u64{std::max(1u, options.threads)} * 16) + 1);
  const std::size_t chunks = static_cast<std::size_t>((length - 1) / chunk + 1);
  std::vector<std::vector<RepresentationRecord>> parts(chunks);
  parallel_chunks(chunks, options.threads, [&](std::size_t c) {
    const u64 first = lo + c * chunk;
    const u64 last = std::min(hi, first + (chunk - 1));
    for (u64 n = first;; ++n) {
      if (!filter || filter(n)) {
        parts[c].push_back(options.mode == ScanMode::Existence ? searcher.first_representation(n, k)
                                                               : searcher.representations(n, k));
      }
      if (n == last) break;
    }
  });
  std::vector<RepresentationRecord> out;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
  return out;
}

std::vector<std::pair<u64, u64>> two_cube_splits(u64 n) {
  std::vector<std::pair<u64, u64>> out;
  if (n < 2) return out;
  // Cubes are 0 or +-1 mod 9 and mod 7.
  const u64 r9 = n % 9, r7 = n % 7;
  if ((r9 >= 3 && r9 <= 6) || r7 == 3 || r7 == 4) return out;
  // x^3 + y^3 = s (s^2 - 3xy) with s = x + y, and s^2/4 <= s^2 - 3xy <= s^2,
  // so s divides n and n <= s^3 <= 4n.
  const u64 s_min = icbrt(n - 1) + 1;
  const u64 s_max = icbrt(static_cast<u64>(std::min<u128>(static_cast<u128>(n) * 4, UINT64_MAX)));
  std::vector<u64> divisors;
  collect_divisors(factorize(n), 0, 1, s_max, divisors);
  std::sort(divisors.begin(), divisors.end());
  for (u64 s : divisors) {
    if (s < s_min || s > s_max) continue;
    const u64 q = n / s;
    const u64 s2 = s * s;
    if (q >= s2 || (s2 - q) % 3 != 0) continue;
    const u64 product = (s2 - q) / 3;
    if (static_cast<u128>(product) * 4 > s2) continue;
    const u64 disc = s2 - 4 * product;
    const u64 r = isqrt(disc);
    if (r * r != disc || (s - r) % 2 != 0) continue;
    const u64 x = (s - r) / 2;
    const u64 y = (s + r) / 2;
    if (x == 0) continue;
    out.emplace_back(x, y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cubesum
