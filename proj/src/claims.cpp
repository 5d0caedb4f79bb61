#include "cubesum/claims.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "cubesum/errors.hpp"
#include "cubesum/parallel.hpp"
#include "cubesum/residues.hpp"

namespace cubesum {

namespace {

// Sums of three values from {+1, -1}, reduced mod 9 and mod 7.
constexpr std::array<u64, 4> kThreeUnitCubesMod9 = {1, 3, 6, 8};
constexpr std::array<u64, 4> kThreeUnitCubesMod7 = {1, 3, 4, 6};

bool has_special_part(const Tuple& t) { return std::any_of(t.parts.begin(), t.parts.end(), is_special_prime); }

Tuple tuple_of(std::vector<u64> parts) {
  std::sort(parts.begin(), parts.end());
  Tuple t;
  t.sum = cube_sum(parts);
  t.parts = std::move(parts);
  return t;
}

std::vector<RepresentationRecord> full_scan(u64 n_bound, bool want_in_n, const ClaimOptions& options) {
  ScanOptions scan;
  scan.mode = ScanMode::FullEnumeration;
  scan.threads = options.threads;
  scan.budget_bytes = options.budget_bytes;
  return scan_range(0, n_bound, BaseKind::Primes, 4, [want_in_n](u64 n) { return in_script_n(n) == want_in_n; },
                    scan);
}

}  // namespace

std::string_view to_string(ClaimId id) {
  switch (id) {
    case ClaimId::Eq1Survey: return "eq1";
    case ClaimId::Eq2Survey: return "eq2";
    case ClaimId::Prop1: return "prop1";
    case ClaimId::PrimePowerSurvey: return "m4";
    case ClaimId::Prop2: return "prop2";
    case ClaimId::M6Plus: return "m6";
    case ClaimId::ForwardNecessity: return "forward";
    case ClaimId::Claim237Converse: return "converse237";
  }
  return "unknown";
}

ClaimId claim_for_power(unsigned m) {
  switch (m) {
    case 0: throw std::invalid_argument("exponent m must be >= 1");
    case 1: return ClaimId::Eq1Survey;
    case 2: return ClaimId::Eq2Survey;
    case 3: return ClaimId::Prop1;
    case 4: return ClaimId::PrimePowerSurvey;
    case 5: return ClaimId::Prop2;
    default: return ClaimId::M6Plus;
  }
}

u64 max_power_base(unsigned m) {
  if (m == 0) throw std::invalid_argument("exponent m must be >= 1");
  if (m == 1) return kExactMax;
  auto fits = [m](u64 b) {
    try {
      checked_pow(b, m);
      return true;
    } catch (const RangeError&) {
      return false;
    }
  };
  // lo^m fits; hi^m >= 2^63 does not.
  u64 lo = 1, hi = u64{1} << (63 / m + 1);
  while (hi - lo > 1) {
    const u64 mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

OddPrimeQuadruples::OddPrimeQuadruples(u64 max_target) : max_target_(max_target) {
  const SieveTable table = sieve_primes(icbrt(max_target));
  lookup_.assign(table.limit + 1, false);
  for (u64 p : table.primes) {
    lookup_[p] = true;
    if (p != 2) odd_primes_.push_back(p);
  }
}

void OddPrimeQuadruples::add_with_fixed_part(u64 fixed, u64 rest, std::vector<Tuple>& out) const {
  const u64 c = fixed * fixed * fixed;
  if (rest < c + 2 * 27) return;
  for (const auto& [u, v] : two_cube_splits(rest - c)) {
    if (u % 2 == 1 && v % 2 == 1 && prime(u) && prime(v)) out.push_back(tuple_of({2, fixed, u, v}));
  }
}

std::vector<Tuple> OddPrimeQuadruples::solve(u64 target) const {
  if (target % 2 == 0) throw std::invalid_argument("OddPrimeQuadruples needs an odd target");
  if (target > max_target_) throw std::out_of_range("target exceeds solver capacity");
  std::vector<Tuple> out;

  if (target > 24) {
    const u64 rest = target - 24;
    const u64 z = icbrt(rest);
    if (z * z * z == rest && z % 2 == 1 && prime(z)) out.push_back(tuple_of({2, 2, 2, z}));
  }

  if (target >= 8 + 3 * 27) {
    const u64 rest = target - 8;
    const bool needs_three =
        std::find(kThreeUnitCubesMod9.begin(), kThreeUnitCubesMod9.end(), rest % 9) == kThreeUnitCubesMod9.end();
    const bool needs_seven =
        std::find(kThreeUnitCubesMod7.begin(), kThreeUnitCubesMod7.end(), rest % 7) == kThreeUnitCubesMod7.end();
    if (needs_three) {
      add_with_fixed_part(3, rest, out);
    } else if (needs_seven) {
      add_with_fixed_part(7, rest, out);
    } else {
      for (u64 z : odd_primes_) {
        const u64 cz = z * z * z;
        if (cz > rest - 2 * 27) break;
        if (static_cast<unsigned __int128>(cz) * 3 < rest) continue;
        for (const auto& [x, y] : two_cube_splits(rest - cz)) {
          if (x >= 3 && y <= z && x % 2 == 1 && y % 2 == 1 && prime(x) && prime(y)) out.push_back(tuple_of({2, x, y, z}));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ClaimReport check_prime_power(unsigned m, u64 p_bound, const ClaimOptions& options) {
  ClaimReport report;
  report.claim_id = claim_for_power(m);
  report.bound = p_bound;
  report.m = m;

  const std::vector<u64> primes = sieve_primes(p_bound).primes;
  std::vector<u64> targets;
  targets.reserve(primes.size());
  u64 max_odd = 0, max_target = 2;
  for (u64 p : primes) {
    try {
      targets.push_back(checked_pow(p, m));
    } catch (const RangeError&) {
      throw RangeError("p^m exceeds 2^63-1 for p = " + std::to_string(p) + ", m = " + std::to_string(m));
    }
    max_target = std::max(max_target, targets.back());
    if (targets.back() % 2 == 1) max_odd = std::max(max_odd, targets.back());
  }

  std::optional<OddPrimeQuadruples> odd_solver;
  std::optional<CubeSearcher> searcher;
  if (options.prune) {
    odd_solver.emplace(max_odd);
    if (!primes.empty()) searcher.emplace(BaseKind::Primes, targets.front(), options.budget_bytes);  // 2^m
  } else {
    searcher.emplace(BaseKind::Primes, max_target, options.budget_bytes);
  }

  const std::size_t chunk = 16;
  const std::size_t chunks = (primes.size() + chunk - 1) / chunk;
  std::vector<std::vector<ClaimItem>> found(chunks);
  parallel_chunks(chunks, options.threads, [&](std::size_t c) {
    for (std::size_t i = c * chunk; i < std::min(primes.size(), (c + 1) * chunk); ++i) {
      const u64 t = targets[i];
      std::vector<Tuple> tuples = (options.prune && t % 2 == 1) ? odd_solver->solve(t)
                                                                 : searcher->representations(t, 4).tuples;
      for (auto& tuple : tuples) found[c].push_back({primes[i], std::move(tuple)});
    }
  });
  for (auto& f : found) std::move(f.begin(), f.end(), std::back_inserter(report.solutions));
  report.exhaustive = true;
  return report;
}

ClaimReport verify_forward_necessity(u64 n_bound, const ClaimOptions& options) {
  ClaimReport report;
  report.claim_id = ClaimId::ForwardNecessity;
  report.bound = n_bound;
  for (const auto& rec : full_scan(n_bound, false, options)) {
    for (const auto& t : rec.tuples) (has_special_part(t) ? report.solutions : report.counterexamples).push_back({rec.target, t});
  }
  report.exhaustive = true;
  return report;
}

ClaimReport falsify_claim_237(u64 n_bound, const ClaimOptions& options) {
  ClaimReport report;
  report.claim_id = ClaimId::Claim237Converse;
  report.bound = n_bound;
  for (const auto& rec : full_scan(n_bound, true, options)) {
    for (const auto& t : rec.tuples)
      if (has_special_part(t)) report.counterexamples.push_back({rec.target, t});
  }
  report.exhaustive = true;
  return report;
}

}  // namespace cubesum
