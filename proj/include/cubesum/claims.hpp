#pragma once

// Bounded exhaustive checks of statements about sums of four prime cubes:
// which prime powers p^m are such sums, whether every representation of an
// integer outside N uses 2, 3 or 7, and a search for integers in N that have
// a representation using 2, 3 or 7.

#include <string_view>
#include <vector>

#include "cubesum/basegen.hpp"
#include "cubesum/searchcore.hpp"

namespace cubesum {

enum class ClaimId {
  Eq1Survey,         // p = sum, m = 1
  Eq2Survey,         // p^2 = sum
  Prop1,             // p^3 = sum has no solutions
  PrimePowerSurvey,  // m = 4
  Prop2,             // p^5 = sum only for p = 2
  M6Plus,            // p^m = sum has no solutions for m >= 6
  ForwardNecessity,
  Claim237Converse,
};

std::string_view to_string(ClaimId id);
ClaimId claim_for_power(unsigned m);

struct ClaimItem {
  u64 value = 0;  // p for prime-power checks, n otherwise
  Tuple tuple;
};

struct ClaimReport {
  ClaimId claim_id = ClaimId::Eq1Survey;
  u64 bound = 0;    // p_bound for prime powers, n_bound otherwise
  unsigned m = 0;   // exponent, prime-power checks only
  std::vector<ClaimItem> solutions;
  std::vector<ClaimItem> counterexamples;
  bool exhaustive = false;
};

struct ClaimOptions {
  /// Use the parity/residue reduction for odd targets. Off means every
  /// target goes through the meet-in-the-middle searcher.
  bool prune = true;
  unsigned threads = 1;
  u64 budget_bytes = kDefaultBudgetBytes;
};

/// Largest b with b^m <= 2^63 - 1.
u64 max_power_base(unsigned m);

/// Every representation of p^m as four prime cubes for primes p <= p_bound.
/// Throws RangeError naming the first p whose power overflows.
ClaimReport check_prime_power(unsigned m, u64 p_bound, const ClaimOptions& options = {});

/// For n <= n_bound outside N, every four-prime-cube representation must use
/// 2, 3 or 7. Consistent representations are listed as solutions, any
/// representation avoiding {2, 3, 7} as a counterexample.
ClaimReport verify_forward_necessity(u64 n_bound, const ClaimOptions& options = {});

/// Counterexamples to "a representation using 2, 3 or 7 forces n outside N":
/// every (n, tuple) with n <= n_bound, n in N and some part in {2, 3, 7}.
ClaimReport falsify_claim_237(u64 n_bound, const ClaimOptions& options = {});

/// Four-prime-cube representations of odd targets without a pair index.
///
/// An odd sum of four prime cubes has an odd number of parts equal to 2, so it
/// is 2^3 * 3 + z^3 or 2^3 + x^3 + y^3 + z^3 with odd primes x <= y <= z.
/// Cubes of primes other than 3 are +-1 mod 9, and of primes other than 7 are
/// +-1 mod 7; when target - 8 is not a sum of three such residues, one of
/// x, y, z must be 3 (or 7) and the rest is a two-cube equation. Otherwise z
/// is enumerated and each remainder solved as a two-cube equation.
class OddPrimeQuadruples {
 public:
  explicit OddPrimeQuadruples(u64 max_target);

  /// All representations of an odd target, lexicographically sorted.
  std::vector<Tuple> solve(u64 target) const;

 private:
  bool prime(u64 n) const { return n < lookup_.size() && lookup_[n]; }
  void add_with_fixed_part(u64 fixed, u64 rest, std::vector<Tuple>& out) const;

  u64 max_target_;
  std::vector<u64> odd_primes_;
  std::vector<bool> lookup_;
};

}  // namespace cubesum
