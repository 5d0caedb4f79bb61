#pragma once

#include <array>

#include "cubesum/basegen.hpp"

namespace cubesum {

// Residues excluded from the set N, written as nonnegative representatives:
// +-1, +-3 mod 9 and +-1 mod 7.
inline constexpr std::array<unsigned, 4> kExcludedMod9 = {1, 3, 6, 8};
inline constexpr std::array<unsigned, 2> kExcludedMod7 = {1, 6};

struct ResidueProfile {
  u64 n = 0;
  bool is_even = false;
  unsigned mod9 = 0;
  unsigned mod7 = 0;
  bool in_script_n = false;
};

ResidueProfile residue_profile(u64 n);

/// Membership in N: 2 | n, n mod 9 not in {1,3,6,8}, n mod 7 not in {1,6}.
bool in_script_n(u64 n);

/// Admissible residue r for four-prime-cube progressions. The three
/// congruence conditions on r are exactly the ones defining N, so this is
/// in_script_n(r).
inline bool admissible_r(u64 r) { return in_script_n(r); }

/// Primes that can make a four-prime-cube sum leave N.
inline bool is_special_prime(u64 p) { return p == 2 || p == 3 || p == 7; }

}  // namespace cubesum
