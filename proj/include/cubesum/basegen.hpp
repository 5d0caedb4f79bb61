#pragma once

// Base element sets (primes, positive integers), their cubes, and the exact
// integer helpers the search relies on: checked cube/power/sum arithmetic,
// integer cube and square roots, deterministic primality and factorisation.

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace cubesum {

using u64 = std::uint64_t;

/// Largest value any cube, power or sum may take.
inline constexpr u64 kExactMax = static_cast<u64>(std::numeric_limits<std::int64_t>::max());

enum class BaseKind { Primes, PositiveIntegers };

std::string_view to_string(BaseKind kind);

/// Ascending list of all primes <= limit.
struct SieveTable {
  u64 limit = 0;
  std::vector<u64> primes;

  bool contains(u64 n) const;
};

/// Segmented sieve of Eratosthenes over odd numbers. Working memory is
/// O(sqrt(limit)) beyond the returned list.
SieveTable sieve_primes(u64 limit);

/// Deterministic for every 64-bit n (Miller-Rabin with a fixed witness set
/// that has no 64-bit pseudoprimes).
bool is_prime(u64 n);

/// Greatest t with t^3 <= n.
u64 icbrt(u64 n);

/// Greatest t with t^2 <= n.
u64 isqrt(u64 n);

u64 checked_add(u64 a, u64 b, std::string_view what = "sum");
u64 checked_mul(u64 a, u64 b, std::string_view what = "product");
u64 checked_cube(u64 n);
u64 checked_pow(u64 base, unsigned exp);

/// Sum of cubes, failing loudly above kExactMax.
u64 cube_sum(std::span<const u64> parts);

/// Prime factorisation as (prime, multiplicity), primes ascending.
/// factorize(0) and factorize(1) are empty.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

/// All elements e of the base with e^3 <= max_cube, ascending.
std::vector<u64> base_elements(BaseKind kind, u64 max_cube);

/// Membership in the base (primality, or n >= 1).
bool in_base(BaseKind kind, u64 n);

}  // namespace cubesum
