#include "cubesum/basegen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cubesum/errors.hpp"

namespace cubesum {

namespace {

using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

constexpr u64 kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Simple sieve for the base primes of the segmented sieve.
std::vector<u64> small_sieve(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

u64 pollard_brent(u64 n, u64 seed) {
  if (n % 2 == 0) return 2;
  const u64 c = seed % (n - 1) + 1;
  auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
  u64 y = seed % n, x = y, ys = y, g = 1, q = 1;
  constexpr u64 kBatch = 128;
  for (u64 r = 1; g == 1; r <<= 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
        y = f(y);
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
    }
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  for (u64 seed = 2;; ++seed) {
    const u64 d = pollard_brent(n, seed);
    if (d != n) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
}

}  // namespace

std::string_view to_string(BaseKind kind) {
  return kind == BaseKind::Primes ? "primes" : "integers";
}

bool SieveTable::contains(u64 n) const { return std::binary_search(primes.begin(), primes.end(), n); }

SieveTable sieve_primes(u64 limit) {
  SieveTable table;
  table.limit = limit;
  if (limit < 2) return table;
  table.primes.push_back(2);
  if (limit < 3) return table;

  const std::vector<u64> base = small_sieve(isqrt(limit));
  // Segment slot i stands for the odd number lo + 2i.
  constexpr u64 kSegmentSlots = u64{1} << 18;
  std::vector<char> marks(kSegmentSlots);
  for (u64 lo = 3; lo <= limit; lo += 2 * kSegmentSlots) {
    const u64 span_end = std::min(limit, lo + 2 * kSegmentSlots - 1);
    const u64 slots = (span_end - lo) / 2 + 1;
    std::fill(marks.begin(), marks.begin() + static_cast<std::ptrdiff_t>(slots), char{0});
    for (u64 p : base) {
      if (p == 2) continue;
      if (p * p > span_end) break;
      u64 start = std::max(p * p, (lo + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (u64 m = start; m <= span_end; m += 2 * p) marks[(m - lo) / 2] = 1;
    }
    for (u64 i = 0; i < slots; ++i)
      if (!marks[i]) table.primes.push_back(lo + 2 * i);
  }
  return table;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 97 * 97) return true;

  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Jim Sinclair's witness set, exact for n < 2^64.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    a %= n;
    if (a == 0) continue;
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 icbrt(u64 n) {
  auto cube = [](u64 t) { return static_cast<u128>(t) * t * t; };
  u64 t = static_cast<u64>(std::cbrt(static_cast<long double>(n)));
  while (t > 0 && cube(t) > n) --t;
  while (cube(t + 1) <= n) ++t;
  return t;
}

u64 isqrt(u64 n) {
  u64 t = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (t > 0 && static_cast<u128>(t) * t > n) --t;
  while (static_cast<u128>(t + 1) * (t + 1) <= n) ++t;
  return t;
}

u64 checked_add(u64 a, u64 b, std::string_view what) {
  if (a > kExactMax || b > kExactMax - a)
    throw RangeError(std::string(what) + " exceeds 2^63-1 (" + std::to_string(a) + " + " + std::to_string(b) + ")");
  return a + b;
}

u64 checked_mul(u64 a, u64 b, std::string_view what) {
  const u128 p = static_cast<u128>(a) * b;
  if (p > kExactMax)
    throw RangeError(std::string(what) + " exceeds 2^63-1 (" + std::to_string(a) + " * " + std::to_string(b) + ")");
  return static_cast<u64>(p);
}

u64 checked_cube(u64 n) {
  const u128 c = static_cast<u128>(n) * n * n;
  if (n > (u64{1} << 21) || c > kExactMax) throw RangeError("cube of " + std::to_string(n) + " exceeds 2^63-1");
  return static_cast<u64>(c);
}

u64 checked_pow(u64 base, unsigned exp) {
  u64 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    const u128 p = static_cast<u128>(result) * base;
    if (p > kExactMax)
      throw RangeError(std::to_string(base) + "^" + std::to_string(exp) + " exceeds 2^63-1");
    result = static_cast<u64>(p);
  }
  return result;
}

u64 cube_sum(std::span<const u64> parts) {
  u64 total = 0;
  for (u64 p : parts) total = checked_add(total, checked_cube(p), "cube sum");
  return total;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  if (n < 2) return out;
  std::vector<u64> primes;
  for (u64 p : kSmallPrimes) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

std::vector<u64> base_elements(BaseKind kind, u64 max_cube) {
  const u64 top = icbrt(max_cube);
  if (kind == BaseKind::Primes) return sieve_primes(top).primes;
  std::vector<u64> out(top);
  std::iota(out.begin(), out.end(), u64{1});
  return out;
}

bool in_base(BaseKind kind, u64 n) { return kind == BaseKind::Primes ? is_prime(n) : n >= 1; }

}  // namespace cubesum
