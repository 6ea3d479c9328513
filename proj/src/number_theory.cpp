#include "scheme_forge/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "scheme_forge/error.hpp"

namespace scheme_forge {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto& [prime, e] : factorize(n)) out.push_back(prime);
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto& [prime, e] : factorize(n)) phi = phi / prime * (prime - 1);
  return phi;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t mod_floor(std::int64_t a, std::uint64_t m) {
  const auto sm = static_cast<std::int64_t>(m);
  std::int64_t r = a % sm;
  if (r < 0) r += sm;
  return static_cast<std::uint64_t>(r);
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > limit / base) return std::nullopt;
    result *= base;
  }
  if (result > limit) return std::nullopt;
  return result;
}

std::optional<std::uint64_t> exact_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r == n) return r;
  return std::nullopt;
}

std::uint64_t multiplicative_order(std::uint64_t m, std::uint64_t n) {
  if (n == 0 || std::gcd(m, n) != 1) {
    throw Error(ErrorCode::NotCoprime,
                "ord_" + std::to_string(n) + "(" + std::to_string(m) + ") is undefined");
  }
  if (n == 1) return 1;
  // The order divides phi(n); strip prime factors while the power stays 1.
  std::uint64_t order = euler_phi(n);
  for (const auto& [prime, e] : factorize(order)) {
    for (unsigned i = 0; i < e && order % prime == 0; ++i) {
      if (pow_mod(m, order / prime, n) != 1) break;
      order /= prime;
    }
  }
  return order;
}

std::vector<std::uint64_t> cyclic_subgroup(std::uint64_t g, std::uint64_t n) {
  const std::uint64_t order = multiplicative_order(g, n);
  std::vector<std::uint64_t> out;
  out.reserve(order);
  std::uint64_t x = 1 % n;
  for (std::uint64_t i = 0; i < order; ++i) {
    out.push_back(x);
    x = mul_mod(x, g, n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t subgroup_index(std::uint64_t g, std::uint64_t n) {
  return euler_phi(n) / multiplicative_order(g, n);
}

int legendre(std::int64_t a, std::uint64_t p) {
  const std::uint64_t r = mod_floor(a, p);
  if (r == 0) return 0;
  return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace scheme_forge
