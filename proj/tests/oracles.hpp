#pragma once

// Independent reference implementations used only by the tests. None of these
// touch the library's tables; they work from first principles so that an
// agreement is evidence rather than a tautology.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using Poly = std::vector<std::int64_t>;  // constant term first

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& modulus, std::int64_t p) {
  const std::size_t f = modulus.size() - 1;
  std::vector<std::int64_t> prod(2 * f, 0);
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (std::size_t k = prod.size(); k-- > f;) {
    const std::int64_t lead = prod[k];
    if (lead == 0) continue;
    for (std::size_t t = 0; t <= f; ++t) prod[k - f + t] = ((prod[k - f + t] - lead * modulus[t]) % p + p) % p;
  }
  prod.resize(f);
  return prod;
}

inline std::uint32_t encode(const Poly& a, std::int64_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * p + static_cast<std::uint64_t>(a[i]);
  return static_cast<std::uint32_t>(v);
}

inline Poly decode(std::uint32_t x, std::int64_t p, std::size_t f) {
  Poly a(f, 0);
  for (std::size_t i = 0; i < f; ++i, x /= p) a[i] = x % p;
  return a;
}

// Powers gamma^0 .. gamma^{q-2} of x modulo `modulus`, as encoded elements.
inline std::vector<std::uint32_t> powers_of_x(const Poly& modulus, std::int64_t p) {
  const std::size_t f = modulus.size() - 1;
  std::uint64_t q = 1;
  for (std::size_t i = 0; i < f; ++i) q *= p;
  Poly x(f, 0), cur(f, 0);
  cur[0] = 1;
  if (f == 1) {
    x[0] = ((-modulus[0]) % p + p) % p;
  } else {
    x[1] = 1;
  }
  std::vector<std::uint32_t> out;
  for (std::uint64_t e = 0; e + 1 < q; ++e) {
    out.push_back(encode(cur, p));
    cur = poly_mulmod(cur, x, modulus, p);
  }
  return out;
}

// Absolute trace as the sum of Frobenius conjugates, computed by repeated p-th powering.
inline std::int64_t trace(const Poly& a, const Poly& modulus, std::int64_t p) {
  const std::size_t f = modulus.size() - 1;
  Poly sum(f, 0), cur = a;
  for (std::size_t k = 0; k < f; ++k) {
    for (std::size_t i = 0; i < f; ++i) sum[i] = (sum[i] + cur[i]) % p;
    Poly next(f, 0);
    next[0] = 1;
    for (std::int64_t t = 0; t < p; ++t) next = poly_mulmod(next, cur, modulus, p);
    cur = next;
  }
  for (std::size_t i = 1; i < f; ++i) {
    if (sum[i] != 0) return -1;  // not in the prime field: broken oracle input
  }
  return sum[0];
}

inline std::complex<double> root_of_unity(std::int64_t k, std::int64_t n) {
  const double t = 2.0 * std::numbers::pi * static_cast<double>(((k % n) + n) % n) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

// Class number of Q(sqrt(-p1)) for a prime p1 = 3 (mod 4), p1 > 3, from the
// analytic formula h = -(1/p1) sum_{a=1}^{p1-1} a (a/p1).
inline std::int64_t analytic_class_number(std::int64_t p1) {
  std::int64_t sum = 0;
  for (std::int64_t a = 1; a < p1; ++a) {
    std::int64_t r = 1, base = a, e = (p1 - 1) / 2;
    while (e > 0) {
      if (e & 1) r = r * base % p1;
      base = base * base % p1;
      e >>= 1;
    }
    sum += a * (r == 1 ? 1 : -1);
  }
  return -sum / p1;
}

}  // namespace oracle
