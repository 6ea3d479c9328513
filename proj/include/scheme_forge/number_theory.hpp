#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace scheme_forge {

// Small integer helpers shared by the field, Gauss-sum and construction code.
// All moduli fit in 64 bits; products go through 128-bit intermediates.

bool is_prime(std::uint64_t n);

// Prime factorisation by trial division, ascending primes.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Reduces a possibly negative value into [0, m).
std::uint64_t mod_floor(std::int64_t a, std::uint64_t m);

// base^exp, or nullopt when the result exceeds `limit`.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp,
                                         std::uint64_t limit = UINT64_MAX);

std::optional<std::uint64_t> exact_sqrt(std::uint64_t n);

// ord_n(m): least e >= 1 with m^e = 1 (mod n). Throws NotCoprime.
std::uint64_t multiplicative_order(std::uint64_t m, std::uint64_t n);

// The cyclic subgroup <g> of Z_n^*, sorted ascending. Throws NotCoprime.
std::vector<std::uint64_t> cyclic_subgroup(std::uint64_t g, std::uint64_t n);

// [Z_n^* : <g>]
std::uint64_t subgroup_index(std::uint64_t g, std::uint64_t n);

// Legendre symbol (a/p) for odd prime p, in {-1, 0, 1}.
int legendre(std::int64_t a, std::uint64_t p);

}  // namespace scheme_forge
