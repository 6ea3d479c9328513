#include "scheme_forge/cyclotomic_integer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "scheme_forge/error.hpp"
#include "scheme_forge/number_theory.hpp"

namespace scheme_forge {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::ArithmeticOverflow, "CycInt addition");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::ArithmeticOverflow, "CycInt subtraction");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::ArithmeticOverflow, "CycInt product");
  return r;
}

}  // namespace

CycInt::CycInt(std::uint32_t n) : n_(n) {
  if (!is_prime(n)) throw Error(ErrorCode::NotPrime, "conductor " + std::to_string(n) + " is not prime");
  c_.assign(n - 1, 0);
}

CycInt CycInt::integer(std::uint32_t n, std::int64_t value) {
  CycInt out(n);
  out.c_[0] = value;
  return out;
}

CycInt CycInt::root_power(std::uint32_t n, std::int64_t k) {
  std::vector<std::int64_t> full(n, 0);
  CycInt probe(n);  // validates n
  full[mod_floor(k, n)] = 1;
  return reduce(n, std::move(full));
}

CycInt CycInt::from_exponent_counts(std::uint32_t n, std::span<const std::int64_t> counts) {
  if (counts.size() != n) {
    throw Error(ErrorCode::ConductorMismatch, "exponent count vector must have length n");
  }
  CycInt probe(n);
  return reduce(n, std::vector<std::int64_t>(counts.begin(), counts.end()));
}

CycInt CycInt::reduce(std::uint32_t n, std::vector<std::int64_t> full) {
  // xi^{n-1} = -(1 + xi + ... + xi^{n-2})
  CycInt out;
  out.n_ = n;
  out.c_.resize(n - 1);
  const std::int64_t top = full[n - 1];
  for (std::uint32_t i = 0; i + 1 < n; ++i) out.c_[i] = checked_sub(full[i], top);
  return out;
}

bool CycInt::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v == 0; });
}

bool CycInt::is_rational() const {
  return std::all_of(c_.begin() + (c_.empty() ? 0 : 1), c_.end(), [](std::int64_t v) { return v == 0; });
}

std::int64_t CycInt::rational_value() const { return c_.empty() ? 0 : c_[0]; }

void CycInt::require_same(const CycInt& other) const {
  if (n_ != other.n_) {
    throw Error(ErrorCode::ConductorMismatch,
                "conductors " + std::to_string(n_) + " and " + std::to_string(other.n_));
  }
}

CycInt& CycInt::operator+=(const CycInt& other) {
  require_same(other);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = checked_add(c_[i], other.c_[i]);
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& other) {
  require_same(other);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = checked_sub(c_[i], other.c_[i]);
  return *this;
}

CycInt& CycInt::operator*=(std::int64_t k) {
  for (auto& v : c_) v = checked_mul(v, k);
  return *this;
}

CycInt CycInt::operator-() const {
  CycInt out = *this;
  out *= -1;
  return out;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
  a.require_same(b);
  const std::uint32_t n = a.n_;
  std::vector<std::int64_t> full(n, 0);
  for (std::uint32_t i = 0; i + 1 < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::uint32_t j = 0; j + 1 < n; ++j) {
      const std::uint32_t k = (i + j) % n;
      full[k] = checked_add(full[k], checked_mul(a.c_[i], b.c_[j]));
    }
  }
  return CycInt::reduce(n, std::move(full));
}

CycInt CycInt::conjugate(std::int64_t s) const {
  if (std::gcd(mod_floor(s, n_), std::uint64_t{n_}) != 1) {
    throw Error(ErrorCode::NotCoprime, "Galois exponent " + std::to_string(s) + " is not a unit");
  }
  const std::uint64_t su = mod_floor(s, n_);
  std::vector<std::int64_t> full(n_, 0);
  for (std::uint32_t i = 0; i + 1 < n_; ++i) full[(su * i) % n_] = c_[i];
  return reduce(n_, std::move(full));
}

std::complex<double> CycInt::embed() const {
  std::complex<double> sum{0.0, 0.0};
  for (std::uint32_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / n_;
    sum += static_cast<double>(c_[i]) * std::polar(1.0, angle);
  }
  return sum;
}

std::strong_ordering operator<=>(const CycInt& a, const CycInt& b) {
  if (auto cmp = a.n_ <=> b.n_; cmp != 0) return cmp;
  return a.c_ <=> b.c_;
}

}  // namespace scheme_forge
