#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace scheme_forge {

/// An exact element of Z[xi_n] for prime n, stored in the reduced power basis
/// 1, xi, ..., xi^{n-2}. The representation is canonical, so equality is
/// coefficient equality.
///
/// Coefficients are 64-bit; every arithmetic step is overflow-checked and
/// throws ArithmeticOverflow rather than wrapping.
class CycInt {
 public:
  CycInt() = default;
  explicit CycInt(std::uint32_t n);  // zero; throws NotPrime

  static CycInt integer(std::uint32_t n, std::int64_t value);
  static CycInt root_power(std::uint32_t n, std::int64_t k);  // xi_n^k
  // Sum_t counts[t] * xi_n^t for a vector of length n (exponents mod n).
  static CycInt from_exponent_counts(std::uint32_t n, std::span<const std::int64_t> counts);

  std::uint32_t conductor() const { return n_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  std::int64_t rational_value() const;  // precondition: is_rational()

  CycInt& operator+=(const CycInt& other);
  CycInt& operator-=(const CycInt& other);
  CycInt& operator*=(std::int64_t k);

  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(CycInt a, std::int64_t k) { return a *= k; }
  friend CycInt operator*(std::int64_t k, CycInt a) { return a *= k; }
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  CycInt operator-() const;

  // Galois action xi -> xi^s. Throws NotCoprime unless gcd(s, n) = 1.
  CycInt conjugate(std::int64_t s) const;
  CycInt complex_conjugate() const { return conjugate(-1); }

  // Evaluation at xi_n = exp(2 pi i / n).
  std::complex<double> embed() const;

  friend bool operator==(const CycInt&, const CycInt&) = default;
  friend std::strong_ordering operator<=>(const CycInt& a, const CycInt& b);

 private:
  void require_same(const CycInt& other) const;
  // Reduces a length-n exponent vector into canonical form.
  static CycInt reduce(std::uint32_t n, std::vector<std::int64_t> full);

  std::uint32_t n_ = 0;
  std::vector<std::int64_t> c_;
};

}  // namespace scheme_forge
