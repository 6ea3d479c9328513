#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "scheme_forge/finite_field.hpp"

namespace scheme_forge {

using Complex = std::complex<double>;

/// chi(gamma^j) = exp(2 pi i k j / (q - 1)) relative to the field's gamma.
struct MultChar {
  FieldPtr field;
  std::uint64_t k = 0;

  std::uint64_t order() const;
  bool is_trivial() const { return k % field->group_order() == 0; }
};

// G_q(chi) = sum over F_q^* of psi(x) chi(x), summed directly in double precision.
Complex gauss_sum_direct(const MultChar& chi);

// (-1)^{f-1} (sqrt p*)^f with the principal square root. Throws EvenCharacteristic.
Complex gauss_sum_quadratic(std::uint32_t p, std::uint32_t f);

// Number of reduced primitive forms of discriminant -p1. Throws BadDiscriminant
// unless p1 is a prime with p1 = 3 (mod 4) and p1 > 3.
std::uint32_t class_number(std::uint32_t p1);

struct BC {
  std::int64_t b = 0;
  std::int64_t c = 0;  // c >= 0
};

// 4 p^h = b^2 + p1 c^2 with b p^{(f-h)/2} = -2 (mod p1). Throws NoSolution.
BC solve_bc(std::uint32_t p, std::uint32_t p1, std::uint32_t h, std::uint64_t f);

struct Index2Params {
  std::uint32_t p = 0;
  std::uint32_t p1 = 0;
  std::uint32_t m = 1;
  std::uint32_t h = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::uint64_t f = 0;  // phi(2 p1^m) / 2
  std::uint64_t N = 0;  // 2 p1^m

  // Validates the index-2 setting and derives h, b, c, f. Throws PreconditionViolated.
  static Index2Params make(std::uint32_t p, std::uint32_t p1, std::uint32_t m = 1);
};

// Closed-form G(chi^j) for chi of order N = 2 p1^m, lifted to F_{q^s} by
// Davenport-Hasse. `c_sign` selects the sign of c (the prime-ideal choice).
// Throws PreconditionViolated for s = 0.
Complex gauss_sum_index2(const Index2Params& params, std::int64_t j, std::uint32_t s, int c_sign = 1);

struct DavenportHasse {
  Complex lifted_direct;
  Complex lifted_formula;
};

// Direct G_{q^s}(chi o Norm) against (-1)^{s-1} G_q(chi)^s. chi lives on the
// subfield F_q of a freshly built F_{q^s}. Throws FieldTooLarge.
DavenportHasse davenport_hasse_check(const MultChar& chi, std::uint32_t s,
                                     std::uint64_t cap = kDefaultFieldCap);

struct Index2Entry {
  std::uint64_t j = 0;
  Complex direct;
  Complex formula;
  double abs_err = 0.0;
};

struct Index2Discrepancy {
  Index2Params params;
  std::uint32_t s = 1;
  std::uint64_t q = 0;  // order of the field the sums live in
  int sigma = 1;        // formula exponent = sigma * j
  int c_sign = 1;
  double max_abs_err = 0.0;
  std::vector<Index2Entry> entries;  // j = 0 .. N-1
};

// Compares the closed forms with direct sums for every power of the order-N
// character of F_{q^s}, keeping the best global (sigma, c_sign) choice.
Index2Discrepancy index2_discrepancy(const Index2Params& params, std::uint32_t s = 1,
                                     std::uint64_t cap = kDefaultFieldCap);

}  // namespace scheme_forge
