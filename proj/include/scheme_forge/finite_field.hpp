#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace scheme_forge {

// Field elements are encoded as integers 0..q-1 whose base-p digits are the
// coefficients of the polynomial representative (digit i <-> x^i).
using Element = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 26;
inline constexpr std::uint32_t kNoLog = UINT32_MAX;

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// A concrete model of F_{p^f} with full log / antilog / trace tables.
///
/// The modulus is the lexicographically least (constant term first) monic
/// primitive polynomial of degree f, skipping `seed` earlier ones when a seed
/// is given. Its root is the primitive element gamma. Instances are immutable
/// and safe to share between threads.
class FieldSpec {
 public:
  static FieldPtr build(std::uint32_t p, std::uint32_t f, std::optional<std::uint64_t> seed = {},
                        std::uint64_t cap = kDefaultFieldCap);

  // Rebuilds the tables for an explicit modulus (constant term first, monic).
  // Throws PreconditionViolated when the polynomial is not primitive.
  static FieldPtr from_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus,
                               std::uint64_t cap = kDefaultFieldCap);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return f_; }
  std::uint32_t order() const { return q_; }
  std::uint32_t group_order() const { return q_ - 1; }

  // Coefficients of the modulus, constant term first; size degree()+1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Element gamma() const { return antilog_[1 % (q_ - 1)]; }
  std::vector<std::uint32_t> coefficients(Element x) const;
  Element from_coefficients(std::span<const std::uint32_t> coeffs) const;

  bool contains(Element x) const { return x < q_; }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t e) const;
  Element frobenius(Element a) const { return pow(a, p_); }

  // Checked accessors (InvalidElement / ZeroElement).
  std::uint32_t trace(Element x) const;
  std::uint32_t discrete_log(Element x) const;

  // Unchecked table lookups for inner loops.
  std::uint32_t trace_of(Element x) const { return trace_[x]; }
  std::uint32_t log_of(Element x) const { return log_[x]; }
  Element exp(std::uint64_t e) const { return antilog_[e % (q_ - 1)]; }
  // log(1 - gamma^e), or kNoLog when gamma^e == 1.
  std::uint32_t one_minus_log(std::uint64_t e) const { return zech_[e % (q_ - 1)]; }
  // Exponent of -1, i.e. (q-1)/2 in odd characteristic and 0 otherwise.
  std::uint32_t minus_one_log() const { return p_ == 2 ? 0 : (q_ - 1) / 2; }

 private:
  FieldSpec(std::uint32_t p, std::uint32_t f, std::vector<std::uint32_t> modulus);
  void build_tables();

  std::uint32_t p_;
  std::uint32_t f_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> digit_weight_;
  std::vector<Element> antilog_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> trace_;
  std::vector<std::uint32_t> zech_;
};

// True when the monic `modulus` over F_p is primitive (its root generates the
// multiplicative group of F_p[x]/(modulus)), which also implies irreducibility.
bool is_primitive_polynomial(std::uint32_t p, std::span<const std::uint32_t> modulus);

}  // namespace scheme_forge
