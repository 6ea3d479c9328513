#include "scheme_forge/finite_field.hpp"

#include <string>

#include "scheme_forge/error.hpp"
#include "scheme_forge/number_theory.hpp"

namespace scheme_forge {
namespace {

using Poly = std::vector<std::uint64_t>;

// (a * b) mod modulus, all coefficient vectors of length f (modulus monic of degree f).
Poly poly_mulmod(const Poly& a, const Poly& b, std::span<const std::uint32_t> modulus,
                 std::uint64_t p) {
  const std::size_t f = modulus.size() - 1;
  std::vector<std::uint64_t> prod(2 * f, 0);
  for (std::size_t i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (std::size_t k = 2 * f - 1; k >= f; --k) {
    const std::uint64_t lead = prod[k];
    if (lead == 0) continue;
    prod[k] = 0;
    for (std::size_t i = 0; i < f; ++i) {
      prod[k - f + i] = (prod[k - f + i] + (p - lead) * modulus[i]) % p;
    }
  }
  prod.resize(f);
  return prod;
}

Poly poly_powmod_x(std::uint64_t e, std::span<const std::uint32_t> modulus, std::uint64_t p) {
  const std::size_t f = modulus.size() - 1;
  Poly result(f, 0);
  result[0] = 1;
  Poly base(f, 0);
  if (f == 1) {
    base[0] = (p - modulus[0]) % p;
  } else {
    base[1] = 1;
  }
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, modulus, p);
    base = poly_mulmod(base, base, modulus, p);
    e >>= 1;
  }
  return result;
}

bool is_one(const Poly& a) {
  if (a[0] != 1) return false;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] != 0) return false;
  }
  return true;
}

std::uint32_t checked_order(std::uint32_t p, std::uint32_t f, std::uint64_t cap) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (f == 0) throw Error(ErrorCode::DegreeZero, "extension degree must be positive");
  const auto q = checked_pow(p, f, cap);
  if (!q) {
    throw Error(ErrorCode::FieldTooLarge, std::to_string(p) + "^" + std::to_string(f) +
                                              " exceeds the field cap " + std::to_string(cap));
  }
  return static_cast<std::uint32_t>(*q);
}

}  // namespace

bool is_primitive_polynomial(std::uint32_t p, std::span<const std::uint32_t> modulus) {
  if (modulus.size() < 2 || modulus.back() != 1 || modulus[0] % p == 0) return false;
  const std::size_t f = modulus.size() - 1;
  const auto q = checked_pow(p, static_cast<unsigned>(f));
  if (!q) return false;
  const std::uint64_t group = *q - 1;
  if (!is_one(poly_powmod_x(group, modulus, p))) return false;
  for (std::uint64_t r : prime_divisors(group)) {
    if (is_one(poly_powmod_x(group / r, modulus, p))) return false;
  }
  return true;
}

FieldSpec::FieldSpec(std::uint32_t p, std::uint32_t f, std::vector<std::uint32_t> modulus)
    : p_(p), f_(f), q_(1), modulus_(std::move(modulus)) {
  digit_weight_.resize(f_);
  for (std::uint32_t i = 0; i < f_; ++i) {
    digit_weight_[i] = q_;
    q_ *= p_;
  }
}

FieldPtr FieldSpec::build(std::uint32_t p, std::uint32_t f, std::optional<std::uint64_t> seed,
                          std::uint64_t cap) {
  const std::uint32_t q = checked_order(p, f, cap);
  std::uint64_t to_skip = seed.value_or(0);
  // Odometer over (c_0, ..., c_{f-1}) with c_0 the most significant position.
  std::vector<std::uint32_t> modulus(f + 1, 0);
  modulus[f] = 1;
  modulus[0] = 1;
  for (std::uint64_t attempts = 0; attempts < q; ++attempts) {
    if (is_primitive_polynomial(p, modulus)) {
      if (to_skip == 0) {
        auto field = std::shared_ptr<FieldSpec>(new FieldSpec(p, f, modulus));
        field->build_tables();
        return field;
      }
      --to_skip;
    }
    std::int64_t pos = static_cast<std::int64_t>(f) - 1;
    while (pos >= 0) {
      if (++modulus[pos] < p) break;
      modulus[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  throw Error(ErrorCode::PreconditionViolated,
              "no primitive polynomial left for the requested seed");
}

FieldPtr FieldSpec::from_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus,
                                 std::uint64_t cap) {
  if (modulus.size() < 2) throw Error(ErrorCode::DegreeZero, "modulus must have degree >= 1");
  const auto f = static_cast<std::uint32_t>(modulus.size() - 1);
  checked_order(p, f, cap);
  if (!is_primitive_polynomial(p, modulus)) {
    throw Error(ErrorCode::PreconditionViolated, "modulus is not a primitive polynomial");
  }
  auto field = std::shared_ptr<FieldSpec>(new FieldSpec(p, f, std::move(modulus)));
  field->build_tables();
  return field;
}

void FieldSpec::build_tables() {
  const std::uint32_t group = q_ - 1;
  antilog_.assign(group, 0);
  log_.assign(q_, kNoLog);
  std::vector<std::uint64_t> cur(f_, 0);
  cur[0] = 1;
  for (std::uint32_t e = 0; e < group; ++e) {
    Element enc = 0;
    for (std::uint32_t i = 0; i < f_; ++i) enc += static_cast<Element>(cur[i]) * digit_weight_[i];
    antilog_[e] = enc;
    log_[enc] = e;
    // Multiply by x and reduce with x^f = -(c_0 + ... + c_{f-1} x^{f-1}).
    const std::uint64_t carry = cur[f_ - 1];
    for (std::uint32_t i = f_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (carry != 0) {
      for (std::uint32_t i = 0; i < f_; ++i) {
        cur[i] = (cur[i] + (p_ - carry) * modulus_[i]) % p_;
      }
    }
  }

  // Trace is F_p-linear: evaluate it on the power basis, then extend.
  std::vector<std::uint32_t> basis_trace(f_);
  for (std::uint32_t i = 0; i < f_; ++i) {
    Element x = digit_weight_[i];
    Element sum = 0;
    for (std::uint32_t k = 0; k < f_; ++k) {
      sum = add(sum, x);
      x = frobenius(x);
    }
    basis_trace[i] = sum;  // lies in the prime field, so the encoding is the value
  }
  trace_.assign(q_, 0);
  for (Element x = 0; x < q_; ++x) {
    std::uint64_t t = 0;
    Element rest = x;
    for (std::uint32_t i = 0; i < f_; ++i) {
      t += static_cast<std::uint64_t>(rest % p_) * basis_trace[i];
      rest /= p_;
    }
    trace_[x] = static_cast<std::uint32_t>(t % p_);
  }

  zech_.assign(group, kNoLog);
  for (std::uint32_t e = 0; e < group; ++e) {
    const Element y = sub(1, antilog_[e]);
    zech_[e] = y == 0 ? kNoLog : log_[y];
  }
}

std::vector<std::uint32_t> FieldSpec::coefficients(Element x) const {
  std::vector<std::uint32_t> out(f_);
  for (std::uint32_t i = 0; i < f_; ++i) {
    out[i] = x % p_;
    x /= p_;
  }
  return out;
}

Element FieldSpec::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > f_) throw Error(ErrorCode::InvalidElement, "too many coefficients");
  Element x = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] >= p_) throw Error(ErrorCode::InvalidElement, "coefficient out of range");
    x += coeffs[i] * digit_weight_[i];
  }
  return x;
}

Element FieldSpec::add(Element a, Element b) const {
  if (f_ == 1) return (a + b) % p_;
  Element out = 0;
  for (std::uint32_t i = 0; i < f_; ++i) {
    std::uint32_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    out += s * digit_weight_[i];
    a /= p_;
    b /= p_;
  }
  return out;
}

Element FieldSpec::neg(Element a) const {
  Element out = 0;
  for (std::uint32_t i = 0; i < f_; ++i) {
    const std::uint32_t d = a % p_;
    out += (d == 0 ? 0 : p_ - d) * digit_weight_[i];
    a /= p_;
  }
  return out;
}

Element FieldSpec::sub(Element a, Element b) const { return add(a, neg(b)); }

Element FieldSpec::mul(Element a, Element b) const {
  if (a == 0 || b == 0) return 0;
  return antilog_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (q_ - 1)];
}

Element FieldSpec::inv(Element a) const {
  if (a == 0) throw Error(ErrorCode::ZeroElement, "zero has no inverse");
  return antilog_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Element FieldSpec::pow(Element a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return antilog_[static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1)) % (q_ - 1)];
}

std::uint32_t FieldSpec::trace(Element x) const {
  if (!contains(x)) throw Error(ErrorCode::InvalidElement, std::to_string(x) + " is not in the field");
  return trace_[x];
}

std::uint32_t FieldSpec::discrete_log(Element x) const {
  if (!contains(x)) throw Error(ErrorCode::InvalidElement, std::to_string(x) + " is not in the field");
  if (x == 0) throw Error(ErrorCode::ZeroElement, "discrete log of zero");
  return log_[x];
}

}  // namespace scheme_forge
