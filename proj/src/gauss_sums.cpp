#include "scheme_forge/gauss_sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "scheme_forge/error.hpp"
#include "scheme_forge/number_theory.hpp"

namespace scheme_forge {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sign_of_power(std::uint64_t e) { return e % 2 == 0 ? 1.0 : -1.0; }

Complex principal_sqrt_pstar(std::uint32_t p) {
  const double r = std::sqrt(static_cast<double>(p));
  return p % 4 == 1 ? Complex(r, 0.0) : Complex(0.0, r);
}

Complex ipow(Complex base, std::uint64_t e) {
  Complex out(1.0, 0.0);
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

std::vector<Complex> roots_of_unity(std::uint32_t n) {
  std::vector<Complex> out(n);
  for (std::uint32_t t = 0; t < n; ++t) out[t] = std::polar(1.0, kTwoPi * t / n);
  return out;
}

// G(chi^g) for g a divisor of N other than N itself in the closed-form normalisation.
Complex divisor_value(const Index2Params& P, std::uint64_t g, int c_sign) {
  const double p = P.p;
  const Complex sp = principal_sqrt_pstar(P.p);
  const Complex w(static_cast<double>(P.b) / 2.0,
                  c_sign * static_cast<double>(P.c) * std::sqrt(static_cast<double>(P.p1)) / 2.0);
  const std::uint64_t half_p = (P.p - 1) / 2;
  const double half_f = static_cast<double>(P.f - 1) / 2.0;
  const std::uint64_t p1m = P.N / 2;
  if (g == p1m) {
    return sign_of_power(half_p * ((P.f - 1) / 2)) * std::pow(p, half_f) * sp;
  }
  if (g % 2 == 1) {
    const std::uint64_t p1t = g;
    if (P.p1 % 8 == 3) {
      return sign_of_power(half_p * (P.m - 1)) *
             std::pow(p, half_f - static_cast<double>(P.h) * static_cast<double>(p1t)) * sp *
             ipow(w, 2 * p1t);
    }
    return sign_of_power(half_p * P.m) * std::pow(p, half_f) * sp;
  }
  const std::uint64_t p1t = g / 2;
  return std::pow(p, (static_cast<double>(P.f) - static_cast<double>(p1t) * P.h) / 2.0) * ipow(w, p1t);
}

}  // namespace

std::uint64_t MultChar::order() const {
  const std::uint64_t n = field->group_order();
  return n / std::gcd(k % n, n);
}

Complex gauss_sum_direct(const MultChar& chi) {
  const FieldSpec& F = *chi.field;
  const std::uint64_t n = F.group_order();
  const auto xi = roots_of_unity(F.characteristic());
  const std::uint64_t k = chi.k % n;
  Complex sum(0.0, 0.0);
  std::uint64_t r = 0;  // k * e mod n
  for (std::uint64_t e = 0; e < n; ++e) {
    sum += xi[F.trace_of(F.exp(e))] * std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(n));
    r += k;
    if (r >= n) r -= n;
  }
  return sum;
}

Complex gauss_sum_quadratic(std::uint32_t p, std::uint32_t f) {
  if (p == 2) throw Error(ErrorCode::EvenCharacteristic, "quadratic Gauss sum needs odd p");
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (f == 0) throw Error(ErrorCode::DegreeZero, "f must be positive");
  return sign_of_power(f - 1) * ipow(principal_sqrt_pstar(p), f);
}

std::uint32_t class_number(std::uint32_t p1) {
  if (p1 <= 3 || p1 % 4 != 3 || !is_prime(p1)) {
    throw Error(ErrorCode::BadDiscriminant, "-" + std::to_string(p1) + " is not an admissible discriminant");
  }
  const std::int64_t D = -static_cast<std::int64_t>(p1);
  std::uint32_t h = 0;
  for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if ((b - D) % 2 != 0) continue;
      const std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

BC solve_bc(std::uint32_t p, std::uint32_t p1, std::uint32_t h, std::uint64_t f) {
  if (f < h || (f - h) % 2 != 0) {
    throw Error(ErrorCode::NoSolution, "f - h must be a nonnegative even number");
  }
  const auto ph = checked_pow(p, h, std::uint64_t{1} << 60);
  if (!ph) throw Error(ErrorCode::NoSolution, "p^h too large");
  const std::int64_t target = 4 * static_cast<std::int64_t>(*ph);
  const std::uint64_t scale = pow_mod(p, (f - h) / 2, p1);
  std::optional<BC> found;
  for (std::int64_t b = 0; b * b <= target; ++b) {
    const std::int64_t rest = target - b * b;
    if (rest % p1 != 0) continue;
    const auto c = exact_sqrt(static_cast<std::uint64_t>(rest / p1));
    if (!c) continue;
    for (std::int64_t sb : {b, -b}) {
      if (mul_mod(mod_floor(sb, p1), scale, p1) != mod_floor(-2, p1)) continue;
      if (found && found->b != sb) {
        throw Error(ErrorCode::NoSolution, "b is not determined uniquely");
      }
      found = BC{sb, static_cast<std::int64_t>(*c)};
    }
  }
  if (!found) {
    throw Error(ErrorCode::NoSolution, "no (b, c) for p = " + std::to_string(p) + ", p1 = " + std::to_string(p1));
  }
  return *found;
}

Index2Params Index2Params::make(std::uint32_t p, std::uint32_t p1, std::uint32_t m) {
  if (!is_prime(p) || p == 2) throw Error(ErrorCode::PreconditionViolated, "p must be an odd prime");
  if (!is_prime(p1) || p1 <= 3 || p1 % 4 != 3) {
    throw Error(ErrorCode::PreconditionViolated, "p1 must be a prime > 3 with p1 = 3 (mod 4)");
  }
  if (m == 0) throw Error(ErrorCode::PreconditionViolated, "m must be positive");
  const auto p1m = checked_pow(p1, m, std::uint64_t{1} << 40);
  if (!p1m) throw Error(ErrorCode::PreconditionViolated, "p1^m too large");
  Index2Params out;
  out.p = p;
  out.p1 = p1;
  out.m = m;
  out.N = 2 * *p1m;
  if (p % p1 == 0 || subgroup_index(p, out.N) != 2) {
    throw Error(ErrorCode::PreconditionViolated, "<p> does not have index 2 in Z_N^*");
  }
  out.f = euler_phi(out.N) / 2;
  out.h = class_number(p1);
  try {
    const BC bc = solve_bc(p, p1, out.h, out.f);
    out.b = bc.b;
    out.c = bc.c;
  } catch (const Error& e) {
    throw Error(ErrorCode::PreconditionViolated, e.what());
  }
  return out;
}

Complex gauss_sum_index2(const Index2Params& params, std::int64_t j, std::uint32_t s, int c_sign) {
  if (s == 0) throw Error(ErrorCode::PreconditionViolated, "lifting degree must be positive");
  const std::uint64_t N = params.N;
  const std::uint64_t jr = mod_floor(j, N);
  Complex v(-1.0, 0.0);
  if (jr != 0) {
    const std::uint64_t g = std::gcd(jr, N);
    const std::uint64_t unit = jr / g;
    const std::uint64_t modulus = N / g;
    bool in_p = modulus <= 2;
    if (!in_p) {
      const auto sub = cyclic_subgroup(params.p % modulus, modulus);
      in_p = std::binary_search(sub.begin(), sub.end(), unit % modulus);
    }
    v = divisor_value(params, g, c_sign);
    if (!in_p) {
      // chi^{jr} = (chi^{-g})^{p^k}: property (iii) with chi^g(-1) = (-1)^{g (q-1)/N}.
      const std::uint64_t q_minus_1_mod_2N = (pow_mod(params.p, params.f, 2 * N) + 2 * N - 1) % (2 * N);
      const std::uint64_t parity = q_minus_1_mod_2N / N;
      v = sign_of_power(g * parity) * std::conj(v);
    }
  }
  return sign_of_power(s - 1) * ipow(v, s);
}

DavenportHasse davenport_hasse_check(const MultChar& chi, std::uint32_t s, std::uint64_t cap) {
  if (s == 0) throw Error(ErrorCode::PreconditionViolated, "lifting degree must be positive");
  const FieldSpec& small = *chi.field;
  const FieldPtr big = FieldSpec::build(small.characteristic(), small.degree() * s, {}, cap);
  const std::uint64_t n = small.group_order();
  const std::uint64_t ratio = big->group_order() / n;
  const std::uint64_t k = chi.k % n;
  const auto xi = roots_of_unity(small.characteristic());
  auto chi_phase = [&](std::uint64_t e) {
    return std::polar(1.0, kTwoPi * static_cast<double>(mul_mod(k, e % n, n)) / static_cast<double>(n));
  };

  // chi on the subfield F_q of F_{q^s}, relative to omega = Norm(gamma').
  Complex base(0.0, 0.0);
  for (std::uint64_t e = 0; e < n; ++e) {
    const Element x = big->exp(e * ratio);
    Element tr = 0;
    Element y = x;
    for (std::uint32_t i = 0; i < small.degree(); ++i) {
      tr = big->add(tr, y);
      y = big->frobenius(y);
    }
    base += xi[tr] * chi_phase(e);
  }

  // Norm(gamma'^E) = omega^E, so chi'(gamma'^E) = chi(omega^E).
  Complex lifted(0.0, 0.0);
  for (std::uint64_t E = 0; E < big->group_order(); ++E) {
    lifted += xi[big->trace_of(big->exp(E))] * chi_phase(E);
  }
  return DavenportHasse{lifted, sign_of_power(s - 1) * ipow(base, s)};
}

Index2Discrepancy index2_discrepancy(const Index2Params& params, std::uint32_t s, std::uint64_t cap) {
  if (s == 0) throw Error(ErrorCode::PreconditionViolated, "lifting degree must be positive");
  const std::uint64_t fs = params.f * s;
  if (fs > 64) throw Error(ErrorCode::FieldTooLarge, "extension degree too large");
  const FieldPtr field = FieldSpec::build(params.p, static_cast<std::uint32_t>(fs), {}, cap);
  const std::uint64_t N = params.N;
  const std::uint64_t step = field->group_order() / N;

  std::vector<Complex> direct(N);
  for (std::uint64_t j = 0; j < N; ++j) direct[j] = gauss_sum_direct(MultChar{field, j * step});

  Index2Discrepancy best;
  bool have = false;
  for (int sigma : {1, -1}) {
    for (int c_sign : {1, -1}) {
      Index2Discrepancy trial;
      trial.params = params;
      trial.s = s;
      trial.q = field->order();
      trial.sigma = sigma;
      trial.c_sign = c_sign;
      for (std::uint64_t j = 0; j < N; ++j) {
        Index2Entry e;
        e.j = j;
        e.direct = direct[j];
        e.formula = gauss_sum_index2(params, sigma * static_cast<std::int64_t>(j), s, c_sign);
        e.abs_err = std::abs(e.direct - e.formula);
        trial.max_abs_err = std::max(trial.max_abs_err, e.abs_err);
        trial.entries.push_back(e);
      }
      if (!have || trial.max_abs_err < best.max_abs_err) {
        best = std::move(trial);
        have = true;
      }
    }
  }
  return best;
}

}  // namespace scheme_forge
