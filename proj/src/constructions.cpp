#include "scheme_forge/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "scheme_forge/error.hpp"
#include "scheme_forge/number_theory.hpp"

namespace scheme_forge {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::PreconditionViolated, what);
}

void require_index2_setting(std::uint32_t p, std::uint32_t p1) {
  require(is_prime(p) && p != 2, "p must be an odd prime");
  require(is_prime(p1) && p1 > 3 && p1 % 4 == 3, "p1 must be a prime > 3 with p1 = 3 (mod 4)");
  require(p % p1 != 0 && subgroup_index(p, 2 * p1) == 2, "<p> must have index 2 in Z_{2 p1}^*");
}

std::set<std::uint64_t> coset(std::uint32_t p, std::uint64_t n, bool negate) {
  std::set<std::uint64_t> out;
  for (std::uint64_t x : cyclic_subgroup(p % n, n)) out.insert(negate ? (n - x) % n : x);
  return out;
}

std::uint32_t to_u32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }

FieldPtr build_extension(std::uint32_t p, std::uint64_t degree, std::uint64_t cap) {
  if (degree > 64) throw Error(ErrorCode::FieldTooLarge, "extension degree too large");
  return FieldSpec::build(p, static_cast<std::uint32_t>(degree), {}, cap);
}

BuiltScheme verify_on(FieldPtr field, IndexPartition partition) {
  BuiltScheme out;
  out.sys = build_cyclotomy(std::move(field), partition.N);
  out.report = verify_scheme(*out.sys, partition);
  out.partition = std::move(partition);
  return out;
}

IndexPartition shifted_copies(std::span<const std::uint32_t> base, std::uint32_t N, std::uint32_t step) {
  std::vector<IndexSet> parts;
  for (std::uint32_t k = 0; k * step < N; ++k) {
    IndexSet part;
    for (std::uint32_t i : base) part.push_back((i + k * step) % N);
    parts.push_back(std::move(part));
  }
  return IndexPartition::make(N, std::move(parts));
}

IntMatrix int_matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  IntMatrix out(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (std::int64_t v : row) out(r, c++) = v;
    ++r;
  }
  return out;
}

bool contains_entry(const ExactMatrix& P, const CycInt& value) {
  for (std::size_t r = 0; r < P.rows(); ++r) {
    for (std::size_t c = 0; c < P.cols(); ++c) {
      if (P(r, c) == value) return true;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(FissionKind kind) {
  switch (kind) {
    case FissionKind::ThreeClassBase: return "three_class_base";
    case FissionKind::FourClass7Mod8: return "four_class_7mod8";
    case FissionKind::FiveClass3Mod8: return "five_class_3mod8";
    case FissionKind::Conference7Mod8: return "conference_7mod8";
    case FissionKind::SongExample: return "song_example";
  }
  return "unknown";
}

FissionKind parse_fission_kind(std::string_view name) {
  for (FissionKind k : {FissionKind::ThreeClassBase, FissionKind::FourClass7Mod8, FissionKind::FiveClass3Mod8,
                        FissionKind::Conference7Mod8, FissionKind::SongExample}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown construction kind '" + std::string(name) + "'");
}

IndexPartition three_class_index_sets(std::uint32_t p, std::uint32_t p1) {
  require_index2_setting(p, p1);
  IndexSet r1;
  IndexSet r2;
  for (std::uint64_t x : coset(p, p1, false)) r1.push_back(to_u32(x));
  for (std::uint64_t x : coset(p, p1, true)) r2.push_back(to_u32(x));
  return IndexPartition::make(p1, {r1, r2, {0}});
}

IndexPartition four_class_index_sets(std::uint32_t p, std::uint32_t p1) {
  require_index2_setting(p, p1);
  require(p1 % 8 == 7, "p1 must be 7 (mod 8)");
  const auto plus = coset(p, p1, false);
  IndexSet s1;
  IndexSet s2;
  for (std::uint32_t i = 0; i < 2 * p1; ++i) {
    if (i % p1 == 0) continue;
    (plus.count(i % p1) ? s1 : s2).push_back(i);
  }
  return IndexPartition::make(2 * p1, {s1, s2, {0}, {p1}});
}

IndexPartition five_class_index_sets(std::uint32_t p, std::uint32_t p1, std::uint32_t m, bool orientation_b) {
  require_index2_setting(p, p1);
  require(m >= 1, "m must be positive");
  const auto p1m_opt = checked_pow(p1, m, std::uint64_t{1} << 28);
  require(p1m_opt.has_value(), "2 p1^m is too large to enumerate");
  const std::uint64_t p1m = *p1m_opt;
  const std::uint64_t P = p1m / p1;  // p1^{m-1}
  const std::uint64_t N = 2 * p1m;
  const auto plus = coset(p, p1, false);
  const auto minus2 = coset(p, 2 * p1, true);

  // Class 2i + P j (mod N) for i < P and j in Z_{2 p1}; j alone picks the part.
  IndexSet s1;
  IndexSet s2;
  IndexSet s3;
  IndexSet s4;
  IndexSet s5;
  for (std::uint64_t i = 0; i < P; ++i) {
    for (std::uint64_t j = 0; j < 2 * p1; ++j) {
      const auto k = to_u32((2 * i + P * j) % N);
      if (j == 0) {
        s4.push_back(k);
      } else if (j == p1) {
        s5.push_back(k);
      } else if (minus2.count(j)) {
        s2.push_back(k);
      } else if (minus2.count((j + p1) % (2 * p1))) {
        s3.push_back(k);
      } else if (plus.count(j % p1)) {
        s1.push_back(k);
      }
    }
  }
  auto partition = IndexPartition::make(to_u32(N), {s1, s2, s3, s4, s5});
  return orientation_b ? partition.transformed(-1, 0) : partition;
}

BuiltScheme three_class_base(std::uint32_t p, std::uint32_t p1, std::uint32_t s, std::uint64_t cap) {
  require(s >= 1, "s must be positive");
  auto partition = three_class_index_sets(p, p1);
  const std::uint64_t f = (p1 - 1) / 2;
  return verify_on(build_extension(p, f * s, cap), std::move(partition));
}

bool three_class_primitivity_predicted(std::uint32_t p, std::uint32_t p1, std::uint32_t s) {
  require_index2_setting(p, p1);
  const unsigned fs = (p1 - 1) / 2 * s;
  const auto qs = checked_pow(p, fs);
  if (!qs) throw Error(ErrorCode::FieldTooLarge, "q^s does not fit in 64 bits");
  return multiplicative_order(p, (*qs - 1) / p1) == fs;
}

BuiltScheme four_class_7mod8(std::uint32_t p, std::uint32_t p1, std::uint32_t s, std::uint64_t cap) {
  require(s >= 1, "s must be positive");
  auto partition = four_class_index_sets(p, p1);
  const std::uint64_t f = (p1 - 1) / 2;
  return verify_on(build_extension(p, f * s, cap), std::move(partition));
}

bool four_class_primitivity_condition(const Index2Params& params) {
  return params.p1 > 2 * params.h + 1 && params.c != 0;
}

FiveClassResult five_class_3mod8(std::uint32_t p, std::uint32_t p1, std::uint32_t m, std::uint64_t cap) {
  require_index2_setting(p, p1);
  require(p1 % 8 == 3, "p1 must be 3 (mod 8)");
  FiveClassResult out;
  out.p = p;
  out.p1 = p1;
  out.m = m;
  out.h = class_number(p1);
  const auto ph = checked_pow(p, out.h);
  require(ph && 1 + static_cast<std::uint64_t>(p1) == 4 * *ph, "1 + p1 must equal 4 p^h");
  out.orientation_a = five_class_index_sets(p, p1, m, false);
  out.orientation_b = five_class_index_sets(p, p1, m, true);
  const auto p1m = checked_pow(p1, m);
  out.index2_at_level_m = subgroup_index(p, 2 * *p1m) == 2;
  if (m != 1) return out;

  const FieldPtr field = build_extension(p, (p1 - 1) / 2, cap);
  const CyclotomyPtr sys = build_cyclotomy(field, 2 * p1);
  const bool a_ok = is_scheme(*sys, out.orientation_a);
  const bool b_ok = is_scheme(*sys, out.orientation_b);
  if (a_ok == b_ok) {
    throw Error(ErrorCode::OrientationAmbiguous,
                a_ok ? "both orientations verify" : "neither orientation verifies");
  }
  out.chosen = a_ok ? 'A' : 'B';
  const IndexPartition& chosen = a_ok ? out.orientation_a : out.orientation_b;
  BuiltScheme built;
  built.sys = sys;
  built.partition = chosen;
  built.report = verify_scheme(*sys, chosen);
  out.scheme = std::move(built);

  const IndexSet& s4 = chosen.parts[3];
  const CycInt valency = CycInt::integer(p, static_cast<std::int64_t>(sys->class_size() * s4.size()));
  std::set<CycInt> values;
  for (std::uint32_t a = 0; a < chosen.N; ++a) {
    CycInt v = sys->character_sum(s4, a);
    out.s4_hits_valency = out.s4_hits_valency || v == valency;
    values.insert(std::move(v));
  }
  out.s4_value_count = values.size();
  return out;
}

ConferenceResult conference_7mod8(std::uint32_t p, std::uint32_t p1, const IndexSet& I0, std::uint64_t cap) {
  require_index2_setting(p, p1);
  require(p1 % 8 == 7, "p1 must be 7 (mod 8)");
  require(p % 4 == 1, "p must be 1 (mod 4)");
  require(I0.size() == p1, "I0 must have exactly p1 elements");
  std::vector<bool> hit(p1, false);
  std::vector<bool> in_i0(2 * p1, false);
  for (std::uint32_t i : I0) {
    require(i < 2 * p1, "I0 must lie in Z_{2 p1}");
    require(!hit[i % p1], "I0 must meet every residue mod p1 exactly once");
    hit[i % p1] = true;
    in_i0[i] = true;
  }
  IndexSet rest;
  for (std::uint32_t i = 0; i < 2 * p1; ++i) {
    if (!in_i0[i]) rest.push_back(i);
  }
  const std::uint32_t f = (p1 - 1) / 2;
  ConferenceResult out;
  out.scheme = verify_on(build_extension(p, f, cap), IndexPartition::make(2 * p1, {I0, rest}));
  if (!out.scheme.report.is_scheme) return out;

  // eta_0 - eta_1 = sum_x (x/p) xi_p^x.
  std::vector<std::int64_t> counts(p, 0);
  for (std::uint32_t x = 1; x < p; ++x) counts[x] = legendre(x, p);
  const auto scale = checked_pow(p, (f - 1) / 2);
  const CycInt root = CycInt::from_exponent_counts(p, counts) * static_cast<std::int64_t>(*scale);
  const CycInt one = CycInt::integer(p, 1);
  const ExactMatrix& P = out.scheme.report.P_exact;
  out.eigenvalues_match = true;
  for (std::size_t r = 1; r < P.rows(); ++r) {
    const CycInt twice = P(r, 1) * 2 + one;
    out.eigenvalues_match = out.eigenvalues_match && (twice == root || twice == -root);
  }
  return out;
}

ComplexMatrix ma_wang_template(std::uint64_t q, std::int64_t g, bool swap_g_signs) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::TemplatePreconditionViolated, what); };
  if (q % 8 != 5) fail("q must be 5 (mod 8)");
  if (mod_floor(g, 4) != 1) fail("g must be 1 (mod 4)");
  const auto g2 = static_cast<std::uint64_t>(g < 0 ? -g : g) * static_cast<std::uint64_t>(g < 0 ? -g : g);
  if (g2 > q || (q - g2) % 4 != 0 || !exact_sqrt((q - g2) / 4)) fail("q must equal g^2 + 4 h^2");

  const double sq = std::sqrt(static_cast<double>(q));
  const double gd = swap_g_signs ? static_cast<double>(g) : -static_cast<double>(g);
  const double qd = static_cast<double>(q);
  const Complex rho = 0.25 * (Complex(-1.0 + sq) + std::sqrt(Complex(-2.0 * qd + 2.0 * gd * sq)));
  const Complex tau = 0.25 * (Complex(-1.0 - sq) + std::sqrt(Complex(-2.0 * qd - 2.0 * gd * sq)));
  const Complex rb = std::conj(rho);
  const Complex tb = std::conj(tau);
  const Complex one(1.0);
  const Complex f(static_cast<double>((q - 1) / 4));
  ComplexMatrix P(5, 5);
  const Complex rows[5][5] = {{one, f, f, f, f},
                              {one, rho, tau, rb, tb},
                              {one, tau, rb, tb, rho},
                              {one, rb, tb, rho, tau},
                              {one, tb, rho, tau, rb}};
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = 0; c < 5; ++c) P(r, c) = rows[r][c];
  }
  return P;
}

namespace song {

IndexPartition primal() { return shifted_copies(kI1, kN, 7); }
IndexPartition dual() { return shifted_copies(kJ1, kN, 7); }

std::vector<IntMatrix> intersection_matrices() {
  IntMatrix identity(5, 5, 0);
  for (std::size_t i = 0; i < 5; ++i) identity(i, i) = 1;
  return {
      identity,
      int_matrix({{0, 0, 0, 12663, 0},
                  {1, 3170, 3161, 3170, 3161},
                  {0, 3115, 3161, 3161, 3226},
                  {0, 3152, 3226, 3170, 3115},
                  {0, 3226, 3115, 3161, 3161}}),
      int_matrix({{0, 0, 0, 0, 12663},
                  {0, 3161, 3226, 3115, 3161},
                  {1, 3161, 3170, 3161, 3170},
                  {0, 3226, 3115, 3161, 3161},
                  {0, 3115, 3152, 3226, 3170}}),
      int_matrix({{0, 12663, 0, 0, 0},
                  {0, 3170, 3115, 3152, 3226},
                  {0, 3161, 3161, 3226, 3115},
                  {1, 3170, 3161, 3170, 3161},
                  {0, 3161, 3226, 3115, 3161}}),
      int_matrix({{0, 0, 12663, 0, 0},
                  {0, 3161, 3161, 3226, 3115},
                  {0, 3226, 3170, 3115, 3152},
                  {0, 3115, 3161, 3161, 3226},
                  {1, 3161, 3170, 3161, 3170}}),
  };
}

}  // namespace song

SongResult song_example(double tol, std::uint64_t cap) {
  const FieldPtr field = FieldSpec::build(song::kP, song::kF, {}, cap);
  const CyclotomyPtr sys = build_cyclotomy(field, song::kN);
  const IndexPartition base = song::primal();

  SongResult out;
  bool found = false;
  for (std::uint32_t u = 1; u < song::kN && !found; ++u) {
    if (std::gcd(u, song::kN) != 1) continue;
    for (std::uint32_t v = 0; v < song::kN && !found; ++v) {
      IndexPartition candidate = base.transformed(u, v);
      if (!is_scheme(*sys, candidate)) continue;
      std::size_t pairs = 0;
      for (std::size_t r = 1; r <= candidate.class_count(); ++r) pairs += is_symmetric(*sys, candidate, r) ? 0 : 1;
      if (pairs != 4) continue;  // four relations in two nonsymmetric pairs
      out.orbit_map = AffineMap{u, v};
      out.scheme.sys = sys;
      out.scheme.report = verify_scheme(*sys, candidate);
      out.scheme.partition = std::move(candidate);
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::NoOrbitMemberVerifies, "no affine image of the index sets verifies");

  const SchemeReport& report = out.scheme.report;
  out.b_relabeling = match_intersection_matrices(report.intersection_matrices, song::intersection_matrices());

  const IndexPartition golden_dual = song::dual();
  for (std::uint32_t u = 1; u < song::kN && !out.dual_map; ++u) {
    if (std::gcd(u, song::kN) != 1) continue;
    for (std::uint32_t v = 0; v < song::kN && !out.dual_map; ++v) {
      if (golden_dual.transformed(u, v).same_sets(report.dual)) out.dual_map = AffineMap{u, v};
    }
  }

  const std::uint64_t q = field->order();
  out.template_match = match_up_to_permutation(report.P_complex, ma_wang_template(q, song::kG), tol);

  // Index-4 Gauss periods over F_37.
  const CyclotomicSystem quartic(FieldSpec::build(song::kP, 1), 4);
  const auto& eta = quartic.periods();
  const CycInt one = CycInt::integer(song::kP, 1);
  out.rho = one * 9 + eta[0] * 37;
  out.rho_exact = contains_entry(report.P_exact, out.rho);

  const CyclotomicSystem cyclotomic(field, 4);
  const IndexPartition singletons = IndexPartition::make(4, {{0}, {1}, {2}, {3}});
  const Eigenmatrices cyc = eigenmatrices(cyclotomic, singletons);
  out.cyclotomic_template_match = match_up_to_permutation(cyc.P_complex, ma_wang_template(q, song::kCyclotomicG), tol);
  const CycInt rho107 = one * 8 + eta[0] * 35 + eta[1] * 5 - eta[3] * 7;
  const CycInt rho107_swapped = one * 8 + eta[0] * 35 + eta[3] * 5 - eta[1] * 7;
  out.cyclotomic_rho_exact = contains_entry(cyc.P_exact, rho107) || contains_entry(cyc.P_exact, rho107_swapped);
  return out;
}

}  // namespace scheme_forge
