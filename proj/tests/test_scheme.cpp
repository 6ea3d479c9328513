#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>

#include "oracles.hpp"
#include "scheme_forge/error.hpp"
#include "scheme_forge/number_theory.hpp"
#include "scheme_forge/scheme.hpp"

using namespace scheme_forge;

namespace {

IndexPartition singletons(std::uint32_t N) {
  std::vector<IndexSet> parts;
  for (std::uint32_t i = 0; i < N; ++i) parts.push_back({i});
  return IndexPartition::make(N, parts);
}

// Relation label of every field element, built from the polynomial oracle's
// powers of x rather than the library's log table.
std::vector<std::uint32_t> oracle_labels(const FieldSpec& F, const IndexPartition& part) {
  const oracle::Poly m(F.modulus().begin(), F.modulus().end());
  const auto pw = oracle::powers_of_x(m, F.characteristic());
  std::vector<std::uint32_t> rel(part.N, 0);
  for (std::size_t r = 0; r < part.parts.size(); ++r)
    for (auto i : part.parts[r]) rel[i] = static_cast<std::uint32_t>(r + 1);
  std::vector<std::uint32_t> labels(F.order(), 0);
  for (std::size_t e = 0; e < pw.size(); ++e) labels[pw[e]] = rel[e % part.N];
  return labels;
}

IndexPartition random_partition(std::uint32_t N, std::uint32_t p, std::mt19937_64& rng) {
  const std::uint32_t d = 2 + rng() % std::min<std::uint32_t>(3, N - 1);
  std::vector<std::uint32_t> label(N);
  if (rng() % 2 == 0) {
    for (auto& l : label) l = rng() % d;
  } else {
    // Unions of <p>-orbits on Z_N: Frobenius-stable, so schemes are far more common.
    std::vector<int> orbit(N, -1);
    int count = 0;
    for (std::uint32_t i = 0; i < N; ++i) {
      if (orbit[i] >= 0) continue;
      for (std::uint32_t j = i; orbit[j] < 0; j = static_cast<std::uint32_t>(std::uint64_t{j} * p % N)) orbit[j] = count;
      ++count;
    }
    std::vector<std::uint32_t> orbit_label(count);
    for (auto& l : orbit_label) l = rng() % d;
    for (std::uint32_t i = 0; i < N; ++i) label[i] = orbit_label[orbit[i]];
  }
  std::vector<IndexSet> parts(d);
  for (std::uint32_t i = 0; i < N; ++i) parts[label[i]].push_back(i);
  std::erase_if(parts, [](const IndexSet& s) { return s.empty(); });
  if (parts.size() < 2) {
    parts = {{0}, {}};
    for (std::uint32_t i = 1; i < N; ++i) parts[1].push_back(i);
  }
  return IndexPartition::make(N, parts);
}

// p_ij^k by counting over the whole field for every z in R_k; returns nullopt
// when some count is not constant.
std::optional<std::vector<IntMatrix>> direct_intersection_numbers(const FieldSpec& F,
                                                                  const std::vector<std::uint32_t>& labels,
                                                                  std::size_t d) {
  std::vector<IntMatrix> B(d + 1, IntMatrix(d + 1, d + 1, -1));
  for (Element z = 0; z < F.order(); ++z) {
    std::vector<std::vector<std::int64_t>> c(d + 1, std::vector<std::int64_t>(d + 1, 0));
    for (Element x = 0; x < F.order(); ++x) ++c[labels[x]][labels[F.sub(z, x)]];
    const std::uint32_t k = labels[z];
    for (std::size_t i = 0; i <= d; ++i)
      for (std::size_t j = 0; j <= d; ++j) {
        auto& slot = B[i](k, j);
        if (slot == -1) slot = c[i][j];
        if (slot != c[i][j]) return std::nullopt;
      }
  }
  return B;
}

void expect_scheme_properties(const CyclotomicSystem& sys, const IndexPartition& part) {
  const SchemeReport r = verify_scheme(sys, part);
  ASSERT_TRUE(r.is_scheme);
  const std::size_t d = r.class_count;
  const double q = sys.field().order();
  const ComplexMatrix PQ = multiply(r.P_complex, r.Q_complex);
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t j = 0; j <= d; ++j) EXPECT_NEAR(std::abs(PQ(i, j) - (i == j ? q : 0.0)), 0.0, 1e-6);
  for (std::size_t j = 0; j <= d; ++j) {
    EXPECT_EQ(r.P_complex(0, j).real(), j == 0 ? 1.0 : static_cast<double>(r.valencies[j - 1]));
    EXPECT_EQ(r.P_exact(j, 0), CycInt::integer(sys.field().characteristic(), 1));
  }
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t j = 1; j <= d; ++j) EXPECT_LE(std::abs(r.P_complex(i, j)), r.valencies[j - 1] + 1e-9);
  const auto& B = r.intersection_matrices;
  ASSERT_EQ(B.size(), d + 1);
  for (std::size_t k = 0; k <= d; ++k)
    for (std::size_t j = 0; j <= d; ++j) EXPECT_EQ(B[0](k, j), k == j ? 1 : 0);
  for (std::size_t i = 0; i <= d; ++i) {
    const std::int64_t size = i == 0 ? 1 : static_cast<std::int64_t>(r.valencies[i - 1]);
    for (std::size_t k = 0; k <= d; ++k) {
      std::int64_t row = 0;
      for (std::size_t j = 0; j <= d; ++j) {
        EXPECT_GE(B[i](k, j), 0);
        EXPECT_EQ(B[i](k, j), B[j](k, i));
        row += B[i](k, j);
      }
      EXPECT_EQ(row, size);
    }
  }
  const IndexPartition dual = dual_partition(sys, part);
  EXPECT_TRUE(dual_partition(sys, dual).same_sets(part));
}

}  // namespace

TEST(Scheme, CyclotomicSchemeVerifies) {
  const auto sys = build_cyclotomy(FieldSpec::build(3, 4), 8);
  const SchemeReport r = verify_scheme(*sys, singletons(8));
  EXPECT_TRUE(r.is_scheme);
  EXPECT_EQ(r.class_count, 8u);
  expect_scheme_properties(*sys, singletons(8));
}

TEST(Scheme, OneClassScheme) {
  const auto sys = build_cyclotomy(FieldSpec::build(5, 2), 1);
  const auto part = singletons(1);
  EXPECT_TRUE(is_scheme(*sys, part));
  EXPECT_TRUE(is_primitive(*sys, part));
  const auto krein = krein_parameters(*sys, part);
  ASSERT_EQ(krein.size(), 2u);
  EXPECT_EQ(krein[1](1, 1), 23);
}

TEST(Scheme, BruteForceAgreesOnRandomPartitions) {
  std::mt19937_64 rng(0x5eed);
  struct Case {
    std::uint32_t p, f;
    std::vector<std::uint32_t> Ns;
  };
  const std::vector<Case> cases = {{3, 4, {4, 5, 8, 10, 16, 20}}, {11, 2, {4, 5, 6, 8, 10, 12, 15}}, {3, 5, {11, 22}}};
  int total = 0, positives = 0;
  for (const auto& c : cases) {
    const auto F = FieldSpec::build(c.p, c.f);
    for (int t = 0; t < 70; ++t) {
      const std::uint32_t N = c.Ns[t % c.Ns.size()];
      const auto sys = build_cyclotomy(F, N);
      const auto part = random_partition(N, c.p, rng);
      const auto labels = oracle_labels(*F, part);
      const bool expected = brute_force_verify(*F, labels);
      ASSERT_EQ(is_scheme(*sys, part), expected) << "q=" << F->order() << " N=" << N;
      ++total;
      if (expected) {
        ++positives;
        const auto direct = direct_intersection_numbers(*F, labels, part.class_count());
        ASSERT_TRUE(direct.has_value());
        EXPECT_EQ(intersection_numbers(*sys, part), *direct);
        expect_scheme_properties(*sys, part);
      }
    }
  }
  EXPECT_GE(total, 200);
  EXPECT_GE(positives, 10);
  std::printf("checked %d partitions, %d schemes\n", total, positives);
}

TEST(Scheme, BruteForceOracleExamples) {
  const auto F = FieldSpec::build(13, 1);
  const auto part = IndexPartition::make(2, {{0}, {1}});
  EXPECT_TRUE(brute_force_verify(*F, oracle_labels(*F, part)));
  auto labels = oracle_labels(*F, part);
  std::swap(labels[1], labels[2]);  // 1 and 2 lie in different square classes mod 13
  EXPECT_FALSE(brute_force_verify(*F, labels));
  EXPECT_THROW(brute_force_verify(*FieldSpec::build(3, 10), std::vector<std::uint32_t>(59049, 0)), Error);
}

TEST(Scheme, IntersectionNumbersAgainstDirectCount) {
  const auto F = FieldSpec::build(11, 2);
  const auto sys = build_cyclotomy(F, 6);
  const auto part = singletons(6);
  const auto direct = direct_intersection_numbers(*F, oracle_labels(*F, part), 6);
  ASSERT_TRUE(direct.has_value());
  EXPECT_EQ(intersection_numbers(*sys, part), *direct);
}

TEST(Scheme, NotASchemeErrors) {
  const auto sys = build_cyclotomy(FieldSpec::build(3, 4), 8);
  const auto part = IndexPartition::make(8, {{0, 1}, {2, 3, 4, 5, 6, 7}});
  ASSERT_FALSE(is_scheme(*sys, part));
  EXPECT_FALSE(verify_scheme(*sys, part).is_scheme);
  try {
    eigenmatrices(*sys, part);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAScheme);
  }
  EXPECT_THROW(intersection_numbers(*sys, part), Error);
}

TEST(Scheme, PartitionInvariants) {
  auto code_of = [](std::uint32_t N, std::vector<IndexSet> parts) {
    try {
      IndexPartition::make(N, std::move(parts));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code_of(4, {{0, 1}, {1, 2, 3}}), ErrorCode::PartitionInvalid);
  EXPECT_EQ(code_of(4, {{0, 1}, {2}}), ErrorCode::PartitionInvalid);
  EXPECT_EQ(code_of(4, {{0, 1}, {2, 3}, {}}), ErrorCode::PartitionInvalid);
  EXPECT_EQ(code_of(4, {{0, 1}, {2, 7}}), ErrorCode::PartitionInvalid);
  const auto sys = build_cyclotomy(FieldSpec::build(3, 4), 8);
  EXPECT_THROW(verify_scheme(*sys, IndexPartition::make(4, {{0, 1}, {2, 3}})), Error);
}

TEST(Scheme, SymmetrizeAndSymmetry) {
  // q = 81: -1 = gamma^40, class 0 mod 8, so every relation is symmetric.
  const auto sys81 = build_cyclotomy(FieldSpec::build(3, 4), 8);
  EXPECT_EQ(sys81->negation_shift(), 0u);
  for (std::size_t i = 1; i <= 8; ++i) EXPECT_TRUE(is_symmetric(*sys81, singletons(8), i));
  // q = 243, N = 22: -1 = gamma^121, class 11.
  const auto sys = build_cyclotomy(FieldSpec::build(3, 5), 22);
  EXPECT_EQ(sys->negation_shift(), 11u);
  const auto sym = symmetrize(singletons(22), 11);
  EXPECT_EQ(sym.class_count(), 11u);
  EXPECT_TRUE(symmetrize(sym, 11).same_sets(sym));
  EXPECT_FALSE(is_symmetric(*sys, singletons(22), 1));
  const SchemeReport r = verify_scheme(*sys, singletons(22));
  EXPECT_EQ(r.nonsymmetric_pair_count, 11u);
}

TEST(Scheme, Primitivity) {
  // In F_81, class 0 of index 10 is <gamma^10> = F_9^*, so {0} U C_0 is a subfield.
  const auto sys = build_cyclotomy(FieldSpec::build(3, 4), 10);
  const auto with_subfield = IndexPartition::make(10, {{0}, {1, 2, 3, 4, 5, 6, 7, 8, 9}});
  ASSERT_TRUE(is_scheme(*sys, with_subfield));
  EXPECT_FALSE(is_primitive(*sys, with_subfield));
  const auto sys13 = build_cyclotomy(FieldSpec::build(13, 1), 2);
  EXPECT_TRUE(is_primitive(*sys13, singletons(2)));
}

TEST(Scheme, FusionIdentityAndPathIndependence) {
  const auto sys = build_cyclotomy(FieldSpec::build(3, 5), 22);
  const auto fine = singletons(22);
  const Eigenmatrices e = eigenmatrices(*sys, fine);
  std::vector<IndexSet> id;
  for (std::uint32_t j = 0; j <= 22; ++j) id.push_back({j});
  const auto same = check_fusion(e.P_exact, id);
  ASSERT_TRUE(same.has_value());
  EXPECT_EQ(same->fused_P, e.P_exact);
  EXPECT_EQ(same->delta.size(), 23u);
  // Columns are relation indices 1..22 (relation j = class j-1). Fuse into the
  // three-class scheme <3>, -<3> mod 11 (lifted to Z_22) and the classes of F_3^*.
  const std::set<std::uint32_t> qr = {1, 3, 4, 5, 9};
  IndexSet a, b, c;
  for (std::uint32_t i = 0; i < 22; ++i) {
    if (i % 11 == 0) {
      c.push_back(i + 1);
    } else if (qr.count(i % 11)) {
      a.push_back(i + 1);
    } else {
      b.push_back(i + 1);
    }
  }
  const auto fused = check_fusion(e.P_exact, {{0}, a, b, c});
  ASSERT_TRUE(fused.has_value());
  auto minus_one = [](IndexSet s) {
    for (auto& x : s) --x;
    return s;
  };
  const auto direct = eigenmatrices(*sys, IndexPartition::make(22, {minus_one(a), minus_one(b), minus_one(c)}));
  EXPECT_EQ(fused->fused_P, direct.P_exact);
  // A non-fusable merge: check_fusion and verify_scheme agree.
  IndexSet bad = {1, 2};
  IndexSet rest;
  for (std::uint32_t j = 3; j <= 22; ++j) rest.push_back(j);
  EXPECT_FALSE(check_fusion(e.P_exact, {{0}, bad, rest}).has_value());
  EXPECT_FALSE(is_scheme(*sys, IndexPartition::make(22, {minus_one(bad), minus_one(rest)})));
  EXPECT_THROW(check_fusion(e.P_exact, {{1}, {0, 2}}), Error);
}

TEST(Scheme, FusionAgreesWithVerifierOnRandomMerges) {
  std::mt19937_64 rng(77);
  const auto sys = build_cyclotomy(FieldSpec::build(11, 2), 12);
  const Eigenmatrices e = eigenmatrices(*sys, singletons(12));
  for (int t = 0; t < 60; ++t) {
    const auto part = random_partition(12, 11, rng);
    std::vector<IndexSet> lambda = {{0}};
    for (const auto& s : part.parts) {
      IndexSet cols;
      for (auto i : s) cols.push_back(i + 1);
      lambda.push_back(cols);
    }
    EXPECT_EQ(check_fusion(e.P_exact, lambda).has_value(), is_scheme(*sys, part));
  }
}

TEST(Scheme, MatchUpToPermutation) {
  const auto sys = build_cyclotomy(FieldSpec::build(3, 4), 5);
  const auto P = eigenmatrices(*sys, singletons(5)).P_complex;
  ComplexMatrix shuffled = P;
  // Swap rows 1,2 and columns 3,4.
  for (std::size_t j = 0; j < 6; ++j) std::swap(shuffled(1, j), shuffled(2, j));
  for (std::size_t i = 0; i < 6; ++i) std::swap(shuffled(i, 3), shuffled(i, 4));
  const auto m = match_up_to_permutation(shuffled, P, 1e-9);
  ASSERT_TRUE(m.has_value());
  EXPECT_LT(m->max_error, 1e-9);
  ComplexMatrix broken = P;
  broken(1, 1) += 0.5;
  EXPECT_FALSE(match_up_to_permutation(broken, P, 1e-6).has_value());
}
