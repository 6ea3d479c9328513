#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "scheme_forge/cyclotomy.hpp"
#include "scheme_forge/matrix.hpp"

namespace scheme_forge {

/// A partition of Z_N into d nonempty index sets. Together with a cyclotomic
/// system it describes the translation partition {0}, R_1, ..., R_d of F_q
/// where R_i is the union of the classes listed in part i-1. Relation 0 is
/// implicit.
struct IndexPartition {
  std::uint32_t N = 0;
  std::vector<IndexSet> parts;

  // Sorts each part and checks the partition invariants (PartitionInvalid).
  static IndexPartition make(std::uint32_t N, std::vector<IndexSet> parts);

  std::size_t class_count() const { return parts.size(); }
  // relation_of()[i] = 1-based relation containing class i.
  std::vector<std::uint32_t> relation_of() const;
  // Same collection of sets, ignoring the order of the parts.
  bool same_sets(const IndexPartition& other) const;
  // Image under the index map i -> u*i + v (mod N).
  IndexPartition transformed(std::int64_t u, std::int64_t v) const;

  friend bool operator==(const IndexPartition&, const IndexPartition&) = default;
};

struct SchemeReport {
  bool is_scheme = false;
  std::size_t class_count = 0;
  std::vector<std::uint64_t> valencies;  // |R_1|, ..., |R_d|
  std::size_t distinct_signatures = 0;   // nonprincipal dual classes found

  // Filled only when is_scheme.
  // Rows: dual classes (row 0 principal, the rest in canonical order).
  // Columns: relations 0..d.
  ExactMatrix P_exact;
  ComplexMatrix P_complex;
  // Rows: relations, columns: dual classes. Computed from the dual character sums.
  ExactMatrix Q_exact;
  ComplexMatrix Q_complex;
  std::vector<IntMatrix> intersection_matrices;  // B_i(k, j) = p_{ij}^k
  IndexPartition dual;                           // dual.parts[r-1] <-> row r of P
  std::vector<bool> symmetric;                   // per relation 1..d
  std::size_t nonsymmetric_pair_count = 0;
  bool is_primitive = false;
  bool is_self_dual = false;
  // perm[i] = dual class equal (as a set) to relation i; perm[0] = 0.
  std::optional<std::vector<std::uint32_t>> self_dual_permutation;
};

struct Eigenmatrices {
  ExactMatrix P_exact;
  ComplexMatrix P_complex;
  ExactMatrix Q_exact;
  ComplexMatrix Q_complex;
};

struct FusionResult {
  std::vector<IndexSet> delta;  // row partition, delta[0] = {0}
  ExactMatrix fused_P;
};

// Dual-signature criterion: the partition is a scheme iff the characters
// psi_{gamma^a}, a in Z_N, give exactly d distinct value vectors on R_1..R_d.
bool is_scheme(const CyclotomicSystem& sys, const IndexPartition& partition);

SchemeReport verify_scheme(const CyclotomicSystem& sys, const IndexPartition& partition);

// The rest require a verified scheme and throw NotAScheme otherwise.
std::vector<IntMatrix> intersection_numbers(const CyclotomicSystem& sys, const IndexPartition& partition);
Eigenmatrices eigenmatrices(const CyclotomicSystem& sys, const IndexPartition& partition);
IndexPartition dual_partition(const CyclotomicSystem& sys, const IndexPartition& partition);
// Intersection matrices of the dual scheme (Krein parameters up to normalisation).
std::vector<IntMatrix> krein_parameters(const CyclotomicSystem& sys, const IndexPartition& partition);
bool is_primitive(const CyclotomicSystem& sys, const IndexPartition& partition);

// Relation i (1-based) is symmetric iff I_i + c = I_i, c the class of -1.
bool is_symmetric(const CyclotomicSystem& sys, const IndexPartition& partition, std::size_t relation);
// Merges every part with its negation image (classes shifted by negation_shift).
IndexPartition symmetrize(const IndexPartition& partition, std::uint32_t negation_shift);

// Bannai-Muzychuk: lambda partitions the columns {0..d} with lambda[0] = {0}.
// Throws MalformedPartition.
std::optional<FusionResult> check_fusion(const ExactMatrix& P, const std::vector<IndexSet>& lambda);

// labels[x] = relation of field element x under the translation partition.
std::vector<std::uint32_t> relation_labels(const CyclotomicSystem& sys, const IndexPartition& partition);

inline constexpr std::uint32_t kOracleFieldCap = 20000;

// Direct check of the association-scheme axioms on F_q (O(q^2)); test oracle.
// Throws TooLargeForOracle when q > kOracleFieldCap.
bool brute_force_verify(const FieldSpec& field, std::span<const std::uint32_t> labels);

struct PermutationMatch {
  std::vector<std::uint32_t> row_perm;  // computed row r matches reference row row_perm[r]
  std::vector<std::uint32_t> col_perm;  // reference column c sits at computed column col_perm[c]
  double max_error = 0.0;
};

// Matches two eigenmatrices up to independent permutations of the
// nonprincipal rows and of the nontrivial columns. Column orders are tried
// exhaustively (d! of them), so this is meant for small d.
std::optional<PermutationMatch> match_up_to_permutation(const ComplexMatrix& computed,
                                                        const ComplexMatrix& reference, double tol);

// Finds sigma on {0..d} (sigma(0) = 0) with
// computed[sigma(i)](sigma(k), sigma(j)) == reference[i](k, j) for all i, j, k.
std::optional<std::vector<std::uint32_t>> match_intersection_matrices(
    const std::vector<IntMatrix>& computed, const std::vector<IntMatrix>& reference);

}  // namespace scheme_forge
