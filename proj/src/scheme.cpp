#include "scheme_forge/scheme.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "scheme_forge/error.hpp"
#include "scheme_forge/number_theory.hpp"

namespace scheme_forge {
namespace {

using Signature = std::vector<CycInt>;
using SignatureClasses = std::map<Signature, IndexSet>;

void require_compatible(const CyclotomicSystem& sys, const IndexPartition& partition) {
  if (partition.N != sys.index()) {
    throw Error(ErrorCode::PartitionInvalid, "partition of Z_" + std::to_string(partition.N) +
                                                 " used with cyclotomy of index " +
                                                 std::to_string(sys.index()));
  }
}

// Groups a in Z_N by the value vector (psi(gamma^a R_1), ..., psi(gamma^a R_d)).
// std::map keeps the classes in lexicographic order of their exact values.
SignatureClasses group_characters(const CyclotomicSystem& sys, const IndexPartition& partition) {
  SignatureClasses classes;
  const std::uint32_t N = partition.N;
  for (std::uint32_t a = 0; a < N; ++a) {
    Signature sig;
    sig.reserve(partition.parts.size());
    for (const auto& part : partition.parts) sig.push_back(sys.character_sum(part, a));
    classes[std::move(sig)].push_back(a);
  }
  return classes;
}

std::vector<std::uint64_t> valencies_of(const CyclotomicSystem& sys, const IndexPartition& partition) {
  std::vector<std::uint64_t> out;
  for (const auto& part : partition.parts) out.push_back(sys.class_size() * part.size());
  return out;
}

IndexPartition dual_from(const SignatureClasses& classes, std::uint32_t N) {
  IndexPartition dual;
  dual.N = N;
  for (const auto& [sig, members] : classes) dual.parts.push_back(members);
  return dual;
}

Eigenmatrices eigen_from(const CyclotomicSystem& sys, const IndexPartition& partition,
                         const SignatureClasses& classes) {
  const std::size_t d = partition.parts.size();
  const std::uint32_t p = sys.field().characteristic();
  const auto valencies = valencies_of(sys, partition);
  Eigenmatrices out;
  out.P_exact = ExactMatrix(d + 1, d + 1, CycInt::integer(p, 1));
  for (std::size_t j = 0; j < d; ++j) {
    out.P_exact(0, j + 1) = CycInt::integer(p, static_cast<std::int64_t>(valencies[j]));
  }
  std::size_t r = 1;
  for (const auto& [sig, members] : classes) {
    for (std::size_t j = 0; j < d; ++j) out.P_exact(r, j + 1) = sig[j];
    ++r;
  }

  // Q(i, k) = sum_{y in D_k} psi(-y x_i) for a representative x_i of R_i.
  const IndexPartition dual = dual_from(classes, partition.N);
  const std::uint32_t c = sys.negation_shift();
  out.Q_exact = ExactMatrix(d + 1, d + 1, CycInt::integer(p, 1));
  for (std::size_t k = 0; k < d; ++k) {
    out.Q_exact(0, k + 1) =
        CycInt::integer(p, static_cast<std::int64_t>(sys.class_size() * dual.parts[k].size()));
  }
  for (std::size_t i = 0; i < d; ++i) {
    const std::int64_t rep = partition.parts[i].front();
    for (std::size_t k = 0; k < d; ++k) {
      out.Q_exact(i + 1, k + 1) = sys.character_sum(dual.parts[k], rep + c);
    }
  }
  out.P_complex = embed(out.P_exact);
  out.Q_complex = embed(out.Q_exact);
  return out;
}

// Row k of every B_i computed from one representative z = gamma^ez of R_k, via
// z - gamma^e = gamma^ez (1 - gamma^{e - ez}).
IntMatrix counts_from_representative(const CyclotomicSystem& sys, const std::vector<std::uint32_t>& rel,
                                     std::size_t d, std::uint32_t ez) {
  const FieldSpec& field = sys.field();
  const std::uint32_t group = field.group_order();
  const std::uint32_t N = sys.index();
  IntMatrix cnt(d + 1, d + 1, 0);  // cnt(i, j) = #{x in R_i : z - x in R_j}
  cnt(0, rel[ez % N]) += 1;        // x = 0
  cnt(rel[ez % N], 0) += 1;        // x = z
  std::uint32_t cls_x = (ez + 1) % N;
  for (std::uint32_t t = 1; t < group; ++t) {
    const std::uint64_t ly = static_cast<std::uint64_t>(ez) + field.one_minus_log(t);
    cnt(rel[cls_x], rel[ly % N]) += 1;
    if (++cls_x == N) cls_x = 0;
  }
  return cnt;
}

std::vector<IntMatrix> intersection_from(const CyclotomicSystem& sys, const IndexPartition& partition) {
  const std::size_t d = partition.parts.size();
  const std::uint32_t N = partition.N;
  const std::uint32_t group = sys.field().group_order();
  std::vector<std::uint32_t> rel(N + 1);
  const auto rel_of = partition.relation_of();
  std::copy(rel_of.begin(), rel_of.end(), rel.begin());
  const auto valencies = valencies_of(sys, partition);

  std::vector<IntMatrix> B(d + 1, IntMatrix(d + 1, d + 1, 0));
  // Row 0: z = 0, so p_{ij}^0 = |R_i| exactly when R_j = -R_i.
  B[0](0, 0) = 1;
  for (std::size_t i = 0; i < d; ++i) {
    const std::uint32_t neg = rel[(partition.parts[i].front() + sys.negation_shift()) % N];
    B[i + 1](0, neg) = static_cast<std::int64_t>(valencies[i]);
  }

  std::mt19937_64 rng(0x5eed5c4e3eULL);
  for (std::size_t k = 0; k < d; ++k) {
    const auto& part = partition.parts[k];
    const IntMatrix cnt = counts_from_representative(sys, rel, d, part.front());
    for (std::size_t i = 0; i <= d; ++i) {
      for (std::size_t j = 0; j <= d; ++j) B[i](k + 1, j) = cnt(i, j);
    }
    // Well-definedness guard on a few more representatives of R_k.
    const std::uint64_t per_class = group / N;
    for (int sample = 0; sample < 3; ++sample) {
      const std::uint32_t cls = part[rng() % part.size()];
      const auto ez = static_cast<std::uint32_t>(cls + N * (rng() % per_class));
      if (counts_from_representative(sys, rel, d, ez) != cnt) {
        throw Error(ErrorCode::NotAScheme, "intersection numbers depend on the representative");
      }
    }
  }
  return B;
}

bool primitive_from(const CyclotomicSystem& sys, const IndexPartition& partition) {
  const IndexPartition merged = symmetrize(partition, sys.negation_shift());
  const std::uint32_t p = sys.field().characteristic();
  for (const auto& part : merged.parts) {
    const CycInt valency = CycInt::integer(p, static_cast<std::int64_t>(sys.class_size() * part.size()));
    for (std::uint32_t a = 0; a < partition.N; ++a) {
      if (sys.character_sum(part, a) == valency) return false;
    }
  }
  return true;
}

SignatureClasses verified_classes(const CyclotomicSystem& sys, const IndexPartition& partition) {
  require_compatible(sys, partition);
  auto classes = group_characters(sys, partition);
  if (classes.size() != partition.parts.size()) {
    throw Error(ErrorCode::NotAScheme, "partition is not a translation scheme");
  }
  return classes;
}

}  // namespace

IndexPartition IndexPartition::make(std::uint32_t N, std::vector<IndexSet> parts) {
  if (N == 0) throw Error(ErrorCode::PartitionInvalid, "N must be positive");
  std::vector<bool> seen(N, false);
  std::size_t total = 0;
  for (auto& part : parts) {
    if (part.empty()) throw Error(ErrorCode::PartitionInvalid, "empty part");
    std::sort(part.begin(), part.end());
    for (std::uint32_t i : part) {
      if (i >= N) throw Error(ErrorCode::PartitionInvalid, "index " + std::to_string(i) + " outside Z_N");
      if (seen[i]) throw Error(ErrorCode::PartitionInvalid, "index " + std::to_string(i) + " repeated");
      seen[i] = true;
      ++total;
    }
  }
  if (total != N) throw Error(ErrorCode::PartitionInvalid, "parts do not cover Z_" + std::to_string(N));
  return IndexPartition{N, std::move(parts)};
}

std::vector<std::uint32_t> IndexPartition::relation_of() const {
  std::vector<std::uint32_t> out(N, 0);
  for (std::size_t r = 0; r < parts.size(); ++r) {
    for (std::uint32_t i : parts[r]) out[i] = static_cast<std::uint32_t>(r + 1);
  }
  return out;
}

bool IndexPartition::same_sets(const IndexPartition& other) const {
  if (N != other.N || parts.size() != other.parts.size()) return false;
  auto a = parts;
  auto b = other.parts;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

IndexPartition IndexPartition::transformed(std::int64_t u, std::int64_t v) const {
  std::vector<IndexSet> out;
  out.reserve(parts.size());
  for (const auto& part : parts) {
    IndexSet image;
    for (std::uint32_t i : part) image.push_back(static_cast<std::uint32_t>(mod_floor(u * i + v, N)));
    out.push_back(std::move(image));
  }
  return make(N, std::move(out));
}

bool is_scheme(const CyclotomicSystem& sys, const IndexPartition& partition) {
  require_compatible(sys, partition);
  return group_characters(sys, partition).size() == partition.parts.size();
}

SchemeReport verify_scheme(const CyclotomicSystem& sys, const IndexPartition& partition) {
  require_compatible(sys, partition);
  SchemeReport report;
  report.class_count = partition.parts.size();
  report.valencies = valencies_of(sys, partition);
  const auto classes = group_characters(sys, partition);
  report.distinct_signatures = classes.size();
  report.is_scheme = classes.size() == partition.parts.size();
  if (!report.is_scheme) return report;

  auto eig = eigen_from(sys, partition, classes);
  report.P_exact = std::move(eig.P_exact);
  report.P_complex = std::move(eig.P_complex);
  report.Q_exact = std::move(eig.Q_exact);
  report.Q_complex = std::move(eig.Q_complex);
  report.intersection_matrices = intersection_from(sys, partition);
  report.dual = dual_from(classes, partition.N);

  const std::size_t d = partition.parts.size();
  const std::uint32_t c = sys.negation_shift();
  const auto rel = partition.relation_of();
  for (std::size_t i = 0; i < d; ++i) {
    const std::uint32_t image = rel[(partition.parts[i].front() + c) % partition.N];
    report.symmetric.push_back(image == i + 1);
    if (image > i + 1) ++report.nonsymmetric_pair_count;
  }
  report.is_primitive = primitive_from(sys, partition);

  report.is_self_dual = report.dual.same_sets(partition);
  if (report.is_self_dual) {
    std::vector<std::uint32_t> perm(d + 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t r = 0; r < d; ++r) {
        if (report.dual.parts[r] == partition.parts[i]) perm[i + 1] = static_cast<std::uint32_t>(r + 1);
      }
    }
    report.self_dual_permutation = std::move(perm);
  }
  return report;
}

std::vector<IntMatrix> intersection_numbers(const CyclotomicSystem& sys, const IndexPartition& partition) {
  verified_classes(sys, partition);
  return intersection_from(sys, partition);
}

Eigenmatrices eigenmatrices(const CyclotomicSystem& sys, const IndexPartition& partition) {
  return eigen_from(sys, partition, verified_classes(sys, partition));
}

IndexPartition dual_partition(const CyclotomicSystem& sys, const IndexPartition& partition) {
  return dual_from(verified_classes(sys, partition), partition.N);
}

std::vector<IntMatrix> krein_parameters(const CyclotomicSystem& sys, const IndexPartition& partition) {
  const IndexPartition dual = dual_partition(sys, partition);
  return intersection_numbers(sys, dual);
}

bool is_primitive(const CyclotomicSystem& sys, const IndexPartition& partition) {
  verified_classes(sys, partition);
  return primitive_from(sys, partition);
}

bool is_symmetric(const CyclotomicSystem& sys, const IndexPartition& partition, std::size_t relation) {
  require_compatible(sys, partition);
  if (relation == 0) return true;
  if (relation > partition.parts.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "relation " + std::to_string(relation) + " does not exist");
  }
  const auto& part = partition.parts[relation - 1];
  IndexSet shifted;
  for (std::uint32_t i : part) shifted.push_back((i + sys.negation_shift()) % partition.N);
  std::sort(shifted.begin(), shifted.end());
  return shifted == part;
}

IndexPartition symmetrize(const IndexPartition& partition, std::uint32_t negation_shift) {
  const std::size_t d = partition.parts.size();
  std::vector<std::size_t> root(d);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  const auto rel = partition.relation_of();
  for (std::size_t r = 0; r < d; ++r) {
    for (std::uint32_t i : partition.parts[r]) {
      const std::size_t a = find(r);
      const std::size_t b = find(rel[(i + negation_shift) % partition.N] - 1);
      if (a != b) root[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, IndexSet> merged;
  for (std::size_t r = 0; r < d; ++r) {
    auto& target = merged[find(r)];
    target.insert(target.end(), partition.parts[r].begin(), partition.parts[r].end());
  }
  std::vector<IndexSet> parts;
  for (auto& [key, part] : merged) parts.push_back(std::move(part));
  return IndexPartition::make(partition.N, std::move(parts));
}

std::optional<FusionResult> check_fusion(const ExactMatrix& P, const std::vector<IndexSet>& lambda) {
  const std::size_t n = P.cols();
  if (lambda.empty() || lambda[0] != IndexSet{0}) {
    throw Error(ErrorCode::MalformedPartition, "lambda[0] must be {0}");
  }
  std::vector<bool> seen(n, false);
  std::size_t total = 0;
  for (const auto& block : lambda) {
    if (block.empty()) throw Error(ErrorCode::MalformedPartition, "empty block");
    for (std::uint32_t j : block) {
      if (j >= n || seen[j]) throw Error(ErrorCode::MalformedPartition, "blocks must partition the columns");
      seen[j] = true;
      ++total;
    }
  }
  if (total != n) throw Error(ErrorCode::MalformedPartition, "blocks must cover every column");

  const CycInt zero = P(0, 0) - P(0, 0);
  std::map<Signature, IndexSet> rows;
  Signature principal;
  for (std::size_t r = 0; r < P.rows(); ++r) {
    Signature sig;
    for (const auto& block : lambda) {
      CycInt sum = zero;
      for (std::uint32_t j : block) sum += P(r, j);
      sig.push_back(std::move(sum));
    }
    if (r == 0) {
      principal = sig;
    } else {
      rows[std::move(sig)].push_back(static_cast<std::uint32_t>(r));
    }
  }
  if (rows.size() + 1 != lambda.size() || rows.count(principal) != 0) return std::nullopt;

  FusionResult out;
  out.delta.push_back({0});
  out.fused_P = ExactMatrix(lambda.size(), lambda.size());
  for (std::size_t l = 0; l < lambda.size(); ++l) out.fused_P(0, l) = principal[l];
  std::size_t r = 1;
  for (auto& [sig, members] : rows) {
    for (std::size_t l = 0; l < lambda.size(); ++l) out.fused_P(r, l) = sig[l];
    out.delta.push_back(members);
    ++r;
  }
  return out;
}

std::vector<std::uint32_t> relation_labels(const CyclotomicSystem& sys, const IndexPartition& partition) {
  require_compatible(sys, partition);
  const auto rel = partition.relation_of();
  const FieldSpec& field = sys.field();
  std::vector<std::uint32_t> labels(field.order(), 0);
  for (Element x = 1; x < field.order(); ++x) labels[x] = rel[field.log_of(x) % partition.N];
  return labels;
}

bool brute_force_verify(const FieldSpec& field, std::span<const std::uint32_t> labels) {
  const std::uint32_t q = field.order();
  if (q > kOracleFieldCap) {
    throw Error(ErrorCode::TooLargeForOracle, "q = " + std::to_string(q) + " is above the oracle cap");
  }
  if (labels.size() != q) throw Error(ErrorCode::PartitionInvalid, "one label per field element required");
  if (labels[0] != 0) return false;
  const std::uint32_t d = *std::max_element(labels.begin(), labels.end());
  std::vector<std::uint64_t> sizes(d + 1, 0);
  for (std::uint32_t l : labels) ++sizes[l];
  if (sizes[0] != 1) return false;
  for (std::uint32_t l = 1; l <= d; ++l) {
    if (sizes[l] == 0) return false;
  }

  // Negation must permute the relations.
  std::vector<std::int64_t> image(d + 1, -1);
  for (Element x = 0; x < q; ++x) {
    const std::uint32_t l = labels[x];
    const std::uint32_t m = labels[field.neg(x)];
    if (image[l] == -1) image[l] = m;
    if (image[l] != static_cast<std::int64_t>(m)) return false;
  }
  for (std::uint32_t l = 0; l <= d; ++l) {
    if (image[image[l]] != static_cast<std::int64_t>(l)) return false;
  }

  // p_{ij}^k must not depend on the choice of z in R_k.
  std::vector<std::optional<IntMatrix>> reference(d + 1);
  IntMatrix counts(d + 1, d + 1, 0);
  for (Element z = 0; z < q; ++z) {
    counts = IntMatrix(d + 1, d + 1, 0);
    for (Element x = 0; x < q; ++x) counts(labels[x], labels[field.sub(z, x)]) += 1;
    auto& ref = reference[labels[z]];
    if (!ref) {
      ref = counts;
    } else if (*ref != counts) {
      return false;
    }
  }
  return true;
}

std::optional<PermutationMatch> match_up_to_permutation(const ComplexMatrix& computed,
                                                        const ComplexMatrix& reference, double tol) {
  const std::size_t n = computed.rows();
  if (n == 0 || computed.cols() != n || reference.rows() != n || reference.cols() != n) return std::nullopt;
  std::vector<std::uint32_t> cols(n);
  std::iota(cols.begin(), cols.end(), 0);
  do {
    PermutationMatch match;
    match.col_perm = cols;
    match.row_perm.assign(n, 0);
    std::vector<bool> used(n, false);
    bool ok = true;
    for (std::size_t r = 0; r < n && ok; ++r) {
      ok = false;
      for (std::size_t s = 0; s < n; ++s) {
        if (used[s] || (r == 0) != (s == 0)) continue;
        double err = 0.0;
        for (std::size_t c = 0; c < n; ++c) err = std::max(err, std::abs(computed(r, cols[c]) - reference(s, c)));
        if (err <= tol) {
          used[s] = true;
          match.row_perm[r] = static_cast<std::uint32_t>(s);
          match.max_error = std::max(match.max_error, err);
          ok = true;
          break;
        }
      }
    }
    if (ok) return match;
  } while (std::next_permutation(cols.begin() + 1, cols.end()));
  return std::nullopt;
}

std::optional<std::vector<std::uint32_t>> match_intersection_matrices(
    const std::vector<IntMatrix>& computed, const std::vector<IntMatrix>& reference) {
  const std::size_t n = reference.size();
  if (computed.size() != n) return std::nullopt;
  std::vector<std::uint32_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t k = 0; k < n && ok; ++k) {
        for (std::size_t j = 0; j < n && ok; ++j) {
          ok = computed[sigma[i]](sigma[k], sigma[j]) == reference[i](k, j);
        }
      }
    }
    if (ok) return sigma;
  } while (n > 1 && std::next_permutation(sigma.begin() + 1, sigma.end()));
  return std::nullopt;
}

}  // namespace scheme_forge
