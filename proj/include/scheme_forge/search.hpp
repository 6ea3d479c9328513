#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "scheme_forge/cyclotomy.hpp"
#include "scheme_forge/scheme.hpp"

namespace scheme_forge {

/// An element of the group ring Z[Z_N].
struct GroupRingElem {
  std::uint32_t N = 0;
  std::vector<std::int64_t> coeffs;

  static GroupRingElem zero(std::uint32_t N);
  static GroupRingElem basis(std::uint32_t N, std::int64_t i);  // [i]
  // Sum of [i] over the listed indices (with multiplicity).
  static GroupRingElem from_indices(std::uint32_t N, std::span<const std::uint32_t> indices);

  friend bool operator==(const GroupRingElem&, const GroupRingElem&) = default;
};

// All binary operations throw ModulusMismatch on differing N.
GroupRingElem gr_add(const GroupRingElem& a, const GroupRingElem& b);
GroupRingElem gr_sub(const GroupRingElem& a, const GroupRingElem& b);
GroupRingElem gr_scale(const GroupRingElem& a, std::int64_t k);
GroupRingElem gr_mul(const GroupRingElem& a, const GroupRingElem& b);
// X^{(-1)}: [i] -> [-i].
GroupRingElem gr_involution(const GroupRingElem& a);

struct TracePartition {
  std::uint32_t p = 0;
  std::uint32_t N = 0;  // 2(p + 1)
  IndexSet T0;          // tr(gamma^i) = 0
  IndexSet Ts;          // tr(gamma^i) a nonzero square
  IndexSet Tn;          // tr(gamma^i) a nonsquare
  std::vector<CycInt> class_sums;  // psi(C_i), i in Z_N
};

// Over F_{p^2} with N = 2(p + 1). Throws PreconditionViolated unless p is a
// prime with p = 3 (mod 4).
TracePartition trace_partition(std::uint32_t p);

// T_s T_s^{(-1)} == p[0] + ((p - 1)/2)(Z_N - {0, N/2}) in Z[Z_N].
bool ts_identity_check(std::uint32_t p);

struct SearchConfig {
  std::uint32_t p = 3;
  std::uint32_t max_classes = 4;  // block counts 3 .. max_classes
  bool require_nonsymmetric = true;
  bool require_primitive = true;
  // Skip partitions that are not invariant under i -> i + N/2 (multiplication
  // by -1 must permute the relations). Off only for enumeration checks.
  bool prune_negation = true;
  bool long_run = false;  // permits p = 11
  unsigned threads = 0;   // 0: SCHEME_FORGE_THREADS or hardware concurrency
  std::uint64_t leaf_budget = 0;  // 0: unlimited; otherwise BudgetExceeded past it
};

struct SearchCounts {
  std::uint32_t classes = 0;
  std::uint64_t partitions = 0;   // every set partition into this many blocks
  std::uint64_t pruned = 0;       // counted analytically, never visited
  std::uint64_t visited = 0;      // negation-invariant leaves
  std::uint64_t nonsymmetric = 0; // visited leaves with a nonsymmetric part
  std::uint64_t schemes = 0;      // leaves passing the scheme test (after the symmetry filter)
};

struct SearchResult {
  std::uint32_t p = 0;
  std::uint32_t N = 0;
  std::uint64_t checked = 0;  // sum of partitions over all block counts
  std::vector<SearchCounts> per_class_count;
  std::vector<IndexPartition> found;  // parts sorted by (size, smallest element); list sorted
};

// Progress: (finished tasks, total tasks).
using SearchProgress = std::function<void(std::uint64_t, std::uint64_t)>;

// Throws PreconditionViolated (bad p or max_classes) and BudgetExceeded.
SearchResult exhaustive_nonexistence(const SearchConfig& cfg, const SearchProgress& progress = {});

// Number of set partitions of an n-set into exactly k blocks.
std::uint64_t stirling2(std::uint32_t n, std::uint32_t k);

// SCHEME_FORGE_THREADS when set and positive, else hardware concurrency (at least 1).
unsigned default_thread_count();

}  // namespace scheme_forge
