#include "scheme_forge/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "scheme_forge/error.hpp"
#include "scheme_forge/number_theory.hpp"

namespace scheme_forge {
namespace {

void require_same(const GroupRingElem& a, const GroupRingElem& b) {
  if (a.N != b.N) {
    throw Error(ErrorCode::ModulusMismatch,
                "Z[Z_" + std::to_string(a.N) + "] vs Z[Z_" + std::to_string(b.N) + "]");
  }
}

void require_p(std::uint32_t p) {
  if (!is_prime(p) || p % 4 != 3) {
    throw Error(ErrorCode::PreconditionViolated, "p must be a prime with p = 3 (mod 4)");
  }
}

// completions[r][k]: ways to finish a restricted growth string with r more
// elements, k blocks used so far, ending with exactly d blocks.
std::vector<std::vector<std::uint64_t>> completion_table(std::uint32_t n, std::uint32_t d) {
  std::vector<std::vector<std::uint64_t>> C(n + 1, std::vector<std::uint64_t>(d + 2, 0));
  C[0][d] = 1;
  for (std::uint32_t r = 1; r <= n; ++r) {
    for (std::uint32_t k = 0; k <= d; ++k) C[r][k] = k * C[r - 1][k] + C[r - 1][k + 1];
  }
  return C;
}

IndexPartition canonical_partition(std::uint32_t N, std::span<const int> blocks, std::uint32_t d) {
  std::vector<IndexSet> parts(d);
  for (std::uint32_t x = 0; x < N; ++x) parts[blocks[x]].push_back(x);
  std::sort(parts.begin(), parts.end(), [](const IndexSet& a, const IndexSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
  });
  return IndexPartition::make(N, std::move(parts));
}

struct Task {
  std::uint32_t d;
  std::vector<int> prefix;
  int blocks_used;
};

struct Shared {
  const SearchConfig& cfg;
  const CyclotomicSystem& sys;
  std::uint32_t N;
  std::uint32_t width;                 // p - 1 coefficients per period
  std::vector<std::int64_t> periods;   // N x width
  std::atomic<std::uint64_t> leaves{0};
  std::atomic<bool> over_budget{false};
};

class Worker {
 public:
  Worker(Shared& shared, std::uint32_t d)
      : sh_(shared), N_(shared.N), half_(shared.N / 2), d_(d), C_(completion_table(shared.N, d)),
        blocks_(shared.N, -1), pi_(d, -1), sig_(static_cast<std::size_t>(shared.N) * d * shared.width),
        order_(shared.N) {}

  void run(const Task& task) {
    std::copy(task.prefix.begin(), task.prefix.end(), blocks_.begin());
    std::fill(pi_.begin(), pi_.end(), -1);
    recurse(static_cast<std::uint32_t>(task.prefix.size()), task.blocks_used);
  }

  SearchCounts counts;
  std::vector<IndexPartition> found;

 private:
  void recurse(std::uint32_t i, int k) {
    if (sh_.over_budget.load(std::memory_order_relaxed)) return;
    if (i == N_) {
      if (static_cast<std::uint32_t>(k) == d_) leaf();
      return;
    }
    const int top = std::min<int>(k, static_cast<int>(d_) - 1);
    for (int c = 0; c <= top; ++c) {
      const int nk = k + (c == k ? 1 : 0);
      const std::uint64_t subtree = C_[N_ - i - 1][nk];
      if (subtree == 0) continue;
      int set_b = -1;
      if (sh_.cfg.prune_negation && i >= half_) {
        const int b = blocks_[i - half_];
        bool ok;
        if (pi_[b] != -1) {
          ok = pi_[b] == c;
        } else {
          ok = c == b || c == k || pi_[c] == -1;
          if (ok) set_b = b;
        }
        if (!ok) {
          counts.pruned += subtree;
          continue;
        }
      }
      if (set_b != -1) {
        pi_[set_b] = c;
        pi_[c] = set_b;
      }
      blocks_[i] = c;
      recurse(i + 1, nk);
      if (set_b != -1) {
        pi_[set_b] = -1;
        pi_[c] = -1;
      }
    }
  }

  void leaf() {
    ++counts.visited;
    const std::uint64_t budget = sh_.cfg.leaf_budget;
    if (budget != 0 && sh_.leaves.fetch_add(1, std::memory_order_relaxed) + 1 > budget) {
      sh_.over_budget = true;
      return;
    }
    bool nonsymmetric = false;
    for (std::uint32_t x = 0; x < half_ && !nonsymmetric; ++x) nonsymmetric = blocks_[x] != blocks_[x + half_];
    if (nonsymmetric) ++counts.nonsymmetric;
    if (sh_.cfg.require_nonsymmetric && !nonsymmetric) return;
    if (!signature_count_matches()) return;

    const IndexPartition partition = canonical_partition(N_, blocks_, d_);
    if (!is_scheme(sh_.sys, partition)) {
      throw Error(ErrorCode::NotAScheme, "fast signature test disagrees with verify_scheme");
    }
    ++counts.schemes;
    if (sh_.cfg.require_primitive && !is_primitive(sh_.sys, partition)) return;
    found.push_back(partition);
  }

  // Exact signature vectors psi_{gamma^a}(R_1..R_d), a in Z_N; scheme iff d distinct.
  bool signature_count_matches() {
    const std::uint32_t w = sh_.width;
    const std::size_t row = static_cast<std::size_t>(d_) * w;
    std::fill(sig_.begin(), sig_.end(), 0);
    for (std::uint32_t a = 0; a < N_; ++a) {
      std::int64_t* out = sig_.data() + a * row;
      for (std::uint32_t x = 0; x < N_; ++x) {
        const std::int64_t* eta = sh_.periods.data() + static_cast<std::size_t>((x + a) % N_) * w;
        std::int64_t* dst = out + static_cast<std::size_t>(blocks_[x]) * w;
        for (std::uint32_t t = 0; t < w; ++t) dst[t] += eta[t];
      }
    }
    std::iota(order_.begin(), order_.end(), 0);
    auto row_of = [&](std::uint32_t a) { return sig_.begin() + a * row; };
    std::sort(order_.begin(), order_.end(), [&](std::uint32_t x, std::uint32_t y) {
      return std::lexicographical_compare(row_of(x), row_of(x) + row, row_of(y), row_of(y) + row);
    });
    std::uint32_t distinct = 1;
    for (std::uint32_t r = 1; r < N_; ++r) {
      if (!std::equal(row_of(order_[r]), row_of(order_[r]) + row, row_of(order_[r - 1]))) ++distinct;
    }
    return distinct == d_;
  }

  Shared& sh_;
  std::uint32_t N_;
  std::uint32_t half_;
  std::uint32_t d_;
  std::vector<std::vector<std::uint64_t>> C_;
  std::vector<int> blocks_;
  std::vector<int> pi_;
  std::vector<std::int64_t> sig_;
  std::vector<std::uint32_t> order_;
};

void collect_prefixes(std::uint32_t d, std::uint32_t length, std::vector<int>& prefix, int k,
                      std::vector<Task>& out) {
  if (prefix.size() == length) {
    out.push_back(Task{d, prefix, k});
    return;
  }
  const int top = std::min<int>(k, static_cast<int>(d) - 1);
  for (int c = 0; c <= top; ++c) {
    prefix.push_back(c);
    collect_prefixes(d, length, prefix, k + (c == k ? 1 : 0), out);
    prefix.pop_back();
  }
}

}  // namespace

GroupRingElem GroupRingElem::zero(std::uint32_t N) {
  if (N == 0) throw Error(ErrorCode::PreconditionViolated, "N must be positive");
  return GroupRingElem{N, std::vector<std::int64_t>(N, 0)};
}

GroupRingElem GroupRingElem::basis(std::uint32_t N, std::int64_t i) {
  GroupRingElem out = zero(N);
  out.coeffs[mod_floor(i, N)] = 1;
  return out;
}

GroupRingElem GroupRingElem::from_indices(std::uint32_t N, std::span<const std::uint32_t> indices) {
  GroupRingElem out = zero(N);
  for (std::uint32_t i : indices) out.coeffs[i % N] += 1;
  return out;
}

GroupRingElem gr_add(const GroupRingElem& a, const GroupRingElem& b) {
  require_same(a, b);
  GroupRingElem out = a;
  for (std::uint32_t i = 0; i < a.N; ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

GroupRingElem gr_sub(const GroupRingElem& a, const GroupRingElem& b) { return gr_add(a, gr_scale(b, -1)); }

GroupRingElem gr_scale(const GroupRingElem& a, std::int64_t k) {
  GroupRingElem out = a;
  for (auto& c : out.coeffs) c *= k;
  return out;
}

GroupRingElem gr_mul(const GroupRingElem& a, const GroupRingElem& b) {
  require_same(a, b);
  GroupRingElem out = GroupRingElem::zero(a.N);
  for (std::uint32_t i = 0; i < a.N; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::uint32_t j = 0; j < a.N; ++j) out.coeffs[(i + j) % a.N] += a.coeffs[i] * b.coeffs[j];
  }
  return out;
}

GroupRingElem gr_involution(const GroupRingElem& a) {
  GroupRingElem out = GroupRingElem::zero(a.N);
  for (std::uint32_t i = 0; i < a.N; ++i) out.coeffs[(a.N - i) % a.N] = a.coeffs[i];
  return out;
}

TracePartition trace_partition(std::uint32_t p) {
  require_p(p);
  const FieldPtr field = FieldSpec::build(p, 2);
  TracePartition out;
  out.p = p;
  out.N = 2 * (p + 1);
  const CyclotomicSystem sys(field, out.N);
  for (std::uint32_t i = 0; i < out.N; ++i) {
    const std::uint32_t t = field->trace_of(field->exp(i));
    if (t == 0) {
      out.T0.push_back(i);
    } else if (legendre(t, p) == 1) {
      out.Ts.push_back(i);
    } else {
      out.Tn.push_back(i);
    }
  }
  out.class_sums = sys.periods();
  return out;
}

bool ts_identity_check(std::uint32_t p) {
  require_p(p);
  const FieldPtr field = FieldSpec::build(p, 2);
  const std::uint32_t N = 2 * (p + 1);
  IndexSet line;  // classes of the elements of trace 1
  for (Element x = 1; x < field->order(); ++x) {
    if (field->trace_of(x) == 1) line.push_back(field->log_of(x) % N);
  }
  const GroupRingElem Ts = GroupRingElem::from_indices(N, line);
  const GroupRingElem lhs = gr_mul(Ts, gr_involution(Ts));

  GroupRingElem all = GroupRingElem::zero(N);
  std::fill(all.coeffs.begin(), all.coeffs.end(), 1);
  const GroupRingElem subgroup = gr_add(GroupRingElem::basis(N, 0), GroupRingElem::basis(N, N / 2));
  const GroupRingElem rhs = gr_add(gr_scale(GroupRingElem::basis(N, 0), p),
                                   gr_scale(gr_sub(all, subgroup), (p - 1) / 2));
  return lhs == rhs;
}

std::uint64_t stirling2(std::uint32_t n, std::uint32_t k) {
  if (k == 0) return n == 0 ? 1 : 0;
  if (k > n) return 0;
  return completion_table(n - 1, k)[n - 1][1];
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("SCHEME_FORGE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SearchResult exhaustive_nonexistence(const SearchConfig& cfg, const SearchProgress& progress) {
  require_p(cfg.p);
  if (cfg.p > 7 && !(cfg.long_run && cfg.p == 11)) {
    throw Error(ErrorCode::PreconditionViolated, "p must be 3 or 7 (11 needs the long-run flag)");
  }
  if (cfg.max_classes < 3 || cfg.max_classes > 4) {
    throw Error(ErrorCode::PreconditionViolated, "max_classes must be 3 or 4");
  }
  const std::uint32_t N = 2 * (cfg.p + 1);
  const CyclotomicSystem sys(FieldSpec::build(cfg.p, 2), N);
  Shared shared{cfg, sys, N, cfg.p - 1, {}};
  for (const CycInt& eta : sys.periods()) {
    shared.periods.insert(shared.periods.end(), eta.coeffs().begin(), eta.coeffs().end());
  }

  std::vector<Task> tasks;
  const std::uint32_t prefix_len = std::min<std::uint32_t>(N / 2, 6);
  for (std::uint32_t d = 3; d <= cfg.max_classes; ++d) {
    std::vector<int> prefix{0};
    collect_prefixes(d, prefix_len, prefix, 1, tasks);
  }

  unsigned threads = cfg.threads != 0 ? cfg.threads : default_thread_count();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> done{0};
  std::mutex mu;
  std::vector<SearchCounts> totals(cfg.max_classes + 1);
  std::vector<IndexPartition> found;
  std::exception_ptr failure;

  auto work = [&] {
    try {
      std::vector<std::unique_ptr<Worker>> workers(cfg.max_classes + 1);
      for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
        const Task& task = tasks[t];
        if (!workers[task.d]) workers[task.d] = std::make_unique<Worker>(shared, task.d);
        workers[task.d]->run(task);
        const std::uint64_t finished = done.fetch_add(1) + 1;
        if (progress) {
          std::lock_guard lock(mu);
          progress(finished, tasks.size());
        }
      }
      std::lock_guard lock(mu);
      for (std::uint32_t d = 3; d <= cfg.max_classes; ++d) {
        if (!workers[d]) continue;
        const SearchCounts& c = workers[d]->counts;
        totals[d].pruned += c.pruned;
        totals[d].visited += c.visited;
        totals[d].nonsymmetric += c.nonsymmetric;
        totals[d].schemes += c.schemes;
        found.insert(found.end(), workers[d]->found.begin(), workers[d]->found.end());
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      shared.over_budget = true;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  if (shared.over_budget) {
    throw Error(ErrorCode::BudgetExceeded, "leaf budget of " + std::to_string(cfg.leaf_budget) + " exceeded");
  }

  SearchResult out;
  out.p = cfg.p;
  out.N = N;
  for (std::uint32_t d = 3; d <= cfg.max_classes; ++d) {
    totals[d].classes = d;
    totals[d].partitions = totals[d].pruned + totals[d].visited;
    out.checked += totals[d].partitions;
    out.per_class_count.push_back(totals[d]);
  }
  std::sort(found.begin(), found.end(),
            [](const IndexPartition& a, const IndexPartition& b) { return a.parts < b.parts; });
  out.found = std::move(found);
  return out;
}

}  // namespace scheme_forge
