#include "scheme_forge/cyclotomy.hpp"

#include <string>

#include "scheme_forge/error.hpp"
#include "scheme_forge/number_theory.hpp"

namespace scheme_forge {
namespace {

// Keeps the N x p count table bounded for prime fields with large p.
constexpr std::uint64_t kMaxCountEntries = std::uint64_t{1} << 27;

}  // namespace

CyclotomicSystem::CyclotomicSystem(FieldPtr field, std::uint32_t N) : field_(std::move(field)), N_(N) {
  const std::uint32_t group = field_->group_order();
  if (N == 0 || group % N != 0) {
    throw Error(ErrorCode::NotADivisor,
                "N = " + std::to_string(N) + " does not divide q - 1 = " + std::to_string(group));
  }
  const std::uint32_t p = field_->characteristic();
  if (static_cast<std::uint64_t>(N) * p > kMaxCountEntries) {
    throw Error(ErrorCode::FieldTooLarge, "class-by-trace table would exceed the memory cap");
  }
  M_ = group / N;
  trace_counts_.assign(static_cast<std::size_t>(N) * p, 0);
  std::uint32_t cls = 0;
  for (std::uint32_t e = 0; e < group; ++e) {
    ++trace_counts_[static_cast<std::size_t>(cls) * p + field_->trace_of(field_->exp(e))];
    if (++cls == N) cls = 0;
  }
  periods_.reserve(N);
  std::vector<std::int64_t> counts(p);
  for (std::uint32_t i = 0; i < N; ++i) {
    for (std::uint32_t t = 0; t < p; ++t) counts[t] = static_cast<std::int64_t>(trace_count(i, t));
    periods_.push_back(CycInt::from_exponent_counts(p, counts));
  }
}

CycInt CyclotomicSystem::character_sum(std::span<const std::uint32_t> index_set, std::int64_t shift) const {
  CycInt sum = zero();
  const std::uint64_t a = mod_floor(shift, N_);
  for (std::uint32_t i : index_set) {
    if (i >= N_) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "index " + std::to_string(i) + " outside Z_" + std::to_string(N_));
    }
    sum += periods_[(i + a) % N_];
  }
  return sum;
}

std::uint32_t CyclotomicSystem::class_of(Element x) const { return field_->discrete_log(x) % N_; }

}  // namespace scheme_forge
