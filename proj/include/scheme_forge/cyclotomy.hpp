#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "scheme_forge/cyclotomic_integer.hpp"
#include "scheme_forge/finite_field.hpp"

namespace scheme_forge {

using IndexSet = std::vector<std::uint32_t>;

/// Cyclotomic classes C_i = gamma^i <gamma^N> of F_q together with their exact
/// Gauss periods eta_i = sum_{x in C_i} psi(x) in Z[xi_p].
class CyclotomicSystem {
 public:
  // One O(q) pass over the log / trace tables. Throws NotADivisor.
  CyclotomicSystem(FieldPtr field, std::uint32_t N);

  const FieldSpec& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint32_t index() const { return N_; }
  std::uint64_t class_size() const { return M_; }
  const std::vector<CycInt>& periods() const { return periods_; }
  const CycInt& period(std::uint32_t i) const { return periods_[i % N_]; }
  // trace_counts(i, t) = #{x in C_i : tr(x) = t}
  std::uint64_t trace_count(std::uint32_t i, std::uint32_t t) const {
    return trace_counts_[static_cast<std::size_t>(i) * field_->characteristic() + t];
  }

  // psi(gamma^a D) for D the union of classes in `index_set`. Throws IndexOutOfRange.
  CycInt character_sum(std::span<const std::uint32_t> index_set, std::int64_t shift) const;

  // log(x) mod N. Throws ZeroElement.
  std::uint32_t class_of(Element x) const;

  // Class index of -1.
  std::uint32_t negation_shift() const { return field_->minus_one_log() % N_; }

  CycInt zero() const { return CycInt(field_->characteristic()); }

 private:
  FieldPtr field_;
  std::uint32_t N_;
  std::uint64_t M_;
  std::vector<CycInt> periods_;
  std::vector<std::uint64_t> trace_counts_;
};

using CyclotomyPtr = std::shared_ptr<const CyclotomicSystem>;

inline CyclotomyPtr build_cyclotomy(FieldPtr field, std::uint32_t N) {
  return std::make_shared<const CyclotomicSystem>(std::move(field), N);
}

}  // namespace scheme_forge
