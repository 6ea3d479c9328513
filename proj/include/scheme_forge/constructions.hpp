#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scheme_forge/cyclotomy.hpp"
#include "scheme_forge/gauss_sums.hpp"
#include "scheme_forge/scheme.hpp"

namespace scheme_forge {

enum class FissionKind { ThreeClassBase, FourClass7Mod8, FiveClass3Mod8, Conference7Mod8, SongExample };

std::string_view to_string(FissionKind kind);
// Accepts the snake_case names used on the command line. Throws ParseError.
FissionKind parse_fission_kind(std::string_view name);

// A partition together with the cyclotomy it was verified against.
struct BuiltScheme {
  CyclotomyPtr sys;
  IndexPartition partition;
  SchemeReport report;
};

// Index sets only; no field work.
IndexPartition three_class_index_sets(std::uint32_t p, std::uint32_t p1);
IndexPartition four_class_index_sets(std::uint32_t p, std::uint32_t p1);
// Orientation A splits -<p> (mod p1) into -<p> and -<p> + p1^m (mod 2 p1^m);
// orientation B is its image under i -> -i and splits <p> instead.
IndexPartition five_class_index_sets(std::uint32_t p, std::uint32_t p1, std::uint32_t m, bool orientation_b);

// R_1 = <p>, R_2 = -<p>, R_3 = {0} over Z_{p1}, verified on F_{q^s}.
BuiltScheme three_class_base(std::uint32_t p, std::uint32_t p1, std::uint32_t s,
                             std::uint64_t cap = kDefaultFieldCap);
// p has order fs modulo (q^s - 1)/p1, i.e. R_3 spans F_{q^s}.
bool three_class_primitivity_predicted(std::uint32_t p, std::uint32_t p1, std::uint32_t s);

BuiltScheme four_class_7mod8(std::uint32_t p, std::uint32_t p1, std::uint32_t s,
                             std::uint64_t cap = kDefaultFieldCap);
// Sufficient condition for primitivity of the s = 1 four-class scheme: p1 > 2h + 1 and c != 0.
bool four_class_primitivity_condition(const Index2Params& params);

struct FiveClassResult {
  std::uint32_t p = 0;
  std::uint32_t p1 = 0;
  std::uint32_t m = 1;
  std::uint32_t h = 0;
  bool index2_at_level_m = false;  // [Z_{2 p1^m}^* : <p>] = 2
  IndexPartition orientation_a;
  IndexPartition orientation_b;
  // Field verification (m = 1 only).
  std::optional<char> chosen;  // 'A' or 'B'
  std::optional<BuiltScheme> scheme;
  // Values of psi(gamma^a S_4) over a in Z_N, and whether any equals |S_4|.
  std::size_t s4_value_count = 0;
  bool s4_hits_valency = false;
};

// Requires p1 = 3 (mod 8), 1 + p1 = 4 p^h and the index-2 condition modulo 2 p1.
// For m = 1 both orientations are verified; exactly one must be a scheme
// (OrientationAmbiguous otherwise). For m >= 2 only the index sets are emitted.
FiveClassResult five_class_3mod8(std::uint32_t p, std::uint32_t p1, std::uint32_t m = 1,
                                 std::uint64_t cap = kDefaultFieldCap);

struct ConferenceResult {
  BuiltScheme scheme;
  // 2 lambda + 1 = +-p^{(f-1)/2} (eta_0 - eta_1) exactly, for every nonprincipal eigenvalue of D_0.
  bool eigenvalues_match = false;
};

// Requires p1 = 7 (mod 8), p = 1 (mod 4), the index-2 condition and an I0 that
// meets every residue mod p1 exactly once.
ConferenceResult conference_7mod8(std::uint32_t p, std::uint32_t p1, const IndexSet& I0,
                                  std::uint64_t cap = kDefaultFieldCap);

// The first eigenmatrix template of a skew-symmetric fission of a conference
// graph, with f = (q-1)/4,
//   rho = (-1 + sqrt q + sqrt(-2q - 2g sqrt q)) / 4,
//   tau = (-1 - sqrt q + sqrt(-2q + 2g sqrt q)) / 4.
// This is the sign convention under which the exact identities
// rho = 9 + 37 eta_0 (g = 37) and rho = 8 + 35 eta_0 + 5 eta_1 - 7 eta_3
// (g = -107) hold over F_{37^3}. `swap_g_signs` swaps the g terms.
// Throws TemplatePreconditionViolated.
ComplexMatrix ma_wang_template(std::uint64_t q, std::int64_t g, bool swap_g_signs = false);

namespace song {
inline constexpr std::uint32_t kP = 37;
inline constexpr std::uint32_t kF = 3;
inline constexpr std::uint32_t kN = 28;
inline constexpr std::int64_t kG = 37;
inline constexpr std::int64_t kCyclotomicG = -107;
inline constexpr std::array<std::uint32_t, 7> kI1 = {0, 1, 4, 12, 16, 20, 24};
inline constexpr std::array<std::uint32_t, 7> kJ1 = {0, 4, 8, 12, 13, 16, 24};

IndexPartition primal();  // I_1, I_1 + 7, I_1 + 14, I_1 + 21
IndexPartition dual();    // J_1, J_1 + 7, J_1 + 14, J_1 + 21
// B_0 = identity followed by the golden B_1 .. B_4.
std::vector<IntMatrix> intersection_matrices();
}  // namespace song

struct AffineMap {
  std::uint32_t u = 1;
  std::uint32_t v = 0;
};

struct SongResult {
  AffineMap orbit_map;  // partition = primal().transformed(u, v)
  BuiltScheme scheme;
  std::optional<std::vector<std::uint32_t>> b_relabeling;
  std::optional<AffineMap> dual_map;  // computed dual = dual().transformed(u, v)
  std::optional<PermutationMatch> template_match;
  bool rho_exact = false;  // 9 + 37 eta_0 is an entry of P
  CycInt rho;
  // Index-4 cyclotomic scheme over the same field, against g = -107.
  std::optional<PermutationMatch> cyclotomic_template_match;
  bool cyclotomic_rho_exact = false;

  bool reproduced() const {
    return b_relabeling && dual_map && template_match && rho_exact;
  }
};

// Searches u in Z_28^*, v in Z_28 in lexicographic order for the first orbit
// member that verifies with four classes and two nonsymmetric pairs, then
// compares it with the golden data. Throws NoOrbitMemberVerifies.
SongResult song_example(double tol = 1e-6, std::uint64_t cap = kDefaultFieldCap);

}  // namespace scheme_forge
