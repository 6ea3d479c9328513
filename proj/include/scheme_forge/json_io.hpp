#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "scheme_forge/constructions.hpp"
#include "scheme_forge/gauss_sums.hpp"
#include "scheme_forge/scheme.hpp"
#include "scheme_forge/search.hpp"

namespace scheme_forge {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "scheme-forge/1";

// Doubles are rounded to 12 significant digits so output is byte-stable.
double round12(double x);

Json to_json(const CycInt& x);
Json to_json(const Complex& z);
Json to_json(const ExactMatrix& m);
Json to_json(const ComplexMatrix& m);
Json to_json(const IntMatrix& m);
Json to_json(const IndexPartition& partition);
Json to_json(const FieldSpec& field);
Json to_json(const SchemeReport& report);
Json to_json(const Index2Discrepancy& d);
Json to_json(const SearchResult& r);
Json to_json(const FiveClassResult& r);
Json to_json(const SongResult& r);

CycInt cycint_from_json(const Json& j);
ExactMatrix exact_matrix_from_json(const Json& j);
IntMatrix int_matrix_from_json(const Json& j);
// {"N": n, "parts": [[...], ...]}. Throws ParseError / PartitionInvalid.
IndexPartition partition_from_json(const Json& j);

// "0|1,3|2": parts separated by '|', indices by ','. Throws ParseError / PartitionInvalid.
IndexPartition parse_partition_csv(std::string_view text, std::uint32_t N);

// `source` is inline CSV or the path of a file holding CSV or JSON (an object
// with "parts", or with "primal" holding such an object). N = 0 takes N from JSON.
IndexPartition load_partition(const std::string& source, std::uint32_t N);

// Re-parses an emitted report and checks its structural invariants: row 0 of P
// is (1, valencies), column 0 is all ones, B_0 = I, B_i rows sum to |R_i|.
// Throws ParseError on any violation.
void validate_report_json(const Json& report);

}  // namespace scheme_forge
