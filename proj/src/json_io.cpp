#include "scheme_forge/json_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scheme_forge/error.hpp"

namespace scheme_forge {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

template <typename M, typename F>
Json matrix_json(const M& m, F&& cell) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(cell(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint32_t parse_index(std::string_view token) {
  token = trim(token);
  std::uint32_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    parse_error("'" + std::string(token) + "' is not a nonnegative integer");
  }
  return value;
}

Json maybe_match(const std::optional<PermutationMatch>& m) {
  if (!m) return nullptr;
  return Json{{"row_perm", m->row_perm}, {"col_perm", m->col_perm}, {"max_error", round12(m->max_error)}};
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double out = std::strtod(buf, nullptr);
  return out == 0.0 ? 0.0 : out;
}

Json to_json(const CycInt& x) { return Json{{"n", x.conductor()}, {"coeffs", x.coeffs()}}; }

Json to_json(const Complex& z) { return Json::array({round12(z.real()), round12(z.imag())}); }

Json to_json(const ExactMatrix& m) {
  return matrix_json(m, [](const CycInt& x) { return to_json(x); });
}

Json to_json(const ComplexMatrix& m) {
  return matrix_json(m, [](const Complex& z) { return to_json(z); });
}

Json to_json(const IntMatrix& m) {
  return matrix_json(m, [](std::int64_t v) { return Json(v); });
}

Json to_json(const IndexPartition& partition) { return Json{{"N", partition.N}, {"parts", partition.parts}}; }

Json to_json(const FieldSpec& field) {
  return Json{{"p", field.characteristic()},
              {"f", field.degree()},
              {"q", field.order()},
              {"modulus_coeffs", field.modulus()},
              {"gamma_coeffs", field.coefficients(field.gamma())}};
}

Json to_json(const SchemeReport& report) {
  Json j{{"is_scheme", report.is_scheme},
         {"class_count", report.class_count},
         {"valencies", report.valencies},
         {"distinct_signatures", report.distinct_signatures}};
  if (!report.is_scheme) return j;
  j["P_exact"] = to_json(report.P_exact);
  j["P_complex"] = to_json(report.P_complex);
  j["Q_complex"] = to_json(report.Q_complex);
  Json bs = Json::array();
  for (const auto& b : report.intersection_matrices) bs.push_back(to_json(b));
  j["intersection_matrices"] = std::move(bs);
  j["dual_parts"] = report.dual.parts;
  Json sym = Json::array();
  for (bool s : report.symmetric) sym.push_back(s);
  j["is_symmetric"] = std::move(sym);
  j["nonsymmetric_pair_count"] = report.nonsymmetric_pair_count;
  j["is_primitive"] = report.is_primitive;
  j["is_self_dual"] = report.is_self_dual;
  j["self_dual_permutation"] = report.self_dual_permutation ? Json(*report.self_dual_permutation) : Json(nullptr);
  return j;
}

Json to_json(const Index2Discrepancy& d) {
  Json entries = Json::array();
  for (const auto& e : d.entries) {
    entries.push_back(Json{{"j", e.j}, {"direct", to_json(e.direct)}, {"formula", to_json(e.formula)},
                           {"abs_err", round12(e.abs_err)}});
  }
  return Json{{"p", d.params.p},   {"p1", d.params.p1},     {"m", d.params.m},
              {"s", d.s},          {"q", d.q},              {"h", d.params.h},
              {"b", d.params.b},   {"c", d.params.c},       {"sigma", d.sigma},
              {"c_sign", d.c_sign}, {"max_abs_err", round12(d.max_abs_err)}, {"entries", std::move(entries)}};
}

Json to_json(const SearchResult& r) {
  Json counts = Json::array();
  for (const auto& c : r.per_class_count) {
    counts.push_back(Json{{"classes", c.classes},
                          {"partitions", c.partitions},
                          {"pruned", c.pruned},
                          {"visited", c.visited},
                          {"nonsymmetric", c.nonsymmetric},
                          {"schemes", c.schemes}});
  }
  Json found = Json::array();
  for (const auto& f : r.found) found.push_back(f.parts);
  return Json{{"p", r.p}, {"N", r.N}, {"checked", r.checked}, {"counts", std::move(counts)}, {"found", std::move(found)}};
}

Json to_json(const FiveClassResult& r) {
  Json j{{"p", r.p},
         {"p1", r.p1},
         {"m", r.m},
         {"h", r.h},
         {"index2_at_level_m", r.index2_at_level_m},
         {"orientation_a", to_json(r.orientation_a)},
         {"orientation_b", to_json(r.orientation_b)}};
  if (r.chosen) {
    j["chosen_orientation"] = std::string(1, *r.chosen);
    j["s4_value_count"] = r.s4_value_count;
    j["s4_hits_valency"] = r.s4_hits_valency;
  }
  return j;
}

Json to_json(const SongResult& r) {
  auto affine = [](const std::optional<AffineMap>& m) {
    return m ? Json{{"u", m->u}, {"v", m->v}} : Json(nullptr);
  };
  return Json{{"orbit_map", affine(r.orbit_map)},
              {"partition", to_json(r.scheme.partition)},
              {"b_relabeling", r.b_relabeling ? Json(*r.b_relabeling) : Json(nullptr)},
              {"dual_map", affine(r.dual_map)},
              {"template_match", maybe_match(r.template_match)},
              {"rho", to_json(r.rho)},
              {"rho_embedded", to_json(r.rho.embed())},
              {"rho_exact", r.rho_exact},
              {"cyclotomic_template_match", maybe_match(r.cyclotomic_template_match)},
              {"cyclotomic_rho_exact", r.cyclotomic_rho_exact},
              {"reproduced", r.reproduced()}};
}

CycInt cycint_from_json(const Json& j) {
  try {
    const auto n = j.at("n").get<std::uint32_t>();
    const auto coeffs = j.at("coeffs").get<std::vector<std::int64_t>>();
    if (coeffs.size() + 1 != n) parse_error("coefficient count does not match the conductor");
    std::vector<std::int64_t> full(coeffs);
    full.push_back(0);
    return CycInt::from_exponent_counts(n, full);
  } catch (const nlohmann::json::exception& e) {
    parse_error(e.what());
  }
}

ExactMatrix exact_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) parse_error("matrix must be a nonempty array of rows");
  ExactMatrix out(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (j[r].size() != out.cols()) parse_error("ragged matrix");
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = cycint_from_json(j[r][c]);
  }
  return out;
}

IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) parse_error("matrix must be a nonempty array of rows");
  IntMatrix out(j.size(), j[0].size());
  try {
    for (std::size_t r = 0; r < j.size(); ++r) {
      if (j[r].size() != out.cols()) parse_error("ragged matrix");
      for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = j[r][c].get<std::int64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    parse_error(e.what());
  }
  return out;
}

IndexPartition partition_from_json(const Json& j) {
  try {
    return IndexPartition::make(j.at("N").get<std::uint32_t>(), j.at("parts").get<std::vector<IndexSet>>());
  } catch (const nlohmann::json::exception& e) {
    parse_error(e.what());
  }
}

IndexPartition parse_partition_csv(std::string_view text, std::uint32_t N) {
  std::vector<IndexSet> parts;
  for (;;) {
    const auto bar = text.find('|');
    std::string_view chunk = text.substr(0, bar);
    IndexSet part;
    if (!trim(chunk).empty()) {
      for (;;) {
        const auto comma = chunk.find(',');
        part.push_back(parse_index(chunk.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        chunk.remove_prefix(comma + 1);
      }
    }
    parts.push_back(std::move(part));
    if (bar == std::string_view::npos) break;
    text.remove_prefix(bar + 1);
  }
  return IndexPartition::make(N, std::move(parts));
}

IndexPartition load_partition(const std::string& source, std::uint32_t N) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(source, ec)) {
    if (N == 0) parse_error("--n is required for inline partitions");
    return parse_partition_csv(source, N);
  }
  std::ifstream in(source);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  if (trim(content).starts_with('{')) {
    Json j;
    try {
      j = Json::parse(content);
    } catch (const nlohmann::json::exception& e) {
      parse_error(e.what());
    }
    const Json& node = j.contains("parts") ? j : j.at("primal");
    IndexPartition partition = partition_from_json(node);
    if (N != 0 && partition.N != N) {
      throw Error(ErrorCode::PartitionInvalid, "file partition is over Z_" + std::to_string(partition.N));
    }
    return partition;
  }
  if (N == 0) parse_error("--n is required for CSV partitions");
  return parse_partition_csv(trim(content), N);
}

void validate_report_json(const Json& report) {
  try {
    const auto valencies = report.at("valencies").get<std::vector<std::int64_t>>();
    if (!report.at("is_scheme").get<bool>()) return;
    const std::size_t d = valencies.size();
    const ExactMatrix P = exact_matrix_from_json(report.at("P_exact"));
    if (P.rows() != d + 1 || P.cols() != d + 1) parse_error("P has the wrong shape");
    for (std::size_t r = 0; r <= d; ++r) {
      if (!P(r, 0).is_rational() || P(r, 0).rational_value() != 1) parse_error("column 0 of P must be ones");
    }
    for (std::size_t c = 1; c <= d; ++c) {
      if (!P(0, c).is_rational() || P(0, c).rational_value() != valencies[c - 1]) {
        parse_error("row 0 of P must be the valencies");
      }
    }
    const auto& bs = report.at("intersection_matrices");
    if (bs.size() != d + 1) parse_error("expected d + 1 intersection matrices");
    for (std::size_t i = 0; i <= d; ++i) {
      const IntMatrix B = int_matrix_from_json(bs[i]);
      const std::int64_t valency = i == 0 ? 1 : valencies[i - 1];
      for (std::size_t k = 0; k <= d; ++k) {
        std::int64_t sum = 0;
        for (std::size_t jj = 0; jj <= d; ++jj) {
          if (i == 0 && B(k, jj) != (k == jj ? 1 : 0)) parse_error("B_0 must be the identity");
          sum += B(k, jj);
        }
        if (sum != valency) parse_error("row sums of B_i must equal |R_i|");
      }
    }
    const auto dual = report.at("dual_parts").get<std::vector<IndexSet>>();
    std::uint32_t N = 0;
    for (const auto& part : dual) N += static_cast<std::uint32_t>(part.size());
    IndexPartition::make(N, dual);
  } catch (const nlohmann::json::exception& e) {
    parse_error(e.what());
  }
}

}  // namespace scheme_forge
