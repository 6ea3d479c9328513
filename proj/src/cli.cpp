#include "scheme_forge/cli.hpp"

#include <cmath>
#include <string>

#include <CLI11.hpp>

#include "scheme_forge/constructions.hpp"
#include "scheme_forge/error.hpp"
#include "scheme_forge/gauss_sums.hpp"
#include "scheme_forge/json_io.hpp"
#include "scheme_forge/search.hpp"

namespace scheme_forge {
namespace {

struct Options {
  std::uint32_t p = 0;
  std::uint32_t f = 1;
  std::uint32_t n = 0;
  std::optional<std::uint64_t> seed;
  std::string parts;
  std::string lambda;
  std::string kind;
  std::uint32_t p1 = 0;
  std::uint32_t s = 1;
  std::uint32_t m = 1;
  std::string i0;
  double tol = 1e-6;
  std::uint64_t cap = kDefaultFieldCap;
  bool expect_scheme = false;
  std::uint32_t max_classes = 4;
  bool allow_symmetric = false;
  bool allow_imprimitive = false;
  bool no_prune = false;
  bool long_run = false;
  unsigned threads = 0;
  std::uint64_t budget = 0;
};

Json header(const std::string& command) { return Json{{"schema", kSchemaVersion}, {"command", command}}; }

int exit_code_for(const Error& e) {
  if (e.is_resource_error()) return kExitResource;
  switch (e.code()) {
    case ErrorCode::NotAScheme:
    case ErrorCode::NoOrbitMemberVerifies:
    case ErrorCode::OrientationAmbiguous:
      return kExitRefuted;
    default:
      return kExitUsage;
  }
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol", o.tol, "numeric tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--cap", o.cap, "largest field order to tabulate");
}

void add_field(CLI::App* cmd, Options& o) {
  cmd->add_option("--p", o.p, "characteristic")->required();
  cmd->add_option("--f", o.f, "extension degree")->required();
  cmd->add_option("--n", o.n, "cyclotomic index N")->required();
  cmd->add_option("--seed", o.seed, "skip this many earlier primitive polynomials");
  cmd->add_option("--parts", o.parts, "index sets 'a,b|c|...' or a file")->required();
}

struct Context {
  FieldPtr field;
  CyclotomyPtr sys;
  IndexPartition partition;
};

Context load_context(const Options& o) {
  Context c;
  c.field = FieldSpec::build(o.p, o.f, o.seed, o.cap);
  c.sys = build_cyclotomy(c.field, o.n);
  c.partition = load_partition(o.parts, o.n);
  return c;
}

void add_scheme(Json& doc, const BuiltScheme& b) {
  doc["field"] = to_json(b.sys->field());
  doc["partition"] = to_json(b.partition);
  doc["report"] = to_json(b.report);
}

int cmd_verify(const Options& o, Json& doc) {
  const Context c = load_context(o);
  const SchemeReport report = verify_scheme(*c.sys, c.partition);
  doc["field"] = to_json(*c.field);
  doc["partition"] = to_json(c.partition);
  doc["report"] = to_json(report);
  return o.expect_scheme && !report.is_scheme ? kExitRefuted : kExitOk;
}

int cmd_eigen(const Options& o, Json& doc) {
  const Context c = load_context(o);
  const Eigenmatrices e = eigenmatrices(*c.sys, c.partition);
  const ComplexMatrix PQ = multiply(e.P_complex, e.Q_complex);
  const double q = c.field->order();
  double err = 0.0;
  for (std::size_t r = 0; r < PQ.rows(); ++r) {
    for (std::size_t k = 0; k < PQ.cols(); ++k) err = std::max(err, std::abs(PQ(r, k) - Complex(r == k ? q : 0.0)));
  }
  doc["field"] = to_json(*c.field);
  doc["partition"] = to_json(c.partition);
  doc["P_exact"] = to_json(e.P_exact);
  doc["P_complex"] = to_json(e.P_complex);
  doc["Q_exact"] = to_json(e.Q_exact);
  doc["Q_complex"] = to_json(e.Q_complex);
  doc["pq_max_error"] = round12(err);
  return err <= o.tol ? kExitOk : kExitRefuted;
}

int cmd_fuse(const Options& o, Json& doc) {
  const Context c = load_context(o);
  const Eigenmatrices e = eigenmatrices(*c.sys, c.partition);
  const IndexPartition lambda = parse_partition_csv(o.lambda, static_cast<std::uint32_t>(c.partition.class_count() + 1));
  doc["field"] = to_json(*c.field);
  doc["partition"] = to_json(c.partition);
  doc["lambda"] = lambda.parts;
  const auto fusion = check_fusion(e.P_exact, lambda.parts);
  if (!fusion) {
    doc["fusion"] = nullptr;
    return kExitRefuted;
  }
  std::vector<IndexSet> fused_parts;
  for (std::size_t b = 1; b < lambda.parts.size(); ++b) {
    IndexSet merged;
    for (std::uint32_t col : lambda.parts[b]) {
      const auto& part = c.partition.parts[col - 1];
      merged.insert(merged.end(), part.begin(), part.end());
    }
    fused_parts.push_back(std::move(merged));
  }
  const IndexPartition fused = IndexPartition::make(c.partition.N, std::move(fused_parts));
  const Eigenmatrices direct = eigenmatrices(*c.sys, fused);
  doc["fusion"] = Json{{"delta", fusion->delta},
                       {"fused_partition", to_json(fused)},
                       {"fused_P", to_json(fusion->fused_P)},
                       {"matches_direct", direct.P_exact == fusion->fused_P}};
  return direct.P_exact == fusion->fused_P ? kExitOk : kExitRefuted;
}

int cmd_song(const Options& o, Json& doc) {
  const SongResult r = song_example(o.tol, o.cap);
  doc["field"] = to_json(r.scheme.sys->field());
  doc["song"] = to_json(r);
  doc["report"] = to_json(r.scheme.report);
  return r.reproduced() ? kExitOk : kExitRefuted;
}

int cmd_conference(const Options& o, Json& doc);

int cmd_construct(const Options& o, Json& doc) {
  const FissionKind kind = parse_fission_kind(o.kind);
  doc["kind"] = std::string(to_string(kind));
  if (kind == FissionKind::SongExample) return cmd_song(o, doc);
  doc["params"] = Json{{"p", o.p}, {"p1", o.p1}, {"s", o.s}, {"m", o.m}};
  switch (kind) {
    case FissionKind::ThreeClassBase: {
      const BuiltScheme b = three_class_base(o.p, o.p1, o.s, o.cap);
      add_scheme(doc, b);
      try {
        doc["primitivity_predicted"] = three_class_primitivity_predicted(o.p, o.p1, o.s);
      } catch (const Error&) {
        doc["primitivity_predicted"] = nullptr;
      }
      return b.report.is_scheme ? kExitOk : kExitRefuted;
    }
    case FissionKind::FourClass7Mod8: {
      const BuiltScheme b = four_class_7mod8(o.p, o.p1, o.s, o.cap);
      add_scheme(doc, b);
      doc["primitivity_condition"] = four_class_primitivity_condition(Index2Params::make(o.p, o.p1));
      return b.report.is_scheme ? kExitOk : kExitRefuted;
    }
    case FissionKind::FiveClass3Mod8: {
      const FiveClassResult r = five_class_3mod8(o.p, o.p1, o.m, o.cap);
      doc["five_class"] = to_json(r);
      if (r.scheme) add_scheme(doc, *r.scheme);
      return !r.scheme || r.scheme->report.is_scheme ? kExitOk : kExitRefuted;
    }
    case FissionKind::Conference7Mod8:
      return cmd_conference(o, doc);
    case FissionKind::SongExample:
      break;
  }
  return kExitUsage;
}

IndexSet parse_index_list(const std::string& text) {
  IndexSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string token = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "'" + token + "' is not a nonnegative integer");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int cmd_conference(const Options& o, Json& doc) {
  if (o.i0.empty()) throw Error(ErrorCode::ParseError, "--i0 is required for conference_7mod8");
  const ConferenceResult r = conference_7mod8(o.p, o.p1, parse_index_list(o.i0), o.cap);
  add_scheme(doc, r.scheme);
  doc["eigenvalues_match"] = r.eigenvalues_match;
  return r.scheme.report.is_scheme && r.eigenvalues_match ? kExitOk : kExitRefuted;
}

int cmd_gauss(const Options& o, Json& doc) {
  const Index2Params params = Index2Params::make(o.p, o.p1, o.m);
  const Index2Discrepancy d = index2_discrepancy(params, o.s, o.cap);
  const double bound = o.tol * std::sqrt(static_cast<double>(d.q));
  doc["discrepancy"] = to_json(d);
  doc["bound"] = round12(bound);
  doc["within_tolerance"] = d.max_abs_err <= bound;
  return d.max_abs_err <= bound ? kExitOk : kExitRefuted;
}

int cmd_search(const Options& o, Json& doc, std::ostream& err) {
  SearchConfig cfg;
  cfg.p = o.p;
  cfg.max_classes = o.max_classes;
  cfg.require_nonsymmetric = !o.allow_symmetric;
  cfg.require_primitive = !o.allow_imprimitive;
  cfg.prune_negation = !o.no_prune;
  cfg.long_run = o.long_run;
  cfg.threads = o.threads;
  cfg.leaf_budget = o.budget;
  std::uint64_t last_decile = 0;
  const SearchResult r = exhaustive_nonexistence(cfg, [&](std::uint64_t done, std::uint64_t total) {
    const std::uint64_t decile = done * 10 / total;
    if (decile != last_decile || done == total) {
      last_decile = decile;
      err << "search: " << done << "/" << total << " tasks\n";
    }
  });
  doc["config"] = Json{{"p", cfg.p},
                       {"max_classes", cfg.max_classes},
                       {"require_nonsymmetric", cfg.require_nonsymmetric},
                       {"require_primitive", cfg.require_primitive},
                       {"prune_negation", cfg.prune_negation}};
  doc["result"] = to_json(r);
  const bool refutes = cfg.require_nonsymmetric && cfg.require_primitive && !r.found.empty();
  return refutes ? kExitRefuted : kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Construct and verify cyclotomic translation association schemes", "scheme-forge"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "verify a partition of Z_N as a translation scheme");
  add_field(verify, o);
  verify->add_flag("--expect-scheme", o.expect_scheme, "exit 1 when the partition is not a scheme");
  add_common(verify, o);

  auto* eigen = app.add_subcommand("eigen", "eigenmatrices of a verified scheme");
  add_field(eigen, o);
  add_common(eigen, o);

  auto* fuse = app.add_subcommand("fuse", "Bannai-Muzychuk fusion of a verified scheme");
  add_field(fuse, o);
  fuse->add_option("--lambda", o.lambda, "column blocks over {0..d}, '0|1,3|2,4'")->required();
  add_common(fuse, o);

  auto* construct = app.add_subcommand("construct", "build and verify a named construction");
  construct->add_option("--kind", o.kind, "three_class_base, four_class_7mod8, five_class_3mod8, "
                                          "conference_7mod8 or song_example")
      ->required();
  construct->add_option("--p", o.p, "characteristic");
  construct->add_option("--p1", o.p1, "odd prime p1");
  construct->add_option("--s", o.s, "extension degree s")->check(CLI::PositiveNumber);
  construct->add_option("--m", o.m, "exponent m")->check(CLI::PositiveNumber);
  construct->add_option("--i0", o.i0, "I0 for conference_7mod8, comma separated");
  add_common(construct, o);

  auto* gauss = app.add_subcommand("gauss-verify", "index-2 Gauss sums against direct summation");
  gauss->add_option("--p", o.p, "characteristic")->required();
  gauss->add_option("--p1", o.p1, "odd prime p1")->required();
  gauss->add_option("--m", o.m, "exponent m")->check(CLI::PositiveNumber);
  gauss->add_option("--s", o.s, "lifting degree")->check(CLI::PositiveNumber);
  add_common(gauss, o);

  auto* search = app.add_subcommand("search-nonexistence", "exhaustive search over F_{p^2}");
  search->add_option("--p", o.p, "prime p = 3 (mod 4)")->required();
  search->add_option("--max-classes", o.max_classes, "3 or 4");
  search->add_flag("--allow-symmetric", o.allow_symmetric, "keep symmetric partitions");
  search->add_flag("--allow-imprimitive", o.allow_imprimitive, "keep imprimitive schemes");
  search->add_flag("--no-prune", o.no_prune, "enumerate partitions that are not closed under negation");
  search->add_flag("--long-run", o.long_run, "permit p = 11");
  search->add_option("--threads", o.threads, "worker threads");
  search->add_option("--budget", o.budget, "maximum visited partitions (0 = unlimited)");
  add_common(search, o);

  auto* song = app.add_subcommand("song-reproduce", "reproduce the four-class fission over F_{37^3}");
  add_common(song, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    Json doc = header("");
    doc["error"] = Json{{"code", "ParseError"}, {"message", e.what()}};
    out << doc.dump(2) << '\n';
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Json doc = header(chosen->get_name());
  int code = kExitOk;
  try {
    if (chosen == verify) {
      code = cmd_verify(o, doc);
    } else if (chosen == eigen) {
      code = cmd_eigen(o, doc);
    } else if (chosen == fuse) {
      code = cmd_fuse(o, doc);
    } else if (chosen == construct) {
      code = cmd_construct(o, doc);
    } else if (chosen == gauss) {
      code = cmd_gauss(o, doc);
    } else if (chosen == search) {
      code = cmd_search(o, doc, err);
    } else if (chosen == song) {
      code = cmd_song(o, doc);
    }
  } catch (const Error& e) {
    code = exit_code_for(e);
    doc["error"] = Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    err << "error: " << e.what() << '\n';
  }
  doc["exit_code"] = code;
  out << doc.dump(2) << '\n';
  return code;
}

}  // namespace scheme_forge
