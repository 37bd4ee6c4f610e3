#pragma once

// Command-line surface. Every command produces one JSON document and an
// exit status: 0 success, 1 input error, 2 inadmissible complex,
// 3 internal-check failure.

#include "polyloop/decomposition.hpp"
#include "polyloop/error.hpp"
#include "polyloop/homology_oracle.hpp"
#include "polyloop/integer_linalg.hpp"
#include "polyloop/json_io.hpp"
#include "polyloop/simplicial_complex.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace polyloop::cli {

using io::Json;

enum ExitCode : int { kOk = 0, kInputError = 1, kInadmissible = 2, kCheckFailed = 3 };

struct JobSpec {
  std::string command;
  std::string input;
  std::string pairs = "moment-angle";
  int cutoff = kDefaultCutoff;
  bool trace = false;
  std::string output;
  bool linalg = false;
  std::size_t random = 500;
  std::uint64_t seed = 1;
  std::optional<int> split_vertex;
};

struct CommandResult {
  int exit_code = kOk;
  Json document;
};

inline int exit_code_for(ErrorCode c) {
  switch (c) {
  case ErrorCode::NotFlagSkeleton:
  case ErrorCode::DominatingVertex:
    return kInadmissible;
  case ErrorCode::NotADivisor:
  case ErrorCode::NotCanonicalP:
  case ErrorCode::NoSolution:
  case ErrorCode::NotSimplyConnectedOutput:
  case ErrorCode::DivisionUndefined:
    return kCheckFailed;
  default:
    return kInputError;
  }
}

inline Json error_document(ErrorCode code, const std::string &message) {
  return {{"error", {{"code", std::string(to_string(code))}, {"message", message}}}};
}

/// Pair data resolved against a complex: either plain (CA,A) pairs, or general
/// pairs (X,A) carrying ΩX_i and the fibres Y_i.
struct ResolvedPairs {
  PairSpec fibers;
  std::optional<std::vector<PProduct>> loops_of_x;
};

namespace detail {

inline std::optional<int> parse_cp_dim(const std::string &s) {
  if (s == "inf" || s == "infinity") return std::nullopt;
  try {
    std::size_t used = 0;
    const int n = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return n;
  } catch (const std::exception &) {
    throw Error(ErrorCode::ParseError, "bad CP dimension '" + s + "'");
  }
}

inline int parse_int(const std::string &s, const std::string &what) {
  try {
    std::size_t used = 0;
    const int n = std::stoi(s, &used);
    if (used == s.size()) return n;
  } catch (const std::exception &) {
  }
  throw Error(ErrorCode::ParseError, "bad " + what + " '" + s + "'");
}

} // namespace detail

/// moment-angle | disks:N | custom:PATH | cp-point:N | cp:N:K  (N may be "inf").
inline ResolvedPairs resolve_pairs(const std::string &spec, int m, int D) {
  if (spec == "moment-angle") return {PairSpec::moment_angle(m), std::nullopt};
  if (spec.rfind("disks:", 0) == 0)
    return {PairSpec::disks(detail::parse_int(spec.substr(6), "disk dimension"), m), std::nullopt};
  if (spec.rfind("custom:", 0) == 0) {
    const Json j = io::read_json_file(spec.substr(7));
    if (!j.contains("suspensions")) throw Error(ErrorCode::ParseError, "custom pairs need \"suspensions\"");
    try {
      return {PairSpec::from_suspension_dims(j.at("suspensions").get<std::vector<std::vector<int>>>()),
              std::nullopt};
    } catch (const Json::exception &e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
  }
  if (spec.rfind("cp-point:", 0) == 0) {
    GeneralPairs g = cp_point_pairs(detail::parse_cp_dim(spec.substr(9)), m, D);
    return {std::move(g.fibers), std::move(g.loops_of_x)};
  }
  if (spec.rfind("cp:", 0) == 0) {
    const std::string rest = spec.substr(3);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "cp pairs need cp:N:K");
    GeneralPairs g = cp_pairs(detail::parse_cp_dim(rest.substr(0, colon)),
                              detail::parse_int(rest.substr(colon + 1), "CP sub-dimension"), m, D);
    return {std::move(g.fibers), std::move(g.loops_of_x)};
  }
  throw Error(ErrorCode::ParseError, "unknown pair spec '" + spec + "'");
}

inline CommandResult cmd_check(const JobSpec &job) {
  const SimplicialComplex K = io::complex_from_json(io::read_json_file(job.input));
  const Classification c = classify_input(K);
  Json verts = Json::array();
  for (const auto &r : neighbors_and_domination(K))
    verts.push_back({{"vertex", r.vertex}, {"neighbors", r.neighbors}, {"dominating", r.dominating}});
  Json mnf = Json::array();
  for (VertexMask s : minimal_non_faces(K)) mnf.push_back(mask_to_labels(s));
  Json doc{{"complex", io::complex_to_json(K)},
           {"face_count", K.face_count()},
           {"dimension", K.dimension()},
           {"flag", c.flag},
           {"chordal_1_skeleton", c.chordal_1_skeleton},
           {"minimal_non_faces", mnf},
           {"vertices", verts},
           {"k_skeleton_of_flag", c.k_skeleton_of_flag ? Json(*c.k_skeleton_of_flag) : Json(nullptr)}};
  doc["skeleton_of_simplex"] = c.skeleton_of_simplex
                                   ? Json{{"m", c.skeleton_of_simplex->first}, {"k", c.skeleton_of_simplex->second}}
                                   : Json(nullptr);
  return {kOk, doc};
}

inline CommandResult cmd_decompose(const JobSpec &job) {
  const SimplicialComplex K = io::complex_from_json(io::read_json_file(job.input));
  const ResolvedPairs pairs = resolve_pairs(job.pairs, K.vertex_count(), job.cutoff);
  DecompositionEngine engine(job.cutoff);
  const Decomposition dec = engine.decompose(K, pairs.fibers, job.split_vertex);
  PProduct result = dec.product;
  if (pairs.loops_of_x)
    for (const auto &x : *pairs.loops_of_x) result = result * x.with_cutoff(job.cutoff);
  result.check_invariants();
  Json doc = io::product_to_json(result);
  doc["pairs"] = job.pairs;
  if (job.trace) doc["trace"] = io::trace_to_json(*dec.trace);
  return {kOk, doc};
}

inline CommandResult cmd_linalg_file(const JobSpec &job) {
  const Json in = io::read_json_file(job.input);
  Json splits = Json::array(), certs = Json::array();
  bool ok = true;
  for (const auto &mj : in.value("matrices", Json::array())) {
    const IntMatrix a = io::matrix_from_json(mj);
    const IdempotentSplit s = idempotent_split(a);
    bool good = boost::multiprecision::abs(s.determinant) == 1;
    for (const auto &y : s.col_basis) good = good && a * y == y;
    ok = ok && good;
    splits.push_back({{"null_basis", io::vectors_to_json(s.null_basis)},
                      {"col_basis", io::vectors_to_json(s.col_basis)},
                      {"determinant", io::to_json(s.determinant)},
                      {"status", good ? "PASS" : "FAIL"}});
  }
  for (const auto &vj : in.value("vectors", Json::array())) {
    const BezoutCertificate c = primitive_bezout(io::vector_from_json(vj));
    Json j{{"gcd", io::to_json(c.gcd)}, {"coefficients", io::to_json(c.coefficients)}, {"primitive", c.primitive}};
    if (c.odd_component) j["odd_component"] = *c.odd_component + 1;
    certs.push_back(std::move(j));
  }
  Json fixed = Json::array();
  for (const auto &cj : in.value("column_checks", Json::array())) {
    const IntMatrix a = io::matrix_from_json(cj.at("matrix"));
    fixed.push_back(verify_column_fixed(a, io::vector_from_json(cj.at("x"))));
  }
  Json doc{{"splits", splits}, {"bezout", certs}, {"column_checks", fixed}, {"status", ok ? "PASS" : "FAIL"}};
  return {ok ? kOk : kCheckFailed, doc};
}

inline CommandResult cmd_verify(const JobSpec &job) {
  if (job.linalg) {
    if (!job.input.empty()) return cmd_linalg_file(job);
    const LinalgSuiteResult r = run_idempotent_suite(job.random, job.seed);
    Json doc{{"suite", "idempotent_split"},
             {"trials", r.trials},
             {"passed", r.passed},
             {"seed", job.seed},
             {"failures", r.failures},
             {"status", r.ok() ? "PASS" : "FAIL"}};
    return {r.ok() ? kOk : kCheckFailed, doc};
  }
  const SimplicialComplex K = io::complex_from_json(io::read_json_file(job.input));
  if (!classify_input(K).k_skeleton_of_flag)
    throw Error(ErrorCode::NotFlagSkeleton, "K is not the k-skeleton of a flag complex");
  const ResolvedPairs pairs = resolve_pairs(job.pairs, K.vertex_count(), job.cutoff);
  const OracleReport rep = verify_against_oracle(K, pairs.fibers, job.cutoff);
  Json doc = io::report_to_json(rep);
  doc["pairs"] = job.pairs;
  if (job.trace && rep.decomposition) doc["trace"] = io::trace_to_json(*rep.decomposition->trace);
  return {rep.passed() ? kOk : kCheckFailed, doc};
}

inline CommandResult cmd_linalg(const JobSpec &job) { return cmd_linalg_file(job); }

/// Runs one job, mapping library errors to error documents and exit codes.
inline CommandResult run_job(const JobSpec &job) {
  try {
    if (job.cutoff < 1) throw Error(ErrorCode::ParseError, "--cutoff must be >= 1");
    if (job.command == "check") return cmd_check(job);
    if (job.command == "decompose") return cmd_decompose(job);
    if (job.command == "verify") return cmd_verify(job);
    if (job.command == "linalg") return cmd_linalg(job);
    throw Error(ErrorCode::ParseError, "unknown command '" + job.command + "'");
  } catch (const Error &e) {
    return {exit_code_for(e.code()), error_document(e.code(), e.message())};
  } catch (const std::exception &e) {
    return {kCheckFailed, error_document(ErrorCode::NotCanonicalP, std::string("internal: ") + e.what())};
  }
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Loop-space decompositions of polyhedral products over flag-complex skeleta"};
  app.require_subcommand(1);
  JobSpec job;
  int split = 0;

  auto add_common = [&](CLI::App *sub, bool input_required) {
    auto *opt = sub->add_option("--input", job.input, "input JSON document");
    if (input_required) opt->required();
    sub->add_option("--output", job.output, "write the result here instead of stdout");
  };
  auto add_pairs = [&](CLI::App *sub) {
    sub->add_option("--pairs", job.pairs, "moment-angle | disks:N | custom:PATH | cp-point:N | cp:N:K");
    sub->add_option("--cutoff", job.cutoff, "bottom-degree cutoff D")->check(CLI::PositiveNumber);
    sub->add_flag("--trace", job.trace, "include the derivation trace");
  };

  auto *check = app.add_subcommand("check", "classify a simplicial complex");
  add_common(check, true);
  auto *decompose = app.add_subcommand("decompose", "decompose Ω(CA,A)^K");
  add_common(decompose, true);
  add_pairs(decompose);
  decompose->add_option("--split-vertex", split, "force the top-level splitting vertex");
  auto *verify = app.add_subcommand("verify", "check the engine against independent oracles");
  add_common(verify, false);
  add_pairs(verify);
  verify->add_flag("--linalg", job.linalg, "run the integer linear algebra checks");
  verify->add_option("--random", job.random, "number of random idempotent trials");
  verify->add_option("--seed", job.seed, "random seed");
  auto *linalg = app.add_subcommand("linalg", "split idempotent matrices and certify gcds");
  add_common(linalg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    out << error_document(ErrorCode::ParseError, e.what()).dump(2) << '\n';
    return kInputError;
  }
  if (verify->parsed() && !job.linalg && job.input.empty()) {
    out << error_document(ErrorCode::ParseError, "verify needs --input or --linalg").dump(2) << '\n';
    return kInputError;
  }
  for (auto *sub : app.get_subcommands()) job.command = sub->get_name();
  if (split != 0) job.split_vertex = split;

  const CommandResult r = run_job(job);
  const std::string text = r.document.dump(2) + "\n";
  if (job.output.empty()) {
    out << text;
  } else {
    std::ofstream f(job.output);
    if (!f) {
      err << "cannot write " << job.output << '\n';
      return kInputError;
    }
    f << text;
  }
  return r.exit_code;
}

} // namespace polyloop::cli
