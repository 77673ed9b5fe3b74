#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hus/calculus.hpp"
#include "hus/errors.hpp"
#include "hus/report.hpp"
#include "hus/spec_file.hpp"
#include "hus/verify.hpp"
#include "hus/zoo.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitCounterexample = 4;

hus::ReportFormat parse_format(const std::string& text) {
  if (text == "human") return hus::ReportFormat::Human;
  if (text == "keyvalue") return hus::ReportFormat::KeyValue;
  throw hus::PreconditionError("unknown format '" + text + "' (use human or keyvalue)");
}

std::vector<long long> parse_dims(const std::string& text) {
  std::vector<long long> dims;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) throw hus::PreconditionError("malformed --dims list");
    dims.push_back(std::stoll(cur));
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ',') {
      flush();
    } else {
      cur += ch;
    }
  }
  flush();
  return dims;
}

std::vector<hus::Scalar> parse_vector(const std::string& text) {
  std::vector<hus::Scalar> xs;
  std::string cur;
  auto flush = [&]() {
    auto v = hus::parse_scalar(cur);
    if (!v) throw hus::PreconditionError("malformed vector entry '" + cur + "'");
    xs.push_back(*v);
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ',') {
      flush();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty()) flush();
  if (xs.empty()) throw hus::PreconditionError("empty vector");
  return xs;
}

struct CliOptions {
  std::string command;
  std::string spec_path;
  std::vector<std::string> verify_specs;
  std::string theorem_id;
  std::string format = "human";
  std::string dims_text;
  std::string x_text;
  std::string zoo_action;
  double rank_tol = -1.0;
  std::uint64_t seed = 42;
  long long draws = -1;
};

int run_analyze(const CliOptions& opt) {
  hus::ToleranceConfig base;
  hus::ResolvedSpec resolved = hus::load_spec_file(opt.spec_path, base);
  if (opt.rank_tol > 0.0) resolved.tolerances.rank_tol = opt.rank_tol;
  if (!resolved.model) {
    throw hus::PreconditionError(
        "the " + resolved.name + " operator has no finite model; use 'verify szasz_witness'");
  }
  hus::Report report;
  report.subject_kind = resolved.kind;
  report.subject_name = resolved.name;
  report.tolerances = resolved.tolerances;
  report.stability = hus::stability_report(*resolved.model, resolved.tolerances);
  if (hus::is_diagonal(*resolved.model)) {
    std::vector<long long> dims = {4, 16, 64, 256};
    if (!opt.dims_text.empty()) dims = parse_dims(opt.dims_text);
    report.convergence = hus::gamma_convergence_table(hus::as_diagonal(*resolved.model), dims,
                                                      resolved.tolerances);
  }
  std::fputs(hus::render_report(report, parse_format(opt.format)).c_str(), stdout);
  return kExitOk;
}

int run_witness(const CliOptions& opt) {
  hus::ToleranceConfig base;
  const hus::ResolvedSpec resolved = hus::load_spec_file(opt.spec_path, base);
  if (!resolved.model) {
    throw hus::PreconditionError("witness needs an operator model");
  }
  const std::vector<hus::Scalar> x = parse_vector(opt.x_text);
  hus::Report report;
  report.subject_kind = resolved.kind;
  report.subject_name = resolved.name;
  report.tolerances = resolved.tolerances;
  report.stability = hus::stability_report(*resolved.model, resolved.tolerances);
  report.witness = hus::hus_witness(*resolved.model, x, resolved.tolerances);
  std::fputs(hus::render_report(report, parse_format(opt.format)).c_str(), stdout);
  return kExitOk;
}

int run_verify_cmd(const CliOptions& opt) {
  hus::ToleranceConfig base;
  std::vector<hus::ResolvedSpec> specs;
  for (const std::string& path : opt.verify_specs) {
    specs.push_back(hus::load_spec_file(path, base));
  }
  const long long draws = opt.draws > 0 ? opt.draws : hus::default_draws(opt.theorem_id);
  const hus::TheoremOutcome outcome =
      hus::run_theorem(opt.theorem_id, specs, opt.seed, draws, base);
  hus::Report report;
  report.subject_kind = "verify";
  report.subject_name = opt.theorem_id;
  report.tolerances = base;
  report.theorem = outcome;
  std::fputs(hus::render_report(report, parse_format(opt.format)).c_str(), stdout);
  return outcome.passed ? kExitOk : kExitCounterexample;
}

int run_zoo(const CliOptions& opt) {
  if (opt.zoo_action != "list") {
    throw hus::PreconditionError("unknown zoo action '" + opt.zoo_action + "' (try: list)");
  }
  for (const hus::ZooEntry& entry : hus::zoo_catalog()) {
    std::printf("%-22s %s\n", entry.name.c_str(), entry.summary.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyers-Ulam stability analyzer for diagonal, matrix and block operator models"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* analyze = app.add_subcommand("analyze", "stability report for an operator spec file");
  analyze->add_option("spec", opt.spec_path, "operator spec file")->required();
  analyze->add_option("--format", opt.format, "human|keyvalue");
  analyze->add_option("--dims", opt.dims_text, "comma list of truncation dimensions");
  analyze->add_option("--rank-tol", opt.rank_tol, "relative singular-value cutoff");

  CLI::App* verify = app.add_subcommand("verify", "run a theorem property suite");
  verify->add_option("theorem", opt.theorem_id, "theorem id (see --help-ids)")->required();
  verify->add_option("--spec", opt.verify_specs, "explicit instance spec file(s)");
  verify->add_option("--seed", opt.seed, "draw seed (default 42)");
  verify->add_option("--draws", opt.draws, "number of randomized draws");
  verify->add_option("--format", opt.format, "human|keyvalue");

  CLI::App* zoo = app.add_subcommand("zoo", "named example operators");
  zoo->add_option("action", opt.zoo_action, "list")->required();

  CLI::App* witness = app.add_subcommand("witness", "nearest-kernel witness for a vector");
  witness->add_option("spec", opt.spec_path, "operator spec file")->required();
  witness->add_option("--x", opt.x_text, "comma-separated input vector")->required();
  witness->add_option("--format", opt.format, "human|keyvalue");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (analyze->parsed()) return run_analyze(opt);
    if (verify->parsed()) return run_verify_cmd(opt);
    if (zoo->parsed()) return run_zoo(opt);
    if (witness->parsed()) return run_witness(opt);
    std::fprintf(stderr, "no subcommand\n");
    return kExitPrecondition;
  } catch (const hus::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const hus::PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitPrecondition;
  } catch (const hus::NumericError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
}
