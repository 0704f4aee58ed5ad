#include "chronolog/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "chronolog/answer_format.hpp"
#include "chronolog/errors.hpp"
#include "chronolog/evaluator.hpp"
#include "chronolog/ingest.hpp"
#include "chronolog/normalizer.hpp"
#include "chronolog/oracle.hpp"
#include "chronolog/parser.hpp"
#include "chronolog/stratifier.hpp"
#include "chronolog/validate.hpp"

namespace chronolog {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parse errors are reported as path:line:col.
template <class F> auto parse_file(const std::string &path, F &&parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError &e) {
    throw ParseError(e.position(), e.message() + " (in " + path + ")");
  }
}

std::vector<Fact> load_data(const std::vector<std::string> &paths) {
  std::vector<Fact> data;
  for (const std::string &p : paths) {
    auto part = parse_file(p, [](const std::string &t) { return parse_data(t); });
    data.insert(data.end(), part.begin(), part.end());
  }
  return data;
}

Ontology load_ontology(const std::string &path) {
  return parse_file(path, [](const std::string &t) { return parse_ontology(t); });
}

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

struct AnswerOptions {
  std::string ontology;
  std::vector<std::string> data;
  std::string query;
  std::string format = "text";
  std::string time = "seconds";
  bool oracle = false;
  bool single_thread = false;
  bool stats = false;
};

int cmd_answer(const AnswerOptions &opt, std::ostream &out, std::ostream &err) {
  auto start = std::chrono::steady_clock::now();
  Ontology o = load_ontology(opt.ontology);
  std::vector<Fact> data = load_data(opt.data);
  Signature sig = signature_of(o, data);
  Query q = parse_query(opt.query, &sig);
  require_valid(o, data);
  check_nonrecursive(DependencyGraph::of(o));
  double parse_ms = millis_since(start);

  AnswerSet answers;
  std::vector<StratumStats> stats;
  auto eval_start = std::chrono::steady_clock::now();
  if (opt.oracle) {
    answers = oracle::naive_answer(o, data, q);
  } else {
    NormalProgram p = normalize(o);
    EvaluationOptions eo;
    eo.single_thread = opt.single_thread;
    EvaluationResult result = run(p, data, eo);
    answers = answer(q, result, data);
    stats = result.stats;
  }
  double eval_ms = millis_since(eval_start);

  TimeStyle style = opt.time == "iso" ? TimeStyle::Iso : TimeStyle::Seconds;
  out << (opt.format == "json" ? format_answers_json(answers, style)
                               : format_answers_tsv(answers, style));
  if (opt.stats) {
    err << "facts=" << data.size() << "\trules=" << o.rules.size()
        << "\tanswers=" << answers.answers.size() << "\n";
    err << format_stats(stats);
    err << "parse_ms=" << parse_ms << "\teval_ms=" << eval_ms << "\n";
  }
  if (answers.status == Status::Inconsistent) {
    err << "INCONSISTENT: a falsum rule fires; every tuple is returned over (-inf, +inf)\n";
    return kExitInconsistent;
  }
  return kExitConsistent;
}

int cmd_check(const std::string &ontology, const std::vector<std::string> &data_paths,
              std::ostream &out) {
  Ontology o = load_ontology(ontology);
  std::vector<Fact> data = load_data(data_paths);
  require_valid(o, data);
  auto levels = strata(DependencyGraph::of(o));
  out << "ok: " << o.rules.size() << " rules, " << data.size() << " facts, " << levels.size()
      << " strata\n";
  return kExitConsistent;
}

int cmd_normalize(const std::string &ontology, std::ostream &out) {
  Ontology o = load_ontology(ontology);
  require_valid(o, {});
  check_nonrecursive(DependencyGraph::of(o));
  out << to_string(normalize(o).to_ontology());
  return kExitConsistent;
}

int cmd_deps(const std::string &ontology, bool normalized, std::ostream &out) {
  Ontology o = load_ontology(ontology);
  require_valid(o, {});
  out << (normalized ? DependencyGraph::of(normalize(o)) : DependencyGraph::of(o)).to_dot();
  return kExitConsistent;
}

int cmd_ingest(const std::string &weather, const std::string &config, const std::string &metadata,
               const std::string &time, std::ostream &out, std::ostream &err) {
  if (weather.empty() == metadata.empty())
    throw UsageError("ingest needs exactly one of --weather or --metadata");
  IngestReport report;
  if (!weather.empty()) {
    if (config.empty())
      throw UsageError("--weather needs --config");
    report = ingest_weather_csv(read_file(weather), parse_ingestion_config(read_file(config)));
  } else {
    report = ingest_metadata_csv(read_file(metadata));
  }
  for (const std::string &w : report.warnings)
    err << "warning: " << w << "\n";
  if (report.skipped)
    err << report.skipped << " of " << report.rows << " rows skipped\n";
  out << to_string(report.facts, time == "iso" ? TimeStyle::Iso : TimeStyle::Seconds);
  return kExitConsistent;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Query answering over metric temporal Horn ontologies on dense time", "chronolog"};
  app.require_subcommand(1);

  AnswerOptions ans;
  auto *answer_cmd = app.add_subcommand("answer", "Certain answers of a query");
  answer_cmd->add_option("ontology", ans.ontology, "Ontology file (.dmtl)")->required();
  answer_cmd->add_option("data", ans.data, "Data files (.dfacts)");
  answer_cmd->add_option("-q,--query", ans.query, "Query, e.g. 'Hurricane(x) @ q'")->required();
  answer_cmd->add_option("--format", ans.format)->check(CLI::IsMember({"text", "json"}));
  answer_cmd->add_option("--time", ans.time, "Time display")
      ->check(CLI::IsMember({"seconds", "iso"}));
  answer_cmd->add_flag("--oracle", ans.oracle, "Use the brute-force reference model");
  answer_cmd->add_flag("--single-thread", ans.single_thread, "Evaluate on one thread");
  answer_cmd->add_flag("--stats", ans.stats, "Per-stratum statistics on stderr");

  std::string ontology;
  std::vector<std::string> data;
  auto *check_cmd = app.add_subcommand("check", "Validate and stratify");
  check_cmd->add_option("ontology", ontology)->required();
  check_cmd->add_option("data", data);

  auto *normalize_cmd = app.add_subcommand("normalize", "Print the normalized program");
  normalize_cmd->add_option("ontology", ontology)->required();

  bool normalized = false;
  auto *deps_cmd = app.add_subcommand("deps", "Dependency graph in DOT");
  deps_cmd->add_option("ontology", ontology)->required();
  deps_cmd->add_flag("--normalized", normalized, "Graph of the normalized program");

  std::string weather, config, metadata, time = "iso";
  auto *ingest_cmd = app.add_subcommand("ingest", "Convert CSV logs to facts");
  ingest_cmd->add_option("--weather", weather, "Weather log CSV");
  ingest_cmd->add_option("--config", config, "Ingestion config");
  ingest_cmd->add_option("--metadata", metadata, "Station metadata CSV");
  ingest_cmd->add_option("--time", time)->check(CLI::IsMember({"seconds", "iso"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*answer_cmd)
      return cmd_answer(ans, out, err);
    if (*check_cmd)
      return cmd_check(ontology, data, out);
    if (*normalize_cmd)
      return cmd_normalize(ontology, out);
    if (*deps_cmd)
      return cmd_deps(ontology, normalized, out);
    return cmd_ingest(weather, config, metadata, time, out, err);
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IngestError &e) {
    err << "ingest error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RecursionError &e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ValidationError &e) {
    err << "invalid: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

} // namespace chronolog
