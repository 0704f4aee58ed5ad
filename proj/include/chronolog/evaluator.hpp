#pragma once

#include <map>
#include <string>
#include <vector>

#include "chronolog/ast.hpp"
#include "chronolog/interval.hpp"
#include "chronolog/normalizer.hpp"

namespace chronolog {

using Tuple = std::vector<std::string>;

/// Extension of one predicate: constant tuple -> canonical nonempty set of
/// time points at which the atom is certain.
struct Table {
  std::string predicate;
  std::size_t arity = 0;
  std::map<Tuple, IntervalSet> rows;

  std::size_t interval_count() const;
  void add(const Tuple &t, const IntervalSet &s);

  friend bool operator==(const Table &, const Table &) = default;
};

using TableMap = std::map<std::string, Table>;

enum class Status { Consistent, Inconsistent };

struct EvaluationOptions {
  /// Run every stratum on the calling thread.
  bool single_thread = false;
  /// Worker cap; 0 means CHRONOLOG_THREADS or the hardware concurrency.
  std::size_t threads = 0;
};

struct StratumStats {
  std::vector<std::string> predicates;
  std::size_t rules = 0;
  std::size_t rows = 0;
  std::size_t intervals = 0;
  double millis = 0;
};

struct EvaluationResult {
  TableMap tables;
  Status status = Status::Consistent;
  /// Time points at which some falsum rule fires.
  IntervalSet falsum;
  std::vector<StratumStats> stats;

  const Table *table(const std::string &predicate) const;
};

// Rule contributions. Each reads only the body tables and returns the derived
// rows of the head (an arity-0 table named "" for falsum rules).
Table eval_join(const JoinRule &r, const TableMap &tables);
Table eval_copy(const CopyRule &r, const TableMap &tables);
Table eval_box_head(const BoxHeadRule &r, const TableMap &tables);
Table eval_box_body(const BoxBodyRule &r, const TableMap &tables);
Table eval_rule(const NormalRule &r, const TableMap &tables);

/// Loads facts into coalesced tables.
TableMap load_facts(const std::vector<Fact> &data);

/// Computes every table of a normalized, non-recursive program bottom-up.
/// Throws RecursionError if the program has a dependency cycle.
EvaluationResult run(const NormalProgram &program, const std::vector<Fact> &data,
                     const EvaluationOptions &options = {});

struct Answer {
  Tuple tuple;
  Interval interval;

  friend bool operator==(const Answer &, const Answer &) = default;
};

struct AnswerSet {
  Status status = Status::Consistent;
  std::string predicate;
  std::vector<Answer> answers;

  friend bool operator==(const AnswerSet &, const AnswerSet &) = default;
};

/// Certain answers of the query: one entry per maximal interval of each
/// matching tuple. On an inconsistent knowledge base every instantiation of
/// the query over the data's constants is returned with (-inf, +inf).
AnswerSet answer(const Query &query, const EvaluationResult &result,
                 const std::vector<Fact> &data);

/// Instantiations of the query atom over the given constants.
std::vector<Tuple> instantiations(const Atom &atom, const std::vector<std::string> &constants);

} // namespace chronolog
