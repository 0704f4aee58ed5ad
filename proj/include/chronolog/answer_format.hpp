#pragma once

#include <string>
#include <vector>

#include "chronolog/evaluator.hpp"

namespace chronolog {

// Text form: a "# status: consistent|inconsistent" line, then one
// tab-separated line per answer:
//
//   predicate  c1 .. cm  lo  loBound  hi  hiBound
//
// with loBound in {"(", "["} and hiBound in {")", "]"}.
std::string format_answers_tsv(const AnswerSet &answers, TimeStyle style = TimeStyle::Seconds);

// JSON form:
//   {"status": "consistent", "predicate": "P",
//    "answers": [{"tuple": ["a"], "lo": "0", "lo_bound": "(", "hi": "1", "hi_bound": "]"}]}
// Times are strings so that exact rationals and infinities survive.
std::string format_answers_json(const AnswerSet &answers, TimeStyle style = TimeStyle::Seconds);

std::string to_string(Status s);

/// One line per stratum: level, predicates, rules, rows, intervals, millis.
std::string format_stats(const std::vector<StratumStats> &stats);

} // namespace chronolog
