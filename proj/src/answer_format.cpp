#include "chronolog/answer_format.hpp"

#include <cstdio>

#include <json.hpp>

namespace chronolog {

namespace {

const char *lo_mark(Bound b) { return b == Bound::Closed ? "[" : "("; }
const char *hi_mark(Bound b) { return b == Bound::Closed ? "]" : ")"; }

} // namespace

std::string to_string(Status s) {
  return s == Status::Consistent ? "consistent" : "inconsistent";
}

std::string format_answers_tsv(const AnswerSet &answers, TimeStyle style) {
  std::string out = "# status: " + to_string(answers.status) + "\n";
  for (const Answer &a : answers.answers) {
    out += answers.predicate;
    for (const std::string &c : a.tuple)
      out += "\t" + c;
    out += "\t" + format_timepoint(a.interval.lo(), style);
    out += "\t" + std::string(lo_mark(a.interval.lo_bound()));
    out += "\t" + format_timepoint(a.interval.hi(), style);
    out += "\t" + std::string(hi_mark(a.interval.hi_bound())) + "\n";
  }
  return out;
}

std::string format_answers_json(const AnswerSet &answers, TimeStyle style) {
  nlohmann::ordered_json doc;
  doc["status"] = to_string(answers.status);
  doc["predicate"] = answers.predicate;
  doc["answers"] = nlohmann::ordered_json::array();
  for (const Answer &a : answers.answers) {
    nlohmann::ordered_json row;
    row["tuple"] = a.tuple;
    row["lo"] = format_timepoint(a.interval.lo(), style);
    row["lo_bound"] = lo_mark(a.interval.lo_bound());
    row["hi"] = format_timepoint(a.interval.hi(), style);
    row["hi_bound"] = hi_mark(a.interval.hi_bound());
    doc["answers"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::string format_stats(const std::vector<StratumStats> &stats) {
  std::string out;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const StratumStats &s = stats[i];
    std::string preds;
    for (const std::string &p : s.predicates)
      preds += (preds.empty() ? "" : ",") + p;
    char millis[32];
    std::snprintf(millis, sizeof millis, "%.3f", s.millis);
    out += "stratum " + std::to_string(i) + "\tpredicates=" + preds +
           "\trules=" + std::to_string(s.rules) + "\trows=" + std::to_string(s.rows) +
           "\tintervals=" + std::to_string(s.intervals) + "\tms=" + millis + "\n";
  }
  return out;
}

} // namespace chronolog
