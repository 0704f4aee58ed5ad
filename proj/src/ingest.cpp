#include "chronolog/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <tuple>

#include "chronolog/errors.hpp"

namespace chronolog {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  for (char &c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool parse_number(const std::string &text, Rational &out) {
  static const std::regex kNumber(R"([+-]?(\d+(\.\d*)?|\.\d+))");
  if (!std::regex_match(text, kNumber))
    return false;
  std::string s = text;
  if (s[0] == '+')
    s.erase(0, 1);
  if (s.back() == '.')
    s.pop_back();
  if (s[0] == '.' || (s[0] == '-' && s[1] == '.'))
    s.insert(s[0] == '-' ? 1 : 0, "0");
  out = parse_timepoint(s).value();
  return true;
}

bool compare(const Rational &a, CompareOp op, const Rational &b) {
  switch (op) {
  case CompareOp::Gt:
    return a > b;
  case CompareOp::Geq:
    return a >= b;
  case CompareOp::Lt:
    return a < b;
  case CompareOp::Leq:
    return a <= b;
  case CompareOp::Eq:
    return a == b;
  case CompareOp::Neq:
    return a != b;
  }
  return false;
}

ExtractionRule parse_rule(const std::string &text, int line) {
  static const std::regex kRule(
      R"(^\s*([A-Za-z0-9_]+)\s*(>=|<=|!=|>|<|=)\s*(\S+)\s*->\s*([A-Z_][A-Za-z0-9_]*)\s*(@\s*([\[(])\s*([\])]))?\s*$)");
  std::smatch m;
  auto fail = [&](const std::string &msg) {
    throw IngestError("config line " + std::to_string(line) + ": " + msg);
  };
  if (!std::regex_match(text, m, kRule))
    fail("expected 'COLUMN op (number|lag) -> Predicate [@ shape]'");
  ExtractionRule r;
  r.column = m[1];
  static const std::map<std::string, CompareOp> kOps = {
      {">", CompareOp::Gt}, {">=", CompareOp::Geq}, {"<", CompareOp::Lt},
      {"<=", CompareOp::Leq}, {"=", CompareOp::Eq}, {"!=", CompareOp::Neq}};
  r.op = kOps.at(m[2]);
  std::string rhs = m[3];
  if (lower(rhs) == "lag")
    r.against_lag = true;
  else if (!parse_number(rhs, r.threshold))
    fail("threshold '" + rhs + "' is not a finite number");
  r.predicate = m[4];
  if (m[5].matched) {
    r.lo_bound = m[6] == "[" ? Bound::Closed : Bound::Open;
    r.hi_bound = m[7] == "]" ? Bound::Closed : Bound::Open;
  }
  return r;
}

std::size_t column_index(const std::vector<std::string> &header, const std::string &name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (trim(header[i]) == name)
      return i;
  throw IngestError("missing column '" + name + "'");
}

bool fact_less(const Fact &a, const Fact &b) {
  auto key = [](const Fact &f) {
    std::vector<std::string> args;
    for (const Term &t : f.atom.args)
      args.push_back(t.name);
    return std::make_tuple(f.atom.predicate, args, f.interval.lo(), f.interval.lo_bound(),
                           f.interval.hi(), f.interval.hi_bound());
  };
  return key(a) < key(b);
}

void sort_unique(std::vector<Fact> &facts) {
  std::sort(facts.begin(), facts.end(), fact_less);
  facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
}

} // namespace

IngestionConfig parse_ingestion_config(std::string_view text) {
  IngestionConfig c;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line = trim(text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                          : nl - pos));
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty() || line[0] == '#')
      continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw IngestError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "station_column")
      c.station_column = value;
    else if (key == "time_column")
      c.time_column = value;
    else if (key == "rule")
      c.rules.push_back(parse_rule(value, line_no));
    else
      throw IngestError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  return c;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, any = false;
  std::size_t i = 0;
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    if (!(record.size() == 1 && record[0].empty() && !any))
      records.push_back(std::move(record));
    record.clear();
    any = false;
  };
  if (text.substr(0, 3) == "\xEF\xBB\xBF")
    i = 3;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n')
        ++i;
      end_record();
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted)
    throw IngestError("unterminated quoted field");
  if (any || !field.empty())
    end_record();
  return records;
}

IngestReport ingest_weather_csv(std::string_view csv, const IngestionConfig &config) {
  IngestReport report;
  auto records = parse_csv(csv);
  if (records.empty())
    throw IngestError("CSV has no header row");
  const auto &header = records.front();
  std::size_t station = column_index(header, config.station_column);
  std::size_t time = column_index(header, config.time_column);
  std::vector<std::size_t> value_columns;
  for (const ExtractionRule &r : config.rules)
    value_columns.push_back(column_index(header, r.column));

  struct Row {
    TimePoint at;
    std::vector<Rational> values;
    std::size_t line;
  };
  std::map<std::string, std::vector<Row>> by_station;
  for (std::size_t n = 1; n < records.size(); ++n) {
    const auto &rec = records[n];
    ++report.rows;
    auto skip = [&](const std::string &why) {
      ++report.skipped;
      report.warnings.push_back("row " + std::to_string(n + 1) + ": " + why + ", skipped");
    };
    std::size_t needed = std::max(station, time);
    for (std::size_t c : value_columns)
      needed = std::max(needed, c);
    if (rec.size() <= needed) {
      skip("too few fields");
      continue;
    }
    Row row{TimePoint(), {}, n + 1};
    try {
      row.at = parse_timepoint(trim(rec[time]));
    } catch (const ParseError &) {
      skip("unreadable timestamp '" + rec[time] + "'");
      continue;
    }
    if (!row.at.finite()) {
      skip("infinite timestamp");
      continue;
    }
    bool ok = true;
    for (std::size_t k = 0; k < value_columns.size() && ok; ++k) {
      Rational v;
      const std::string cell = trim(rec[value_columns[k]]);
      if (!parse_number(cell, v)) {
        skip("unreadable value '" + cell + "' in column " + config.rules[k].column);
        ok = false;
      }
      row.values.push_back(v);
    }
    if (!ok)
      continue;
    std::string id = lower(trim(rec[station]));
    if (id.empty()) {
      skip("empty station id");
      continue;
    }
    by_station[id].push_back(std::move(row));
  }

  for (auto &[id, rows] : by_station) {
    std::sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) {
      if (a.at != b.at)
        return a.at < b.at;
      return a.values < b.values;
    });
    for (std::size_t n = 1; n < rows.size(); ++n) {
      const Row &prev = rows[n - 1], &curr = rows[n];
      for (std::size_t k = 0; k < config.rules.size(); ++k) {
        const ExtractionRule &r = config.rules[k];
        const Rational &rhs = r.against_lag ? prev.values[k] : r.threshold;
        if (!compare(curr.values[k], r.op, rhs))
          continue;
        Interval iv(prev.at, r.lo_bound, curr.at, r.hi_bound);
        if (is_empty(iv))
          continue;
        report.facts.push_back({Atom{r.predicate, {Term::constant(id)}}, iv});
      }
    }
  }
  sort_unique(report.facts);
  return report;
}

IngestReport ingest_metadata_csv(std::string_view csv) {
  IngestReport report;
  auto records = parse_csv(csv);
  if (records.empty())
    return report;
  std::size_t id = column_index(records[0], "ID");
  std::size_t county = column_index(records[0], "COUNTY");
  for (std::size_t n = 1; n < records.size(); ++n) {
    const auto &rec = records[n];
    ++report.rows;
    if (rec.size() <= std::max(id, county) || trim(rec[id]).empty() ||
        trim(rec[county]).empty()) {
      ++report.skipped;
      report.warnings.push_back("row " + std::to_string(n + 1) + ": missing ID or COUNTY, skipped");
      continue;
    }
    report.facts.push_back(
        {Atom{"LocationOf", {Term::constant(lower(trim(rec[county]))),
                             Term::constant(lower(trim(rec[id])))}},
         Interval::open(TimePoint::neg_inf(), TimePoint::pos_inf())});
  }
  sort_unique(report.facts);
  return report;
}

} // namespace chronolog
