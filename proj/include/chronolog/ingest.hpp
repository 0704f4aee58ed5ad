#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chronolog/ast.hpp"

namespace chronolog {

class IngestError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class CompareOp { Gt, Geq, Lt, Leq, Eq, Neq };

/// "column op threshold -> Predicate", or "column op lag -> Predicate" to
/// compare a row with the previous row of the same station.
struct ExtractionRule {
  std::string column;
  CompareOp op = CompareOp::Gt;
  bool against_lag = false;
  Rational threshold;
  std::string predicate;
  Bound lo_bound = Bound::Open;
  Bound hi_bound = Bound::Closed;
};

/// Key-value text:
///
///   station_column = ID
///   time_column = TIME
///   rule = P01I > lag -> Precipitation
///   rule = SKNT > 118 -> HurricaneForceWind
///   rule = TMPC >= 24 -> TempAbove24 @ []
///
/// Lines starting with '#' are comments. The optional "@ <lo><hi>" suffix
/// overrides the default (prev, curr] interval shape.
struct IngestionConfig {
  std::string station_column = "ID";
  std::string time_column = "TIME";
  std::vector<ExtractionRule> rules;
};

IngestionConfig parse_ingestion_config(std::string_view text);

/// RFC 4180 records. Throws IngestError on an unterminated quote.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

struct IngestReport {
  std::vector<Fact> facts;
  std::size_t rows = 0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

/// One fact per consecutive same-station row pair whose current row passes a
/// rule. Rows with an unreadable timestamp or value are skipped and reported.
/// Facts are sorted and deduplicated.
IngestReport ingest_weather_csv(std::string_view csv, const IngestionConfig &config);

/// LocationOf(county, id) @ (-inf, +inf) per row of a table with ID and
/// COUNTY columns.
IngestReport ingest_metadata_csv(std::string_view csv);

} // namespace chronolog
