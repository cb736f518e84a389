#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kruskal/chains.hpp"
#include "kruskal/montecarlo.hpp"

namespace kruskal {

using Json = nlohmann::json;

enum class OutputFormat { kCsv, kJson };

OutputFormat format_from_string(const std::string& name);

// Six fractional digits with '.' as the decimal point, whatever the locale.
std::string format_fixed6(double value);

// Shortest text that parses back to the same double.
std::string format_round_trip(double value);

// A flat result: named columns, heterogeneous cells.
using Cell = std::variant<std::string, std::int64_t, double>;

struct ValueTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class CsvPrecision { kSixDecimals, kRoundTrip };

std::string to_csv(const ValueTable& table, CsvPrecision precision = CsvPrecision::kSixDecimals);
// Array of objects keyed by column name; doubles at full precision.
Json rows_to_json(const ValueTable& table);

Json seed_to_json(const SeedSpec& seed);
SeedSpec seed_from_json(const Json& j);

// Header "state,<labels>", one row per state in label order.
std::string matrix_to_csv(const TransitionMatrix& m);
Json matrix_to_json(const TransitionMatrix& m);
TransitionMatrix matrix_from_json(const Json& j);

// Column layout mirrors the printed tables: j,<columns>.
std::string table_to_csv(const ResultTable& table);
// Envelope {config, rows, seed, trials, runtime_ms}.
Json table_to_json(const ResultTable& table);
ResultTable table_from_json(const Json& j);

Json deck_model_to_json(const DeckModel& model);
DeckModel deck_model_from_json(const Json& j);

std::string experiment_to_csv(const ExperimentResult& result);
Json experiment_to_json(const ExperimentResult& result);
ExperimentResult experiment_from_json(const Json& j);

Json trace_to_json(const std::vector<TrialTrace>& traces);

}  // namespace kruskal
