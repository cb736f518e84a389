#include "kruskal/output.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "kruskal/errors.hpp"

namespace kruskal {

namespace {

std::string chars(double value, std::chars_format fmt, int precision) {
  char buf[64];
  const auto res = precision < 0 ? std::to_chars(buf, buf + sizeof buf, value)
                                 : std::to_chars(buf, buf + sizeof buf, value, fmt, precision);
  if (res.ec != std::errc()) throw NumericalFailure("could not format a double");
  return {buf, res.ptr};
}

// nlohmann writes NaN as null; read it back the same way.
double number_or_nan(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::string csv_cell(const Cell& cell, CsvPrecision precision) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  const double d = std::get<double>(cell);
  return precision == CsvPrecision::kSixDecimals ? format_fixed6(d) : format_round_trip(d);
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

}  // namespace

OutputFormat format_from_string(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw InvalidParameter("format must be csv or json");
}

std::string format_fixed6(double value) {
  if (std::isnan(value)) return "nan";
  return chars(value, std::chars_format::fixed, 6);
}

std::string format_round_trip(double value) {
  if (std::isnan(value)) return "nan";
  return chars(value, std::chars_format::general, -1);
}

std::string to_csv(const ValueTable& table, CsvPrecision precision) {
  std::string out;
  append_row(out, table.columns);
  for (const auto& row : table.rows) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const Cell& c : row) cells.push_back(csv_cell(c, precision));
    append_row(out, cells);
  }
  return out;
}

Json rows_to_json(const ValueTable& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw ShapeError("row width does not match the header");
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { obj[table.columns[i]] = v; }, row[i]);
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

Json seed_to_json(const SeedSpec& seed) {
  return {{"master_seed", seed.master_seed}, {"stream_id", seed.stream_id}};
}

SeedSpec seed_from_json(const Json& j) {
  return {j.at("master_seed").get<std::uint64_t>(), j.at("stream_id").get<std::uint64_t>()};
}

std::string matrix_to_csv(const TransitionMatrix& m) {
  std::string out;
  std::vector<std::string> header{"state"};
  for (int label : m.labels()) header.push_back(std::to_string(label));
  append_row(out, header);
  for (int r = 0; r < m.size(); ++r) {
    std::vector<std::string> cells{std::to_string(m.labels()[static_cast<std::size_t>(r)])};
    for (int c = 0; c < m.size(); ++c) cells.push_back(format_round_trip(m.matrix()(r, c)));
    append_row(out, cells);
  }
  return out;
}

Json matrix_to_json(const TransitionMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.size(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.size(); ++c) row.push_back(m.matrix()(r, c));
    rows.push_back(std::move(row));
  }
  return {{"name", m.name()}, {"labels", m.labels()}, {"rows", std::move(rows)}};
}

TransitionMatrix matrix_from_json(const Json& j) {
  const auto labels = j.at("labels").get<std::vector<int>>();
  const auto& rows = j.at("rows");
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (rows.size() != labels.size()) throw ShapeError("matrix rows do not match labels");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = rows.at(static_cast<std::size_t>(r));
    if (row.size() != labels.size()) throw ShapeError("matrix is not square");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return TransitionMatrix(j.at("name").get<std::string>(), labels, std::move(m));
}

std::string table_to_csv(const ResultTable& table) {
  ValueTable t;
  t.columns.push_back("j");
  t.columns.insert(t.columns.end(), table.columns.begin(), table.columns.end());
  for (const TableRow& row : table.rows) {
    std::vector<Cell> cells{row.label};
    for (double v : row.values) cells.emplace_back(v);
    t.rows.push_back(std::move(cells));
  }
  return to_csv(t, CsvPrecision::kSixDecimals);
}

Json table_to_json(const ResultTable& table) {
  Json rows = Json::array();
  for (const TableRow& row : table.rows) {
    Json values = Json::object();
    Json errors = Json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      values[table.columns[c]] = row.values.at(c);
      errors[table.columns[c]] = row.std_errors.at(c);
    }
    rows.push_back({{"j", row.label}, {"values", std::move(values)}, {"stderr", std::move(errors)}});
  }
  return {{"config", {{"table", table.id}, {"columns", table.columns}}},
          {"rows", std::move(rows)},
          {"seed", seed_to_json(table.seed)},
          {"trials", table.trials},
          {"runtime_ms", table.runtime_ms}};
}

ResultTable table_from_json(const Json& j) {
  ResultTable t;
  t.id = j.at("config").at("table").get<std::string>();
  t.columns = j.at("config").at("columns").get<std::vector<std::string>>();
  for (const Json& r : j.at("rows")) {
    TableRow row;
    row.label = r.at("j").get<std::string>();
    for (const std::string& c : t.columns) {
      row.values.push_back(number_or_nan(r.at("values").at(c)));
      row.std_errors.push_back(number_or_nan(r.at("stderr").at(c)));
    }
    t.rows.push_back(std::move(row));
  }
  t.seed = seed_from_json(j.at("seed"));
  t.trials = j.at("trials").get<std::uint64_t>();
  t.runtime_ms = j.at("runtime_ms").get<double>();
  return t;
}

Json deck_model_to_json(const DeckModel& model) {
  if (const auto* s = std::get_if<ShuffledDeckModel>(&model)) {
    return {{"kind", "shuffled"}, {"variation", std::string(1, s->variation.letter())}};
  }
  const CardDistribution& d = std::get<IidDeckModel>(model).dist;
  Json j = {{"kind", "iid"}, {"family", to_string(d.family())}};
  if (!d.bounded()) {
    j["p"] = d.p();
    if (d.exact_p()) {
      j["p_exact"] = std::to_string(d.exact_p()->numerator()) + "/" + std::to_string(d.exact_p()->denominator());
    }
    return j;
  }
  j["masses"] = std::vector<double>(d.masses().begin(), d.masses().end());
  if (!d.exact_masses().empty()) {
    std::vector<std::string> exact;
    for (const Rational& r : d.exact_masses()) {
      exact.push_back(std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()));
    }
    j["masses_exact"] = exact;
  }
  return j;
}

DeckModel deck_model_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "shuffled") return ShuffledDeckModel{variation_from_string(j.at("variation").get<std::string>())};
  if (kind != "iid") throw InvalidConfig("unknown deck kind '" + kind + "'");
  const Family family = family_from_string(j.at("family").get<std::string>());
  if (family == Family::kGeometric) {
    if (j.contains("p_exact")) {
      return IidDeckModel{CardDistribution::geometric(*parse_rational(j.at("p_exact").get<std::string>()))};
    }
    return IidDeckModel{CardDistribution::geometric(j.at("p").get<double>())};
  }
  if (j.contains("masses_exact")) {
    std::vector<Rational> masses;
    for (const auto& s : j.at("masses_exact")) masses.push_back(*parse_rational(s.get<std::string>()));
    return IidDeckModel{CardDistribution::from_rational_masses(std::move(masses), family)};
  }
  return IidDeckModel{CardDistribution::from_masses(j.at("masses").get<std::vector<double>>(), family)};
}

std::string experiment_to_csv(const ExperimentResult& r) {
  ValueTable t;
  t.columns = {"deck", "N", "magician", "subject", "trials", "failures", "estimate", "stderr"};
  t.rows.push_back({describe(r.config.deck_model), std::int64_t{r.config.N}, r.config.magician.describe(),
                    r.config.subject.describe(), static_cast<std::int64_t>(r.trials),
                    static_cast<std::int64_t>(r.failures), r.failure_estimate, r.std_error});
  return to_csv(t, CsvPrecision::kSixDecimals);
}

Json experiment_to_json(const ExperimentResult& r) {
  const ExperimentConfig& c = r.config;
  Json config = {{"deck", deck_model_to_json(c.deck_model)},
                 {"N", c.N},
                 {"magician", c.magician.describe()},
                 {"subject", c.subject.describe()},
                 {"trials", c.trials},
                 {"seed", seed_to_json(c.seed)},
                 {"workers", c.workers}};
  Json row = {{"failures", r.failures}, {"estimate", r.failure_estimate}, {"stderr", r.std_error}};
  return {{"config", std::move(config)},
          {"rows", Json::array({std::move(row)})},
          {"seed", seed_to_json(r.seed)},
          {"trials", r.trials},
          {"runtime_ms", r.runtime_ms}};
}

ExperimentResult experiment_from_json(const Json& j) {
  ExperimentResult r;
  const Json& c = j.at("config");
  r.config.deck_model = deck_model_from_json(c.at("deck"));
  r.config.N = c.at("N").get<int>();
  r.config.magician = SecretStrategy::parse(c.at("magician").get<std::string>());
  r.config.subject = SecretStrategy::parse(c.at("subject").get<std::string>());
  r.config.trials = c.at("trials").get<std::uint64_t>();
  r.config.seed = seed_from_json(c.at("seed"));
  r.config.workers = c.at("workers").get<unsigned>();
  const Json& row = j.at("rows").at(0);
  r.failures = row.at("failures").get<std::uint64_t>();
  r.failure_estimate = row.at("estimate").get<double>();
  r.std_error = row.at("stderr").get<double>();
  r.seed = seed_from_json(j.at("seed"));
  r.trials = j.at("trials").get<std::uint64_t>();
  r.runtime_ms = j.at("runtime_ms").get<double>();
  return r;
}

Json trace_to_json(const std::vector<TrialTrace>& traces) {
  Json out = Json::array();
  for (const TrialTrace& t : traces) {
    const auto opt = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
    out.push_back({{"trial", t.trial},
                   {"deck", t.deck},
                   {"subject", {{"secret", t.subject.secret}, {"positions", t.subject.positions}}},
                   {"magician", {{"secret", t.magician.secret}, {"positions", t.magician.positions}}},
                   {"coupling_position", opt(t.outcome.coupling_position)},
                   {"subject_tapped", opt(t.outcome.subject_tapped)},
                   {"magician_tapped", opt(t.outcome.magician_tapped)},
                   {"success", t.outcome.success}});
  }
  return out;
}

}  // namespace kruskal
