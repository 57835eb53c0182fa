#include "rankdyn/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rankdyn/errors.hpp"

namespace rankdyn::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::optional<double> parse_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    return std::nullopt;
  return value;
}

std::optional<int> parse_int(const std::string& text) {
  if (text.empty()) return std::nullopt;
  int value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string join_header(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

[[noreturn]] void fail_violations(const std::string& origin,
                                  const std::vector<std::string>& violations) {
  std::string message = origin + ": invalid input";
  for (const auto& v : violations) message += "\n  " + v;
  throw InputError(message);
}

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

ordered_json load_json(const std::string& path) {
  std::ifstream in = open_file(path);
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Needle for CSV cells that require quoting.
bool needs_quotes(const std::string& field) {
  return field.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_field(const std::string& field) {
  if (!needs_quotes(field)) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

CsvTable parse_csv(std::istream& in, const std::string& origin) {
  CsvTable table;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_has_data = false;

  auto push_field = [&]() {
    row.push_back(field);
    field.clear();
  };
  auto push_row = [&]() {
    push_field();
    if (table.header.empty())
      table.header = row;
    else
      table.rows.push_back(row);
    row.clear();
    row_has_data = false;
  };

  char c;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty())
          throw InputError(origin + ": stray quote inside an unquoted field");
        in_quotes = true;
        row_has_data = true;
        break;
      case ',':
        push_field();
        row_has_data = true;
        break;
      case '\r':
        break;  // tolerate CRLF
      case '\n':
        if (row_has_data || !field.empty() || !row.empty()) push_row();
        break;
      default:
        field += c;
        row_has_data = true;
        break;
    }
  }
  if (in_quotes) throw InputError(origin + ": unterminated quoted field");
  if (row_has_data || !field.empty() || !row.empty()) push_row();
  if (table.header.empty()) throw InputError(origin + ": empty file");
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in = open_file(path);
  return parse_csv(in, path);
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // normalize negative zero
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + temp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw InputError("cannot write '" + temp.string() + "'");
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw InputError("cannot replace '" + path + "': " + ec.message());
  }
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    std::fflush(stdout);
    return;
  }
  write_atomic(out_path, content);
}

std::vector<InstitutionRecord> parse_dataset(std::istream& in,
                                             const std::string& origin) {
  const CsvTable table = parse_csv(in, origin);
  const std::vector<std::string> expected = {"id",    "name", "class",
                                             "alumni", "award", "hici",
                                             "ns",    "pub",  "fte"};
  if (table.header != expected)
    throw InputError(origin + ": expected header '" + join_header(expected) +
                     "', got '" + join_header(table.header) + "'");

  std::vector<std::string> violations;
  std::set<std::string> seen;
  std::vector<InstitutionRecord> records;
  records.reserve(table.rows.size());

  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = "row " + std::to_string(r + 2);
    if (row.size() != expected.size()) {
      violations.push_back(where + ": expected " +
                           std::to_string(expected.size()) + " fields, got " +
                           std::to_string(row.size()));
      continue;
    }
    InstitutionRecord record;
    record.id = row[0];
    record.name = row[1];
    if (record.id.empty())
      violations.push_back(where + ", column 'id': empty id");
    else if (!seen.insert(record.id).second)
      violations.push_back(where + ", column 'id': duplicate id '" +
                           record.id + "'");

    if (row[2] == "standard")
      record.cls = InstitutionClass::Standard;
    else if (row[2] == "socsci")
      record.cls = InstitutionClass::SocialScience;
    else
      violations.push_back(where +
                           ", column 'class': expected 'standard' or "
                           "'socsci', got '" + row[2] + "'");

    for (int i = 0; i < kRawIndicators; ++i) {
      const std::string& cell = row[static_cast<size_t>(3 + i)];
      const std::string& column = expected[static_cast<size_t>(3 + i)];
      const auto value = parse_number(cell);
      if (!value) {
        violations.push_back(where + ", column '" + column +
                             "': not a number: '" + cell + "'");
        continue;
      }
      if (*value < 0.0) {
        violations.push_back(where + ", column '" + column +
                             "': negative value " + cell);
        continue;
      }
      record.raw[static_cast<size_t>(i)] = *value;
    }

    const std::string& fte_cell = row[8];
    if (!fte_cell.empty()) {
      const auto fte = parse_number(fte_cell);
      if (!fte)
        violations.push_back(where + ", column 'fte': not a number: '" +
                             fte_cell + "'");
      else if (!(*fte > 0.0))
        violations.push_back(where + ", column 'fte': must be positive, got " +
                             fte_cell);
      else
        record.fte = *fte;
    }
    records.push_back(std::move(record));
  }
  if (!violations.empty()) fail_violations(origin, violations);
  if (records.empty()) throw InputError(origin + ": no data rows");
  return records;
}

std::vector<InstitutionRecord> ingest_dataset(const std::string& path) {
  std::ifstream in = open_file(path);
  return parse_dataset(in, path);
}

std::vector<PublishedRow> read_published(const std::string& path) {
  const CsvTable table = read_csv(path);
  const std::vector<std::string> expected = {"id",  "alumni", "award", "hici",
                                             "ns",  "pub",    "pcp",   "total"};
  if (table.header != expected)
    throw InputError(path + ": expected header '" + join_header(expected) +
                     "', got '" + join_header(table.header) + "'");

  std::vector<std::string> violations;
  std::set<std::string> seen;
  std::vector<PublishedRow> rows;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = "row " + std::to_string(r + 2);
    if (row.size() != expected.size()) {
      violations.push_back(where + ": expected " +
                           std::to_string(expected.size()) + " fields, got " +
                           std::to_string(row.size()));
      continue;
    }
    PublishedRow published;
    published.id = row[0];
    if (published.id.empty())
      violations.push_back(where + ", column 'id': empty id");
    else if (!seen.insert(published.id).second)
      violations.push_back(where + ", column 'id': duplicate id '" +
                           published.id + "'");

    auto read_cell = [&](size_t col) -> std::optional<double> {
      const std::string& cell = row[col];
      if (cell.empty()) return std::nullopt;
      const auto value = parse_number(cell);
      if (!value) {
        violations.push_back(where + ", column '" + expected[col] +
                             "': not a number: '" + cell + "'");
        return std::nullopt;
      }
      if (*value < 0.0) {
        violations.push_back(where + ", column '" + expected[col] +
                             "': negative value " + cell);
        return std::nullopt;
      }
      return value;
    };
    for (int i = 0; i < kAllIndicators; ++i)
      published.scores.score[static_cast<size_t>(i)] =
          read_cell(static_cast<size_t>(1 + i));
    published.scores.total = read_cell(7);
    rows.push_back(std::move(published));
  }
  if (!violations.empty()) fail_violations(path, violations);
  if (rows.empty()) throw InputError(path + ": no data rows");
  return rows;
}

GainSet load_gain_set(const std::string& path) {
  const ordered_json j = load_json(path);
  if (!j.is_object()) throw InputError(path + ": expected a JSON object");

  GainSet gains;
  const auto provenance = j.find("provenance");
  if (provenance == j.end() || !provenance->is_string())
    throw InputError(path + ": missing string field 'provenance'");
  const std::string prov = provenance->get<std::string>();
  if (prov == "fixed")
    gains.provenance = GainProvenance::Fixed;
  else if (prov == "annual")
    gains.provenance = GainProvenance::AnnualBestPerformer;
  else
    throw InputError(path + ": provenance must be 'fixed' or 'annual', got '" +
                     prov + "'");

  const auto values = j.find("gains");
  if (values == j.end() || !values->is_array() ||
      values->size() != kAllIndicators)
    throw InputError(path + ": 'gains' must be an array of " +
                     std::to_string(kAllIndicators) + " numbers");
  for (int i = 0; i < kAllIndicators; ++i) {
    const auto& cell = (*values)[static_cast<size_t>(i)];
    if (!cell.is_number() || !(cell.get<double>() > 0.0))
      throw InputError(path + ": gain for '" +
                       kIndicatorNames[static_cast<size_t>(i)] +
                       "' must be a positive number");
    gains.gains[static_cast<size_t>(i)] = cell.get<double>();
  }

  if (const auto dummy = j.find("dummy_fte"); dummy != j.end()) {
    if (!dummy->is_number() || !(dummy->get<double>() > 0.0))
      throw InputError(path + ": 'dummy_fte' must be a positive number");
    gains.dummy_fte = dummy->get<double>();
  }
  if (const auto k = j.find("k_param"); k != j.end() && !k->is_null()) {
    if (!k->is_number() || !(k->get<double>() > 0.0))
      throw InputError(path + ": 'k_param' must be a positive number");
    gains.k_param = k->get<double>();
  }
  return gains;
}

NamedEventSet load_event_set(const std::string& path) {
  const ordered_json j = load_json(path);
  if (!j.is_object()) throw InputError(path + ": expected a JSON object");

  NamedEventSet named;
  if (const auto rounding = j.find("rounding"); rounding != j.end()) {
    if (!rounding->is_string())
      throw InputError(path + ": 'rounding' must be a string");
    const std::string policy = rounding->get<std::string>();
    if (policy == "nearest")
      named.set.rounding = Rounding::NearestInteger;
    else if (policy == "none")
      named.set.rounding = Rounding::None;
    else
      throw InputError(path + ": rounding must be 'nearest' or 'none', got '" +
                       policy + "'");
  }

  const auto elements = j.find("elements");
  if (elements == j.end() || !elements->is_array() || elements->empty())
    throw InputError(path + ": 'elements' must be a non-empty array");
  size_t index = 0;
  for (const auto& item : *elements) {
    ++index;
    const std::string where = path + ": element " + std::to_string(index);
    if (!item.is_object()) throw InputError(where + ": expected an object");

    ScoringElement element;
    const auto direction = item.find("direction");
    if (direction == item.end() || !direction->is_string())
      throw InputError(where + ": missing string field 'direction'");
    const std::string dir = direction->get<std::string>();
    if (dir == "asc")
      element.direction = Direction::Ascending;
    else if (dir == "desc")
      element.direction = Direction::Descending;
    else
      throw InputError(where + ": direction must be 'asc' or 'desc', got '" +
                       dir + "'");

    auto number = [&](const char* key, bool positive) {
      const auto it = item.find(key);
      if (it == item.end() || !it->is_number())
        throw InputError(where + ": missing numeric field '" +
                         std::string(key) + "'");
      const double value = it->get<double>();
      if (positive && !(value > 0.0))
        throw InputError(where + ": '" + std::string(key) +
                         "' must be positive");
      return value;
    };
    element.offset = number("offset", false);
    element.power = number("power", true);
    element.gain = number("gain", true);

    std::string name = "e" + std::to_string(index);
    if (const auto label = item.find("name"); label != item.end()) {
      if (!label->is_string())
        throw InputError(where + ": 'name' must be a string");
      name = label->get<std::string>();
    }
    named.set.elements.push_back(element);
    named.names.push_back(name);
  }
  return named;
}

CorrelationMatrix read_correlation_csv(const std::string& path,
                                       int n_samples) {
  const CsvTable table = read_csv(path);
  const int dim = static_cast<int>(table.header.size());
  if (dim < 1) throw InputError(path + ": empty header");
  if (table.rows.size() != static_cast<size_t>(dim))
    throw InputError(path + ": expected " + std::to_string(dim) +
                     " matrix rows to match the header, got " +
                     std::to_string(table.rows.size()));

  CorrelationMatrix matrix;
  matrix.dim = dim;
  matrix.n_samples = n_samples;
  matrix.names = table.header;
  matrix.entries.assign(static_cast<size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) {
    const auto& row = table.rows[static_cast<size_t>(i)];
    if (row.size() != static_cast<size_t>(dim))
      throw InputError(path + ": row " + std::to_string(i + 2) + " has " +
                       std::to_string(row.size()) + " fields, expected " +
                       std::to_string(dim));
    for (int j = 0; j < dim; ++j) {
      const auto value = parse_number(row[static_cast<size_t>(j)]);
      if (!value)
        throw InputError(path + ": row " + std::to_string(i + 2) +
                         ", column '" + table.header[static_cast<size_t>(j)] +
                         "': not a number: '" + row[static_cast<size_t>(j)] +
                         "'");
      matrix.at(i, j) = *value;
    }
  }
  return matrix;
}

std::vector<RankEntry> read_rank_entries(const std::string& path) {
  const CsvTable table = read_csv(path);
  int id_col = -1;
  int rank_col = -1;
  for (size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == "id") id_col = static_cast<int>(i);
    if (table.header[i] == "rank") rank_col = static_cast<int>(i);
  }
  if (id_col < 0 || rank_col < 0)
    throw InputError(path + ": needs 'id' and 'rank' columns, got '" +
                     join_header(table.header) + "'");

  std::vector<std::string> violations;
  std::vector<RankEntry> entries;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = "row " + std::to_string(r + 2);
    if (row.size() != table.header.size()) {
      violations.push_back(where + ": expected " +
                           std::to_string(table.header.size()) +
                           " fields, got " + std::to_string(row.size()));
      continue;
    }
    const std::string& id = row[static_cast<size_t>(id_col)];
    const auto rank = parse_int(row[static_cast<size_t>(rank_col)]);
    if (id.empty()) {
      violations.push_back(where + ", column 'id': empty id");
      continue;
    }
    if (!rank || *rank < 1) {
      violations.push_back(where + ", column 'rank': expected a rank >= 1, "
                           "got '" + row[static_cast<size_t>(rank_col)] + "'");
      continue;
    }
    entries.push_back({id, *rank});
  }
  if (!violations.empty()) fail_violations(path, violations);
  if (entries.empty()) throw InputError(path + ": no data rows");
  return entries;
}

MarksTable read_marks(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 2 || table.header[0] != "id")
    throw InputError(path + ": expected header 'id,<element>,...', got '" +
                     join_header(table.header) + "'");

  MarksTable marks;
  marks.element_names.assign(table.header.begin() + 1, table.header.end());
  std::vector<std::string> violations;
  std::set<std::string> seen;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = "row " + std::to_string(r + 2);
    if (row.size() != table.header.size()) {
      violations.push_back(where + ": expected " +
                           std::to_string(table.header.size()) +
                           " fields, got " + std::to_string(row.size()));
      continue;
    }
    if (row[0].empty()) {
      violations.push_back(where + ", column 'id': empty id");
      continue;
    }
    if (!seen.insert(row[0]).second)
      violations.push_back(where + ", column 'id': duplicate id '" + row[0] +
                           "'");
    std::vector<double> values;
    values.reserve(row.size() - 1);
    for (size_t c = 1; c < row.size(); ++c) {
      const auto value = parse_number(row[c]);
      if (!value) {
        violations.push_back(where + ", column '" + table.header[c] +
                             "': not a number: '" + row[c] + "'");
        continue;
      }
      values.push_back(*value);
    }
    marks.ids.push_back(row[0]);
    marks.marks.push_back(std::move(values));
  }
  if (!violations.empty()) fail_violations(path, violations);
  if (marks.ids.empty()) throw InputError(path + ": no data rows");
  return marks;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

namespace {

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

const char* mode_label(ScoreMode mode) {
  return mode == ScoreMode::Annual ? "annual" : "fixed";
}

}  // namespace

std::string score_table_csv(const ScoreTable& table, bool with_band) {
  std::string out = "id,alumni,award,hici,ns,pub,pcp,total,rank";
  if (with_band) out += ",band";
  out += '\n';
  for (const auto& row : table.rows) {
    out += csv_field(row.id);
    for (double s : row.indicator_scores) out += ',' + format_double(s);
    out += ',' + format_double(row.total);
    out += ',' + std::to_string(row.rank);
    if (with_band) out += ',' + csv_field(row.band);
    out += '\n';
  }
  return out;
}

std::string score_table_json(const ScoreTable& table, bool with_band) {
  ordered_json j;
  j["mode"] = mode_label(table.mode);
  j["rows"] = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json item;
    item["id"] = row.id;
    ordered_json scores;
    for (int i = 0; i < kAllIndicators; ++i)
      scores[kIndicatorNames[static_cast<size_t>(i)]] =
          row.indicator_scores[static_cast<size_t>(i)];
    item["scores"] = std::move(scores);
    item["total"] = row.total;
    item["rank"] = row.rank;
    if (with_band) item["band"] = row.band;
    j["rows"].push_back(std::move(item));
  }
  return dump_json(j);
}

std::string inversion_csv(const std::vector<InversionRow>& rows) {
  std::string out = "id";
  for (int i = 0; i < kAllIndicators; ++i) {
    const std::string& name = kIndicatorNames[static_cast<size_t>(i)];
    out += ',' + name + ',' + name + "_lo," + name + "_hi";
  }
  out += ",total\n";
  for (const auto& row : rows) {
    out += csv_field(row.id);
    for (int i = 0; i < kAllIndicators; ++i) {
      out += ',' + format_double(row.raw[static_cast<size_t>(i)]);
      out += ',' + format_double(row.lo[static_cast<size_t>(i)]);
      out += ',' + format_double(row.hi[static_cast<size_t>(i)]);
    }
    out += ',';
    if (row.total) out += format_double(*row.total);
    out += '\n';
  }
  return out;
}

std::string inversion_json(const std::vector<InversionRow>& rows,
                           const std::string& scale_label) {
  ordered_json j;
  j["scale"] = scale_label;
  j["rows"] = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json item;
    item["id"] = row.id;
    for (int i = 0; i < kAllIndicators; ++i) {
      ordered_json cell;
      cell["raw"] = row.raw[static_cast<size_t>(i)];
      cell["lo"] = row.lo[static_cast<size_t>(i)];
      cell["hi"] = row.hi[static_cast<size_t>(i)];
      item[kIndicatorNames[static_cast<size_t>(i)]] = std::move(cell);
    }
    if (row.total)
      item["total"] = *row.total;
    else
      item["total"] = nullptr;
    j["rows"].push_back(std::move(item));
  }
  return dump_json(j);
}

std::string ranked_csv(const std::vector<RankedRow>& rows,
                       const std::vector<ScoreColumn>& columns,
                       const std::vector<std::string>& column_names) {
  std::vector<std::map<std::string, double>> lookup(columns.size());
  for (size_t c = 0; c < columns.size(); ++c)
    for (const auto& [id, score] : columns[c].entries) lookup[c][id] = score;

  std::string out = "id";
  for (const auto& name : column_names) out += ',' + csv_field(name);
  out += ",aggregate,rank\n";
  for (const auto& row : rows) {
    out += csv_field(row.id);
    for (const auto& scores : lookup)
      out += ',' + format_double(scores.at(row.id));
    out += ',' + format_double(row.aggregate);
    out += ',' + std::to_string(row.rank);
    out += '\n';
  }
  return out;
}

std::string ranked_json(const std::vector<RankedRow>& rows,
                        const std::vector<ScoreColumn>& columns,
                        const std::vector<std::string>& column_names) {
  std::vector<std::map<std::string, double>> lookup(columns.size());
  for (size_t c = 0; c < columns.size(); ++c)
    for (const auto& [id, score] : columns[c].entries) lookup[c][id] = score;

  ordered_json j;
  j["columns"] = column_names;
  j["rows"] = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json item;
    item["id"] = row.id;
    ordered_json scores;
    for (size_t c = 0; c < column_names.size(); ++c)
      scores[column_names[c]] = lookup[c].at(row.id);
    item["scores"] = std::move(scores);
    item["aggregate"] = row.aggregate;
    item["rank"] = row.rank;
    j["rows"].push_back(std::move(item));
  }
  return dump_json(j);
}

std::string comparison_csv(const RankComparison& comparison) {
  std::string out = "id,rank_a,rank_b,shift\n";
  for (const auto& shift : comparison.shifts) {
    out += csv_field(shift.id);
    out += ',' + std::to_string(shift.rank_a);
    out += ',' + std::to_string(shift.rank_b);
    out += ',' + std::to_string(shift.shift);
    out += '\n';
  }
  return out;
}

std::string comparison_json(const RankComparison& comparison) {
  ordered_json j;
  if (comparison.scope)
    j["scope"] = {comparison.scope->first, comparison.scope->second};
  else
    j["scope"] = nullptr;
  j["scoped_count"] = comparison.scoped_count;
  j["mean_abs_shift"] = comparison.mean_abs_shift;
  j["max_abs_shift"] = comparison.max_abs_shift;
  j["shifts"] = ordered_json::array();
  for (const auto& shift : comparison.shifts) {
    ordered_json item;
    item["id"] = shift.id;
    item["rank_a"] = shift.rank_a;
    item["rank_b"] = shift.rank_b;
    item["shift"] = shift.shift;
    j["shifts"].push_back(std::move(item));
  }
  return dump_json(j);
}

std::string pca_csv(const PcaReport& report) {
  std::string out = "component,eigenvalue,pct,cum_pct\n";
  for (size_t i = 0; i < report.eigenvalues.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',' + format_double(report.eigenvalues[i]);
    out += ',' + format_double(report.pct_variance[i]);
    out += ',' + format_double(report.cumulative_pct[i]);
    out += '\n';
  }
  return out;
}

std::string pca_json(const PcaReport& report) {
  ordered_json j;
  j["names"] = report.names;
  j["eigenvalues"] = report.eigenvalues;
  j["pct_variance"] = report.pct_variance;
  j["cumulative_pct"] = report.cumulative_pct;
  j["loadings"] = report.loadings;
  j["communalities"] = report.communalities;
  j["score_coefficients"] = report.score_coefficients;
  j["ci_lower"] = report.ci_lower;
  j["ci_upper"] = report.ci_upper;
  j["sigma"] = report.sigma;
  j["se_factor"] = report.se_factor;
  j["kmo"] = report.kmo;  // NaN serializes as null (undefined)
  ordered_json bart;
  bart["chi2"] = report.bartlett_chi2;
  bart["df"] = report.bartlett_df;
  bart["p"] = report.bartlett_p;
  j["bartlett"] = std::move(bart);
  return dump_json(j);
}

std::string regressiveness_csv(const RegressivenessReport& report) {
  std::string out = "n,ds\n";
  for (const auto& point : report.points) {
    out += std::to_string(point.n);
    out += ',' + format_double(point.ds);
    out += '\n';
  }
  return out;
}

std::string regressiveness_json(const RegressivenessReport& report) {
  ordered_json j;
  j["dropped_top"] = report.dropped_top;
  j["rescaled"] = report.rescaled;
  if (report.series.regressiveness_index)
    j["regressiveness_index"] = *report.series.regressiveness_index;
  else
    j["regressiveness_index"] = nullptr;
  j["sorted_scores"] = report.series.sorted_scores;
  j["ds"] = report.series.ds;
  j["points"] = ordered_json::array();
  for (const auto& point : report.points) {
    ordered_json item;
    item["n"] = point.n;
    item["ds"] = point.ds;
    j["points"].push_back(std::move(item));
  }
  return dump_json(j);
}

std::string event_results_csv(const std::vector<EventResultRow>& rows,
                              const std::vector<std::string>& element_names) {
  std::string out = "id";
  for (const auto& name : element_names) out += ',' + csv_field(name);
  out += ",total,rank\n";
  for (const auto& row : rows) {
    out += csv_field(row.id);
    for (double s : row.element_scores) out += ',' + format_double(s);
    out += ',' + format_double(row.total);
    out += ',' + std::to_string(row.rank);
    out += '\n';
  }
  return out;
}

std::string event_results_json(const std::vector<EventResultRow>& rows,
                               const std::vector<std::string>& element_names) {
  ordered_json j;
  j["elements"] = element_names;
  j["rows"] = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json item;
    item["id"] = row.id;
    ordered_json scores;
    for (size_t i = 0; i < element_names.size(); ++i)
      scores[element_names[i]] = row.element_scores[i];
    item["scores"] = std::move(scores);
    item["total"] = row.total;
    item["rank"] = row.rank;
    j["rows"].push_back(std::move(item));
  }
  return dump_json(j);
}

}  // namespace rankdyn::io
