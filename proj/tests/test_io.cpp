#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "rankdyn/errors.hpp"
#include "rankdyn/io.hpp"

using namespace rankdyn;

namespace {

// Writes content to a unique temp file and removes it on scope exit.
class TempFile {
 public:
  TempFile(const std::string& suffix, const std::string& content) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("rankdyn-io-test-" + std::to_string(++counter) + suffix))
                .string();
    std::ofstream out(path_, std::ios::binary);
    out << content;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

io::CsvTable parse(const std::string& text) {
  std::istringstream in(text);
  return io::parse_csv(in, "test");
}

}  // namespace

TEST_CASE("format_double: deterministic 6-significant-digit output") {
  CHECK(io::format_double(3.14159265) == "3.14159");
  CHECK(io::format_double(100.0) == "100");
  CHECK(io::format_double(0.0000001) == "1e-07");
  CHECK(io::format_double(123456789.0) == "1.23457e+08");
  CHECK(io::format_double(0.0) == "0");
  CHECK(io::format_double(-0.0) == "0");
  CHECK(io::format_double(-2.5) == "-2.5");
  CHECK(io::format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("parse_csv: plain rows with and without a trailing newline") {
  const io::CsvTable table = parse("a,b,c\n1,2,3\n4,5,6");
  CHECK(table.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[1] == std::vector<std::string>{"4", "5", "6"});
}

TEST_CASE("parse_csv: quoted fields, escapes, and embedded delimiters") {
  const io::CsvTable table =
      parse("id,name\n1,\"Doe, Jane\"\n2,\"say \"\"hi\"\"\"\n3,\"two\nlines\"\n");
  REQUIRE(table.rows.size() == 3);
  CHECK(table.rows[0][1] == "Doe, Jane");
  CHECK(table.rows[1][1] == "say \"hi\"");
  CHECK(table.rows[2][1] == "two\nlines");
}

TEST_CASE("parse_csv: CRLF line endings are tolerated") {
  const io::CsvTable table = parse("x,y\r\n7,8\r\n");
  CHECK(table.header == std::vector<std::string>{"x", "y"});
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0] == std::vector<std::string>{"7", "8"});
}

TEST_CASE("parse_csv: empty fields survive") {
  const io::CsvTable table = parse("a,b,c\n1,,3\n,,\n");
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0][1] == "");
  CHECK(table.rows[1] == std::vector<std::string>{"", "", ""});
}

TEST_CASE("parse_csv: malformed quoting") {
  CHECK_THROWS_AS(parse("a\nval\"ue\n"), InputError);
  CHECK_THROWS_AS(parse("a\n\"unterminated\n"), InputError);
  CHECK_THROWS_AS(parse(""), InputError);
}

TEST_CASE("parse_dataset: well-formed rows") {
  const std::string csv =
      "id,name,class,alumni,award,hici,ns,pub,fte\n"
      "u1,\"Uni One\",standard,10,2.5,3,4,5,850\n"
      "u2,Uni Two,socsci,1,0,0,7,2,\n"
      "u3,Uni Three,standard,0,0,0,0,9,120.5\n";
  std::istringstream in(csv);
  const std::vector<InstitutionRecord> records = io::parse_dataset(in, "test");
  REQUIRE(records.size() == 3);
  CHECK(records[0].id == "u1");
  CHECK(records[0].name == "Uni One");
  CHECK(records[0].cls == InstitutionClass::Standard);
  CHECK(records[0].raw[kAlumni] == 10.0);
  CHECK(records[0].raw[kAward] == 2.5);
  REQUIRE(records[0].fte.has_value());
  CHECK(*records[0].fte == 850.0);
  CHECK(records[1].cls == InstitutionClass::SocialScience);
  CHECK(!records[1].fte.has_value());
  CHECK(records[2].raw[kPub] == 9.0);
}

TEST_CASE("parse_dataset: violations carry row and column context") {
  const std::string csv =
      "id,name,class,alumni,award,hici,ns,pub,fte\n"
      "u1,One,standard,1,1,1,1,1,100\n"
      "u2,Two,standard,1,1,1,1,-3,100\n";
  std::istringstream in(csv);
  CHECK_THROWS_WITH_AS(io::parse_dataset(in, "test"),
                       doctest::Contains("row 3"), InputError);
  std::istringstream again(csv);
  CHECK_THROWS_WITH_AS(io::parse_dataset(again, "test"),
                       doctest::Contains("'pub'"), InputError);
}

TEST_CASE("parse_dataset: multiple violations are aggregated") {
  const std::string csv =
      "id,name,class,alumni,award,hici,ns,pub,fte\n"
      "u1,One,imperial,1,1,1,1,1,100\n"
      "u1,Dup,standard,1,abc,1,1,1,0\n";
  std::istringstream in(csv);
  try {
    io::parse_dataset(in, "test");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    const std::string message = e.what();
    CHECK(message.find("'class'") != std::string::npos);
    CHECK(message.find("duplicate id") != std::string::npos);
    CHECK(message.find("'award'") != std::string::npos);
    CHECK(message.find("'fte'") != std::string::npos);
  }
}

TEST_CASE("parse_dataset: header must match exactly") {
  std::istringstream in("id,name,kind,alumni,award,hici,ns,pub,fte\n");
  CHECK_THROWS_AS(io::parse_dataset(in, "test"), InputError);
  std::istringstream empty("id,name,class,alumni,award,hici,ns,pub,fte\n");
  CHECK_THROWS_AS(io::parse_dataset(empty, "test"), InputError);
}

TEST_CASE("read_published: empty cells mean unpublished") {
  const TempFile file(".csv",
                      "id,alumni,award,hici,ns,pub,pcp,total\n"
                      "u1,89.4,,50,45.2,70,65.1,72.4\n"
                      "u2,,,,,,,\n");
  const std::vector<io::PublishedRow> rows = io::read_published(file.path());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].id == "u1");
  REQUIRE(rows[0].scores.score[kAlumni].has_value());
  CHECK(*rows[0].scores.score[kAlumni] == 89.4);
  CHECK(!rows[0].scores.score[kAward].has_value());
  REQUIRE(rows[0].scores.total.has_value());
  CHECK(*rows[0].scores.total == 72.4);
  for (int i = 0; i < kAllIndicators; ++i)
    CHECK(!rows[1].scores.score[static_cast<size_t>(i)].has_value());
}

TEST_CASE("read_published: negative scores are rejected") {
  const TempFile file(".csv",
                      "id,alumni,award,hici,ns,pub,pcp,total\n"
                      "u1,-4,,,,,,\n");
  CHECK_THROWS_WITH_AS(io::read_published(file.path()),
                       doctest::Contains("'alumni'"), InputError);
}

TEST_CASE("load_gain_set: full object") {
  const TempFile file(".json", R"({
    "provenance": "fixed",
    "gains": [17.875, 16.975, 7.225, 4.775, 0.850, 9.325],
    "dummy_fte": 890,
    "k_param": 1.075
  })");
  const GainSet gains = io::load_gain_set(file.path());
  CHECK(gains.provenance == GainProvenance::Fixed);
  CHECK(gains.gains[kAlumni] == 17.875);
  CHECK(gains.gains[kPcp] == 9.325);
  CHECK(gains.dummy_fte == 890.0);
  REQUIRE(gains.k_param.has_value());
  CHECK(*gains.k_param == 1.075);
}

TEST_CASE("load_gain_set: defaults and annual provenance") {
  const TempFile file(".json", R"({
    "provenance": "annual",
    "gains": [1, 2, 3, 4, 5, 6],
    "k_param": null
  })");
  const GainSet gains = io::load_gain_set(file.path());
  CHECK(gains.provenance == GainProvenance::AnnualBestPerformer);
  CHECK(gains.dummy_fte == kDefaultDummyFte);
  CHECK(!gains.k_param.has_value());
}

TEST_CASE("load_gain_set: rejects malformed configurations") {
  const TempFile five(".json",
                      R"({"provenance":"fixed","gains":[1,2,3,4,5]})");
  CHECK_THROWS_AS(io::load_gain_set(five.path()), InputError);
  const TempFile missing(".json", R"({"provenance":"fixed"})");
  CHECK_THROWS_AS(io::load_gain_set(missing.path()), InputError);
  const TempFile prov(".json",
                      R"({"provenance":"seasonal","gains":[1,2,3,4,5,6]})");
  CHECK_THROWS_AS(io::load_gain_set(prov.path()), InputError);
  const TempFile zero(".json",
                      R"({"provenance":"fixed","gains":[0,2,3,4,5,6]})");
  CHECK_THROWS_AS(io::load_gain_set(zero.path()), InputError);
  const TempFile bad_json(".json", "{not json");
  CHECK_THROWS_AS(io::load_gain_set(bad_json.path()), InputError);
  CHECK_THROWS_AS(io::load_gain_set("/nonexistent/gains.json"), InputError);
}

TEST_CASE("load_event_set: named elements with a rounding policy") {
  const TempFile file(".json", R"({
    "rounding": "nearest",
    "elements": [
      {"name": "sprint", "direction": "desc", "offset": 18.0, "power": 1.81, "gain": 25.4347},
      {"name": "shot", "direction": "asc", "offset": 1.5, "power": 1.05, "gain": 51.39}
    ]
  })");
  const io::NamedEventSet named = io::load_event_set(file.path());
  CHECK(named.set.rounding == Rounding::NearestInteger);
  REQUIRE(named.set.elements.size() == 2);
  CHECK(named.set.elements[0].direction == Direction::Descending);
  CHECK(named.set.elements[0].offset == 18.0);
  CHECK(named.set.elements[1].gain == 51.39);
  CHECK(named.names == std::vector<std::string>{"sprint", "shot"});
}

TEST_CASE("load_event_set: default names and rounding") {
  const TempFile file(".json", R"({
    "elements": [
      {"direction": "asc", "offset": 0, "power": 1, "gain": 2},
      {"direction": "asc", "offset": 0, "power": 1, "gain": 3}
    ]
  })");
  const io::NamedEventSet named = io::load_event_set(file.path());
  CHECK(named.set.rounding == Rounding::None);
  CHECK(named.names == std::vector<std::string>{"e1", "e2"});
}

TEST_CASE("load_event_set: rejects malformed elements") {
  const TempFile direction(".json", R"({
    "elements": [{"direction": "up", "offset": 0, "power": 1, "gain": 2}]
  })");
  CHECK_THROWS_AS(io::load_event_set(direction.path()), InputError);
  const TempFile gain(".json", R"({
    "elements": [{"direction": "asc", "offset": 0, "power": 1}]
  })");
  CHECK_THROWS_AS(io::load_event_set(gain.path()), InputError);
  const TempFile none(".json", R"({"elements": []})");
  CHECK_THROWS_AS(io::load_event_set(none.path()), InputError);
  const TempFile rounding(".json", R"({
    "rounding": "ceil",
    "elements": [{"direction": "asc", "offset": 0, "power": 1, "gain": 2}]
  })");
  CHECK_THROWS_AS(io::load_event_set(rounding.path()), InputError);
}

TEST_CASE("read_correlation_csv: square matrix with named columns") {
  const TempFile file(".csv", "alumni,award\n1,0.873\n0.873,1\n");
  const CorrelationMatrix matrix = io::read_correlation_csv(file.path(), 500);
  CHECK(matrix.dim == 2);
  CHECK(matrix.n_samples == 500);
  CHECK(matrix.names == std::vector<std::string>{"alumni", "award"});
  CHECK(matrix.at(0, 1) == 0.873);
  CHECK(matrix.at(1, 1) == 1.0);
}

TEST_CASE("read_correlation_csv: shape and number errors") {
  const TempFile shape(".csv", "a,b\n1,0.5\n");
  CHECK_THROWS_AS(io::read_correlation_csv(shape.path(), 10), InputError);
  const TempFile text(".csv", "a,b\n1,x\n0.5,1\n");
  CHECK_THROWS_AS(io::read_correlation_csv(text.path(), 10), InputError);
}

TEST_CASE("read_rank_entries: accepts a score table and ignores extras") {
  const TempFile file(".csv",
                      "id,alumni,total,rank\n"
                      "u1,10,45.2,1\n"
                      "u2,5,30.1,2\n");
  const std::vector<RankEntry> entries = io::read_rank_entries(file.path());
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].id == "u1");
  CHECK(entries[0].rank == 1);
  CHECK(entries[1].rank == 2);
}

TEST_CASE("read_rank_entries: missing columns and bad ranks") {
  const TempFile missing(".csv", "id,total\nu1,45.2\n");
  CHECK_THROWS_AS(io::read_rank_entries(missing.path()), InputError);
  const TempFile zero(".csv", "id,rank\nu1,0\n");
  CHECK_THROWS_AS(io::read_rank_entries(zero.path()), InputError);
  const TempFile word(".csv", "id,rank\nu1,first\n");
  CHECK_THROWS_AS(io::read_rank_entries(word.path()), InputError);
}

TEST_CASE("read_marks: competitor rows keyed by the element header") {
  const TempFile file(".csv",
                      "id,sprint,shot\n"
                      "ath-1,10.5,16.2\n"
                      "ath-2,11.0,14.8\n");
  const io::MarksTable marks = io::read_marks(file.path());
  CHECK(marks.element_names == std::vector<std::string>{"sprint", "shot"});
  REQUIRE(marks.ids.size() == 2);
  CHECK(marks.ids[0] == "ath-1");
  CHECK(marks.marks[0] == std::vector<double>{10.5, 16.2});
}

TEST_CASE("read_marks: structural errors") {
  const TempFile ragged(".csv", "id,sprint,shot\nath-1,10.5\n");
  CHECK_THROWS_AS(io::read_marks(ragged.path()), InputError);
  const TempFile dup(".csv", "id,sprint\nath-1,10\nath-1,11\n");
  CHECK_THROWS_AS(io::read_marks(dup.path()), InputError);
  const TempFile header(".csv", "athlete,sprint\nath-1,10\n");
  CHECK_THROWS_AS(io::read_marks(header.path()), InputError);
}

TEST_CASE("write_atomic: round trip without residue") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "rankdyn-atomic-test.txt")
          .string();
  io::write_atomic(path, "line one\nline two\n");
  std::ifstream in(path, std::ios::binary);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == "line one\nline two\n");
  CHECK(!std::filesystem::exists(path + ".tmp"));
  // Overwrite must fully replace the old content.
  io::write_atomic(path, "short\n");
  std::ifstream again(path, std::ios::binary);
  std::stringstream replaced;
  replaced << again.rdbuf();
  CHECK(replaced.str() == "short\n");
  std::filesystem::remove(path);
}

TEST_CASE("score_table_csv: golden output") {
  ScoreTable table;
  table.mode = ScoreMode::Fixed;
  ScoreRow row;
  row.id = "top,uni";  // forces quoting
  row.indicator_scores = {89.375, 50.0, 0.0, 0.125, 62.5, 100.0};
  row.total = 45.5;
  row.rank = 1;
  row.band = "";
  table.rows.push_back(row);
  ScoreRow second = row;
  second.id = "runner-up";
  second.total = 30.25;
  second.rank = 2;
  second.band = "101-150";
  table.rows.push_back(second);

  CHECK(io::score_table_csv(table, false) ==
        "id,alumni,award,hici,ns,pub,pcp,total,rank\n"
        "\"top,uni\",89.375,50,0,0.125,62.5,100,45.5,1\n"
        "runner-up,89.375,50,0,0.125,62.5,100,30.25,2\n");
  CHECK(io::score_table_csv(table, true) ==
        "id,alumni,award,hici,ns,pub,pcp,total,rank,band\n"
        "\"top,uni\",89.375,50,0,0.125,62.5,100,45.5,1,\n"
        "runner-up,89.375,50,0,0.125,62.5,100,30.25,2,101-150\n");
}

TEST_CASE("score_table_json: parse-back preserves full precision") {
  ScoreTable table;
  table.mode = ScoreMode::Annual;
  ScoreRow row;
  row.id = "u1";
  row.indicator_scores = {79.05694150420949, 0, 0, 0, 0, 100.0};
  row.total = 62.64736427017501;
  row.rank = 1;
  table.rows.push_back(row);

  const nlohmann::json parsed =
      nlohmann::json::parse(io::score_table_json(table, false));
  CHECK(parsed["mode"] == "annual");
  REQUIRE(parsed["rows"].size() == 1);
  CHECK(parsed["rows"][0]["id"] == "u1");
  CHECK(parsed["rows"][0]["scores"]["alumni"].get<double>() ==
        79.05694150420949);
  CHECK(parsed["rows"][0]["scores"]["pcp"].get<double>() == 100.0);
  CHECK(parsed["rows"][0]["total"].get<double>() == 62.64736427017501);
  CHECK(parsed["rows"][0]["rank"] == 1);
  CHECK(!parsed["rows"][0].contains("band"));
}

TEST_CASE("inversion serializers: bounds columns and null totals") {
  io::InversionRow row;
  row.id = "u1";
  for (int i = 0; i < kAllIndicators; ++i) {
    row.raw[static_cast<size_t>(i)] = 2500.0;
    row.lo[static_cast<size_t>(i)] = 2475.0;
    row.hi[static_cast<size_t>(i)] = 2525.0;
  }
  row.total = std::nullopt;

  const std::string csv = io::inversion_csv({row});
  CHECK(csv.find("id,alumni,alumni_lo,alumni_hi,") == 0);
  CHECK(csv.find("u1,2500,2475,2525,") != std::string::npos);
  CHECK(csv.back() == '\n');
  // The missing total leaves an empty final cell.
  CHECK(csv.find(",\n") != std::string::npos);

  const nlohmann::json parsed =
      nlohmann::json::parse(io::inversion_json({row}, "scaled"));
  CHECK(parsed["scale"] == "scaled");
  CHECK(parsed["rows"][0]["alumni"]["raw"].get<double>() == 2500.0);
  CHECK(parsed["rows"][0]["total"].is_null());
}

TEST_CASE("ranked and comparison serializers") {
  ScoreColumn a, b;
  a.entries = {{"x", 10.0}, {"y", 5.0}};
  b.entries = {{"x", 2.5}, {"y", 7.5}};
  const std::vector<RankedRow> rows = aggregate_rank_driven({a, b}, {0.5, 0.5});
  const std::string csv = io::ranked_csv(rows, {a, b}, {"alumni", "award"});
  CHECK(csv ==
        "id,alumni,award,aggregate,rank\n"
        "x,10,2.5,6.25,1\n"
        "y,5,7.5,6.25,2\n");

  const nlohmann::json parsed = nlohmann::json::parse(
      io::ranked_json(rows, {a, b}, {"alumni", "award"}));
  CHECK(parsed["columns"].size() == 2);
  CHECK(parsed["rows"][0]["scores"]["alumni"].get<double>() == 10.0);

  const RankComparison cmp = compare_rankings(
      {{"x", 1}, {"y", 2}}, {{"x", 2}, {"y", 1}});
  CHECK(io::comparison_csv(cmp) ==
        "id,rank_a,rank_b,shift\n"
        "x,1,2,-1\n"
        "y,2,1,1\n");
  const nlohmann::json cj = nlohmann::json::parse(io::comparison_json(cmp));
  CHECK(cj["scope"].is_null());
  CHECK(cj["scoped_count"] == 2);
  CHECK(cj["mean_abs_shift"].get<double>() == 1.0);
  CHECK(cj["shifts"][0]["shift"] == -1);
}

TEST_CASE("pca serializers: NaN diagnostics become null") {
  CorrelationMatrix m;
  m.dim = 2;
  m.entries = {1.0, 0.5, 0.5, 1.0};
  m.n_samples = 0;  // no sample size: sigma and CI are undefined
  const PcaReport report = pca_from_correlation(m);

  const std::string csv = io::pca_csv(report);
  CHECK(csv.find("component,eigenvalue,pct,cum_pct\n") == 0);
  CHECK(csv.find("1,1.5,75,75\n") != std::string::npos);
  CHECK(csv.find("2,0.5,25,100\n") != std::string::npos);

  const nlohmann::json parsed = nlohmann::json::parse(io::pca_json(report));
  CHECK(parsed["kmo"].is_null());
  CHECK(parsed["sigma"].is_null());
  CHECK(parsed["bartlett"]["p"].is_null());
  CHECK(parsed["eigenvalues"][0].get<double>() ==
        doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("regressiveness serializers") {
  const RegressivenessReport report =
      regressiveness_report({100.0, 70.0, 50.0, 35.0, 25.0}, false, false);
  CHECK(io::regressiveness_csv(report) ==
        "n,ds\n"
        "1,30\n"
        "2,20\n"
        "3,15\n"
        "4,10\n");
  const nlohmann::json parsed =
      nlohmann::json::parse(io::regressiveness_json(report));
  CHECK(parsed["regressiveness_index"].get<double>() == 1.0);
  CHECK(parsed["dropped_top"] == false);
  CHECK(parsed["ds"].size() == 4);
  CHECK(parsed["points"][0]["ds"].get<double>() == 30.0);
}

TEST_CASE("event result serializers") {
  io::EventResultRow row;
  row.id = "ath-1";
  row.element_scores = {812.0, 915.0};
  row.total = 1727.0;
  row.rank = 1;
  CHECK(io::event_results_csv({row}, {"sprint", "shot"}) ==
        "id,sprint,shot,total,rank\n"
        "ath-1,812,915,1727,1\n");
  const nlohmann::json parsed = nlohmann::json::parse(
      io::event_results_json({row}, {"sprint", "shot"}));
  CHECK(parsed["elements"][0] == "sprint");
  CHECK(parsed["rows"][0]["scores"]["shot"].get<double>() == 915.0);
  CHECK(parsed["rows"][0]["total"].get<double>() == 1727.0);
}
