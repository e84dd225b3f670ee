#include <doctest.h>

#include "gogc/datastore.hpp"
#include "gogc/error.hpp"
#include "support.hpp"

using namespace gogc;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IllegalLink;
}

}  // namespace

TEST_SUITE("datastore") {

TEST_CASE("csv with a header infers number and text columns") {
  DataTable t = load_csv("a,b\n1,x\n2,y", "t");
  REQUIRE(t.column_count() == 2);
  CHECK(t.columns()[0] == Column{"a", ColumnType::Number});
  CHECK(t.columns()[1] == Column{"b", ColumnType::Text});
  CHECK(t.row_count() == 2);
  CHECK(t.at(1, 0) == number_value(2));
  CHECK(t.at(1, 1) == text_value("y"));
}

TEST_CASE("mixed content falls back to text") {
  DataTable t = load_csv("a\n1\nfoo", "t");
  CHECK(t.columns()[0].type == ColumnType::Text);
  CHECK(t.at(0, 0) == text_value("1"));
}

TEST_CASE("quoted cells keep commas, quotes and line breaks") {
  DataTable t = load_csv("name,n\n\"Volvo 145e (sw), x\",1\n\"say \"\"hi\"\"\",2\n\"two\nlines\",3\n", "t");
  REQUIRE(t.row_count() == 3);
  CHECK(t.at(0, 0) == text_value("Volvo 145e (sw), x"));
  CHECK(t.at(1, 0) == text_value("say \"hi\""));
  CHECK(t.at(2, 0) == text_value("two\nlines"));
}

TEST_CASE("empty cells are null and do not change the column type") {
  DataTable t = load_csv("a,b\n1,\n,2\n3,4", "t");
  CHECK(t.columns()[0].type == ColumnType::Number);
  CHECK(is_null(t.at(1, 0)));
  CHECK(is_null(t.at(0, 1)));
}

TEST_CASE("boolean columns") {
  DataTable t = load_csv("f\ntrue\nfalse", "t");
  CHECK(t.columns()[0].type == ColumnType::Boolean);
  CHECK(t.at(0, 0) == bool_value(true));
}

TEST_CASE("non-finite numbers become null with a warning") {
  Warnings w;
  DataTable t = load_csv("a\n1\nnan\ninf", "t", TextFormat::Csv, &w);
  CHECK(t.columns()[0].type == ColumnType::Number);
  CHECK(is_null(t.at(1, 0)));
  CHECK(is_null(t.at(2, 0)));
  CHECK(w.size() == 2);
}

TEST_CASE("tsv") {
  DataTable t = load_csv("a\tb\n1\tx y", "t", TextFormat::Tsv);
  CHECK(t.at(0, 1) == text_value("x y"));
}

TEST_CASE("malformed csv") {
  CHECK(code_of([] { load_csv("a,b\n\"1,2\n", "t"); }) == ErrorCode::MalformedCsv);
  CHECK(code_of([] { load_csv("a,b\n1,2,3\n", "t"); }) == ErrorCode::MalformedCsv);
  CHECK(code_of([] { load_csv("", "t"); }) == ErrorCode::MalformedCsv);
  CHECK(code_of([] { load_csv("a,a\n1,2\n", "t"); }) == ErrorCode::DuplicateField);
}

TEST_CASE("json rows take the union of keys in first-seen order") {
  DataTable t = load_json(R"([{"a":1},{"a":2,"b":"x"}])", "t");
  REQUIRE(t.column_count() == 2);
  CHECK(t.columns()[0] == Column{"a", ColumnType::Number});
  CHECK(t.columns()[1] == Column{"b", ColumnType::Text});
  CHECK(is_null(t.at(0, 1)));
}

TEST_CASE("json edge cases") {
  DataTable empty = load_json("[]", "t");
  CHECK(empty.column_count() == 0);
  CHECK(empty.row_count() == 0);
  CHECK(code_of([] { load_json(R"({"a":1})", "t"); }) == ErrorCode::NonArrayRoot);
  CHECK(code_of([] { load_json(R"([{"a":{"b":1}}])", "t"); }) == ErrorCode::NestedObjectValue);
  CHECK(code_of([] { load_json(R"([{"a":[1]}])", "t"); }) == ErrorCode::NestedObjectValue);
  CHECK(code_of([] { load_json("[{", "t"); }) == ErrorCode::MalformedJson);
}

TEST_CASE("the bundled fixture loads under the dataset name") {
  DataRegistry reg;
  const auto text = testing::read_file(testing::gallery_dir() / "data" / "crimea-parallel.csv");
  reg.create("crimea", load_csv(text, "crimea"));
  REQUIRE(reg.contains("crimea"));
  const DataTable& t = reg.read("crimea");
  CHECK(t.field_names().front() == "name");
  CHECK(t.column("economy-mpg").type == ColumnType::Number);
  CHECK(t.column("name").type == ColumnType::Text);
}

TEST_CASE("registry crud") {
  DataRegistry reg;
  DataTable t = load_csv("a\n1", "t1");
  reg.create("t1", t);
  CHECK(reg.read("t1") == t);
  CHECK(code_of([&] { reg.create("t1", t); }) == ErrorCode::DuplicateDataset);
  reg.update("t1", load_csv("a\n2", "t1"));
  CHECK(reg.read("t1").at(0, 0) == number_value(2));
  reg.remove("t1");
  CHECK(code_of([&] { reg.read("t1"); }) == ErrorCode::UnknownDataset);
  CHECK(code_of([&] { reg.remove("t1"); }) == ErrorCode::UnknownDataset);

  CHECK_FALSE(reg.apply(CrudOp::Create, "t2", t).has_value());
  CHECK(reg.apply(CrudOp::Read, "t2") == t.renamed("t2"));
  reg.apply(CrudOp::Delete, "t2");
  CHECK(reg.size() == 0);
}

TEST_CASE("column extent") {
  CHECK(column_extent(load_csv("a\n3\n1\n2", "t"), "a") == std::pair{1.0, 3.0});
  CHECK(column_extent(load_csv("a\n5", "t"), "a") == std::pair{5.0, 5.0});
  CHECK(column_extent(load_csv("a\n1\n\n4", "t"), "a") == std::pair{1.0, 4.0});
  CHECK(code_of([] { column_extent(load_csv("a,b\n,1", "t"), "a"); }) == ErrorCode::AllNull);
  CHECK(code_of([] { column_extent(load_csv("a\nx", "t"), "a"); }) == ErrorCode::NonNumericField);
  CHECK(code_of([] { column_extent(load_csv("a\n1", "t"), "z"); }) == ErrorCode::UnknownField);
}

TEST_CASE("property: csv round trip of random numeric tables") {
  testing::Rng rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t cols = 1 + testing::pick(rng, 4);
    const std::size_t rows = testing::pick(rng, 8);
    std::string csv;
    std::vector<std::vector<std::optional<double>>> cells(rows, std::vector<std::optional<double>>(cols));
    for (std::size_t c = 0; c < cols; ++c) csv += (c ? "," : "") + std::string("f") + std::to_string(c);
    csv += "\n";
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (c) csv += ",";
        if (testing::pick(rng, 5) == 0) {
          if (cols == 1) csv += "\"\"";  // a bare empty line would be a blank line
          continue;
        }
        // Integers and halves print exactly.
        const double v = std::round(testing::uniform(rng, -1000, 1000)) / 2.0;
        cells[r][c] = v;
        csv += format_label(v);
      }
      csv += "\n";
    }
    DataTable t = load_csv(csv, "t");
    REQUIRE(t.row_count() == rows);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (cells[r][c]) {
          CHECK(t.at(r, c) == number_value(*cells[r][c]));
        } else {
          CHECK(is_null(t.at(r, c)));
        }
      }
    }
  }
}

}  // TEST_SUITE
