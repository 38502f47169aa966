#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "predterms/dataset.hpp"
#include "predterms/errors.hpp"

using namespace predterms;

static Dataset from_text(const std::string& text, CsvOptions opts = {}) {
  std::istringstream in(text);
  return read_csv(in, opts);
}

TEST_CASE("kind inference") {
  auto kind = [](std::vector<std::string> toks) {
    std::vector<std::uint8_t> miss;
    for (const auto& t : toks) miss.push_back(t.empty() || t == "NA" ? 1 : 0);
    return infer_column_kind(toks, miss);
  };
  CHECK(kind({"1", "2.5", "-3e2", "+4"}) == ColumnKind::Numeric);
  CHECK(kind({"1", "NA", "2"}) == ColumnKind::Numeric);
  CHECK(kind({"TRUE", "FALSE", "true", "false"}) == ColumnKind::Logical);
  CHECK(kind({"TRUE", "NA"}) == ColumnKind::Logical);
  CHECK(kind({"y", "n", "y"}) == ColumnKind::Character);
  CHECK(kind({"1", "x"}) == ColumnKind::Character);
  CHECK(kind({"NA", "", "NA"}) == ColumnKind::Character);  // nothing to go on
  CHECK(kind({"Inf", "1"}) == ColumnKind::Character);      // non-finite is not data
  CHECK(kind({"nan", "1"}) == ColumnKind::Character);
  CHECK(kind({"1", "TRUE"}) == ColumnKind::Character);
  CHECK(kind({"0x10"}) == ColumnKind::Character);
  CHECK(kind({" 1"}) == ColumnKind::Character);  // embedded space is not numeric
}

TEST_CASE("read_csv: basic table") {
  Dataset ds = from_text("a,b,c\n1,TRUE,red\n2,FALSE,blue\n3,true,red\n");
  CHECK(ds.n_rows() == 3);
  CHECK(ds.names() == std::vector<std::string>{"a", "b", "c"});
  CHECK(ds.col("a").kind == ColumnKind::Numeric);
  CHECK(ds.col("a").numeric == std::vector<double>{1, 2, 3});
  CHECK(ds.col("b").kind == ColumnKind::Logical);
  CHECK(ds.col("b").text == std::vector<std::string>{"TRUE", "FALSE", "TRUE"});
  CHECK(ds.col("c").kind == ColumnKind::Character);
  CHECK_THROWS_AS(ds.col("nosuch"), DataError);
}

TEST_CASE("read_csv: quoting, doubled quotes, CRLF") {
  Dataset ds = from_text("name,x\r\n\"Smith, John\",1\r\n\"say \"\"hi\"\"\",2\r\n");
  CHECK(ds.n_rows() == 2);
  CHECK(ds.col("name").text[0] == "Smith, John");
  CHECK(ds.col("name").text[1] == "say \"hi\"");
  CHECK(ds.col("x").numeric[1] == 2.0);
}

TEST_CASE("read_csv: quoted field may span lines") {
  Dataset ds = from_text("a,b\n\"line1\nline2\",5\n");
  CHECK(ds.n_rows() == 1);
  CHECK(ds.col("a").text[0] == "line1\nline2");
}

TEST_CASE("read_csv: missing tokens") {
  Dataset ds = from_text("x,s\n1,\n,foo\nNA,NA\n4,bar\n");
  const Column& x = ds.col("x");
  CHECK(x.kind == ColumnKind::Numeric);
  CHECK(x.is_missing(1));
  CHECK(x.is_missing(2));
  CHECK(!x.is_missing(3));
  CHECK(std::isnan(x.numeric[1]));
  const Column& s = ds.col("s");
  CHECK(s.is_missing(0));
  CHECK(s.is_missing(2));
  CHECK(s.levels() == std::vector<std::string>{"bar", "foo"});
}

TEST_CASE("read_csv: alternate delimiter") {
  CsvOptions semi;
  semi.delimiter = ';';
  Dataset ds = from_text("a;b\n1;x\n2;y\n", semi);
  CHECK(ds.n_rows() == 2);
  CHECK(ds.col("b").text == std::vector<std::string>{"x", "y"});
}

TEST_CASE("read_csv: no header") {
  CsvOptions opts;
  opts.header = false;
  Dataset ds = from_text("1,a\n2,b\n", opts);
  CHECK(ds.names() == std::vector<std::string>{"V1", "V2"});
  CHECK(ds.n_rows() == 2);
}

TEST_CASE("read_csv: errors") {
  CHECK_THROWS_WITH_AS(from_text(""), "empty CSV input", DataError);
  CHECK_THROWS_AS(from_text("a,b\n1\n"), DataError);           // ragged
  CHECK_THROWS_AS(from_text("a,a\n1,2\n"), DataError);         // duplicate header
  CHECK_THROWS_AS(from_text("a,b\n\"oops,1\n"), DataError);    // unterminated quote
  CHECK_THROWS_AS(read_csv_file("/nonexistent/p.csv"), DataError);
}

TEST_CASE("read_csv: header only gives zero rows") {
  Dataset ds = from_text("a,b\n");
  CHECK(ds.n_rows() == 0);
  CHECK(ds.names().size() == 2);
}

TEST_CASE("read_csv: missing trailing newline") {
  Dataset ds = from_text("a\n1\n2");
  CHECK(ds.n_rows() == 2);
  CHECK(ds.col("a").numeric[1] == 2.0);
}

TEST_CASE("read_csv: id column moves into row_ids") {
  CsvOptions opts;
  opts.id_column = "id";
  Dataset ds = from_text("id,x\nr1,1\nr2,2\n", opts);
  CHECK(ds.row_ids == std::vector<std::string>{"r1", "r2"});
  CHECK(!ds.has("id"));
  CHECK(ds.names() == std::vector<std::string>{"x"});
  opts.id_column = "nosuch";
  CHECK_THROWS_AS(from_text("id,x\nr1,1\n", opts), DataError);
}

TEST_CASE("force_categorical keeps tokens as levels") {
  CsvOptions opts;
  opts.force_categorical = {"g"};
  Dataset ds = from_text("g,x\n2,0.1\n1,0.2\n2,0.3\n", opts);
  const Column& g = ds.col("g");
  CHECK(g.kind == ColumnKind::Categorical);
  CHECK(g.numeric.empty());
  CHECK(g.levels() == std::vector<std::string>{"1", "2"});
  CsvOptions bad;
  bad.force_categorical = {"zz"};
  CHECK_THROWS_AS(from_text("a\n1\n", bad), DataError);
}

TEST_CASE("levels are sorted bytewise; logical is FALSE,TRUE") {
  Dataset ds = from_text("d,l\nFront,TRUE\n4WD,FALSE\nRear,TRUE\n4WD,FALSE\n");
  CHECK(ds.col("d").levels() == std::vector<std::string>{"4WD", "Front", "Rear"});
  CHECK(ds.col("l").levels() == std::vector<std::string>{"FALSE", "TRUE"});
}

TEST_CASE("complete_cases drops rows with holes in the needed columns") {
  Dataset ds = from_text("x,y,z\n1,10,\n2,NA,b\n3,30,c\nNA,40,d\n");
  auto [sub, dropped] = complete_cases(ds, {"x", "y"});
  CHECK(dropped == 2);
  CHECK(sub.n_rows() == 2);
  CHECK(sub.col("x").numeric == std::vector<double>{1, 3});
  // z keeps its own missingness for rows that survived.
  CHECK(sub.col("z").is_missing(0));
  CHECK(sub.col("z").text[1] == "c");

  auto [again, dropped2] = complete_cases(sub, {"x", "y"});
  CHECK(dropped2 == 0);
  CHECK(again.n_rows() == 2);

  auto [strict, dropped3] = complete_cases(ds, {"x", "y", "z"});
  CHECK(strict.n_rows() == 1);
  CHECK(dropped3 == 3);
  Dataset all_gone = from_text("q\nNA\nNA\n");
  CHECK_THROWS_AS(complete_cases(all_gone, {"q"}), DataError);
}

TEST_CASE("complete_cases carries row ids along") {
  CsvOptions opts;
  opts.id_column = "id";
  Dataset ds = from_text("id,x\na,1\nb,NA\nc,3\n", opts);
  auto [sub, dropped] = complete_cases(ds, {"x"});
  CHECK(dropped == 1);
  CHECK(sub.row_ids == std::vector<std::string>{"a", "c"});
}

TEST_CASE("add_column validates shape and name") {
  Dataset ds;
  Column c;
  c.kind = ColumnKind::Numeric;
  c.text = {"1", "2"};
  c.numeric = {1, 2};
  c.missing = {0, 0};
  ds.add_column("x", c);
  CHECK(ds.n_rows() == 2);
  CHECK_THROWS_AS(ds.add_column("x", c), DataError);
  Column shorter;
  shorter.text = {"1"};
  shorter.missing = {0};
  CHECK_THROWS_AS(ds.add_column("y", shorter), DataError);
}
