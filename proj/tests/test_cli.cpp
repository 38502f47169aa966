#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include "doctest.h"
#include "predterms/case_json.hpp"
#include "predterms/dataset.hpp"
#include "predterms/design.hpp"
#include "predterms/errors.hpp"
#include "predterms/formula.hpp"
#include "predterms/model.hpp"
#include "predterms/terms.hpp"

using namespace predterms;
namespace fs = std::filesystem;

namespace {

// ------------------------------------------------ in-process fixture ----

std::string fixture_csv() {
  return
      "y,x,c,flag,g\n"
      "1,1,A,TRUE,1\n"
      "6.7,2,B,TRUE,2\n"
      "6.7,3,A,FALSE,2\n"
      "11,4,B,FALSE,1\n"
      "9,5,A,TRUE,1\n"
      "14.7,6,B,TRUE,2\n"
      "14.7,7,A,FALSE,2\n"
      "19,8,B,FALSE,1\n"
      "17,9,A,TRUE,1\n"
      "22.7,10,B,TRUE,2\n"
      "22.7,11,A,FALSE,2\n"
      "27,12,B,FALSE,1\n";
}

const FittedModel& model() {
  static FittedModel m = [] {
    CsvOptions opt;
    opt.force_categorical = {"g"};
    std::istringstream in(fixture_csv());
    Dataset ds = read_csv(in, opt);
    TermPlan plan = bind_schema(parse_formula("y ~ x + c + flag + g"), schema_of(ds));
    DesignMatrix dm = build_design(ds, plan);
    return fit_ols(dm, extract_response(ds, plan.response), plan);
  }();
  return m;
}

// ------------------------------------------------- subprocess driver ----

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("predterms_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const char* name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << content;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const TempDir& dir, const std::string& args, const std::string& env = "") {
  std::string out_file = dir.file("run_stdout.txt");
  std::string err_file = dir.file("run_stderr.txt");
  std::string cmd = env + (env.empty() ? "" : " ") + "'" + PREDTERMS_BIN + "' " + args + " >'" +
                    out_file + "' 2>'" + err_file + "'";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

// y = 2x + 3*(c == B) - (flag == TRUE), exactly.
std::string cli_csv() {
  return
      "id,y,x,c,flag\n"
      "alpha,1,1,A,TRUE\n"
      "beta,6,2,B,TRUE\n"
      "gamma,6,3,A,FALSE\n"
      "delta,11,4,B,FALSE\n"
      "epsilon,9,5,A,TRUE\n"
      "zeta,14,6,B,TRUE\n"
      "eta,14,7,A,FALSE\n"
      "theta,19,8,B,FALSE\n"
      "iota,17,9,A,TRUE\n"
      "kappa,22,10,B,TRUE\n"
      "lambda,22,11,A,FALSE\n"
      "mu,27,12,B,FALSE\n";
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("parse_case_json: value coercions") {
  CaseValues v = parse_case_json(R"({"x": 2.5, "c": "B", "flag": true, "g": 2})", model());
  CHECK(std::get<double>(v.at("x")) == 2.5);
  CHECK(std::get<std::string>(v.at("c")) == "B");
  CHECK(std::get<std::string>(v.at("flag")) == "TRUE");
  CHECK(std::get<double>(v.at("g")) == 2.0);  // numeric level code, tokenized later

  CaseValues q = parse_case_json(R"({"x": "3.5", "c": "A", "flag": false, "g": "1"})", model());
  CHECK(std::get<double>(q.at("x")) == 3.5);
  CHECK(std::get<std::string>(q.at("c")) == "A");
  CHECK(std::get<std::string>(q.at("flag")) == "FALSE");
  CHECK(std::get<std::string>(q.at("g")) == "1");

  CaseExplanation ce = explain_case(model(), v);
  CHECK(ce.provenance == "supplied case");
  CHECK(std::isfinite(linear_predictor(model(), v)));
}

TEST_CASE("parse_case_json: missing columns are listed sorted") {
  CHECK_THROWS_WITH_AS(parse_case_json("{}", model()),
                       "case is missing columns: c flag g x", DataError);
  CHECK_THROWS_WITH_AS(parse_case_json(R"({"x": 1})", model()),
                       "case is missing columns: c flag g", DataError);
}

TEST_CASE("parse_case_json: unknown column and malformed input") {
  CHECK_THROWS_WITH_AS(
      parse_case_json(R"({"x": 1, "c": "A", "flag": true, "g": 1, "zz": 1})", model()),
      "unknown column 'zz' in case", DataError);
  CHECK_THROWS_AS(parse_case_json("{not json", model()), DataError);
  CHECK_THROWS_WITH_AS(parse_case_json("[1, 2]", model()),
                       "case JSON must be an object of column values", DataError);
  CHECK_THROWS_WITH_AS(parse_case_json("42", model()),
                       "case JSON must be an object of column values", DataError);
}

TEST_CASE("parse_case_json: type errors name the column") {
  CHECK_THROWS_WITH_AS(
      parse_case_json(R"({"x": true, "c": "A", "flag": true, "g": 1})", model()),
      "column 'x' expects a number", DataError);
  CHECK_THROWS_WITH_AS(
      parse_case_json(R"({"x": "abc", "c": "A", "flag": true, "g": 1})", model()),
      "column 'x': cannot parse 'abc' as a number", DataError);
  CHECK_THROWS_WITH_AS(
      parse_case_json(R"({"x": 1, "c": null, "flag": true, "g": 1})", model()),
      "column 'c' expects a level", DataError);
}

TEST_CASE("parse_case_json: levels are validated against the model") {
  CHECK_THROWS_WITH_AS(
      parse_case_json(R"({"x": 1, "c": "Z", "flag": true, "g": 1})", model()),
      "unseen level 'Z' for column 'c'", ModelError);
  CHECK_THROWS_WITH_AS(
      parse_case_json(R"({"x": 1, "c": "A", "flag": true, "g": 3})", model()),
      "unseen level '3' for column 'g'", ModelError);
}

TEST_CASE("cli: fit, terms, plot, explain, cor round trip") {
  TempDir dir;
  write_text(dir.file("data.csv"), cli_csv());
  std::string data = "--data '" + dir.file("data.csv") + "'";
  std::string model_arg = "--model '" + dir.file("model.json") + "'";

  RunResult fit = run_cli(dir, "fit " + data + " --formula 'y ~ x + c + flag' --out '" +
                                   dir.file("model.json") + "'");
  CHECK(fit.code == 0);
  CHECK(contains(fit.out, "link: identity"));
  CHECK(contains(fit.out, "response: y"));
  CHECK(contains(fit.out, "n: 12"));
  CHECK(contains(fit.out, "converged: true"));
  CHECK(slurp(dir.file("model.json")).front() == '{');

  RunResult terms = run_cli(dir, "terms " + data + " " + model_arg);
  CHECK(terms.code == 0);
  CHECK(contains(terms.out, "prediction term"));
  CHECK(contains(terms.out, "Total prediction of y"));

  RunResult p1 = run_cli(dir, "plot " + data + " " + model_arg + " --out '" +
                                  dir.file("p1.svg") + "'");
  CHECK(p1.code == 0);
  CHECK(contains(p1.out, "prediction term"));
  std::string svg1 = slurp(dir.file("p1.svg"));
  CHECK(svg1.substr(0, 5) == "<?xml");

  RunResult p2 = run_cli(dir, "plot " + data + " " + model_arg + " --out '" +
                                  dir.file("p2.svg") + "'");
  CHECK(p2.code == 0);
  CHECK(svg1 == slurp(dir.file("p2.svg")));  // byte-identical rerun

  RunResult by_index = run_cli(dir, "explain " + data + " " + model_arg + " --case 3");
  CHECK(by_index.code == 0);
  CHECK(contains(by_index.out, "centercept"));
  CHECK(contains(by_index.out, "Total linear prediction of y"));

  RunResult by_id =
      run_cli(dir, "explain " + data + " --id-col id " + model_arg + " --case gamma");
  CHECK(by_id.code == 0);
  CHECK(by_id.out == by_index.out);  // row id resolves to the same case

  RunResult cor = run_cli(dir, "cor " + data + " " + model_arg + " --out '" +
                                   dir.file("cor.svg") + "'");
  CHECK(cor.code == 0);
  CHECK(contains(slurp(dir.file("cor.svg")), "class=\"corcell\""));
}

TEST_CASE("cli: binomial family uses the logit link") {
  TempDir dir;
  write_text(dir.file("data.csv"), cli_csv());
  RunResult fit = run_cli(dir, "fit --data '" + dir.file("data.csv") +
                                   "' --formula 'flag ~ x + c' --family binomial --out '" +
                                   dir.file("model.json") + "'");
  CHECK(fit.code == 0);
  CHECK(contains(fit.out, "link: logit"));
  CHECK(contains(fit.out, "converged: true"));
}

TEST_CASE("cli: case JSON with staircase and profile") {
  TempDir dir;
  write_text(dir.file("data.csv"), cli_csv());
  std::string data = "--data '" + dir.file("data.csv") + "'";
  RunResult fit = run_cli(dir, "fit " + data + " --formula 'y ~ x + c + flag' --out '" +
                                   dir.file("model.json") + "'");
  REQUIRE(fit.code == 0);

  RunResult plot = run_cli(
      dir, "plot " + data + " --model '" + dir.file("model.json") +
               "' --out '" + dir.file("case.svg") +
               "' --case '{\"x\": 6, \"c\": \"A\", \"flag\": true}' --staircase --profile");
  CHECK(plot.code == 0);
  CHECK(contains(plot.out, "SUM"));
  std::string svg = slurp(dir.file("case.svg"));
  CHECK(contains(svg, "class=\"marker\""));
  CHECK(contains(svg, "class=\"profile\""));
}

TEST_CASE("cli: user errors exit with 1") {
  TempDir dir;
  write_text(dir.file("data.csv"), cli_csv());
  std::string data = "--data '" + dir.file("data.csv") + "'";
  std::string fit_tail = " --out '" + dir.file("model.json") + "'";

  CHECK(run_cli(dir, "").code == 1);                 // a subcommand is required
  CHECK(run_cli(dir, "fit --nope").code == 1);       // unknown flag
  CHECK(run_cli(dir, "fit " + data + " --formula 'y ~ x' --family poisson" + fit_tail).code ==
        1);

  RunResult formula = run_cli(dir, "fit " + data + " --formula 'y ~ log(x' " + fit_tail);
  CHECK(formula.code == 1);
  CHECK(contains(formula.err, "--formula:"));

  RunResult delim =
      run_cli(dir, "fit " + data + " --delimiter ab --formula 'y ~ x'" + fit_tail);
  CHECK(delim.code == 1);
  CHECK(contains(delim.err, "--delimiter"));

  REQUIRE(run_cli(dir, "fit " + data + " --formula 'y ~ x + c + flag'" + fit_tail).code == 0);
  std::string model_arg = " --model '" + dir.file("model.json") + "'";

  RunResult stair = run_cli(dir, "plot " + data + model_arg + " --out '" +
                                     dir.file("p.svg") + "' --staircase");
  CHECK(stair.code == 1);
  CHECK(contains(stair.err, "--staircase requires --case"));

  RunResult range = run_cli(dir, "explain " + data + model_arg + " --case 99");
  CHECK(range.code == 1);
  CHECK(contains(range.err, "out of range"));

  RunResult no_ids = run_cli(dir, "explain " + data + model_arg + " --case gamma");
  CHECK(no_ids.code == 1);
  CHECK(contains(no_ids.err, "no --id-col was given"));

  RunResult bad_id =
      run_cli(dir, "explain " + data + " --id-col id" + model_arg + " --case nosuch");
  CHECK(bad_id.code == 1);
  CHECK(contains(bad_id.err, "no row with id 'nosuch'"));

  RunResult bad_level = run_cli(dir, "explain " + data + model_arg +
                                         " --case '{\"x\": 1, \"c\": \"Z\", \"flag\": true}'");
  CHECK(bad_level.code == 1);
  CHECK(contains(bad_level.err, "unseen level 'Z'"));
}

TEST_CASE("cli: data and model errors exit with 2") {
  TempDir dir;
  write_text(dir.file("data.csv"), cli_csv());
  std::string data = "--data '" + dir.file("data.csv") + "'";

  RunResult missing = run_cli(dir, "fit --data '" + dir.file("nosuch.csv") +
                                       "' --formula 'y ~ x' --out '" + dir.file("m.json") + "'");
  CHECK(missing.code == 2);
  CHECK(contains(missing.err, "predterms: "));

  write_text(dir.file("ragged.csv"), "a,b\n1,2\n3\n");
  RunResult ragged = run_cli(dir, "fit --data '" + dir.file("ragged.csv") +
                                      "' --formula 'a ~ b' --out '" + dir.file("m.json") + "'");
  CHECK(ragged.code == 2);

  // A single-term model has nothing to correlate.
  REQUIRE(run_cli(dir, "fit " + data + " --formula 'y ~ x' --out '" + dir.file("one.json") +
                           "'").code == 0);
  RunResult cor = run_cli(dir, "cor " + data + " --model '" + dir.file("one.json") +
                                   "' --out '" + dir.file("cor.svg") + "'");
  CHECK(cor.code == 2);
  CHECK(contains(cor.err, "needs at least two nonconstant prediction terms"));
}

TEST_CASE("cli: incomplete rows are dropped with a warning") {
  TempDir dir;
  std::string csv = cli_csv();
  std::size_t at = csv.find("epsilon,9");
  REQUIRE(at != std::string::npos);
  csv.replace(at, std::string("epsilon,9").size(), "epsilon,");
  write_text(dir.file("miss.csv"), csv);

  RunResult fit = run_cli(dir, "fit --data '" + dir.file("miss.csv") +
                                   "' --formula 'y ~ x + c + flag' --out '" +
                                   dir.file("model.json") + "'");
  CHECK(fit.code == 0);
  CHECK(contains(fit.err, "predterms: dropped 1 incomplete rows"));
  CHECK(contains(fit.out, "n: 11"));
}

TEST_CASE("cli: style overrides from PREDTERMS_STYLE") {
  TempDir dir;
  write_text(dir.file("data.csv"), cli_csv());
  std::string data = "--data '" + dir.file("data.csv") + "'";
  REQUIRE(run_cli(dir, "fit " + data + " --formula 'y ~ x + c + flag' --out '" +
                           dir.file("model.json") + "'").code == 0);
  std::string model_arg = " --model '" + dir.file("model.json") + "'";
  std::string plot_args = "plot " + data + model_arg + " --out '" + dir.file("styled.svg") + "'";

  write_text(dir.file("style.json"), R"({"background": "#ABCDEF", "width": 700})");
  RunResult styled = run_cli(dir, plot_args, "PREDTERMS_STYLE='" + dir.file("style.json") + "'");
  CHECK(styled.code == 0);
  std::string svg = slurp(dir.file("styled.svg"));
  CHECK(contains(svg, "width=\"700\""));
  CHECK(contains(svg, "#ABCDEF"));

  write_text(dir.file("bad.json"), R"({"no_such_key": 1})");
  RunResult bad = run_cli(dir, plot_args, "PREDTERMS_STYLE='" + dir.file("bad.json") + "'");
  CHECK(bad.code == 1);
  CHECK(contains(bad.err, "PREDTERMS_STYLE"));

  RunResult gone = run_cli(dir, plot_args, "PREDTERMS_STYLE='" + dir.file("gone.json") + "'");
  CHECK(gone.code == 1);
  CHECK(contains(gone.err, "cannot open"));
}
