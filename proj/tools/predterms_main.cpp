// Command line front end: fit | terms | plot | explain | cor.
//
// Exit codes: 0 success, 1 user error (flags, formula, case input),
// 2 data or model error. Tables go to stdout, warnings to stderr.

#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "predterms/case_json.hpp"
#include "predterms/errors.hpp"
#include "predterms/model_json.hpp"
#include "predterms/predscor.hpp"
#include "predterms/predsplot.hpp"
#include "predterms/svg.hpp"
#include "predterms/terms.hpp"

namespace {

using namespace predterms;

/// Anything the user can fix on the command line; mapped to exit code 1.
struct UserError : std::runtime_error {
  explicit UserError(const std::string& what) : std::runtime_error(what) {}
};

struct DataFlags {
  std::string path;
  std::string id_col;
  std::string categorical;  // comma separated
  std::string delimiter = ",";
};

void add_data_flags(CLI::App* cmd, DataFlags& df) {
  cmd->add_option("--data", df.path, "CSV file")->required();
  cmd->add_option("--id-col", df.id_col, "column holding row identifiers");
  cmd->add_option("--categorical", df.categorical,
                  "comma-separated columns to force categorical");
  cmd->add_option("--delimiter", df.delimiter, "field delimiter (one character)");
}

Dataset load_data(const DataFlags& df) {
  if (df.delimiter.size() != 1) throw UserError("--delimiter must be a single character");
  CsvOptions opt;
  opt.delimiter = df.delimiter[0];
  opt.id_column = df.id_col;
  std::stringstream cols(df.categorical);
  std::string col;
  while (std::getline(cols, col, ',')) {
    if (!col.empty()) opt.force_categorical.push_back(col);
  }
  return read_csv_file(df.path, opt);
}

Style load_style() {
  Style st = default_style();
  const char* path = std::getenv("PREDTERMS_STYLE");
  if (path == nullptr || *path == '\0') return st;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError(std::string("PREDTERMS_STYLE: cannot open '") + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    apply_style_json(st, ss.str());
  } catch (const std::exception& e) {
    throw UserError(std::string("PREDTERMS_STYLE: ") + e.what());
  }
  return st;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
}

/// Model columns, plus the response when the data has it, so the complete
/// cases match the ones the model was fitted on.
std::vector<std::string> columns_for(const FittedModel& m, const Dataset& ds) {
  std::vector<std::string> cols;
  auto add = [&](const std::string& c) {
    if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
  };
  if (ds.has(m.response.column)) add(m.response.column);
  for (const auto& ft : m.terms) {
    for (const auto& f : ft.term.factors) add(f.column);
  }
  return cols;
}

Dataset complete_for_model(const FittedModel& m, const DataFlags& df) {
  Dataset raw = load_data(df);
  auto [ds, dropped] = complete_cases(raw, columns_for(m, raw));
  if (dropped > 0) {
    std::cerr << "predterms: dropped " << dropped << " incomplete rows\n";
  }
  return std::move(ds);
}

std::string json_number(double v) { return nlohmann::json(v).dump(); }

// ---------------------------------------------------------------- fit ----

struct FitConfig {
  DataFlags data;
  std::string formula;
  std::string family = "gaussian";
  std::string out;
};

void run_fit(const FitConfig& cfg) {
  FormulaAST ast = parse_formula(cfg.formula);
  Dataset raw = load_data(cfg.data);
  TermPlan plan = bind_schema(ast, schema_of(raw));
  auto [ds, dropped] = complete_cases(raw, plan.required_columns());
  if (dropped > 0) {
    std::cerr << "predterms: dropped " << dropped << " incomplete rows\n";
  }
  DesignMatrix dm = build_design(ds, plan);
  Eigen::VectorXd y = extract_response(ds, plan.response);
  FittedModel m = cfg.family == "gaussian" ? fit_ols(dm, y, plan) : fit_logistic(dm, y, plan);
  save_model_file(m, cfg.out);

  std::cout << "link: " << (m.link == LinkKind::Identity ? "identity" : "logit") << "\n";
  std::cout << "response: " << m.response.display << "\n";
  std::cout << "n: " << ds.n_rows() << "\n";
  std::cout << "intercept: " << json_number(m.intercept) << "\n";
  for (const auto& ft : m.terms) {
    for (const auto& c : ft.coefs) {
      std::cout << c.column << ": "
                << json_number(c.value) << "\n";
    }
  }
  std::cout << "iterations: " << m.iterations << "\n";
  std::cout << "converged: " << (m.converged ? "true" : "false") << "\n";
}

// -------------------------------------------------------------- terms ----

struct TermsConfig {
  DataFlags data;
  std::string model;
};

void run_terms(const TermsConfig& cfg) {
  FittedModel m = load_model_file(cfg.model);
  Dataset ds = complete_for_model(m, cfg.data);
  PredictionTerms pt = compute_terms(m, ds);
  std::cout << print_term_table(pt);
}

// ------------------------------------------------------- plot/explain ----

struct PlotConfig {
  DataFlags data;
  std::string model;
  std::string out;
  std::string display = "hist";
  double bandwidth = 0.0;
  std::size_t max_terms = 0;  // 0 = all
  std::string case_sel;
  bool staircase = false;
  bool profile = false;
  bool full_total_axis = false;
  std::string title;
};

CaseExplanation resolve_case(const std::string& sel, const FittedModel& m, const Dataset& ds) {
  try {
    if (!sel.empty() && sel[0] == '{') {
      return explain_case(m, parse_case_json(sel, m));
    }
    long long idx = 0;
    auto [p, ec] = std::from_chars(sel.data(), sel.data() + sel.size(), idx);
    if (ec == std::errc{} && p == sel.data() + sel.size()) {
      if (idx < 1 || static_cast<std::size_t>(idx) > ds.n_rows()) {
        throw UserError("index " + sel + " out of range (1.." + std::to_string(ds.n_rows()) +
                        ")");
      }
      return explain_case(m, ds, static_cast<std::size_t>(idx - 1));
    }
    if (ds.row_ids.empty()) {
      throw UserError("'" + sel + "' is not an index, and no --id-col was given");
    }
    for (std::size_t r = 0; r < ds.row_ids.size(); ++r) {
      if (ds.row_ids[r] == sel) return explain_case(m, ds, r);
    }
    throw UserError("no row with id '" + sel + "'");
  } catch (const UserError&) {
    throw;
  } catch (const std::exception& e) {
    throw UserError(std::string("--case: ") + e.what());
  }
}

PlotOptions plot_options(const PlotConfig& cfg) {
  PlotOptions opt;
  opt.display = cfg.display == "density" ? DistStyle::Density : DistStyle::Histogram;
  opt.bandwidth = cfg.bandwidth;
  if (cfg.bandwidth < 0.0) throw UserError("--bandwidth must be positive");
  if (cfg.max_terms > 0) opt.max_terms = cfg.max_terms;
  opt.full_total_axis = cfg.full_total_axis;
  opt.title = cfg.title;
  return opt;
}

PredsplotScene build_scene(const PlotConfig& cfg, const FittedModel& m, const Dataset& ds,
                           const PredictionTerms& pt, const Style& style,
                           const std::optional<CaseExplanation>& ce) {
  PlotOptions opt = plot_options(cfg);
  if (!ce.has_value()) {
    return layout_overall(m, ds, pt, style, opt);
  }
  if (cfg.staircase) {
    PredsplotScene scene = layout_staircase(m, ds, pt, *ce, style, opt);
    scene.profile = cfg.profile;
    return scene;
  }
  return layout_case(m, ds, pt, *ce, style, opt, cfg.profile);
}

void run_plot(const PlotConfig& cfg) {
  if ((cfg.staircase || cfg.profile) && cfg.case_sel.empty()) {
    throw UserError(std::string(cfg.staircase ? "--staircase" : "--profile") +
                    " requires --case");
  }
  Style style = load_style();
  FittedModel m = load_model_file(cfg.model);
  Dataset ds = complete_for_model(m, cfg.data);
  PredictionTerms pt = compute_terms(m, ds);

  std::optional<CaseExplanation> ce;
  if (!cfg.case_sel.empty()) ce = resolve_case(cfg.case_sel, m, ds);

  std::cout << print_term_table(pt);
  if (ce.has_value()) std::cout << "\n" << print_case_table(*ce);

  write_file(cfg.out, render_svg(build_scene(cfg, m, ds, pt, style, ce), style));
}

void run_explain(const PlotConfig& cfg) {
  FittedModel m = load_model_file(cfg.model);
  Dataset ds = complete_for_model(m, cfg.data);
  CaseExplanation ce = resolve_case(cfg.case_sel, m, ds);
  std::cout << print_case_table(ce);

  if (!cfg.out.empty()) {
    Style style = load_style();
    PredictionTerms pt = compute_terms(m, ds);
    write_file(cfg.out, render_svg(build_scene(cfg, m, ds, pt, style, ce), style));
  }
}

// ---------------------------------------------------------------- cor ----

struct CorConfig {
  DataFlags data;
  std::string model;
  std::string out;
  std::string sort_by_stdev = "true";
  bool absolute = false;
  std::string cell_area = "variance";
  bool classic = false;
};

void run_cor(const CorConfig& cfg) {
  Style style = load_style();
  FittedModel m = load_model_file(cfg.model);
  Dataset ds = complete_for_model(m, cfg.data);
  PredictionTerms pt = compute_terms(m, ds);
  TermCovariance tc = term_covariance(pt);

  PredscorOptions opt;
  opt.sort_by_stdev = cfg.sort_by_stdev == "true";
  opt.absolute_correlations = cfg.absolute;
  opt.cell_area = cfg.cell_area == "stdev" ? CellArea::Stdev : CellArea::Variance;
  opt.classic = cfg.classic;
  write_file(cfg.out, render_svg(layout_predscor(tc, opt), style));
}

void add_display_flags(CLI::App* cmd, PlotConfig& cfg) {
  cmd->add_option("--display", cfg.display, "distribution glyph for many-valued terms")
      ->check(CLI::IsMember({"hist", "density"}));
  cmd->add_option("--bandwidth", cfg.bandwidth, "density bandwidth (default: normal reference)");
  cmd->add_option("--max-terms", cfg.max_terms, "show only the k largest terms");
  cmd->add_flag("--staircase", cfg.staircase, "stack the case's terms cumulatively");
  cmd->add_flag("--profile", cfg.profile, "broken line through the case markers");
  cmd->add_flag("--full-total-axis", cfg.full_total_axis, "do not truncate the total axis");
  cmd->add_option("--title", cfg.title, "plot title");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prediction-term displays for linear and logistic models"};
  app.require_subcommand(1);

  FitConfig fit_cfg;
  auto* fit = app.add_subcommand("fit", "fit a model and save it as JSON");
  add_data_flags(fit, fit_cfg.data);
  fit->add_option("--formula", fit_cfg.formula, "model formula, e.g. \"y ~ a + log(b) + c:d\"")
      ->required();
  fit->add_option("--family", fit_cfg.family, "gaussian (identity) or binomial (logit)")
      ->check(CLI::IsMember({"gaussian", "binomial"}));
  fit->add_option("--out", fit_cfg.out, "model JSON path")->required();
  fit->callback([&] { run_fit(fit_cfg); });

  TermsConfig terms_cfg;
  auto* terms = app.add_subcommand("terms", "print the prediction-term stdev table");
  add_data_flags(terms, terms_cfg.data);
  terms->add_option("--model", terms_cfg.model, "model JSON path")->required();
  terms->callback([&] { run_terms(terms_cfg); });

  PlotConfig plot_cfg;
  auto* plot = app.add_subcommand("plot", "render the predictions plot as SVG");
  add_data_flags(plot, plot_cfg.data);
  plot->add_option("--model", plot_cfg.model, "model JSON path")->required();
  plot->add_option("--out", plot_cfg.out, "output SVG path")->required();
  plot->add_option("--case", plot_cfg.case_sel, "1-based row index, row id, or JSON object");
  add_display_flags(plot, plot_cfg);
  plot->callback([&] { run_plot(plot_cfg); });

  PlotConfig explain_cfg;
  auto* explain = app.add_subcommand("explain", "print the case table for one case");
  add_data_flags(explain, explain_cfg.data);
  explain->add_option("--model", explain_cfg.model, "model JSON path")->required();
  explain->add_option("--case", explain_cfg.case_sel, "1-based row index, row id, or JSON object")
      ->required();
  explain->add_option("--out", explain_cfg.out, "also render the case plot to this SVG path");
  add_display_flags(explain, explain_cfg);
  explain->callback([&] { run_explain(explain_cfg); });

  CorConfig cor_cfg;
  auto* cor = app.add_subcommand("cor", "render the prediction-term covariance display");
  add_data_flags(cor, cor_cfg.data);
  cor->add_option("--model", cor_cfg.model, "model JSON path")->required();
  cor->add_option("--out", cor_cfg.out, "output SVG path")->required();
  cor->add_option("--sort-by-stdev", cor_cfg.sort_by_stdev, "order terms by decreasing stdev")
      ->check(CLI::IsMember({"true", "false"}));
  cor->add_flag("--abs", cor_cfg.absolute, "color by absolute correlations");
  cor->add_option("--cell-area", cor_cfg.cell_area, "diagonal cell scaling")
      ->check(CLI::IsMember({"variance", "stdev"}));
  cor->add_flag("--classic", cor_cfg.classic, "equal cell sizes");
  cor->callback([&] { run_cor(cor_cfg); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const UserError& e) {
    std::cerr << "predterms: " << e.what() << "\n";
    return 1;
  } catch (const FormulaError& e) {
    std::cerr << "predterms: --formula: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "predterms: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
