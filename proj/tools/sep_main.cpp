// sep: class-separability measures for labeled numeric CSV data.
//
// Subcommands:
//   measure  SI, HM, and the single-shot hybrid value of one dataset
//   sweep    two-Gaussian center-distance sweep, CSV output
//   select   feature-subset search maximizing SI or the hybrid measure
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 computation error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "sep/sep.hpp"

namespace {

using sep::Index;

std::string fmt(double v) { return sep::csv::format_number(v); }

sep::CsvOptions csv_options(bool header, const std::string& label_column) {
  sep::CsvOptions opts;
  opts.has_header = header;
  if (label_column != "last") {
    try {
      std::size_t pos = 0;
      const long long idx = std::stoll(label_column, &pos);
      if (pos != label_column.size() || idx < 0) throw std::invalid_argument(label_column);
      opts.label_column = static_cast<Index>(idx);
    } catch (const std::exception&) {
      throw sep::ConfigError("--label-column must be 'last' or a nonnegative column index, got '" +
                             label_column + "'");
    }
  }
  return opts;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sep::DataError("cannot write '" + path + "'");
  return out;
}

int cmd_measure(const std::string& input, bool header, const std::string& label_column,
                const std::string& margins_out, bool hm_mean, bool hm_half) {
  const auto ds = sep::load_csv<double>(input, csv_options(header, label_column));
  const sep::KdTree<double> tree(ds);
  const auto si = sep::separability_index(tree);

  std::cout << "n: " << ds.rows() << "\n";
  std::cout << "d: " << ds.cols() << "\n";
  std::cout << "classes: " << ds.num_classes() << "\n";
  std::cout << "class_counts:";
  for (Index c = 0; c < ds.num_classes(); ++c)
    std::cout << (c ? "," : " ") << ds.class_names()[static_cast<std::size_t>(c)] << '='
              << ds.class_sizes()[static_cast<std::size_t>(c)];
  std::cout << "\n";
  std::cout << "si_hits: " << si.hits << "\n";
  std::cout << "si: " << fmt(si.value) << "\n";

  const sep::HmConvention conv{hm_mean, hm_half};
  std::optional<sep::HmResult<double>> hm;
  std::string hm_error;
  try {
    hm = sep::hypothesis_margin(tree, conv);
  } catch (const sep::ComputeError& e) {
    hm_error = e.what();
  }
  if (hm)
    std::cout << "hm: " << fmt(hm->total) << "\n";
  else
    std::cout << "hm: unavailable (" << hm_error << ")\n";

  // single-shot hybrid: 100*si below full separability, exactly 100 at it
  const double hybrid = si.hits == si.n ? 100.0 : 100.0 * si.value;
  std::cout << "hybrid: " << fmt(hybrid) << "\n";

  if (!margins_out.empty()) {
    if (!hm) throw sep::ComputeError("cannot write margins: " + hm_error);
    auto out = open_out(margins_out);
    out << "instance,margin\n";
    for (Index i = 0; i < ds.rows(); ++i)
      out << i << ',' << fmt(hm->margins[static_cast<std::size_t>(i)]) << '\n';
  }
  return 0;
}

int cmd_sweep(const sep::SweepConfig<double>& cfg, const std::string& out_path) {
  const auto records = sep::separation_sweep(cfg);
  auto out = open_out(out_path);
  sep::write_sweep_csv<double>(out, records);

  std::cout << "records: " << records.size() << "\n";
  const auto first_full = std::find_if(records.begin(), records.end(),
                                       [](const auto& r) { return r.epoch > 0; });
  if (first_full != records.end())
    std::cout << "first_si1_distance: " << fmt(first_full->distance) << "\n";
  else
    std::cout << "first_si1_distance: none\n";
  std::cout << "final_hybrid: " << fmt(records.back().hybrid) << "\n";
  return 0;
}

int cmd_select(const std::string& input, bool header, const std::string& label_column,
               const std::string& strategy, const std::string& criterion_name,
               std::optional<Index> max_dim, bool shared_state, const std::string& out_path) {
  const auto ds = sep::load_csv<double>(input, csv_options(header, label_column));
  const sep::Criterion criterion =
      criterion_name == "si" ? sep::Criterion::si : sep::Criterion::hybrid;
  sep::SearchOptions options{max_dim, shared_state};

  sep::SelectionResult<double> result =
      strategy == "exhaustive" ? sep::exhaustive_search(ds, criterion, options)
                               : sep::greedy_forward_search(ds, criterion, options);

  auto out = open_out(out_path);
  sep::write_selection_csv(out, result);
  std::cout << "evaluations: " << result.trace.size() << "\n";
  std::cout << "best_subset: " << result.best_subset.to_string() << "\n";
  std::cout << "best_score: " << fmt(result.best_score) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"class-separability measures for labeled numeric data"};
  app.require_subcommand(1);

  // measure
  auto* measure = app.add_subcommand("measure", "SI, HM, and hybrid value of one dataset");
  std::string m_input, m_label_column = "last", m_margins_out;
  bool m_header = false, m_hm_mean = false, m_hm_half = false;
  measure->add_option("--input", m_input, "labeled CSV file")->required();
  measure->add_flag("--header", m_header, "first line is a header row");
  measure->add_option("--label-column", m_label_column, "'last' or 0-based column index");
  measure->add_option("--margins-out", m_margins_out, "write per-instance margins CSV here");
  measure->add_flag("--hm-mean", m_hm_mean, "report HM as the mean margin instead of the sum");
  measure->add_flag("--hm-half", m_hm_half, "halve each per-instance margin");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "two-Gaussian center-distance sweep");
  sep::SweepConfig<double> cfg;
  std::string s_out;
  sweep->add_option("--n-per-class", cfg.n_per_class, "instances per cluster");
  sweep->add_option("--dims", cfg.dims, "feature count");
  sweep->add_option("--sigma", cfg.sigma, "per-axis standard deviation");
  sweep->add_option("--start", cfg.start_distance, "first center distance");
  sweep->add_option("--step", cfg.step, "distance increment");
  sweep->add_option("--steps", cfg.n_steps, "number of distances");
  sweep->add_option("--seed", cfg.seed, "RNG seed");
  sweep->add_option("--out", s_out, "output CSV path")->required();

  // select
  auto* select = app.add_subcommand("select", "feature-subset search");
  std::string f_input, f_label_column = "last", f_strategy, f_criterion, f_out;
  bool f_header = false, f_shared = false;
  long long f_max_dim = -1;
  select->add_option("--input", f_input, "labeled CSV file")->required();
  select->add_flag("--header", f_header, "first line is a header row");
  select->add_option("--label-column", f_label_column, "'last' or 0-based column index");
  select->add_option("--strategy", f_strategy, "exhaustive or greedy")
      ->required()
      ->check(CLI::IsMember({"exhaustive", "greedy"}));
  select->add_option("--criterion", f_criterion, "si or hybrid")
      ->required()
      ->check(CLI::IsMember({"si", "hybrid"}));
  select->add_option("--max-dim", f_max_dim, "largest subset size to consider");
  select->add_flag("--shared-hybrid-state", f_shared,
                   "thread one hybrid state through the whole search (order-dependent)");
  select->add_option("--out", f_out, "trace CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (measure->parsed())
      return cmd_measure(m_input, m_header, m_label_column, m_margins_out, m_hm_mean, m_hm_half);
    if (sweep->parsed()) return cmd_sweep(cfg, s_out);
    std::optional<Index> max_dim;
    if (f_max_dim >= 0) max_dim = static_cast<Index>(f_max_dim);
    return cmd_select(f_input, f_header, f_label_column, f_strategy, f_criterion, max_dim,
                      f_shared, f_out);
  } catch (const sep::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const sep::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sep::ComputeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
