// ridgekm: command-line front end for ridge-function kernel machines.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ridgekm/dataset.hpp"
#include "ridgekm/error.hpp"
#include "ridgekm/mercer.hpp"
#include "ridgekm/ovr.hpp"
#include "ridgekm/ridgepoly.hpp"
#include "ridgekm/shift_approx.hpp"
#include "ridgekm/simd.hpp"
#include "ridgekm/text_io.hpp"

namespace {

using namespace ridgekm;

struct TrainOptions {
  std::string data;
  std::string activation = "cos";
  std::string solver = "qr";
  std::size_t neumann_order = 5;
  std::size_t m = 2;
  double lambda = 0.01;
  std::size_t seeds = 10;
  std::size_t max_iters = 100;
  std::string out;
  std::string trace;
  double holdout = 0.0;
};

struct EvaluateOptions {
  std::string model;
  std::string data;
  std::string report = "md";
  std::string pca_out;
};

struct ApproxOptions {
  double gamma = 1.0;
  std::vector<std::size_t> m1_list{100, 400, 1600};
  std::size_t seeds = 20;
  std::string box = "-1..1";
  std::size_t grid = 17;
  std::size_t dim = 2;
  std::size_t m2 = 3;
  std::string out;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read '" + path + "'");
  return f;
}

OvrConfig make_config(const TrainOptions& o, std::uint64_t seed) {
  OvrConfig cfg;
  cfg.m = o.m;
  cfg.lambda = o.lambda;
  cfg.activation = Activation::from_name(o.activation);
  if (o.solver == "qr") cfg.optim.loss_mode = LossMode::closed_form();
  else if (o.solver == "neumann") cfg.optim.loss_mode = LossMode::neumann(o.neumann_order);
  else throw InputError("unknown solver '" + o.solver + "' (expected qr or neumann)");
  cfg.optim.max_iters = o.max_iters;
  cfg.seeds.clear();
  for (std::size_t s = 0; s < o.seeds; ++s) cfg.seeds.push_back(seed + s);
  return cfg;
}

std::pair<double, double> parse_box(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) throw InputError("box must be LO..HI, got '" + text + "'");
  return {io::parse_double(text.substr(0, pos)), io::parse_double(text.substr(pos + 2))};
}

int run_train(const TrainOptions& o, std::uint64_t seed) {
  Dataset raw = load_csv(o.data);
  Dataset eval_set;
  if (o.holdout > 0.0) std::tie(raw, eval_set) = split_holdout(raw, o.holdout, seed);
  auto [ds, stats] = standardize(raw);
  const OvrConfig cfg = make_config(o, seed);
  OvrTraining tr = train_ovr_detailed(ds, cfg);
  tr.best.stats = stats;

  for (std::size_t k = 0; k < tr.classes.size(); ++k) {
    const auto& ct = tr.classes[k];
    for (const auto& r : ct.runs)
      std::cout << "class " << tr.best.class_names[k] << " seed " << r.seed << " loss "
                << io::format_double(r.loss) << " status " << status_name(r.run.status) << '\n';
  }
  std::cout << "train accuracy " << io::format_double(accuracy(tr.best, raw)) << '\n';
  if (o.holdout > 0.0 && eval_set.n() > 0)
    std::cout << "holdout accuracy " << io::format_double(accuracy(tr.best, eval_set)) << '\n';

  if (!o.out.empty()) {
    auto f = open_out(o.out);
    write_ovr(f, tr.best);
  }
  if (!o.trace.empty()) {
    auto f = open_out(o.trace);
    f << "class,";
    write_trace_csv(f, {});
    for (std::size_t k = 0; k < tr.classes.size(); ++k) {
      const auto& run = tr.classes[k].runs[tr.classes[k].best].run;
      std::ostringstream body;
      write_trace_csv(body, run.trace);
      std::string line;
      std::istringstream lines(body.str());
      std::getline(lines, line);
      while (std::getline(lines, line)) f << (k + 1) << ',' << line << '\n';
    }
  }
  return 0;
}

int run_evaluate(const EvaluateOptions& o) {
  auto mf = open_in(o.model);
  const OvrModel model = read_ovr(mf);
  const Dataset ds = load_csv(o.data);
  const std::vector<int> pred = classify_all(model, ds.x);
  const double acc = accuracy(model, ds);
  if (o.report == "csv") {
    std::cout << "row,label,predicted\n";
    for (std::size_t i = 0; i < pred.size(); ++i)
      std::cout << i << ',' << ds.labels[i] << ',' << pred[i] << '\n';
    std::cout << "accuracy," << io::format_double(acc) << '\n';
  } else if (o.report == "md") {
    std::cout << "| Class | Name |\n|---|---|\n";
    for (std::size_t k = 0; k < model.class_names.size(); ++k)
      std::cout << "| " << (k + 1) << " | " << model.class_names[k] << " |\n";
    std::cout << "\nAccuracy: " << io::format_double(acc) << '\n';
  } else {
    throw InputError("unknown report format '" + o.report + "' (expected csv or md)");
  }
  if (!o.pca_out.empty()) {
    const auto [z, stats] = standardize(ds);
    const PCAResult p = pca(z.x, 2);
    const Matrix proj = p.project(z.x);
    auto f = open_out(o.pca_out);
    f << "pc1,pc2,label,predicted\n";
    for (std::size_t i = 0; i < ds.n(); ++i)
      f << io::format_double(proj(i, 0)) << ',' << io::format_double(proj(i, 1)) << ',' << ds.labels[i]
        << ',' << pred[i] << '\n';
  }
  return 0;
}

int run_approx(const ApproxOptions& o, std::uint64_t seed) {
  const auto [lo, hi] = parse_box(o.box);
  const CompactBox box = CompactBox::cube(o.dim, lo, hi);
  const auto rows = approx_sweep(o.gamma, o.m1_list, o.seeds, seed, box, o.grid, o.m2);
  std::ostringstream csv;
  csv << "M1,seed,sup_error\n";
  for (const auto& r : rows) csv << r.m1 << ',' << r.seed << ',' << io::format_double(r.sup_error) << '\n';
  if (o.out.empty()) {
    std::cout << csv.str();
  } else {
    auto f = open_out(o.out);
    f << csv.str();
  }
  return 0;
}

int run_mercer(const std::string& path) {
  auto f = open_in(path);
  const SignedFeatureModel model = read_signed_model(f);
  const FrameVerdict v = check_frame(model);
  std::cout << "verdict " << (v.mercer ? "mercer" : "not-mercer") << '\n';
  std::cout << "min_eigenvalue " << io::format_double(v.min_eigenvalue) << '\n';
  return 0;
}

int run_poly(const std::string& expr, bool membership) {
  const poly::MPoly q = poly::parse_poly(expr);
  std::cout << "polynomial " << q.to_string() << '\n';
  std::cout << "vanishes_on_L " << (poly::vanishes_on_L(q) ? "yes" : "no") << '\n';
  if (!membership) return 0;
  bool member = true;
  for (const auto& [k, part] : q.homogeneous_parts()) {
    const auto w = k < 2 ? std::nullopt : poly::closure_witness(part);
    std::cout << "degree " << k << ' ' << (w ? "not-in-closure" : "in-closure") << '\n';
    if (w) {
      member = false;
      std::cout << "  witness p = " << w->p.to_string() << '\n';
      std::cout << "  p(D)q = " << w->result.to_string() << '\n';
    }
  }
  std::cout << "membership " << (member ? "in-closure" : "not-in-closure") << '\n';
  return 0;
}

int run_report(const std::string& data, const TrainOptions& base, std::uint64_t seed) {
  const Dataset raw = load_csv(data);
  const auto [ds, stats] = standardize(raw);
  std::vector<Table1Row> rows;
  for (const char* solver : {"qr", "neumann"}) {
    for (const char* act : {"cos", "relu"}) {
      TrainOptions o = base;
      o.solver = solver;
      o.activation = act;
      rows.push_back(run_table1_config(ds, make_config(o, seed)));
    }
  }
  std::cout << table1_markdown(rows);
  std::cout << "\nPer-seed accuracies:\n";
  for (const auto& r : rows) {
    std::cout << r.method << " / " << r.function << ':';
    for (double a : r.seed_accuracies) std::cout << ' ' << io::format_double(a);
    std::cout << '\n';
  }
  const PCAResult p = pca(ds.x, 2);
  std::cout << "\nPCA explained variance (PC1+PC2): "
            << io::format_double(p.explained_ratio[0] + p.explained_ratio[1]) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ridge-function kernel machines"};
  app.set_config("--config", "", "key=value defaults file");
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "base seed for all randomness");

  TrainOptions train;
  auto add_train_opts = [&](CLI::App* cmd) {
    cmd->add_option("--activation", train.activation)->check(CLI::IsMember({"cos", "cosine", "relu"}));
    cmd->add_option("--solver", train.solver)->check(CLI::IsMember({"qr", "neumann"}));
    cmd->add_option("--neumann-order", train.neumann_order)->check(CLI::PositiveNumber);
    cmd->add_option("--m", train.m)->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", train.lambda)->check(CLI::PositiveNumber);
    cmd->add_option("--seeds", train.seeds)->check(CLI::PositiveNumber);
    cmd->add_option("--max-iters", train.max_iters)->check(CLI::PositiveNumber);
  };
  auto* train_cmd = app.add_subcommand("train", "fit a one-vs-rest model");
  train_cmd->add_option("--data", train.data)->required();
  add_train_opts(train_cmd);
  train_cmd->add_option("--out", train.out, "model file");
  train_cmd->add_option("--trace", train.trace, "optimizer trace CSV");
  train_cmd->add_option("--holdout", train.holdout, "held-out fraction")->check(CLI::Range(0.0, 0.9));

  EvaluateOptions eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "score a model on a dataset");
  eval_cmd->add_option("--model", eval.model)->required();
  eval_cmd->add_option("--data", eval.data)->required();
  eval_cmd->add_option("--report", eval.report)->check(CLI::IsMember({"csv", "md"}));
  eval_cmd->add_option("--pca-out", eval.pca_out, "CSV of 2-D PCA coordinates with labels");

  ApproxOptions approx;
  auto* approx_cmd = app.add_subcommand("approx-check", "Gaussian random-feature sup error sweep");
  approx_cmd->add_option("--gamma", approx.gamma)->check(CLI::PositiveNumber);
  approx_cmd->add_option("--m1-list", approx.m1_list)->delimiter(',');
  approx_cmd->add_option("--seeds", approx.seeds)->check(CLI::PositiveNumber);
  approx_cmd->add_option("--box", approx.box);
  approx_cmd->add_option("--grid", approx.grid)->check(CLI::Range(2, 1000));
  approx_cmd->add_option("--dim", approx.dim)->check(CLI::PositiveNumber);
  approx_cmd->add_option("--m2", approx.m2, "equispaced phases per frequency, 0 keeps random phases");
  approx_cmd->add_option("--out", approx.out);

  std::string vectors;
  auto* mercer_cmd = app.add_subcommand("mercer-check", "frame condition for a signed feature model");
  mercer_cmd->add_option("--vectors", vectors)->required();

  std::string expr;
  bool membership = false;
  auto* poly_cmd = app.add_subcommand("poly-check", "vanishing and closure tests for a kernel polynomial");
  poly_cmd->add_option("--expr", expr)->required();
  poly_cmd->add_flag("--membership", membership);

  std::string report_data;
  bool table1 = false;
  auto* report_cmd = app.add_subcommand("report", "reproduce the Iris accuracy table");
  report_cmd->add_flag("--run-table1", table1)->required();
  report_cmd->add_option("--data", report_data)->required();
  add_train_opts(report_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*train_cmd) return run_train(train, seed);
    if (*eval_cmd) return run_evaluate(eval);
    if (*approx_cmd) return run_approx(approx, seed);
    if (*mercer_cmd) return run_mercer(vectors);
    if (*poly_cmd) return run_poly(expr, membership);
    if (*report_cmd) return run_report(report_data, train, seed);
  } catch (const ridgekm::Error& e) {
    std::cerr << "ridgekm: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ridgekm: error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
