#include "ridgekm/ovr.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "ridgekm/error.hpp"
#include "ridgekm/text_io.hpp"

namespace ridgekm {

std::uint64_t class_seed(std::uint64_t seed, std::size_t k) { return seed * 1000003ULL + k; }

std::size_t OvrModel::d() const {
  if (models.empty()) throw InputError("empty one-vs-rest model");
  return models.front().theta().d();
}

std::size_t OvrTraining::failed_runs() const {
  std::size_t f = 0;
  for (const auto& c : classes)
    for (const auto& r : c.runs) f += is_failure(r.run.status) ? 1 : 0;
  return f;
}

std::size_t OvrTraining::total_runs() const {
  std::size_t t = 0;
  for (const auto& c : classes) t += c.runs.size();
  return t;
}

OvrTraining train_ovr_detailed(const Dataset& ds, const OvrConfig& config) {
  ds.validate();
  if (config.seeds.empty()) throw InputError("train_ovr: need at least one seed");
  const std::size_t k_classes = ds.k();
  OvrTraining out;
  out.per_seed.resize(config.seeds.size());
  for (std::size_t s = 0; s < config.seeds.size(); ++s) out.per_seed[s].class_names = ds.class_names;
  out.best.class_names = ds.class_names;

  for (std::size_t k = 0; k < k_classes; ++k) {
    Vector y(ds.n());
    for (std::size_t i = 0; i < ds.n(); ++i) y[i] = ds.labels[i] == static_cast<int>(k + 1) ? 1.0 : 0.0;
    std::vector<std::uint64_t> seeds;
    for (auto s : config.seeds) seeds.push_back(class_seed(s, k));

    ClassTraining ct;
    ct.runs = minimize_runs(ds.x, y, config.lambda, config.optim, seeds, config.m, config.activation);
    const ThetaSearch& best = best_run(ct.runs);
    ct.best = static_cast<std::size_t>(&best - ct.runs.data());
    for (std::size_t s = 0; s < ct.runs.size(); ++s)
      out.per_seed[s].models.push_back(fit(ct.runs[s].theta, ds.x, y, config.lambda));
    out.best.models.push_back(out.per_seed[ct.best].models.back());
    out.classes.push_back(std::move(ct));
  }
  return out;
}

OvrModel train_ovr(const Dataset& ds, const OvrConfig& config) {
  return std::move(train_ovr_detailed(ds, config).best);
}

std::size_t argmax_first(std::span<const double> scores) {
  if (scores.empty()) throw InputError("argmax of no scores");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return best;
}

Vector scores(const OvrModel& model, std::span<const double> x) {
  if (x.size() != model.d()) throw InputError("classify: point dimension does not match model");
  Vector z(x.begin(), x.end());
  if (model.stats)
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = (z[j] - model.stats->mean[j]) / model.stats->std[j];
  Vector f(model.models.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = predict(model.models[k], z);
  return f;
}

int classify(const OvrModel& model, std::span<const double> x) {
  return static_cast<int>(argmax_first(scores(model, x))) + 1;
}

std::vector<int> classify_all(const OvrModel& model, const Matrix& x) {
  std::vector<int> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out[i] = classify(model, x.row(i));
  return out;
}

double accuracy(const OvrModel& model, const Dataset& ds) {
  if (ds.n() == 0) throw InputError("accuracy on an empty dataset");
  const auto pred = classify_all(model, ds.x);
  std::size_t hit = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hit += pred[i] == ds.labels[i] ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(ds.n());
}

void write_ovr(std::ostream& out, const OvrModel& model) {
  out << "ovr " << model.models.size() << '\n';
  for (const auto& name : model.class_names) out << "class " << name << '\n';
  if (model.stats) {
    out << "standardize " << model.stats->mean.size() << '\n';
    out << io::join(model.stats->mean) << '\n' << io::join(model.stats->std) << '\n';
  } else {
    out << "standardize 0\n";
  }
  for (const auto& m : model.models) write_model(out, m);
}

OvrModel read_ovr(std::istream& in) {
  io::LineReader reader(in);
  auto tok = io::split_ws(reader.next("ovr header"));
  if (tok.size() != 2 || tok[0] != "ovr") throw ParseError("expected 'ovr <K>'", reader.line());
  const long long k = io::parse_int(tok[1], reader.line());
  if (k < 1) throw ParseError("model needs at least one class", reader.line());
  OvrModel model;
  for (long long i = 0; i < k; ++i) {
    const std::string line = reader.next("class name");
    if (!line.starts_with("class ")) throw ParseError("expected 'class <name>'", reader.line());
    model.class_names.emplace_back(io::trim(std::string_view(line).substr(6)));
  }
  const std::string st_line = reader.next("standardize");
  tok = io::split_ws(st_line);
  if (tok.size() != 2 || tok[0] != "standardize") throw ParseError("expected 'standardize <d>'", reader.line());
  const long long d = io::parse_int(tok[1], reader.line());
  if (d > 0) {
    StandardizeStats st;
    for (auto* target : {&st.mean, &st.std}) {
      const std::string row = reader.next("standardization row");
      for (auto f : io::split_ws(row)) target->push_back(io::parse_double(f, reader.line()));
      if (target->size() != static_cast<std::size_t>(d)) throw ParseError("standardization row arity", reader.line());
    }
    model.stats = std::move(st);
  }
  for (long long i = 0; i < k; ++i) model.models.push_back(read_model(reader));
  for (const auto& m : model.models)
    if (m.theta().d() != model.models.front().theta().d())
      throw ParseError("class models disagree on input dimension");
  if (model.stats && model.stats->mean.size() != model.d())
    throw ParseError("standardization does not match model dimension");
  return model;
}

double median(std::vector<double> v) {
  if (v.empty()) throw InputError("median of nothing");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double stddev(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size()));
}

Table1Row run_table1_config(const Dataset& ds, const OvrConfig& config) {
  const OvrTraining tr = train_ovr_detailed(ds, config);
  Table1Row row;
  row.method = config.optim.loss_mode.kind == LossMode::Kind::ClosedFormQR
                   ? "Inverted QR matrix"
                   : "Neumann approx. (L=" + std::to_string(config.optim.loss_mode.order) + ")";
  row.function = config.activation.name();
  row.accuracy = accuracy(tr.best, ds);
  for (const auto& m : tr.per_seed) row.seed_accuracies.push_back(accuracy(m, ds));
  row.best = *std::max_element(row.seed_accuracies.begin(), row.seed_accuracies.end());
  row.median = median(row.seed_accuracies);
  row.stddev = stddev(row.seed_accuracies);
  row.failed_runs = tr.failed_runs();
  row.total_runs = tr.total_runs();
  return row;
}

std::string table1_markdown(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "| Method | Function | Accuracy | Best seed | Median seed | Std over seeds | Failed runs |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    out << "| " << r.method << " | " << r.function << " | ";
    if (r.failed()) out << "optimization failed (" << r.accuracy << ")";
    else out << r.accuracy;
    out << " | " << r.best << " | " << r.median << " | " << r.stddev << " | " << r.failed_runs << '/'
        << r.total_runs << " |\n";
  }
  return out.str();
}

}  // namespace ridgekm
