#pragma once

// One-vs-rest classification with one kernel ridge scorer per class, trained
// by multi-start feature-parameter search.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ridgekm/dataset.hpp"
#include "ridgekm/krr.hpp"
#include "ridgekm/optim.hpp"

namespace ridgekm {

struct OvrConfig {
  std::size_t m = 2;
  double lambda = 0.01;
  Activation activation = Activation::cosine();
  OptimConfig optim;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
};

/// Seed for class `k` (0-based) of multi-start run `seed`.
std::uint64_t class_seed(std::uint64_t seed, std::size_t k);

struct OvrModel {
  std::vector<FittedModel> models;  ///< one per class, in label order
  std::vector<std::string> class_names;
  std::optional<StandardizeStats> stats;  ///< applied to raw inputs before scoring

  std::size_t d() const;
};

struct ClassTraining {
  std::vector<ThetaSearch> runs;  ///< one per seed
  std::size_t best = 0;
};

struct OvrTraining {
  OvrModel best;                  ///< per class, the lowest-loss run
  std::vector<OvrModel> per_seed; ///< every class trained from the same seed index
  std::vector<ClassTraining> classes;
  std::size_t failed_runs() const;
  std::size_t total_runs() const;
};

/// Trains on an already standardized dataset. Runs that end diverged or with no
/// progress still yield a model at the best theta found.
OvrTraining train_ovr_detailed(const Dataset& ds, const OvrConfig& config);
OvrModel train_ovr(const Dataset& ds, const OvrConfig& config);

/// Index of the largest score; the first one on ties.
std::size_t argmax_first(std::span<const double> scores);

/// f_k(x) for every class, x in the model's input space (raw if stats are set).
Vector scores(const OvrModel& model, std::span<const double> x);

/// 1-based label of the highest-scoring class.
int classify(const OvrModel& model, std::span<const double> x);

std::vector<int> classify_all(const OvrModel& model, const Matrix& x);

double accuracy(const OvrModel& model, const Dataset& ds);

void write_ovr(std::ostream& out, const OvrModel& model);
OvrModel read_ovr(std::istream& in);

struct Table1Row {
  std::string method;
  std::string function;
  double accuracy = 0.0;  ///< lowest-loss model per class
  std::vector<double> seed_accuracies;
  double best = 0.0;
  double median = 0.0;
  double stddev = 0.0;
  std::size_t failed_runs = 0;
  std::size_t total_runs = 0;
  bool failed() const { return failed_runs > 0 && 2 * failed_runs >= total_runs; }
};

/// Trains one Table-1 configuration on a standardized dataset.
Table1Row run_table1_config(const Dataset& ds, const OvrConfig& config);

/// Method x Function accuracy table, plus per-seed spread columns.
std::string table1_markdown(const std::vector<Table1Row>& rows);

double median(std::vector<double> v);
double stddev(std::span<const double> v);

}  // namespace ridgekm
