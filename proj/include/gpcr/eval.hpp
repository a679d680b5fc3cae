// Binary classification statistics, dataset splitting and cross-validation.

#ifndef GPCR_EVAL_HPP_
#define GPCR_EVAL_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpcr/features.hpp"

namespace gpcr {

// Positive class is human.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  // Same outcomes with the class convention reversed.
  ConfusionMatrix swapped() const { return {tn, fn, fp, tp}; }
  bool operator==(const ConfusionMatrix&) const = default;
};

// Throws DataError on empty input or length mismatch.
ConfusionMatrix confusion(std::span<const Label> actual, std::span<const Label> predicted);

// Percentages; nullopt where the denominator is zero.
struct BasicMetrics {
  std::optional<double> accuracy;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
};

BasicMetrics basic_metrics(const ConfusionMatrix& m);

// A statistic that falls back to 0 with degenerate set when undefined.
struct FlaggedValue {
  double value = 0;
  bool degenerate = false;
};

FlaggedValue mcc(const ConfusionMatrix& m);
FlaggedValue kappa(const ConfusionMatrix& m);

struct ErrorMetrics {
  double mae = 0;
  double rmse = 0;
  double rae = 0;   // percent
  double rrse = 0;  // percent
};

// actual/predicted are class indicators (1 = positive); prior is the positive
// fraction of the training data, the constant baseline predictor for rae/rrse.
// Throws DataError unless prior lies in (0,1).
ErrorMetrics error_metrics(std::span<const double> actual, std::span<const double> predicted,
                           double prior);
// Per-instance baseline, for pooled cross-validation where each fold has its own prior.
ErrorMetrics error_metrics(std::span<const double> actual, std::span<const double> predicted,
                           std::span<const double> priors);

struct InstanceRecord {
  std::string id;
  Label actual;
  Label predicted;
};

struct EvaluationReport {
  std::string method;  // "svm" or "nb"
  std::string mode;    // "test-set", "holdout", "cross-validation"
  ConfusionMatrix matrix;
  BasicMetrics basic;
  FlaggedValue mcc;
  FlaggedValue kappa;
  ErrorMetrics errors;
  double baseline_prior = 0;  // mean over instances when folds differ
  std::vector<InstanceRecord> instances;
};

// Builds a full report; priors holds one baseline prior per instance.
EvaluationReport make_report(std::vector<InstanceRecord> instances, std::span<const double> priors);
EvaluationReport make_report(std::vector<InstanceRecord> instances, double prior);

// Label-predicting function over raw (unnormalized) features.
using Predictor = std::function<Label(std::span<const double>)>;
// Fits on a raw training set, including any feature scaling.
using Learner = std::function<Predictor(const Dataset&)>;

// Positive fraction; throws DataError on an empty set.
double positive_prior(const Dataset& data);

// Stratified split keeping original order within each part. Throws DataError
// when train_count is not in (0, N) or a class would be absent from a part.
std::pair<Dataset, Dataset> holdout_split(const Dataset& data, std::size_t train_count,
                                          std::uint64_t seed);

// Stratified fold assignment: indices into data.vectors, each fold sorted.
std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& data, std::size_t k,
                                                       std::uint64_t seed);

EvaluationReport evaluate_split(const Dataset& train, const Dataset& test, const Learner& learner);

struct CvResult {
  EvaluationReport pooled;
  std::vector<EvaluationReport> folds;
};

// Requires 2 <= k <= N and at least 2 instances of each class.
CvResult cross_validate(const Dataset& data, std::size_t k, const Learner& learner,
                        std::uint64_t seed);

} // namespace gpcr

#endif
