#include "gpcr/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "gpcr/error.hpp"
#include "gpcr/random.hpp"

namespace gpcr {

ConfusionMatrix confusion(std::span<const Label> actual, std::span<const Label> predicted) {
  if (actual.size() != predicted.size())
    throw DataError("confusion: actual/predicted length mismatch");
  if (actual.empty())
    throw DataError("confusion: no instances");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    bool a = actual[i] == Label::Positive;
    bool p = predicted[i] == Label::Positive;
    if (a && p)
      ++m.tp;
    else if (a)
      ++m.fn;
    else if (p)
      ++m.fp;
    else
      ++m.tn;
  }
  return m;
}

namespace {
std::optional<double> percent(std::size_t num, std::size_t den) {
  if (den == 0)
    return std::nullopt;
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}
} // namespace

BasicMetrics basic_metrics(const ConfusionMatrix& m) {
  return {percent(m.tp + m.tn, m.total()), percent(m.tp, m.tp + m.fn), percent(m.tn, m.tn + m.fp)};
}

FlaggedValue mcc(const ConfusionMatrix& m) {
  const double tp = static_cast<double>(m.tp), fp = static_cast<double>(m.fp);
  const double fn = static_cast<double>(m.fn), tn = static_cast<double>(m.tn);
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom == 0)
    return {0.0, true};
  return {(tp * tn - fp * fn) / std::sqrt(denom), false};
}

FlaggedValue kappa(const ConfusionMatrix& m) {
  const double n = static_cast<double>(m.total());
  if (n == 0)
    return {0.0, true};
  const double tp = static_cast<double>(m.tp), fp = static_cast<double>(m.fp);
  const double fn = static_cast<double>(m.fn), tn = static_cast<double>(m.tn);
  const double po = (tp + tn) / n;
  const double pe = ((tp + fp) * (tp + fn) + (fn + tn) * (fp + tn)) / (n * n);
  if (pe == 1)
    return {0.0, true};
  return {(po - pe) / (1 - pe), false};
}

ErrorMetrics error_metrics(std::span<const double> actual, std::span<const double> predicted,
                           std::span<const double> priors) {
  const std::size_t n = actual.size();
  if (predicted.size() != n || priors.size() != n)
    throw DataError("error_metrics: length mismatch");
  if (n == 0)
    throw DataError("error_metrics: no instances");
  double abs_err = 0, sq_err = 0, abs_base = 0, sq_base = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(priors[i] > 0 && priors[i] < 1))
      throw DataError("error_metrics: baseline prior must lie in (0,1)");
    double e = predicted[i] - actual[i];
    double b = priors[i] - actual[i];
    abs_err += std::abs(e);
    sq_err += e * e;
    abs_base += std::abs(b);
    sq_base += b * b;
  }
  ErrorMetrics out;
  out.mae = abs_err / static_cast<double>(n);
  out.rmse = std::sqrt(sq_err / static_cast<double>(n));
  out.rae = 100.0 * abs_err / abs_base;
  out.rrse = 100.0 * std::sqrt(sq_err / sq_base);
  return out;
}

ErrorMetrics error_metrics(std::span<const double> actual, std::span<const double> predicted,
                           double prior) {
  std::vector<double> priors(actual.size(), prior);
  return error_metrics(actual, predicted, priors);
}

EvaluationReport make_report(std::vector<InstanceRecord> instances, std::span<const double> priors) {
  std::vector<Label> actual, predicted;
  std::vector<double> a01, p01;
  for (const InstanceRecord& r : instances) {
    actual.push_back(r.actual);
    predicted.push_back(r.predicted);
    a01.push_back(r.actual == Label::Positive ? 1.0 : 0.0);
    p01.push_back(r.predicted == Label::Positive ? 1.0 : 0.0);
  }
  EvaluationReport rep;
  rep.matrix = confusion(actual, predicted);
  rep.basic = basic_metrics(rep.matrix);
  rep.mcc = mcc(rep.matrix);
  rep.kappa = kappa(rep.matrix);
  rep.errors = error_metrics(a01, p01, priors);
  rep.baseline_prior =
      std::accumulate(priors.begin(), priors.end(), 0.0) / static_cast<double>(priors.size());
  rep.instances = std::move(instances);
  return rep;
}

EvaluationReport make_report(std::vector<InstanceRecord> instances, double prior) {
  std::vector<double> priors(instances.size(), prior);
  EvaluationReport rep = make_report(std::move(instances), priors);
  rep.baseline_prior = prior;
  return rep;
}

double positive_prior(const Dataset& data) {
  if (data.vectors.empty())
    throw DataError("positive prior of an empty dataset");
  return static_cast<double>(data.count(Label::Positive)) / static_cast<double>(data.size());
}

namespace {

Dataset subset(const Dataset& data, const std::vector<std::size_t>& idx) {
  Dataset out;
  out.normalizer = data.normalizer;
  for (std::size_t i : idx)
    out.vectors.push_back(data.vectors[i]);
  out.provenance.ingested = out.provenance.retained = out.vectors.size();
  return out;
}

// Indices of positives then negatives, each shuffled.
std::array<std::vector<std::size_t>, 2> shuffled_classes(const Dataset& data, std::uint64_t seed) {
  std::array<std::vector<std::size_t>, 2> cls;
  for (std::size_t i = 0; i < data.size(); ++i)
    cls[data.vectors[i].label == Label::Positive ? 0 : 1].push_back(i);
  Rng rng(seed);
  rng.shuffle(cls[0]);
  rng.shuffle(cls[1]);
  return cls;
}

} // namespace

std::pair<Dataset, Dataset> holdout_split(const Dataset& data, std::size_t train_count,
                                          std::uint64_t seed) {
  const std::size_t n = data.size();
  if (train_count == 0 || train_count >= n)
    throw DataError("holdout: train count " + std::to_string(train_count) + " not in (0, " +
                    std::to_string(n) + ")");
  auto cls = shuffled_classes(data, seed);

  // Largest-remainder apportionment of train_count across the two classes.
  std::array<std::size_t, 2> take{};
  std::array<double, 2> frac{};
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < 2; ++k) {
    double quota = static_cast<double>(train_count) * static_cast<double>(cls[k].size()) /
                   static_cast<double>(n);
    take[k] = static_cast<std::size_t>(std::floor(quota));
    frac[k] = quota - std::floor(quota);
    assigned += take[k];
  }
  while (assigned < train_count) {
    std::size_t k = frac[0] >= frac[1] ? 0 : 1;
    ++take[k];
    frac[k] = -1;
    ++assigned;
  }
  for (std::size_t k = 0; k < 2; ++k)
    if (take[k] == 0 || take[k] >= cls[k].size())
      throw DataError(std::string("holdout: class '") + label_name(k ? Label::Negative : Label::Positive) +
                      "' cannot be represented in both parts");

  std::vector<std::size_t> train_idx, test_idx;
  for (std::size_t k = 0; k < 2; ++k) {
    train_idx.insert(train_idx.end(), cls[k].begin(), cls[k].begin() + static_cast<std::ptrdiff_t>(take[k]));
    test_idx.insert(test_idx.end(), cls[k].begin() + static_cast<std::ptrdiff_t>(take[k]), cls[k].end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  return {subset(data, train_idx), subset(data, test_idx)};
}

std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& data, std::size_t k,
                                                       std::uint64_t seed) {
  if (k < 2)
    throw DataError("cross-validation needs k >= 2");
  auto cls = shuffled_classes(data, seed);
  // Round-robin dealing keeps both classes in every training part once each
  // class has two members; k <= N keeps every fold non-empty.
  if (k > data.size())
    throw DataError("cross-validation: k = " + std::to_string(k) + " exceeds " +
                    std::to_string(data.size()) + " instances");
  if (cls[0].size() < 2 || cls[1].size() < 2)
    throw DataError("cross-validation: each class needs at least 2 instances");
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t pos = 0;
  for (const auto& members : cls)
    for (std::size_t i : members)
      folds[pos++ % k].push_back(i);
  for (auto& f : folds)
    std::sort(f.begin(), f.end());
  return folds;
}

namespace {

std::vector<InstanceRecord> predict_all(const Predictor& predictor, const Dataset& test) {
  std::vector<InstanceRecord> out;
  out.reserve(test.size());
  for (const FeatureVector& v : test.vectors)
    out.push_back({v.source_id, v.label, predictor(v.values)});
  return out;
}

} // namespace

EvaluationReport evaluate_split(const Dataset& train, const Dataset& test, const Learner& learner) {
  Predictor predictor = learner(train);
  EvaluationReport rep = make_report(predict_all(predictor, test), positive_prior(train));
  rep.mode = "holdout";
  return rep;
}

CvResult cross_validate(const Dataset& data, std::size_t k, const Learner& learner,
                        std::uint64_t seed) {
  auto folds = stratified_folds(data, k, seed);
  CvResult result;
  std::vector<InstanceRecord> pooled;
  std::vector<double> priors;
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train_idx;
    for (std::size_t g = 0; g < k; ++g)
      if (g != f)
        train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
    std::sort(train_idx.begin(), train_idx.end());
    Dataset train = subset(data, train_idx);
    Dataset test = subset(data, folds[f]);
    double prior = positive_prior(train);
    std::vector<InstanceRecord> recs = predict_all(learner(train), test);
    pooled.insert(pooled.end(), recs.begin(), recs.end());
    priors.insert(priors.end(), recs.size(), prior);
    EvaluationReport rep = make_report(std::move(recs), prior);
    rep.mode = "fold " + std::to_string(f + 1);
    result.folds.push_back(std::move(rep));
  }
  result.pooled = make_report(std::move(pooled), priors);
  result.pooled.mode = "cross-validation";
  return result;
}

} // namespace gpcr
