#include "gpcr/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <unordered_map>

#include "gpcr/error.hpp"

namespace gpcr {

void SvmConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0; };
  if (!positive(gamma))
    throw ContractError("gamma must be positive");
  if (!positive(c))
    throw ContractError("C must be positive");
  if (!positive(kkt_tolerance))
    throw ContractError("kkt tolerance must be positive");
}

double rbf_kernel(std::span<const double> x, std::span<const double> y, double gamma) {
  if (x.size() != y.size())
    throw ContractError("rbf_kernel: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                        std::to_string(y.size()) + ")");
  double d2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - y[i];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

namespace {

// Rows of the Gram matrix, least recently used evicted first.
class KernelCache {
public:
  KernelCache(std::span<const std::vector<double>> points, double gamma, std::size_t budget)
    : points_(points), gamma_(gamma), budget_(std::max<std::size_t>(budget, 2)) {}

  const std::vector<double>& row(std::size_t i) {
    if (auto it = index_.find(i); it != index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->second;
    }
    if (index_.size() >= budget_) {
      index_.erase(lru_.back().first);
      lru_.pop_back();
    }
    std::vector<double> r(points_.size());
    for (std::size_t t = 0; t < points_.size(); ++t)
      r[t] = rbf_kernel(points_[i], points_[t], gamma_);
    lru_.emplace_front(i, std::move(r));
    index_[i] = lru_.begin();
    return lru_.front().second;
  }

private:
  using Entry = std::pair<std::size_t, std::vector<double>>;
  std::span<const std::vector<double>> points_;
  double gamma_;
  std::size_t budget_;
  std::list<Entry> lru_;
  std::unordered_map<std::size_t, std::list<Entry>::iterator> index_;
};

constexpr double kTau = 1e-12;

} // namespace

// Dual in minimization form: min 1/2 a'Qa - e'a, Q_ij = y_i y_j K_ij,
// gradient G = Qa - e. With F_t = y_t G_t the optimality condition is
// max_{I_low} F <= min_{I_up} F; each step updates the maximal violating pair.
SmoSolution solve_smo(std::span<const std::vector<double>> points, std::span<const int> targets,
                      const SvmConfig& config) {
  config.validate();
  const std::size_t n = points.size();
  if (targets.size() != n)
    throw ContractError("solve_smo: points/targets size mismatch");
  bool has_pos = false, has_neg = false;
  for (std::size_t t = 0; t < n; ++t) {
    if (targets[t] != 1 && targets[t] != -1)
      throw ContractError("solve_smo: targets must be +1 or -1");
    (targets[t] > 0 ? has_pos : has_neg) = true;
    if (points[t].size() != points[0].size())
      throw ContractError("solve_smo: ragged points");
    for (double v : points[t])
      if (!std::isfinite(v))
        throw DataError("non-finite feature value");
  }
  if (!has_pos || !has_neg)
    throw DataError("training data must contain both classes");

  const double C = config.c;
  const double tol = config.kkt_tolerance;
  const std::size_t max_passes = config.max_passes ? config.max_passes : 10 * n;
  const std::size_t max_iter = config.max_iterations ? config.max_iterations : 100000 + 1000 * n;
  const std::size_t budget = config.cache_rows ? config.cache_rows : (n <= 2000 ? n : 2000);
  KernelCache cache(points, config.gamma, budget);

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);
  auto y = [&](std::size_t t) { return static_cast<double>(targets[t]); };
  auto in_up = [&](std::size_t t) { return targets[t] > 0 ? alpha[t] < C : alpha[t] > 0; };
  auto in_low = [&](std::size_t t) { return targets[t] > 0 ? alpha[t] > 0 : alpha[t] < C; };
  auto objective = [&] {
    // -(1/2 a'Qa - e'a) = -1/2 sum a_t (G_t - 1)
    double s = 0;
    for (std::size_t t = 0; t < n; ++t)
      s += alpha[t] * (grad[t] - 1.0);
    return -0.5 * s;
  };

  SmoSolution sol;
  SmoStats& stats = sol.stats;
  double best = 0;
  std::size_t stalled = 0;
  double prev = 0;
  if (config.debug_checks)
    stats.objective_trace.push_back(0.0);

  while (true) {
    // i minimizes F over I_up, j maximizes F over I_low (lowest index on ties)
    std::size_t i = n, j = n;
    double f_up = std::numeric_limits<double>::infinity();
    double f_low = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      double f = y(t) * grad[t];
      if (in_up(t) && f < f_up) {
        f_up = f;
        i = t;
      }
      if (in_low(t) && f > f_low) {
        f_low = f;
        j = t;
      }
    }
    if (i == n || j == n || f_low - f_up <= 2 * tol) {
      stats.converged = true;
      break;
    }
    if (stats.iterations >= max_iter || stalled >= max_passes)
      break;
    ++stats.iterations;

    const std::vector<double>& ki = cache.row(i);
    const double kii = ki[i], kij = ki[j];
    const double kjj = cache.row(j)[j];
    const double old_ai = alpha[i], old_aj = alpha[j];

    if (targets[i] != targets[j]) {
      double quad = kii + kjj - 2 * kij;
      if (quad <= 0)
        quad = kTau;
      double delta = (-grad[i] - grad[j]) / quad;
      double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > 0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      double quad = kii + kjj - 2 * kij;
      if (quad <= 0)
        quad = kTau;
      double delta = (grad[i] - grad[j]) / quad;
      double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }

    // Lower index first so that swapping the class convention replays the
    // same floating-point operations.
    for (std::size_t s : {std::min(i, j), std::max(i, j)}) {
      const double delta_s = alpha[s] - (s == i ? old_ai : old_aj);
      const std::vector<double>& row = cache.row(s);
      for (std::size_t t = 0; t < n; ++t)
        grad[t] += y(t) * y(s) * row[t] * delta_s;
    }

    double w = objective();
    if (w > best + 1e-15 * std::max(1.0, std::abs(best))) {
      best = w;
      stalled = 0;
    } else {
      ++stalled;
    }
    if (config.debug_checks) {
      if (w < prev - 1e-12 * std::max(1.0, std::abs(prev)))
        ++stats.objective_decreases;
      stats.objective_trace.push_back(w);
      prev = w;
    }
  }

  // Recompute the gradient from scratch so reported statistics carry no drift.
  std::fill(grad.begin(), grad.end(), -1.0);
  for (std::size_t s = 0; s < n; ++s) {
    if (alpha[s] == 0)
      continue;
    const std::vector<double>& row = cache.row(s);
    for (std::size_t t = 0; t < n; ++t)
      grad[t] += y(t) * y(s) * row[t] * alpha[s];
  }
  double f_up = std::numeric_limits<double>::infinity();
  double f_low = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n; ++t) {
    double f = y(t) * grad[t];
    if (in_up(t))
      f_up = std::min(f_up, f);
    if (in_low(t))
      f_low = std::max(f_low, f);
  }
  sol.bias = -0.5 * (f_up + f_low);

  stats.dual_objective = objective();
  for (std::size_t t = 0; t < n; ++t) {
    stats.alpha_y_sum += alpha[t] * y(t);
    // y f(x) - 1 = y (F + b)
    double margin = y(t) * (y(t) * grad[t] + sol.bias);
    double v = 0;
    if (alpha[t] < C && margin < 0)
      v = -margin;
    if (alpha[t] > 0 && margin > 0)
      v = std::max(v, margin);
    stats.max_kkt_violation = std::max(stats.max_kkt_violation, v);
  }
  sol.alpha = std::move(alpha);
  return sol;
}

SvmModel::SvmModel(std::vector<std::vector<double>> support_vectors,
                   std::vector<double> dual_coeffs, double bias, SvmConfig config,
                   std::optional<Normalizer> normalizer)
  : support_vectors_(std::move(support_vectors)), dual_coeffs_(std::move(dual_coeffs)),
    bias_(bias), config_(config), normalizer_(std::move(normalizer)) {
  if (support_vectors_.size() != dual_coeffs_.size())
    throw ContractError("support vector / coefficient count mismatch");
  if (!support_vectors_.empty())
    dimension_ = support_vectors_.front().size();
  else if (normalizer_)
    dimension_ = normalizer_->dimension();
  for (const auto& sv : support_vectors_)
    if (sv.size() != dimension_)
      throw ContractError("support vectors differ in dimension");
  if (normalizer_ && normalizer_->dimension() != dimension_)
    throw ContractError("normalizer dimension differs from support vectors");
}

std::size_t SvmModel::dimension() const { return dimension_; }

double SvmModel::decision_function(std::span<const double> x) const {
  if (x.size() != dimension_)
    throw ContractError("decision_function: expected dimension " + std::to_string(dimension_) +
                        ", got " + std::to_string(x.size()));
  double f = bias_;
  for (std::size_t i = 0; i < support_vectors_.size(); ++i)
    f += dual_coeffs_[i] * rbf_kernel(support_vectors_[i], x, config_.gamma);
  return f;
}

Label SvmModel::predict(std::span<const double> x) const {
  return decision_function(x) >= 0 ? Label::Positive : Label::Negative;
}

double SvmModel::decision_raw(std::span<const double> raw) const {
  if (!normalizer_)
    return decision_function(raw);
  return decision_function(normalizer_->apply(raw));
}

Label SvmModel::predict_raw(std::span<const double> raw) const {
  return decision_raw(raw) >= 0 ? Label::Positive : Label::Negative;
}

SvmModel train_svm(const Dataset& data, const SvmConfig& config, SmoStats* stats) {
  std::vector<std::vector<double>> points;
  std::vector<int> targets;
  points.reserve(data.size());
  for (const FeatureVector& v : data.vectors) {
    points.push_back(v.values);
    targets.push_back(v.label == Label::Positive ? 1 : -1);
  }
  SmoSolution sol = solve_smo(points, targets, config);

  std::vector<std::vector<double>> sv;
  std::vector<double> coeffs;
  for (std::size_t t = 0; t < points.size(); ++t) {
    if (sol.alpha[t] > 0) {
      sv.push_back(std::move(points[t]));
      coeffs.push_back(sol.alpha[t] * targets[t]);
    }
  }
  SvmModel model(std::move(sv), std::move(coeffs), sol.bias, config, data.normalizer);
  model.train_positive_prior =
      static_cast<double>(data.count(Label::Positive)) / static_cast<double>(data.size());
  if (stats)
    *stats = std::move(sol.stats);
  return model;
}

} // namespace gpcr
