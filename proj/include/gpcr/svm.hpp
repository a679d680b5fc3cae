// Soft-margin RBF support vector machine trained by sequential minimal optimization.

#ifndef GPCR_SVM_HPP_
#define GPCR_SVM_HPP_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gpcr/features.hpp"

namespace gpcr {

struct SvmConfig {
  double gamma = 10.0;
  double c = 1.0;
  double kkt_tolerance = 1e-3;
  // Consecutive updates without dual improvement before giving up; 0 means 10 * n.
  std::size_t max_passes = 0;
  // Hard cap on pair updates; 0 means 100000 + 1000 * n.
  std::size_t max_iterations = 0;
  std::uint64_t seed = 42;
  // Kernel rows held by the LRU cache; 0 means the full Gram matrix when n <= 2000.
  std::size_t cache_rows = 0;
  // Track the dual objective after every update and count decreases.
  bool debug_checks = false;

  // Throws ContractError unless gamma, c and kkt_tolerance are positive and finite.
  void validate() const;
};

// exp(-gamma * |x - y|^2)
double rbf_kernel(std::span<const double> x, std::span<const double> y, double gamma);

struct SmoStats {
  std::size_t iterations = 0;
  bool converged = false;
  double dual_objective = 0;        // sum(a) - 1/2 a'Qa
  double max_kkt_violation = 0;     // max over i of the violated side of y_i f(x_i) - 1
  double alpha_y_sum = 0;           // sum(a_i y_i) before pruning
  std::size_t objective_decreases = 0;  // only counted with debug_checks
  std::vector<double> objective_trace;  // only filled with debug_checks
};

struct SmoSolution {
  std::vector<double> alpha;  // one per training point, including zeros
  double bias = 0;
  SmoStats stats;
};

// Low-level solver over raw points and +1/-1 targets.
SmoSolution solve_smo(std::span<const std::vector<double>> points, std::span<const int> targets,
                      const SvmConfig& config);

class SvmModel {
public:
  SvmModel() = default;
  SvmModel(std::vector<std::vector<double>> support_vectors, std::vector<double> dual_coeffs,
           double bias, SvmConfig config, std::optional<Normalizer> normalizer);

  // Sum of dual_coeffs[i] K(sv_i, x) + bias, x already normalized.
  double decision_function(std::span<const double> x) const;
  // Positive iff decision_function(x) >= 0.
  Label predict(std::span<const double> x) const;

  // Same on raw features: the stored normalizer is applied first.
  double decision_raw(std::span<const double> raw) const;
  Label predict_raw(std::span<const double> raw) const;

  std::size_t dimension() const;
  const std::vector<std::vector<double>>& support_vectors() const { return support_vectors_; }
  const std::vector<double>& dual_coeffs() const { return dual_coeffs_; }
  double bias() const { return bias_; }
  const SvmConfig& config() const { return config_; }
  const std::optional<Normalizer>& normalizer() const { return normalizer_; }

  // Positive-class fraction of the training set, used as the RAE/RRSE baseline.
  std::optional<double> train_positive_prior;

private:
  std::vector<std::vector<double>> support_vectors_;
  std::vector<double> dual_coeffs_;
  double bias_ = 0;
  SvmConfig config_;
  std::optional<Normalizer> normalizer_;
  std::size_t dimension_ = 0;
};

// Trains on an already-normalized dataset; the dataset's normalizer (if any)
// is stored in the model. Throws DataError on single-class or non-finite input.
SvmModel train_svm(const Dataset& data, const SvmConfig& config, SmoStats* stats = nullptr);

inline constexpr const char* kSvmSchema = "gpcr-svm/1";

void save_model(const SvmModel& model, std::ostream& out);
// Throws ModelError naming the offending field.
SvmModel load_model(std::istream& in);

} // namespace gpcr

#endif
