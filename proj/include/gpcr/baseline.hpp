// Gaussian Naive Bayes comparison classifier.

#ifndef GPCR_BASELINE_HPP_
#define GPCR_BASELINE_HPP_

#include <array>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "gpcr/features.hpp"

namespace gpcr {

inline constexpr double kVarianceFloor = 1e-9;

// Index 0 is the positive class, 1 the negative class.
struct NbModel {
  std::array<double, 2> prior{};
  std::array<std::vector<double>, 2> mean;
  std::array<std::vector<double>, 2> variance;

  std::size_t dimension() const { return mean[0].size(); }
  // log prior + sum of log Gaussian densities for class index k.
  double log_score(std::size_t k, std::span<const double> x) const;
};

// Class frequencies as priors, population variances floored at kVarianceFloor.
NbModel nb_train(const Dataset& data);
// Argmax of log_score; ties go to the positive class.
Label nb_predict(const NbModel& model, std::span<const double> x);

inline constexpr const char* kNbSchema = "gpcr-nb/1";

void save_nb_model(const NbModel& model, std::ostream& out);
NbModel load_nb_model(std::istream& in);

} // namespace gpcr

#endif
