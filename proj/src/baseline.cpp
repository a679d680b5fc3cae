#include "gpcr/baseline.hpp"

#include <cmath>
#include <numbers>

#include "gpcr/error.hpp"
#include "gpcr/json_util.hpp"

namespace gpcr {

namespace {
std::size_t class_index(Label l) { return l == Label::Positive ? 0 : 1; }
} // namespace

NbModel nb_train(const Dataset& data) {
  if (data.vectors.empty())
    throw DataError("naive Bayes: empty training set");
  const std::size_t dim = data.vectors.front().values.size();
  std::array<std::size_t, 2> n{};
  NbModel model;
  for (std::size_t k = 0; k < 2; ++k) {
    model.mean[k].assign(dim, 0.0);
    model.variance[k].assign(dim, 0.0);
  }
  for (const FeatureVector& v : data.vectors) {
    if (v.values.size() != dim)
      throw DataError("naive Bayes: ragged feature vectors");
    std::size_t k = class_index(v.label);
    ++n[k];
    for (std::size_t f = 0; f < dim; ++f)
      model.mean[k][f] += v.values[f];
  }
  if (!n[0] || !n[1])
    throw DataError("naive Bayes: training data must contain both classes");
  for (std::size_t k = 0; k < 2; ++k)
    for (double& m : model.mean[k])
      m /= static_cast<double>(n[k]);
  for (const FeatureVector& v : data.vectors) {
    std::size_t k = class_index(v.label);
    for (std::size_t f = 0; f < dim; ++f) {
      double d = v.values[f] - model.mean[k][f];
      model.variance[k][f] += d * d;
    }
  }
  for (std::size_t k = 0; k < 2; ++k) {
    for (double& var : model.variance[k])
      var = std::max(var / static_cast<double>(n[k]), kVarianceFloor);
    model.prior[k] = static_cast<double>(n[k]) / static_cast<double>(data.size());
  }
  return model;
}

double NbModel::log_score(std::size_t k, std::span<const double> x) const {
  if (x.size() != dimension())
    throw ContractError("naive Bayes: expected dimension " + std::to_string(dimension()) +
                        ", got " + std::to_string(x.size()));
  double s = std::log(prior[k]);
  for (std::size_t f = 0; f < x.size(); ++f) {
    double d = x[f] - mean[k][f];
    s -= 0.5 * (std::log(2 * std::numbers::pi * variance[k][f]) + d * d / variance[k][f]);
  }
  return s;
}

Label nb_predict(const NbModel& model, std::span<const double> x) {
  return model.log_score(0, x) >= model.log_score(1, x) ? Label::Positive : Label::Negative;
}

void save_nb_model(const NbModel& model, std::ostream& out) {
  nlohmann::json doc;
  doc["schema"] = kNbSchema;
  doc["positive_label"] = label_name(Label::Positive);
  doc["prior"] = model.prior;
  doc["mean"] = model.mean;
  doc["variance"] = model.variance;
  out << doc.dump(1) << '\n';
}

NbModel load_nb_model(std::istream& in) {
  namespace ju = json_util;
  auto doc = ju::parse_document(in);
  ju::check_schema(doc, kNbSchema);
  NbModel model;
  auto prior = ju::reals(ju::field(doc, "prior", ""), "/prior");
  if (prior.size() != 2 || prior[0] <= 0 || prior[1] <= 0 ||
      std::abs(prior[0] + prior[1] - 1) > 1e-12)
    throw ModelError("/prior", "expected two positive priors summing to 1");
  model.prior = {prior[0], prior[1]};
  for (const char* name : {"mean", "variance"}) {
    const auto& arr = ju::field(doc, name, "");
    std::string path = std::string("/") + name;
    if (!arr.is_array() || arr.size() != 2)
      throw ModelError(path, "expected two per-class arrays");
    auto& dst = std::string_view(name) == "mean" ? model.mean : model.variance;
    for (std::size_t k = 0; k < 2; ++k)
      dst[k] = ju::reals(arr[k], path + "/" + std::to_string(k));
  }
  std::size_t dim = model.mean[0].size();
  for (std::size_t k = 0; k < 2; ++k) {
    if (model.mean[k].size() != dim || model.variance[k].size() != dim)
      throw ModelError("/variance/" + std::to_string(k), "dimension mismatch");
    for (std::size_t f = 0; f < dim; ++f)
      if (model.variance[k][f] < kVarianceFloor)
        throw ModelError("/variance/" + std::to_string(k) + "/" + std::to_string(f),
                         "below variance floor");
  }
  return model;
}

} // namespace gpcr
