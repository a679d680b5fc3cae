#include "gpcr/learners.hpp"

#include <memory>

#include "gpcr/baseline.hpp"

namespace gpcr {

Dataset prepare_training(const Dataset& raw, NormalizeMode mode) {
  if (mode == NormalizeMode::None) {
    Dataset out = raw;
    out.normalizer.reset();
    return out;
  }
  return normalize(raw, Normalizer::fit(raw.vectors));
}

Learner svm_learner(const SvmConfig& config, NormalizeMode mode) {
  config.validate();
  return [config, mode](const Dataset& train) -> Predictor {
    auto model = std::make_shared<const SvmModel>(train_svm(prepare_training(train, mode), config));
    return [model](std::span<const double> raw) { return model->predict_raw(raw); };
  };
}

Learner nb_learner() {
  return [](const Dataset& train) -> Predictor {
    auto model = std::make_shared<const NbModel>(nb_train(train));
    return [model](std::span<const double> raw) { return nb_predict(*model, raw); };
  };
}

} // namespace gpcr
