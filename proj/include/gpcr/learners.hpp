// Learner adapters used by holdout evaluation, cross-validation and grid search.

#ifndef GPCR_LEARNERS_HPP_
#define GPCR_LEARNERS_HPP_

#include "gpcr/eval.hpp"
#include "gpcr/svm.hpp"

namespace gpcr {

// Fits the normalizer on the training part only, then trains the SVM.
Learner svm_learner(const SvmConfig& config, NormalizeMode mode);
// Gaussian naive Bayes on raw features.
Learner nb_learner();

// Normalizer fitted on data per mode, and the scaled copy.
Dataset prepare_training(const Dataset& raw, NormalizeMode mode);

} // namespace gpcr

#endif
