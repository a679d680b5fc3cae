// Text and JSON rendering of evaluation reports.

#ifndef GPCR_REPORT_HPP_
#define GPCR_REPORT_HPP_

#include <string>

#include <json.hpp>

#include "gpcr/eval.hpp"

namespace gpcr {

// Summary block in the classic "Correctly Classified Instances ..." layout,
// followed by sensitivity/specificity/MCC and the confusion matrix.
std::string format_text(const EvaluationReport& report);
std::string format_text(const CvResult& result);

nlohmann::json to_json(const EvaluationReport& report);
nlohmann::json to_json(const CvResult& result);

} // namespace gpcr

#endif
