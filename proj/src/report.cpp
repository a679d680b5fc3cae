#include "gpcr/report.hpp"

#include <cstdio>

namespace gpcr {

namespace {

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

std::string row(const char* name, const std::string& value) {
  return fmt("%-40s%s\n", name, value.c_str());
}

std::string pct(const std::optional<double>& v) {
  return v ? fmt("%.4f %%", *v) : std::string("UNDEFINED");
}

std::string flagged(const FlaggedValue& v) {
  return fmt("%.4f", v.value) + (v.degenerate ? " (degenerate)" : "");
}

} // namespace

std::string format_text(const EvaluationReport& r) {
  const ConfusionMatrix& m = r.matrix;
  const std::size_t n = m.total();
  const std::size_t correct = m.tp + m.tn;
  const double dn = static_cast<double>(n);
  std::string s;
  s += "=== Summary (" + r.method + ", " + r.mode + ") ===\n\n";
  s += row("Correctly Classified Instances",
           fmt("%-8zu %10.4f %%", correct, 100.0 * static_cast<double>(correct) / dn));
  s += row("Incorrectly Classified Instances",
           fmt("%-8zu %10.4f %%", n - correct, 100.0 * static_cast<double>(n - correct) / dn));
  s += row("Kappa statistic", flagged(r.kappa));
  s += row("Mean absolute error", fmt("%.4f", r.errors.mae));
  s += row("Root mean squared error", fmt("%.4f", r.errors.rmse));
  s += row("Relative absolute error", fmt("%.4f %%", r.errors.rae));
  s += row("Root relative squared error", fmt("%.4f %%", r.errors.rrse));
  s += row("Total Number of Instances", fmt("%zu", n));
  s += row("Baseline prior (human)", fmt("%.4f", r.baseline_prior));
  s += "\n=== Detailed Accuracy ===\n\n";
  s += row("Sensitivity", pct(r.basic.sensitivity));
  s += row("Specificity", pct(r.basic.specificity));
  s += row("Accuracy", pct(r.basic.accuracy));
  s += row("MCC", flagged(r.mcc));
  s += "\n=== Confusion Matrix ===\n\n";
  s += fmt("%7s %7s   <-- classified as\n", "human", "other");
  s += fmt("%7zu %7zu | human\n", m.tp, m.fn);
  s += fmt("%7zu %7zu | other\n", m.fp, m.tn);
  return s;
}

std::string format_text(const CvResult& result) {
  std::string s = format_text(result.pooled);
  s += "\n=== Folds ===\n\n";
  s += fmt("%-6s %5s %5s %5s %5s %10s\n", "fold", "tp", "fp", "fn", "tn", "accuracy");
  for (std::size_t f = 0; f < result.folds.size(); ++f) {
    const EvaluationReport& r = result.folds[f];
    s += fmt("%-6zu %5zu %5zu %5zu %5zu %10s\n", f + 1, r.matrix.tp, r.matrix.fp, r.matrix.fn,
             r.matrix.tn, pct(r.basic.accuracy).c_str());
  }
  return s;
}

namespace {
nlohmann::json opt(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}
} // namespace

nlohmann::json to_json(const EvaluationReport& r) {
  nlohmann::json j;
  j["method"] = r.method;
  j["mode"] = r.mode;
  j["matrix"] = {{"tp", r.matrix.tp}, {"fp", r.matrix.fp}, {"fn", r.matrix.fn}, {"tn", r.matrix.tn}};
  j["accuracy"] = opt(r.basic.accuracy);
  j["sensitivity"] = opt(r.basic.sensitivity);
  j["specificity"] = opt(r.basic.specificity);
  j["mcc"] = r.mcc.value;
  j["mcc_degenerate"] = r.mcc.degenerate;
  j["kappa"] = r.kappa.value;
  j["kappa_degenerate"] = r.kappa.degenerate;
  j["mae"] = r.errors.mae;
  j["rmse"] = r.errors.rmse;
  j["rae"] = r.errors.rae;
  j["rrse"] = r.errors.rrse;
  j["baseline_prior"] = r.baseline_prior;
  nlohmann::json inst = nlohmann::json::array();
  for (const InstanceRecord& i : r.instances)
    inst.push_back({{"id", i.id}, {"actual", label_name(i.actual)},
                    {"predicted", label_name(i.predicted)}});
  j["instances"] = std::move(inst);
  return j;
}

nlohmann::json to_json(const CvResult& result) {
  nlohmann::json j = to_json(result.pooled);
  nlohmann::json folds = nlohmann::json::array();
  for (const EvaluationReport& f : result.folds) {
    nlohmann::json fj = to_json(f);
    fj.erase("instances");
    folds.push_back(std::move(fj));
  }
  j["folds"] = std::move(folds);
  return j;
}

} // namespace gpcr
