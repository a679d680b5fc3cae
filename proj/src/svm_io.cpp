#include <json.hpp>

#include "gpcr/json_util.hpp"
#include "gpcr/svm.hpp"

namespace gpcr {

using nlohmann::json;

void save_model(const SvmModel& model, std::ostream& out) {
  json doc;
  doc["schema"] = kSvmSchema;
  doc["gamma"] = model.config().gamma;
  doc["c"] = model.config().c;
  doc["kkt_tolerance"] = model.config().kkt_tolerance;
  doc["bias"] = model.bias();
  doc["positive_label"] = label_name(Label::Positive);
  if (model.normalizer())
    doc["normalizer"] = {{"min", model.normalizer()->min()}, {"max", model.normalizer()->max()}};
  else
    doc["normalizer"] = nullptr;
  if (model.train_positive_prior)
    doc["train_positive_prior"] = *model.train_positive_prior;
  doc["support_vectors"] = model.support_vectors();
  doc["dual_coeffs"] = model.dual_coeffs();
  out << doc.dump(1) << '\n';
}

SvmModel load_model(std::istream& in) {
  namespace ju = json_util;
  json doc = ju::parse_document(in);
  ju::check_schema(doc, kSvmSchema);

  SvmConfig config;
  config.gamma = ju::real(ju::field(doc, "gamma", ""), "/gamma");
  config.c = ju::real(ju::field(doc, "c", ""), "/c");
  if (doc.contains("kkt_tolerance"))
    config.kkt_tolerance = ju::real(doc["kkt_tolerance"], "/kkt_tolerance");
  try {
    config.validate();
  } catch (const ContractError& e) {
    throw ModelError("", e.what());
  }
  double bias = ju::real(ju::field(doc, "bias", ""), "/bias");

  const json& pos = ju::field(doc, "positive_label", "");
  if (!pos.is_string() || pos.get<std::string>() != label_name(Label::Positive))
    throw ModelError("/positive_label", "expected \"human\"");

  std::optional<Normalizer> normalizer;
  const json& norm = ju::field(doc, "normalizer", "");
  if (!norm.is_null()) {
    auto lo = ju::reals(ju::field(norm, "min", "/normalizer"), "/normalizer/min");
    auto hi = ju::reals(ju::field(norm, "max", "/normalizer"), "/normalizer/max");
    try {
      normalizer = Normalizer(std::move(lo), std::move(hi));
    } catch (const ContractError& e) {
      throw ModelError("/normalizer", e.what());
    }
  }

  const json& svs = ju::field(doc, "support_vectors", "");
  if (!svs.is_array())
    throw ModelError("/support_vectors", "expected an array");
  std::vector<std::vector<double>> support;
  for (std::size_t i = 0; i < svs.size(); ++i)
    support.push_back(ju::reals(svs[i], "/support_vectors/" + std::to_string(i)));
  std::vector<double> coeffs = ju::reals(ju::field(doc, "dual_coeffs", ""), "/dual_coeffs");
  if (coeffs.size() != support.size())
    throw ModelError("/dual_coeffs", "length differs from support_vectors");
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] == 0 || std::abs(coeffs[i]) > config.c)
      throw ModelError("/dual_coeffs/" + std::to_string(i), "coefficient outside (0, C]");

  try {
    SvmModel model(std::move(support), std::move(coeffs), bias, config, std::move(normalizer));
    if (doc.contains("train_positive_prior"))
      model.train_positive_prior = ju::real(doc["train_positive_prior"], "/train_positive_prior");
    return model;
  } catch (const ContractError& e) {
    throw ModelError("/support_vectors", e.what());
  }
}

} // namespace gpcr
