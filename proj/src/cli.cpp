#include "gpcr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpcr/baseline.hpp"
#include "gpcr/error.hpp"
#include "gpcr/learners.hpp"
#include "gpcr/report.hpp"
#include "gpcr/synthetic.hpp"

namespace gpcr::cli {

namespace {

struct Failure : std::runtime_error {
  Failure(ExitCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  ExitCode code;
};

struct RunConfig {
  std::string fasta;
  std::string topology;
  std::string labels;
  std::string table;
  std::string model;
  std::string out;
  std::string normalize = "minmax";
  std::vector<double> gammas{10.0};
  std::vector<double> cs{1.0};
  double kkt_tol = 1e-3;
  std::size_t cv = 0;
  std::size_t holdout = 0;
  std::uint64_t seed = 42;
  std::string baseline;
  std::string format = "text";
  std::size_t per_class = 50;
};

void add_input_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--fasta", cfg.fasta, "Protein sequences (FASTA)");
  cmd->add_option("--topology", cfg.topology, "TMHMM long-format topology predictions");
  cmd->add_option("--labels", cfg.labels, "Label overrides: id<TAB>human|other");
  cmd->add_option("--table", cfg.table, "Feature table (CSV) instead of --fasta/--topology");
}

void add_svm_options(CLI::App* cmd, RunConfig& cfg, bool lists) {
  auto* g = cmd->add_option("--gamma", cfg.gammas, "RBF width")->default_str("10");
  auto* c = cmd->add_option("--c", cfg.cs, "Box constraint C")->default_str("1.0");
  if (lists) {
    g->delimiter(',');
    c->delimiter(',');
  } else {
    g->expected(1);
    c->expected(1);
  }
  cmd->add_option("--kkt-tol", cfg.kkt_tol, "SMO stopping tolerance")->capture_default_str();
  cmd->add_option("--normalize", cfg.normalize, "Feature scaling")
      ->check(CLI::IsMember({"none", "minmax"}))
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Seed for splits and folds")->capture_default_str();
}

void add_report_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "Report format on stdout")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", cfg.out, "Also write the JSON report here");
}

void require(bool ok, const std::string& msg) {
  if (!ok)
    throw Failure(kBadArguments, msg);
}

bool positive(double v) { return std::isfinite(v) && v > 0; }

void validate(const RunConfig& cfg) {
  require(!cfg.gammas.empty() && !cfg.cs.empty(), "at least one gamma and one C are required");
  for (double g : cfg.gammas)
    require(positive(g), "gamma must be positive");
  for (double c : cfg.cs)
    require(positive(c), "C must be positive");
  require(positive(cfg.kkt_tol), "--kkt-tol must be positive");
  require(cfg.per_class >= 1, "--per-class must be at least 1");

  namespace fs = std::filesystem;
  if (!cfg.out.empty()) {
    for (const std::string* in : {&cfg.fasta, &cfg.topology, &cfg.labels, &cfg.table, &cfg.model}) {
      std::error_code ec;
      if (!in->empty() && fs::exists(*in, ec) && fs::exists(cfg.out, ec) &&
          fs::equivalent(*in, cfg.out, ec))
        throw Failure(kBadArguments, "--out would overwrite input file " + *in);
    }
  }
}

SvmConfig svm_config(const RunConfig& cfg) {
  SvmConfig c;
  c.gamma = cfg.gammas.front();
  c.c = cfg.cs.front();
  c.kkt_tolerance = cfg.kkt_tol;
  c.seed = cfg.seed;
  return c;
}

NormalizeMode normalize_mode(const RunConfig& cfg) { return *parse_normalize_mode(cfg.normalize); }

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw std::ios_base::failure("cannot write " + path);
  return f;
}

void print_provenance(const Provenance& p, std::ostream& out) {
  out << "ingested " << p.ingested << '\n';
  out << "retained " << p.retained << '\n';
  out << "retained with unknown residues " << p.with_unknown << '\n';
  for (const auto& [reason, count] : p.excluded)
    out << "excluded " << reason << ' ' << count << '\n';
}

Dataset load_dataset(const RunConfig& cfg, std::ostream& err) {
  if (!cfg.table.empty()) {
    require(cfg.fasta.empty() && cfg.topology.empty(), "use either --table or --fasta/--topology");
    return read_feature_table_file(cfg.table);
  }
  require(!cfg.fasta.empty() && !cfg.topology.empty(),
          "input required: --table, or --fasta with --topology");
  auto records = read_fasta_file(cfg.fasta);
  auto topologies = read_topology_file(cfg.topology);
  LabelOverrides overrides;
  if (!cfg.labels.empty())
    overrides = read_label_overrides(cfg.labels);
  LabelingResult labeled = assign_labels(std::move(records), overrides);
  if (!labeled.unmatched_overrides.empty())
    err << "warning: " << labeled.unmatched_overrides.size()
        << " label override(s) name ids absent from the corpus\n";
  return assemble_dataset(labeled.records, topologies);
}

Dataset load_nonempty(const RunConfig& cfg, std::ostream& err) {
  Dataset data = load_dataset(cfg, err);
  if (data.vectors.empty())
    throw Failure(kEmptyResult, "no feature vectors retained");
  return data;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A loaded model of either kind.
struct AnyModel {
  std::optional<SvmModel> svm;
  std::optional<NbModel> nb;

  std::size_t dimension() const { return svm ? svm->dimension() : nb->dimension(); }
  Label predict(std::span<const double> raw) const {
    return svm ? svm->predict_raw(raw) : nb_predict(*nb, raw);
  }
  double score(std::span<const double> raw) const {
    return svm ? svm->decision_raw(raw) : nb->log_score(0, raw) - nb->log_score(1, raw);
  }
};

AnyModel load_any_model(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::ios_base::failure("cannot open model file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  std::string schema;
  try {
    auto doc = nlohmann::json::parse(text);
    if (doc.is_object() && doc.contains("schema") && doc["schema"].is_string())
      schema = doc["schema"].get<std::string>();
  } catch (const nlohmann::json::parse_error&) {
  }
  std::istringstream again(text);
  AnyModel m;
  if (schema == kNbSchema)
    m.nb = load_nb_model(again);
  else
    m.svm = load_model(again);
  return m;
}

void check_dimension(const AnyModel& model, const Dataset& data) {
  for (const FeatureVector& v : data.vectors)
    if (v.values.size() != model.dimension())
      throw Failure(kModelMismatch, "model expects " + std::to_string(model.dimension()) +
                                        " features, data has " + std::to_string(v.values.size()));
}

Learner make_learner(const RunConfig& cfg) {
  if (cfg.baseline == "nb")
    return nb_learner();
  return svm_learner(svm_config(cfg), normalize_mode(cfg));
}

std::string method_name(const RunConfig& cfg) { return cfg.baseline == "nb" ? "nb" : "svm"; }

void emit(const RunConfig& cfg, const std::string& text, const nlohmann::json& json,
          std::ostream& out) {
  if (cfg.format == "json")
    out << json.dump(1) << '\n';
  else
    out << text;
  if (!cfg.out.empty()) {
    auto f = open_output(cfg.out);
    f << json.dump(1) << '\n';
  }
}

int cmd_extract_features(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(!cfg.out.empty(), "--out is required");
  require(cfg.table.empty(), "extract-features reads --fasta/--topology, not --table");
  Dataset data = load_dataset(cfg, err);
  print_provenance(data.provenance, out);
  if (data.vectors.empty())
    throw Failure(kEmptyResult, "no feature vectors retained");
  auto f = open_output(cfg.out);
  if (ends_with(cfg.out, ".arff"))
    write_arff(f, data);
  else
    write_feature_table(f, data);
  return kOk;
}

int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string& path = cfg.model.empty() ? cfg.out : cfg.model;
  require(!path.empty(), "--model (or --out) is required");
  Dataset data = load_nonempty(cfg, err);
  std::size_t correct = 0;
  if (cfg.baseline == "nb") {
    NbModel model = nb_train(data);
    for (const FeatureVector& v : data.vectors)
      correct += nb_predict(model, v.values) == v.label;
    auto file = open_output(path);
    save_nb_model(model, file);
    out << "naive Bayes model written to " << path << '\n';
  } else {
    SmoStats stats;
    SvmModel model = train_svm(prepare_training(data, normalize_mode(cfg)), svm_config(cfg), &stats);
    for (const FeatureVector& v : data.vectors)
      correct += model.predict_raw(v.values) == v.label;
    auto file = open_output(path);
    save_model(model, file);
    out << "support vectors " << model.support_vectors().size() << '\n';
    out << "smo iterations " << stats.iterations << (stats.converged ? "" : " (not converged)")
        << '\n';
  }
  char acc[64];
  std::snprintf(acc, sizeof acc, "%.4f", 100.0 * static_cast<double>(correct) /
                                             static_cast<double>(data.size()));
  out << "training accuracy " << acc << " %\n";
  return kOk;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(!(cfg.cv && cfg.holdout), "--cv and --holdout are mutually exclusive");
  Dataset data = load_nonempty(cfg, err);
  if (cfg.cv) {
    CvResult res = cross_validate(data, cfg.cv, make_learner(cfg), cfg.seed);
    res.pooled.method = method_name(cfg);
    for (auto& f : res.folds)
      f.method = method_name(cfg);
    emit(cfg, format_text(res), to_json(res), out);
    return kOk;
  }
  if (cfg.holdout) {
    auto [train, test] = holdout_split(data, cfg.holdout, cfg.seed);
    EvaluationReport rep = evaluate_split(train, test, make_learner(cfg));
    rep.method = method_name(cfg);
    emit(cfg, format_text(rep), to_json(rep), out);
    return kOk;
  }
  require(!cfg.model.empty(), "evaluate needs --model, --holdout N or --cv K");
  AnyModel model = load_any_model(cfg.model);
  check_dimension(model, data);
  double prior = model.nb ? model.nb->prior[0]
                          : model.svm->train_positive_prior.value_or(positive_prior(data));
  std::vector<InstanceRecord> recs;
  for (const FeatureVector& v : data.vectors)
    recs.push_back({v.source_id, v.label, model.predict(v.values)});
  EvaluationReport rep = make_report(std::move(recs), prior);
  rep.method = model.nb ? "nb" : "svm";
  rep.mode = "test-set";
  emit(cfg, format_text(rep), to_json(rep), out);
  return kOk;
}

int cmd_predict(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(!cfg.model.empty(), "--model is required");
  AnyModel model = load_any_model(cfg.model);
  Dataset data = load_nonempty(cfg, err);
  check_dimension(model, data);
  std::ostringstream buf;
  buf << "id,predicted,score\n";
  for (const FeatureVector& v : data.vectors)
    buf << v.source_id << ',' << label_name(model.predict(v.values)) << ','
        << format_real(model.score(v.values)) << '\n';
  if (cfg.out.empty()) {
    out << buf.str();
  } else {
    auto f = open_output(cfg.out);
    f << buf.str();
  }
  return kOk;
}

int cmd_grid_search(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Dataset data = load_nonempty(cfg, err);
  struct Entry {
    double gamma, c, accuracy;
  };
  std::vector<Entry> entries;
  for (double g : cfg.gammas) {
    for (double c : cfg.cs) {
      RunConfig one = cfg;
      one.gammas = {g};
      one.cs = {c};
      CvResult res = cross_validate(data, cfg.cv, make_learner(one), cfg.seed);
      entries.push_back({g, c, res.pooled.basic.accuracy.value_or(0.0)});
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.accuracy != b.accuracy)
      return a.accuracy > b.accuracy;
    if (a.c != b.c)
      return a.c < b.c;
    return a.gamma < b.gamma;
  });
  std::string text;
  char line[128];
  std::snprintf(line, sizeof line, "%-5s %12s %12s %12s\n", "rank", "gamma", "C", "accuracy");
  text += line;
  nlohmann::json ranked = nlohmann::json::array();
  for (std::size_t r = 0; r < entries.size(); ++r) {
    const Entry& e = entries[r];
    std::snprintf(line, sizeof line, "%-5zu %12g %12g %10.4f %%\n", r + 1, e.gamma, e.c, e.accuracy);
    text += line;
    ranked.push_back({{"gamma", e.gamma}, {"c", e.c}, {"accuracy", e.accuracy}});
  }
  std::snprintf(line, sizeof line, "best gamma=%g C=%g\n", entries.front().gamma, entries.front().c);
  text += line;
  nlohmann::json j = {{"folds", cfg.cv},
                      {"seed", cfg.seed},
                      {"ranked", ranked},
                      {"best", {{"gamma", entries.front().gamma}, {"c", entries.front().c}}}};
  emit(cfg, text, j, out);
  return kOk;
}

int cmd_synthesize(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.out.empty(), "--out PREFIX is required");
  SyntheticOptions opt;
  opt.per_class = cfg.per_class;
  opt.seed = cfg.seed;
  SyntheticCorpus corpus = make_synthetic_corpus(opt);
  auto fa = open_output(cfg.out + ".fasta");
  write_fasta(fa, corpus.records);
  auto tm = open_output(cfg.out + ".tmhmm");
  write_topology(tm, corpus.topologies);
  out << "wrote " << corpus.records.size() << " sequences to " << cfg.out << ".fasta and "
      << cfg.out << ".tmhmm\n";
  return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"GPCR species classifier: feature extraction, SVM training and evaluation", "gpcr"};
  app.require_subcommand(1);

  auto* extract = app.add_subcommand("extract-features", "Build the feature table from FASTA + topology");
  add_input_options(extract, cfg);
  extract->add_option("--out", cfg.out, "Feature table (.csv, or .arff)");

  auto* train = app.add_subcommand("train", "Train an SVM (or naive Bayes) model");
  add_input_options(train, cfg);
  add_svm_options(train, cfg, false);
  train->add_option("--model", cfg.model, "Model file to write");
  train->add_option("--out", cfg.out, "Alias for --model");
  train->add_option("--baseline", cfg.baseline, "Train the comparison model instead")
      ->check(CLI::IsMember({"nb"}));

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a model, a holdout split, or k-fold CV");
  add_input_options(evaluate, cfg);
  add_svm_options(evaluate, cfg, false);
  add_report_options(evaluate, cfg);
  evaluate->add_option("--model", cfg.model, "Saved model to evaluate on the data");
  evaluate->add_option("--holdout", cfg.holdout, "Train on N instances, test on the rest")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--cv", cfg.cv, "Stratified k-fold cross-validation")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  evaluate->add_option("--baseline", cfg.baseline, "Use naive Bayes for --holdout/--cv")
      ->check(CLI::IsMember({"nb"}));

  auto* predict = app.add_subcommand("predict", "Classify sequences with a saved model");
  add_input_options(predict, cfg);
  predict->add_option("--model", cfg.model, "Saved model");
  predict->add_option("--out", cfg.out, "Predictions CSV (default stdout)");

  auto* cv = app.add_subcommand("cross-validate", "Stratified k-fold cross-validation");
  add_input_options(cv, cfg);
  add_svm_options(cv, cfg, false);
  add_report_options(cv, cfg);
  cv->add_option("--cv", cfg.cv, "Number of folds (default 10)")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  cv->add_option("--baseline", cfg.baseline, "Use naive Bayes")->check(CLI::IsMember({"nb"}));

  auto* grid = app.add_subcommand("grid-search", "Rank (gamma, C) pairs by CV accuracy");
  add_input_options(grid, cfg);
  add_svm_options(grid, cfg, true);
  add_report_options(grid, cfg);
  grid->add_option("--cv", cfg.cv, "Number of folds (default 10)")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));

  auto* synth = app.add_subcommand("synthesize", "Write a synthetic FASTA + topology corpus");
  synth->add_option("--out", cfg.out, "Output prefix");
  synth->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();
  synth->add_option("--per-class", cfg.per_class, "Sequences per class")->capture_default_str();

  std::vector<const char*> argv;
  for (const std::string& a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadArguments;
  }

  try {
    validate(cfg);
    if (extract->parsed())
      return cmd_extract_features(cfg, out, err);
    if (train->parsed())
      return cmd_train(cfg, out, err);
    if (evaluate->parsed())
      return cmd_evaluate(cfg, out, err);
    if (predict->parsed())
      return cmd_predict(cfg, out, err);
    if (cv->parsed()) {
      if (!cfg.cv)
        cfg.cv = 10;
      return cmd_evaluate(cfg, out, err);
    }
    if (grid->parsed()) {
      if (!cfg.cv)
        cfg.cv = 10;
      return cmd_grid_search(cfg, out, err);
    }
    if (synth->parsed())
      return cmd_synthesize(cfg, out);
  } catch (const Failure& e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ModelError& e) {
    err << "error: bad model file: " << e.what() << '\n';
    return kIoError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerateData;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }
  return kBadArguments;
}

} // namespace gpcr::cli
