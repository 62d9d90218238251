// privaudit: disclosure-vulnerability audits for fully synthetic tabular data.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "privaudit/privaudit.hpp"

namespace fs = std::filesystem;
using namespace privaudit;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitHigh = 2;

void write_file(const std::string& path, const std::string& content) {
  if (auto dir = fs::path(path).parent_path(); !dir.empty()) fs::create_directories(dir);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

struct InputRecord {
  std::string label;
  std::string path;
  std::string digest;
};

ordered_json inputs_json(const std::vector<InputRecord>& inputs) {
  ordered_json j;
  for (const auto& in : inputs) j[in.label] = {{"path", in.path}, {"digest", in.digest}};
  return j;
}

std::string digest_of(const std::string& path) { return fnv1a64_hex(read_file(path)); }

void write_manifest(const std::string& beside, const std::string& command,
                    const std::vector<InputRecord>& inputs, const ordered_json& config,
                    uint64_t seed, const std::vector<std::string>& outputs) {
  ordered_json m;
  m["tool"] = kToolName;
  m["version"] = kToolVersion;
  m["schema"] = kReportSchema;
  m["command"] = command;
  m["inputs"] = inputs_json(inputs);
  m["config"] = config;
  m["seed"] = seed;
  m["outputs"] = outputs;
  write_file(beside, m.dump(2) + "\n");
}

// --------------------------------------------------------------------------
// audit

struct AuditOptions {
  std::string train_path, holdout_path, synthetic_path, schema_path, config_path;
  std::string population_path;
  std::string out_path = "report.json";
  std::string generate_kind; // "", "swr", "marginal"
  size_t num_synthetic = 10;
  uint64_t seed = 0;
  bool seed_given = false;
  bool include_similarity = false;
  std::vector<double> betas;
  std::optional<double> t;
  std::optional<size_t> n, N;
  std::optional<double> epsilon;
  int threads = 0;
};

json load_config(const AuditOptions& opt) {
  std::string path = opt.config_path;
  if (path.empty()) {
    // Environment overrides the config path only; every other knob comes
    // from flags or the config file itself.
    if (const char* env = std::getenv("PRIVAUDIT_CONFIG")) path = env;
  }
  if (path.empty()) return json::object();
  return json::parse(read_file(path));
}

MembershipConfig membership_config(const json& cfg, const AuditOptions& opt, uint64_t seed) {
  MembershipConfig m;
  const json j = cfg.value("membership", json::object());
  if (!opt.betas.empty()) m.betas = opt.betas;
  else if (j.contains("betas")) m.betas = j["betas"].get<std::vector<double>>();
  if (opt.t) m.t = opt.t;
  else if (j.contains("t")) m.t = j["t"].get<double>();
  if (opt.n) m.n = opt.n;
  else if (j.contains("n")) m.n = j["n"].get<size_t>();
  if (opt.N) m.N = opt.N;
  else if (j.contains("N")) m.N = j["N"].get<size_t>();
  m.attack_size = j.value("attack_size", size_t{0});
  m.subset_min = j.value("subset_min", size_t{1});
  m.subset_max = j.value("subset_max", size_t{0});
  m.subset_cap = j.value("subset_cap", size_t{20});
  const std::string dist = j.value("distance", "exact");
  if (dist == "exact") m.distance = MatchConfig::Distance::exact;
  else if (dist == "hamming") m.distance = MatchConfig::Distance::hamming;
  else throw ConfigError("unknown distance: " + dist);
  m.threshold = j.value("threshold", 0);
  m.scenario_b = j.value("scenario_b", false);
  m.parallelism = opt.threads;
  m.seed = derive_seed(seed, 21);
  return m;
}

AttributeConfig attribute_config(const json& cfg, uint64_t seed, Thresholds thresholds) {
  AttributeConfig a;
  const json j = cfg.value("attribute", json::object());
  const std::string policy = j.value("policy", "zero");
  if (policy == "zero") a.policy = NonMatchPolicy::zero;
  else if (policy == "undefined") a.policy = NonMatchPolicy::undefined;
  else if (policy == "key-drop" || policy == "key_drop") a.policy = NonMatchPolicy::key_drop;
  else throw ConfigError("unknown non-match policy: " + policy);
  const std::string meas = j.value("measurement", "exact");
  if (meas == "exact") a.measurement = MeasurementKind::exact;
  else if (meas == "auroc") a.measurement = MeasurementKind::auroc;
  else if (meas == "numeric-tolerance" || meas == "numeric_tolerance")
    a.measurement = MeasurementKind::numeric_tolerance;
  else throw ConfigError("unknown measurement: " + meas);
  a.tolerance_fraction = j.value("tolerance_fraction", 0.1);
  a.positive_label = j.value("positive_label", "");
  a.record_cap = j.value("record_cap", size_t{10000});
  Thresholds eff = thresholds.effective();
  a.thresholds.abs = eff.a_abs;
  a.thresholds.rel = eff.a_rel;
  a.seed = derive_seed(seed, 22);
  return a;
}

SimilaritySection run_similarity(const Dataset& train, const Dataset& holdout,
                                 const Dataset& synthetic,
                                 const std::vector<std::string>& attrs) {
  SimilaritySection s;
  s.attrs = attrs;
  s.training_rows = train.rows();
  s.holdout_rows = holdout.rows();
  s.synthetic_rows = synthetic.rows();
  auto tsd = dcr(train, synthetic, attrs, false, DcrDirection::training_to_synthetic);
  auto thd = dcr(train, holdout, attrs, false, DcrDirection::training_to_holdout);
  auto ttd = dcr(train, train, attrs, true, DcrDirection::training_to_training);
  auto std_p = dcr(synthetic, train, attrs, false, DcrDirection::synthetic_to_training);
  auto shd = dcr(synthetic, holdout, attrs, false, DcrDirection::synthetic_to_holdout);
  s.tsd_vs_thd = vr_count(VrVariant::tsd_vs_thd, tsd, thd);
  s.std_vs_shd = vr_count(VrVariant::std_vs_shd, std_p, shd);
  s.tsd_vs_ttd = vr_count(VrVariant::tsd_vs_ttd, tsd, ttd);
  s.exact_match_vr = privaudit::exact_match_vr(synthetic, train, holdout, attrs);
  return s;
}

int run_audit(const AuditOptions& opt) {
  auto schema = load_schema(opt.schema_path);
  Dataset train_raw = load_csv(opt.train_path, schema);
  require_quasi_identifiers(train_raw);

  json cfg = load_config(opt);
  uint64_t seed = opt.seed_given ? opt.seed : cfg.value("seed", uint64_t{0});

  std::vector<InputRecord> inputs;
  inputs.push_back({"schema", opt.schema_path, digest_of(opt.schema_path)});
  inputs.push_back({"train", opt.train_path, digest_of(opt.train_path)});

  Dataset holdout_raw;
  if (!opt.holdout_path.empty()) {
    holdout_raw = load_csv(opt.holdout_path, schema);
    inputs.push_back({"holdout", opt.holdout_path, digest_of(opt.holdout_path)});
  } else {
    const double ratio = cfg.value("partition_ratio", 0.8);
    std::cerr << "note: no holdout supplied; partitioning the training file "
              << ratio << ":" << (1 - ratio)
              << ". The partition postdates generation: the audited synthetic "
                 "data was produced from the full file, so member/non-member "
                 "labels are approximate.\n";
    Partition p = partition(train_raw, ratio, derive_seed(seed, 7));
    Dataset tr = take_rows(train_raw, p.train_rows);
    holdout_raw = take_rows(train_raw, p.holdout_rows);
    train_raw = std::move(tr);
  }

  // Training-fitted bin edges govern every dataset in the audit.
  Discretizer disc = Discretizer::fit(train_raw);
  Dataset train = disc.apply(train_raw);
  Dataset holdout = disc.apply(holdout_raw);

  const auto qis = train.qi_names();

  Thresholds thresholds = cfg.contains("thresholds")
                              ? thresholds_from_json(cfg["thresholds"])
                              : Thresholds{};
  MembershipConfig mcfg = membership_config(cfg, opt, seed);
  AttributeConfig acfg = attribute_config(cfg, seed, thresholds);

  // Attribute keys default to the quasi-identifiers; the target defaults to
  // the first declared sensitive attribute.
  const json aj = cfg.value("attribute", json::object());
  std::string target = aj.value("target", "");
  if (target.empty()) {
    for (const auto& a : schema)
      if (a.role == AttributeRole::sensitive) {
        target = a.name;
        break;
      }
  }
  if (target.empty())
    throw ConfigError("no sensitive target attribute: declare one in the schema "
                      "(role \"sensitive\") or set attribute.target in the config");
  std::vector<std::string> keys;
  if (aj.contains("keys")) keys = aj["keys"].get<std::vector<std::string>>();
  else {
    for (const auto& q : qis)
      if (q != target) keys.push_back(q);
  }
  if (acfg.measurement == MeasurementKind::numeric_tolerance) {
    int ti = train_raw.attr_index(target);
    if (ti < 0 || train_raw.schema[static_cast<size_t>(ti)].kind != AttributeKind::continuous)
      throw ConfigError("numeric-tolerance measurement requires a continuous target");
  }

  // For numeric targets the target column stays continuous; keys are binned.
  std::unordered_set<std::string> keep;
  if (acfg.measurement == MeasurementKind::numeric_tolerance) keep.insert(target);
  Dataset train_attr = keep.empty() ? train : disc.apply(train_raw, keep);
  Dataset holdout_attr = keep.empty() ? holdout : disc.apply(holdout_raw, keep);

  // Synthetic inputs: a file, a directory of CSVs, or the internal generator
  // hook (several datasets from the same toy generator, rule R2).
  struct SynthSource {
    std::string name;
    Dataset membership_view; // fully discretized
    Dataset attribute_view;  // numeric target kept raw if requested
  };
  std::vector<SynthSource> sources;
  ordered_json generator_note;
  if (!opt.generate_kind.empty()) {
    GeneratorSpec spec;
    spec.kind = opt.generate_kind == "swr" ? GeneratorSpec::Kind::swr
                                           : GeneratorSpec::Kind::marginal;
    spec.output_size = train.rows();
    for (size_t i = 0; i < opt.num_synthetic; ++i) {
      spec.seed = derive_seed(seed, 31, i);
      Dataset synth = generate(spec, train);
      sources.push_back({std::string(to_string(spec.kind)) + "-" + std::to_string(i),
                         synth, synth});
    }
    generator_note = {{"kind", opt.generate_kind},
                      {"count", opt.num_synthetic},
                      {"output_size", train.rows()}};
    if (!keep.empty())
      throw ConfigError("numeric-tolerance targets are not supported with the "
                        "internal generators (generated data is categorical)");
  } else {
    std::vector<std::string> paths;
    if (fs::is_directory(opt.synthetic_path)) {
      for (const auto& e : fs::directory_iterator(opt.synthetic_path))
        if (e.is_regular_file() && e.path().extension() == ".csv")
          paths.push_back(e.path().string());
      std::sort(paths.begin(), paths.end());
      if (paths.empty())
        throw ConfigError("no .csv files in directory: " + opt.synthetic_path);
    } else {
      paths.push_back(opt.synthetic_path);
    }
    for (const auto& p : paths) {
      Dataset raw = load_csv(p, schema);
      inputs.push_back({"synthetic:" + fs::path(p).filename().string(), p, digest_of(p)});
      sources.push_back({fs::path(p).filename().string(), disc.apply(raw),
                         keep.empty() ? disc.apply(raw) : disc.apply(raw, keep)});
    }
  }

  AuditDocument doc;
  doc.thresholds = thresholds;
  for (const auto& src : sources) {
    AuditFileSection sec;
    sec.name = src.name;
    sec.membership = membership_audit(train, holdout, src.membership_view, qis, mcfg);
    Score headline{sec.membership.headline_f_rel, sec.membership.headline_defined, false,
                   sec.membership.headline_defined ? "" : "naive-guess-saturated"};
    sec.membership_decision = decide_membership(headline, thresholds);
    sec.attribute =
        attribute_audit(train_attr, holdout_attr, src.attribute_view, keys, target, acfg);
    if (opt.include_similarity)
      sec.similarity = run_similarity(train, holdout, src.membership_view, qis);
    doc.files.push_back(std::move(sec));
  }

  // Identity-disclosure ground truth. With a population file: k-map against
  // population class sizes; otherwise the training sample's own equivalence
  // classes (a conservative stand-in, since population classes are >= sample
  // classes).
  KMapSection kmap;
  kmap.attrs = qis;
  if (!opt.population_path.empty()) {
    Dataset pop = disc.apply(load_csv(opt.population_path, schema));
    inputs.push_back({"population", opt.population_path, digest_of(opt.population_path)});
    auto km = k_map_vulnerability(train, pop, qis);
    kmap.source = "population";
    kmap.max_vulnerability = km.max_vulnerability;
    kmap.mean_vulnerability = km.mean_vulnerability;
    kmap.unseen_combination_records = km.unseen_combinations;
    kmap.groups = equivalence_classes(pop, qis).group_count();
  } else {
    auto eq = equivalence_classes(train, qis);
    kmap.source = "training-sample (conservative)";
    kmap.groups = eq.group_count();
    kmap.max_vulnerability = eq.max_vulnerability();
    kmap.mean_vulnerability = eq.mean_vulnerability();
  }
  doc.kmap = kmap;

  std::optional<double> eps = opt.epsilon;
  if (!eps && cfg.contains("epsilon")) eps = cfg["epsilon"].get<double>();
  if (eps) doc.epsilon = epsilon_check(*eps, thresholds);

  ordered_json prov;
  prov["tool"] = kToolName;
  prov["version"] = kToolVersion;
  prov["seed"] = seed;
  prov["inputs"] = inputs_json(inputs);
  prov["bin_edges"] = "fitted on training data, applied to all datasets";
  if (!generator_note.is_null()) prov["generator"] = generator_note;
  prov["config"] = ordered_json::parse(cfg.dump());
  doc.provenance = prov;

  ordered_json report = build_report(doc);
  write_file(opt.out_path, render_report(report, "machine"));
  std::cout << render_report(report, "human");
  write_manifest(opt.out_path + ".manifest.json", "audit", inputs,
                 ordered_json::parse(cfg.dump()), seed, {opt.out_path});

  return report["decisions"]["overall"] == "high" ? kExitHigh : kExitOk;
}

// --------------------------------------------------------------------------
// simulate

int run_simulate(const std::string& scenario, const std::string& config_path,
                 uint64_t seed, const std::string& out_dir, bool paper_scale,
                 int threads) {
  json cfg = json::object();
  if (!config_path.empty()) cfg = json::parse(read_file(config_path));

  ScenarioResult result;
  ordered_json summary;
  if (scenario == "two-population") {
    TwoPopulationConfig c;
    c.iterations = paper_scale ? 1000 : 100;
    c.super_population = cfg.value("super_population", c.super_population);
    c.sub_population = cfg.value("sub_population", c.sub_population);
    c.training = cfg.value("training", c.training);
    c.attack = cfg.value("attack", c.attack);
    c.iterations = cfg.value("iterations", c.iterations);
    c.male_weight = cfg.value("male_weight", c.male_weight);
    if (cfg.value("generator", "swr") == std::string("marginal"))
      c.generator = GeneratorSpec::Kind::marginal;
    c.seed = seed;
    auto r = sim_two_population(c);
    result = r.scenario;
    summary = {{"precision_a", r.precision_a}, {"precision_b", r.precision_b}};
  } else if (scenario == "subset-sweep") {
    SubsetSweepConfig c;
    if (paper_scale) {
      c.attributes = 20;
      c.population = 50000;
      c.training = 10000;
      c.attack = 10000;
    }
    c.attributes = cfg.value("attributes", c.attributes);
    c.population = cfg.value("population", c.population);
    c.training = cfg.value("training", c.training);
    c.attack = cfg.value("attack", c.attack);
    if (cfg.value("generator", "marginal") == std::string("swr"))
      c.generator = GeneratorSpec::Kind::swr;
    c.parallelism = threads;
    c.seed = seed;
    auto r = sim_subset_sweep(c);
    result = r.scenario;
    summary = {{"t", r.t}, {"f_naive", r.f_naive}, {"sizes", r.synthetic_curve.size()}};
  } else if (scenario == "holdout-match") {
    HoldoutMatchConfig c;
    if (paper_scale) {
      c.population = 100000;
      c.ks = {1, 5, 10, 20};
      c.original_sizes = {50, 500, 5000, 10000};
    }
    c.population = cfg.value("population", c.population);
    if (cfg.contains("k")) c.ks = cfg["k"].get<std::vector<size_t>>();
    if (cfg.contains("original_sizes"))
      c.original_sizes = cfg["original_sizes"].get<std::vector<size_t>>();
    c.train_ratio = cfg.value("train_ratio", c.train_ratio);
    c.iterations = cfg.value("iterations", c.iterations);
    c.seed = seed;
    auto r = sim_holdout_match(c);
    result = r.scenario;
    summary = {{"cells", r.cells.size()}};
  } else {
    std::cerr << "unknown scenario \"" << scenario
              << "\"; available: two-population, subset-sweep, holdout-match\n";
    return kExitError;
  }

  const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(dir);
  const std::string csv_path = (dir / (result.scenario + ".csv")).string();
  write_file(csv_path, result.to_csv());

  ordered_json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kToolVersion;
  manifest["command"] = "simulate";
  manifest["scenario"] = result.scenario;
  manifest["params"] = result.params;
  manifest["iterations"] = result.iterations;
  manifest["seed"] = result.seed;
  manifest["outputs"] = {csv_path};
  manifest["summary"] = summary;
  write_file((dir / (result.scenario + ".manifest.json")).string(),
             manifest.dump(2) + "\n");

  std::cout << result.to_csv();
  return kExitOk;
}

// --------------------------------------------------------------------------
// decide

int run_decide(const std::string& report_path, const std::string& thresholds_path) {
  ordered_json report = ordered_json::parse(read_file(report_path));
  Thresholds thresholds;
  if (!thresholds_path.empty()) {
    thresholds = thresholds_from_json(json::parse(read_file(thresholds_path)));
  } else if (report.contains("thresholds")) {
    thresholds = thresholds_from_json(json::parse(report["thresholds"].dump()));
  }
  auto res = redecide(report, thresholds);
  std::cout << "membership: " << res.membership_overall << "\n";
  std::cout << "attribute:  " << res.attribute_overall << "\n";
  std::cout << "overall:    " << res.overall << "\n";
  if (!res.mismatches.empty()) {
    std::cout << "mismatches against stored decisions:\n";
    for (const auto& m : res.mismatches) std::cout << "  " << m << "\n";
  }
  return res.overall == "high" ? kExitHigh : kExitOk;
}

// --------------------------------------------------------------------------
// inspect

int run_inspect(const std::string& data_path, const std::string& schema_path) {
  auto schema = load_schema(schema_path);
  Dataset d = load_csv(data_path, schema);
  std::cout << data_path << ": " << d.rows() << " records, " << d.schema.size()
            << " attributes\n";
  for (size_t a = 0; a < d.schema.size(); ++a) {
    const auto& s = d.schema[a];
    std::cout << "  " << s.name << " (" << to_string(s.kind) << ", " << to_string(s.role);
    if (s.kind == AttributeKind::continuous) std::cout << ", bins " << s.bins;
    std::cout << ")";
    if (d.is_categorical(a)) {
      const auto& col = d.categorical(a);
      std::cout << " distinct " << col.labels.size();
    } else {
      const auto& col = d.continuous(a);
      size_t missing = 0;
      for (uint8_t m : col.missing) missing += m;
      std::cout << " missing " << missing;
    }
    std::cout << "\n";
  }
  const auto qis = d.qi_names();
  if (!qis.empty()) {
    Dataset binned = Discretizer::fit(d).apply(d);
    auto eq = equivalence_classes(binned, qis);
    std::cout << "quasi-identifier equivalence classes: " << eq.group_count()
              << " groups, max vulnerability " << eq.max_vulnerability()
              << ", mean vulnerability " << eq.mean_vulnerability() << "\n";
  } else {
    std::cout << "warning: no quasi-identifiers declared (rule R1); audits will refuse\n";
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disclosure-vulnerability audits for fully synthetic tabular data"};
  app.require_subcommand(1);

  AuditOptions a;
  auto* audit = app.add_subcommand("audit", "Run membership + attribute audits");
  audit->add_option("--train", a.train_path, "Training CSV (or the full original)")
      ->required();
  audit->add_option("--holdout", a.holdout_path, "Holdout CSV; omitted -> partition");
  audit->add_option("--synthetic", a.synthetic_path, "Synthetic CSV file or directory");
  audit->add_option("--schema", a.schema_path, "Schema JSON")->required();
  audit->add_option("--config", a.config_path, "Audit config JSON");
  audit->add_option("--out", a.out_path, "Report path (default report.json)");
  auto* seed_opt = audit->add_option("--seed", a.seed, "Seed for all randomness");
  audit->add_flag("--include-deprecated-similarity", a.include_similarity,
                  "Emit the deprecated similarity section");
  audit->add_option("--betas", a.betas, "F-score beta weights");
  double t_flag;
  auto* t_opt = audit->add_option("--t", t_flag, "Member prevalence t");
  size_t n_flag, N_flag;
  auto* n_opt = audit->add_option("--n", n_flag, "Training size n (t = n/N)");
  auto* N_opt = audit->add_option("--N", N_flag, "Population size N (t = n/N)");
  double eps_flag;
  auto* eps_opt = audit->add_option("--epsilon", eps_flag, "Declared privacy budget");
  audit->add_option("--population", a.population_path, "Population CSV for k-map");
  audit->add_option("--generate", a.generate_kind, "Generator hook: swr | marginal")
      ->check(CLI::IsMember({"swr", "marginal"}));
  audit->add_option("--num-synthetic", a.num_synthetic,
                    "Datasets to generate with --generate (default 10)");
  audit->add_option("--threads", a.threads, "Worker threads for the subset search");

  std::string sim_scenario, sim_config, sim_out = ".";
  uint64_t sim_seed = 0;
  bool paper_scale = false;
  int sim_threads = 0;
  auto* simulate = app.add_subcommand("simulate", "Run a seeded simulation scenario");
  simulate->add_option("scenario_id", sim_scenario,
                       "two-population | subset-sweep | holdout-match");
  simulate->add_option("--scenario", sim_scenario, "Scenario id (alternative to positional)")
      ->excludes("scenario_id");
  simulate->add_option("--config", sim_config, "Scenario config JSON");
  simulate->add_option("--seed", sim_seed, "Seed");
  simulate->add_option("--out", sim_out, "Output directory");
  simulate->add_flag("--paper-scale", paper_scale, "Full-scale parameters");
  simulate->add_option("--threads", sim_threads, "Worker threads");

  std::string dec_report, dec_thresholds;
  auto* decide = app.add_subcommand("decide", "Re-apply decisions over a report");
  decide->add_option("report", dec_report, "Report JSON")->required();
  decide->add_option("--thresholds", dec_thresholds, "Thresholds JSON");

  std::string ins_data, ins_schema;
  auto* inspect = app.add_subcommand("inspect", "Summarize a dataset against a schema");
  inspect->add_option("data", ins_data, "CSV file")->required();
  inspect->add_option("--schema", ins_schema, "Schema JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*audit) {
      a.seed_given = seed_opt->count() > 0;
      if (t_opt->count()) a.t = t_flag;
      if (n_opt->count()) a.n = n_flag;
      if (N_opt->count()) a.N = N_flag;
      if (eps_opt->count()) a.epsilon = eps_flag;
      if (a.synthetic_path.empty() && a.generate_kind.empty())
        throw ConfigError("provide --synthetic or --generate");
      return run_audit(a);
    }
    if (*simulate) {
      if (sim_scenario.empty())
        throw ConfigError("missing scenario id; available: two-population, "
                          "subset-sweep, holdout-match");
      return run_simulate(sim_scenario, sim_config, sim_seed, sim_out, paper_scale,
                          sim_threads);
    }
    if (*decide) return run_decide(dec_report, dec_thresholds);
    if (*inspect) return run_inspect(ins_data, ins_schema);
  } catch (const PolicyRefusal& e) {
    std::cerr << "refused (rule " << e.rule << "): " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
