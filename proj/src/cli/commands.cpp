#include "distroc/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>

#include <json.hpp>

#include "distroc/cli/csv.hpp"
#include "distroc/cli/svg.hpp"
#include "distroc/error.hpp"
#include "distroc/pipeline.hpp"
#include "distroc/rng.hpp"
#include "distroc/simgen.hpp"

namespace distroc::cli {

namespace fs = std::filesystem;

namespace {

std::string out_path(const JobSpec& spec, const std::string& name) {
  fs::create_directories(spec.out_dir);
  return (fs::path(spec.out_dir) / name).string();
}

SiteHandler make_handler(const LoadedSite& s, int q) {
  return SiteHandler(SiteData{s.config.id, s.scores, {}, std::nullopt}, q, s.noise_seed);
}

std::string session_name(const char* command, std::uint64_t seed) {
  return std::string(command) + "-" + std::to_string(seed);
}

ScoreTable to_table(const ScoreSet& s, const std::string& prefix) {
  ScoreTable t;
  int i = 0;
  for (double v : s.pos) {
    t.ids.push_back(prefix + std::to_string(++i));
    t.scores.push_back(v);
    t.labels.push_back(1);
  }
  for (double v : s.neg) {
    t.ids.push_back(prefix + std::to_string(++i));
    t.scores.push_back(v);
    t.labels.push_back(0);
  }
  return t;
}

}  // namespace

PrivacyParams resolve_privacy(const JobSpec& spec) {
  PrivacyParams p;
  p.l2_sensitivity = spec.l2_sensitivity;
  p.privacy_level = spec.privacy_level;
  if (spec.epsilon && spec.delta) {
    p.epsilon = *spec.epsilon;
    p.delta = *spec.delta;
  } else {
    const auto [eps, del] = recommended_params(spec.l2_sensitivity);
    p.epsilon = spec.epsilon.value_or(eps);
    p.delta = spec.delta.value_or(del);
  }
  p.validate();
  return p;
}

std::uint64_t site_noise_seed(const SiteConfig& cfg, std::uint64_t job_seed, std::size_t index) {
  return cfg.seed != 0 ? cfg.seed : CounterRng::derive(job_seed, 1000 + index);
}

std::vector<LoadedSite> load_sites(const JobSpec& spec) {
  if (spec.sites_path.empty()) throw IoError("--sites is required");
  const auto configs = read_sites_config(spec.sites_path);
  std::vector<LoadedSite> out;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    LoadedSite s;
    s.config = configs[k];
    if (s.config.data.empty()) throw IoError("site '" + s.config.id + "' has no data file");
    s.scores = read_score_csv(s.config.data).to_score_set();
    s.noise_seed = site_noise_seed(s.config, spec.seed, k);
    out.push_back(std::move(s));
  }
  return out;
}

Federation::Federation(const std::vector<LoadedSite>& sites, const JobSpec& spec,
                       const std::string& session_id) {
  std::vector<SiteEndpoint> endpoints;
  for (const auto& s : sites) {
    if (spec.transport == TransportKind::Mem) {
      auto h = std::make_shared<SiteHandler>(make_handler(s, spec.privacy_level));
      endpoints.push_back({s.config.id, std::make_unique<InProcessChannel>(h)});
    } else if (s.config.port == 0) {
      auto h = std::make_shared<SiteHandler>(make_handler(s, spec.privacy_level));
      servers_.push_back(std::make_unique<TcpSiteServer>(h));
      servers_.back()->start();
      endpoints.push_back(
          {s.config.id, std::make_unique<TcpChannel>("127.0.0.1", servers_.back()->port())});
    } else {
      endpoints.push_back({s.config.id, std::make_unique<TcpChannel>(s.config.host, s.config.port)});
    }
  }
  coord_ = std::make_unique<Coordinator>(std::move(endpoints), spec.privacy_level, session_id);
}

Federation::~Federation() {
  coord_.reset();
  for (auto& s : servers_) s->stop();
}

std::string result_json(const ValidateResult& r) {
  nlohmann::ordered_json j;
  j["gamma1"] = r.fit.roc.gamma1;
  j["gamma2"] = r.fit.roc.gamma2;
  j["auc"] = r.fit.auc;
  j["ci_low"] = r.fit.ci.low;
  j["ci_high"] = r.fit.ci.high;
  j["alpha"] = r.fit.alpha;
  j["epsilon"] = r.fit.dp.epsilon;
  j["delta"] = r.fit.dp.delta;
  j["l2_sensitivity"] = r.fit.dp.l2_sensitivity;
  j["tau"] = r.fit.noise.tau;
  j["q"] = r.q;
  j["iterations"] = r.fit.fit.iterations;
  j["converged"] = r.fit.fit.converged;
  j["a0"] = r.a0;
  j["verdict"] = r.reject_h0 ? "reject H0" : "fail to reject H0";
  return j.dump(2);
}

ValidateResult cmd_validate(const JobSpec& spec) {
  const auto sites = load_sites(spec);
  const PrivacyParams privacy = resolve_privacy(spec);
  Federation fed(sites, spec, session_name("validate", spec.seed));

  DistributedRocOptions opts;
  opts.privacy = privacy;
  opts.alpha = spec.alpha;
  opts.tau = spec.no_dp ? std::optional<double>(0.0) : spec.tau;

  ValidateResult r;
  r.a0 = spec.a0;
  r.q = spec.privacy_level;
  try {
    r.fit = fit_distributed_rocglm(fed.coordinator(), make_threshold_grid(spec.n_thresholds), opts);
  } catch (...) {
    if (spec.write_files) {
      write_text_file(out_path(spec, "transcript.ndjson"), fed.coordinator().transcript().dump());
    }
    throw;
  }
  r.reject_h0 = r.fit.ci.low > spec.a0;
  r.transcript = fed.coordinator().transcript().dump();

  if (spec.write_files) {
    write_text_file(out_path(spec, "result.json"), result_json(r) + "\n");
    CsvWriter rec(out_path(spec, "result.csv"));
    rec.header({"gamma1", "gamma2", "auc", "ci_low", "ci_high", "alpha", "epsilon", "delta",
                "l2_sensitivity", "q", "iterations", "converged"});
    rec.row({CsvWriter::real(r.fit.roc.gamma1), CsvWriter::real(r.fit.roc.gamma2),
             CsvWriter::real(r.fit.auc), CsvWriter::real(r.fit.ci.low),
             CsvWriter::real(r.fit.ci.high), CsvWriter::real(r.fit.alpha),
             CsvWriter::real(privacy.epsilon), CsvWriter::real(privacy.delta),
             CsvWriter::real(privacy.l2_sensitivity), std::to_string(r.q),
             std::to_string(r.fit.fit.iterations), r.fit.fit.converged ? "true" : "false"});
    rec.close();

    const auto pts = roc_curve_points(r.fit.roc);
    CsvWriter roc(out_path(spec, "roc_curve.csv"));
    roc.header({"t", "roc"});
    for (const auto& [t, v] : pts) roc.row({CsvWriter::real(t), CsvWriter::real(v)});
    roc.close();
    write_text_file(out_path(spec, "roc_curve.svg"),
                    line_chart_svg("Distributed ROC-GLM", "false positive rate",
                                   "true positive rate", {{"ROC-GLM", pts, false}}));
    write_text_file(out_path(spec, "transcript.ndjson"), r.transcript);
  }
  return r;
}

CalibrateResult cmd_calibrate(const JobSpec& spec) {
  const auto sites = load_sites(spec);
  Federation fed(sites, spec, session_name("calibrate", spec.seed));
  const BinLayout layout(spec.n_bins);

  CalibrateResult r;
  r.brier = distributed_brier(fed.coordinator());
  r.curve = distributed_calibration(fed.coordinator(), layout);
  r.transcript = fed.coordinator().transcript().dump();

  if (spec.write_files) {
    CsvWriter cal(out_path(spec, "calibration.csv"));
    cal.header({"bin_low", "bin_high", "pf", "tf", "count", "sites_reporting"});
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : r.curve.points) {
      cal.row({CsvWriter::real(p.bin_low), CsvWriter::real(p.bin_high), CsvWriter::real(p.pf),
               CsvWriter::real(p.tf), std::to_string(p.total_count),
               std::to_string(p.sites_reporting)});
      pts.emplace_back(p.pf, p.tf);
    }
    cal.close();
    CsvWriter sup(out_path(spec, "calibration_suppressed.csv"));
    sup.header({"site", "bin_low", "bin_high", "count"});
    for (const auto& c : r.curve.suppressed) {
      sup.row({sites[static_cast<std::size_t>(c.site)].config.id,
               CsvWriter::real(layout.low(c.bin_index)), CsvWriter::real(layout.high(c.bin_index)),
               std::to_string(c.count)});
    }
    sup.close();
    write_text_file(out_path(spec, "brier.txt"), CsvWriter::real(r.brier) + "\n");
    write_text_file(out_path(spec, "calibration.svg"),
                    line_chart_svg("Distributed calibration curve", "mean predicted",
                                   "observed fraction", {{"calibration", pts, false}}));
    write_text_file(out_path(spec, "transcript.ndjson"), r.transcript);
  }
  return r;
}

std::vector<ReplicationResult> cmd_simulate(const JobSpec& spec) {
  SimulationConfig cfg;
  cfg.reps = spec.reps;
  cfg.seed = spec.seed;
  cfg.data.k_sites = spec.k_sites;
  cfg.n_thresholds = spec.n_thresholds;
  cfg.alpha = spec.alpha;
  cfg.distributed = !spec.no_dp;
  if (cfg.distributed) cfg.privacy = resolve_privacy(spec);
  cfg.privacy.privacy_level = spec.privacy_level;
  cfg.tau = spec.tau;
  const auto results = run_simulation(cfg);

  if (spec.write_files) {
    CsvWriter reps(out_path(spec, "replications.csv"));
    reps.header({"rep", "n", "gamma", "auc_emp", "auc_rocglm", "auc_distr", "ci_low", "ci_high",
                 "ci_low_distr", "ci_high_distr", "delta_auc", "delta_ci", "error"});
    std::vector<double> keys;
    std::vector<double> delta_auc;
    std::vector<double> abs_delta_auc;
    std::vector<double> delta_ci;
    for (const auto& r : results) {
      reps.row({std::to_string(r.rep), std::to_string(r.n), CsvWriter::real(r.gamma),
                CsvWriter::real(r.auc_emp), CsvWriter::real(r.auc_rocglm),
                CsvWriter::real(r.auc_distr), CsvWriter::real(r.ci_low),
                CsvWriter::real(r.ci_high), CsvWriter::real(r.ci_low_distr),
                CsvWriter::real(r.ci_high_distr), CsvWriter::real(r.delta_auc),
                CsvWriter::real(r.delta_ci), r.ok ? "" : "\"" + r.error + "\""});
      if (!r.ok) continue;
      keys.push_back(r.auc_emp);
      delta_auc.push_back(r.delta_auc);
      abs_delta_auc.push_back(std::abs(r.delta_auc));
      delta_ci.push_back(r.delta_ci);
    }
    reps.close();

    auto write_summary = [&](const std::string& name, const std::vector<double>& values) {
      CsvWriter w(out_path(spec, name));
      w.header({"bin_low", "bin_high", "min", "q1", "median", "mean", "q3", "max", "sd", "count"});
      for (const auto& b : summarize_by_bin(keys, values)) {
        w.row({CsvWriter::real(b.low), CsvWriter::real(b.high), CsvWriter::real(b.min),
               CsvWriter::real(b.q1), CsvWriter::real(b.median), CsvWriter::real(b.mean),
               CsvWriter::real(b.q3), CsvWriter::real(b.max), CsvWriter::real(b.sd),
               std::to_string(b.count)});
      }
      w.close();
    };
    write_summary("summary_delta_auc.csv", delta_auc);
    if (cfg.distributed) {
      write_summary("summary_abs_delta_auc.csv", abs_delta_auc);
      write_summary("summary_delta_ci.csv", delta_ci);
    }
  }
  return results;
}

std::string cmd_gen_data(const JobSpec& spec) {
  std::vector<ScoreSet> sites;
  if (spec.data_kind == "usecase") {
    sites = generate_usecase_sites(spec.seed);
  } else if (spec.data_kind == "auc") {
    SimConfig cfg;
    cfg.k_sites = spec.k_sites;
    cfg.seed = spec.seed;
    sites = generate_auc_sim(cfg).sites;
  } else if (spec.data_kind == "survival") {
    const SurvSimConfig cfg;
    const Cohort cohort = generate_survival_cohort(cfg, spec.seed);
    CsvWriter full(out_path(spec, "cohort.csv"));
    std::vector<std::string> cols = {"id", "site"};
    for (const char* f : kCohortFeatures) cols.emplace_back(f);
    for (const char* c : {"treatment", "eta", "t_event", "interval_low", "interval_high", "event",
                          "label", "score", "split"}) {
      cols.emplace_back(c);
    }
    full.header(cols);
    for (const auto& site : cohort.sites) {
      for (const auto& r : site) {
        std::vector<std::string> row = {std::to_string(r.id), "site" + std::to_string(r.site + 1)};
        for (double x : r.features) row.push_back(CsvWriter::real(x));
        row.push_back(std::to_string(r.treatment + 1));
        row.push_back(CsvWriter::real(r.eta));
        row.push_back(CsvWriter::real(r.t_event));
        row.push_back(CsvWriter::real(r.observed.low));
        row.push_back(CsvWriter::real(r.observed.high));
        row.push_back(r.observed.event_observed ? "1" : "0");
        row.push_back(std::to_string(r.label));
        row.push_back(CsvWriter::real(r.score));
        row.push_back(r.validation ? "validation" : "train");
        full.row(row);
      }
    }
    full.close();
    for (std::size_t k = 0; k < cohort.sites.size(); ++k) {
      sites.push_back(cohort.validation_scores(k));
    }
  } else {
    throw IoError("unknown data kind '" + spec.data_kind + "'");
  }

  std::string toml;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const std::string id = "site" + std::to_string(k + 1);
    write_score_csv(out_path(spec, id + ".csv"), to_table(sites[k], id + "-"));
    toml += "[[site]]\nid = \"" + id + "\"\ndata = \"" + id + ".csv\"\n\n";
  }
  const std::string path = out_path(spec, "sites.toml");
  write_text_file(path, toml);
  return path;
}

std::vector<NoiseDemoRow> cmd_noise_demo(const JobSpec& spec) {
  std::vector<double> scores = spec.demo_scores;
  if (scores.empty()) {
    for (int i = 0; i < 10; ++i) scores.push_back(0.05 + 0.1 * i);
  }
  std::vector<NoiseDemoRow> rows;
  std::uint64_t setting = 0;
  for (double l2 : {0.01, 0.05}) {
    for (double eps : {0.1, 0.3, 0.5}) {
      for (double del : {0.1, 0.3, 0.5}) {
        PrivacyParams p{eps, del, l2, spec.privacy_level};
        NoiseDemoRow row{l2, eps, del, 0.0, scores, {}};
        const NoiseSpec ns = spec.tau ? noise_override(p, *spec.tau) : noise_scale(p);
        row.tau = ns.tau;
        row.noisy = gaussian_mechanism(scores, ns, CounterRng::derive(spec.seed, ++setting));
        rows.push_back(std::move(row));
      }
    }
  }
  if (spec.write_files) {
    CsvWriter w(out_path(spec, "noise_demo.csv"));
    w.header({"l2_sensitivity", "epsilon", "delta", "tau", "index", "score", "noisy_score"});
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.scores.size(); ++i) {
        w.row({CsvWriter::real(r.l2_sensitivity), CsvWriter::real(r.epsilon),
               CsvWriter::real(r.delta), CsvWriter::real(r.tau), std::to_string(i + 1),
               CsvWriter::real(r.scores[i]), CsvWriter::real(r.noisy[i])});
      }
    }
    w.close();
  }
  return rows;
}

void cmd_serve(const JobSpec& spec, const std::string& site_id) {
  const auto sites = load_sites(spec);
  for (const auto& s : sites) {
    if (s.config.id != site_id) continue;
    auto handler = std::make_shared<SiteHandler>(make_handler(s, spec.privacy_level));
    TcpSiteServer server(handler, s.config.port, "0.0.0.0");
    std::cerr << "serving " << site_id << " on port " << server.port() << std::endl;
    server.serve_forever();
    return;
  }
  throw IoError("no site '" + site_id + "' in " + spec.sites_path);
}

}  // namespace distroc::cli
