#include <cstdio>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "distroc/cli/commands.hpp"
#include "distroc/error.hpp"

using namespace distroc;
using namespace distroc::cli;

namespace {

void add_privacy_flags(CLI::App* app, JobSpec& spec, double& epsilon, double& delta) {
  app->add_option("--epsilon", epsilon, "epsilon of the Gaussian mechanism (default: recommended)")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--delta", delta, "delta of the Gaussian mechanism (default: recommended)")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--l2-sensitivity", spec.l2_sensitivity, "l2-sensitivity of the model")
      ->capture_default_str();
  app->add_option("--tau", spec.tau, "explicit noise standard deviation");
  app->add_flag("--no-dp", spec.no_dp, "disable the privacy noise");
}

void add_common_flags(CLI::App* app, JobSpec& spec) {
  app->add_option("--privacy-level", spec.privacy_level, "q, smallest group an aggregate may cover")
      ->capture_default_str();
  app->add_option("--seed", spec.seed, "seed")->capture_default_str();
  app->add_option("--out", spec.out_dir, "output directory")->capture_default_str();
}

void add_federation_flags(CLI::App* app, JobSpec& spec) {
  app->add_option("--sites", spec.sites_path, "sites config file")->required();
  app->add_option("--transport", spec.transport, "mem or tcp")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, TransportKind>{{"mem", TransportKind::Mem},
                                               {"tcp", TransportKind::Tcp}}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed, privacy-preserving ROC-GLM and calibration"};
  app.require_subcommand(1);
  JobSpec spec;
  double epsilon = -1.0;
  double delta = -1.0;
  std::string serve_id;

  auto* simulate = app.add_subcommand("simulate", "label-flip simulation study");
  add_privacy_flags(simulate, spec, epsilon, delta);
  add_common_flags(simulate, spec);
  simulate->add_option("--reps", spec.reps, "replications")->capture_default_str();
  simulate->add_option("--k-sites", spec.k_sites, "sites per replication")->capture_default_str();
  simulate->add_option("--alpha", spec.alpha)->capture_default_str();
  simulate->add_option("--n-thresholds", spec.n_thresholds)->capture_default_str();

  auto* validate = app.add_subcommand("validate", "distributed ROC-GLM with confidence interval");
  add_privacy_flags(validate, spec, epsilon, delta);
  add_common_flags(validate, spec);
  add_federation_flags(validate, spec);
  validate->add_option("--alpha", spec.alpha)->capture_default_str();
  validate->add_option("--a0", spec.a0, "H0: AUC <= a0")->capture_default_str();
  validate->add_option("--n-thresholds", spec.n_thresholds)->capture_default_str();

  auto* calibrate = app.add_subcommand("calibrate", "distributed Brier score and calibration curve");
  add_common_flags(calibrate, spec);
  add_federation_flags(calibrate, spec);
  calibrate->add_option("--n-bins", spec.n_bins)->capture_default_str();

  auto* gen = app.add_subcommand("gen-data", "write synthetic per-site CSVs and a sites file");
  add_common_flags(gen, spec);
  gen->add_option("--kind", spec.data_kind, "usecase, auc or survival")
      ->check(CLI::IsMember({"usecase", "auc", "survival"}))
      ->capture_default_str();
  gen->add_option("--k-sites", spec.k_sites)->capture_default_str();

  auto* demo = app.add_subcommand("noise-demo", "Gaussian mechanism on a small score list");
  add_common_flags(demo, spec);
  demo->add_option("--scores", spec.demo_scores, "scores")->delimiter(',');
  demo->add_option("--tau", spec.tau, "explicit noise standard deviation");

  auto* serve = app.add_subcommand("serve", "serve one site over TCP");
  add_common_flags(serve, spec);
  serve->add_option("--sites", spec.sites_path, "sites config file")->required();
  serve->add_option("--id", serve_id, "site id")->required();

  CLI11_PARSE(app, argc, argv);
  if (epsilon >= 0.0) spec.epsilon = epsilon;
  if (delta >= 0.0) spec.delta = delta;

  try {
    if (simulate->parsed()) {
      const auto results = cmd_simulate(spec);
      int failed = 0;
      for (const auto& r : results) failed += r.ok ? 0 : 1;
      std::printf("%zu replications (%d failed) written to %s\n", results.size(), failed,
                  spec.out_dir.c_str());
    } else if (validate->parsed()) {
      const auto r = cmd_validate(spec);
      std::printf("%s\n", result_json(r).c_str());
    } else if (calibrate->parsed()) {
      const auto r = cmd_calibrate(spec);
      std::printf("brier %.6f\n", r.brier);
      std::printf("%-12s %8s %8s %6s %6s\n", "bin", "pf", "tf", "n", "sites");
      for (const auto& p : r.curve.points) {
        std::printf("[%.2f,%.2f%c %8.4f %8.4f %6lld %6d\n", p.bin_low, p.bin_high,
                    p.bin_high >= 1.0 ? ']' : ')', p.pf, p.tf, p.total_count, p.sites_reporting);
      }
      std::printf("%zu site cells suppressed\n", r.curve.suppressed.size());
    } else if (gen->parsed()) {
      std::printf("%s\n", cmd_gen_data(spec).c_str());
    } else if (demo->parsed()) {
      for (const auto& r : cmd_noise_demo(spec)) {
        std::printf("l2=%.2f eps=%.1f delta=%.1f tau=%.6f\n", r.l2_sensitivity, r.epsilon,
                    r.delta, r.tau);
      }
    } else if (serve->parsed()) {
      cmd_serve(spec, serve_id);
    }
  } catch (const PrivacyRefusal& e) {
    std::fprintf(stderr, "refused%s: %s\n",
                 e.stage().empty() ? "" : (" in stage " + e.stage()).c_str(), e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error%s: %s\n",
                 e.stage().empty() ? "" : (" in stage " + e.stage()).c_str(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
