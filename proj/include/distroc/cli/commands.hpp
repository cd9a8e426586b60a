#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "distroc/calibration.hpp"
#include "distroc/federation/coordinator.hpp"
#include "distroc/federation/sites_config.hpp"
#include "distroc/federation/tcp.hpp"
#include "distroc/privacy.hpp"
#include "distroc/rocglm.hpp"
#include "distroc/simulation.hpp"

namespace distroc::cli {

enum class TransportKind { Mem, Tcp };

struct JobSpec {
  std::string sites_path;
  std::string out_dir = "distroc-out";
  // Missing epsilon/delta are looked up from the l2-sensitivity.
  std::optional<double> epsilon;
  std::optional<double> delta;
  double l2_sensitivity = 0.016;
  int privacy_level = 5;
  std::optional<double> tau;
  bool no_dp = false;
  double alpha = 0.05;
  double a0 = 0.6;
  int n_thresholds = kDefaultThresholds;
  int n_bins = 10;
  std::uint64_t seed = 1;
  TransportKind transport = TransportKind::Mem;
  int reps = 100;
  int k_sites = 5;
  // gen-data: "usecase", "auc" or "survival".
  std::string data_kind = "usecase";
  std::vector<double> demo_scores;
  bool write_files = true;
};

PrivacyParams resolve_privacy(const JobSpec& spec);

struct LoadedSite {
  SiteConfig config;
  ScoreSet scores;
  std::uint64_t noise_seed = 0;
};

// Site-local noise seed: the configured one, else derived from the job seed
// and the site's position in the config.
std::uint64_t site_noise_seed(const SiteConfig& cfg, std::uint64_t job_seed, std::size_t index);

std::vector<LoadedSite> load_sites(const JobSpec& spec);

// A session over loaded sites. With TCP, sites without a configured port are
// served from loopback servers owned by this object; sites with a port are
// expected to be running `distroc serve`.
class Federation {
 public:
  Federation(const std::vector<LoadedSite>& sites, const JobSpec& spec,
             const std::string& session_id);
  ~Federation();
  Coordinator& coordinator() { return *coord_; }

 private:
  std::vector<std::unique_ptr<TcpSiteServer>> servers_;
  std::unique_ptr<Coordinator> coord_;
};

struct ValidateResult {
  RocGlmFit fit;
  double a0 = 0.6;
  int q = 5;
  bool reject_h0 = false;
  std::string transcript;
};

std::string result_json(const ValidateResult& r);

// Each writer below puts its files into spec.out_dir when spec.write_files.
ValidateResult cmd_validate(const JobSpec& spec);

struct CalibrateResult {
  double brier = 0.0;
  CalibrationCurve curve;
  std::string transcript;
};
CalibrateResult cmd_calibrate(const JobSpec& spec);

std::vector<ReplicationResult> cmd_simulate(const JobSpec& spec);

// Writes per-site CSVs and a sites.toml into out_dir; returns the config path.
std::string cmd_gen_data(const JobSpec& spec);

struct NoiseDemoRow {
  double l2_sensitivity = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double tau = 0.0;
  std::vector<double> scores;
  std::vector<double> noisy;
};
std::vector<NoiseDemoRow> cmd_noise_demo(const JobSpec& spec);

// Serves one site of the config over TCP until the process is stopped.
void cmd_serve(const JobSpec& spec, const std::string& site_id);

}  // namespace distroc::cli
