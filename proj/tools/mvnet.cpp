#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "mvnet/harness.hpp"
#include "mvnet/lstm.hpp"
#include "mvnet/mlp.hpp"
#include "mvnet/params_io.hpp"

using namespace mvnet;

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
  double snr_db = std::numeric_limits<double>::quiet_NaN();
  double max_seconds = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "config file (key = value lines)");
  cmd->add_option("--set", opts.overrides, "override a config entry, e.g. --set seed=7");
  cmd->add_option("--snr", opts.snr_db, "SNR in dB (overrides the config's snr_db list)");
  cmd->add_option("--max-seconds", opts.max_seconds, "abort cleanly past this wall-time budget");
}

ExperimentConfig build_config(const CommonOpts& opts) {
  ExperimentConfig cfg;
  if (!opts.config_path.empty()) cfg = parse_config_file(opts.config_path);
  for (const std::string& entry : opts.overrides) {
    auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got '" + entry + "'");
    apply_config_entry(cfg, entry.substr(0, eq), entry.substr(eq + 1));
  }
  if (!std::isnan(opts.snr_db)) cfg.snr_db = {opts.snr_db};
  if (opts.max_seconds > 0.0) cfg.max_seconds = opts.max_seconds;
  cfg.validate();
  return cfg;
}

ParamFile wrap_params(const ExperimentConfig& cfg, std::vector<double> data) {
  ParamFile f;
  if (cfg.equalizer == EqualizerKind::lstm) {
    f.arch = "lstm";
    f.dims = {cfg.memory, cfg.lstm_hidden};
  } else {
    f.arch = "mlp";
    f.dims = {MlpDims::kIn, MlpDims::kH1, MlpDims::kH2, MlpDims::kOut};
  }
  f.data = std::move(data);
  return f;
}

InitialWeights load_weights(const ExperimentConfig& cfg, const std::string& path) {
  std::string arch = cfg.equalizer == EqualizerKind::lstm ? "lstm" : "mlp";
  ParamFile f = load_params(path, arch);
  std::size_t expected = cfg.equalizer == EqualizerKind::lstm
                             ? LstmConfig{cfg.memory, cfg.lstm_hidden}.param_count()
                             : MlpDims::kCount;
  if (f.data.size() != expected)
    throw std::runtime_error("weight file '" + path + "' has " +
                             std::to_string(f.data.size()) + " parameters, expected " +
                             std::to_string(expected));
  InitialWeights w;
  w.phi0 = f.data;
  if (cfg.training == TrainMethod::meta) w.theta0 = std::move(f.data);
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-varying channel equalization testbench"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* taps_cmd = app.add_subcommand("taps", "write a per-block tap schedule as CSV");
  std::string taps_source = "synthetic-test";
  bool taps_synthetic = false;
  int taps_blocks = 300;
  std::string taps_out;
  taps_cmd->add_option("--source", taps_source, "preset name or file:<path>");
  taps_cmd->add_flag("--synthetic", taps_synthetic, "shorthand for --source synthetic-test");
  taps_cmd->add_option("--blocks", taps_blocks, "number of coherence blocks")
      ->check(CLI::PositiveNumber);
  taps_cmd->add_option("--out", taps_out, "output CSV path")->required();

  auto* pre_cmd = app.add_subcommand("pretrain", "offline training; writes a weight file");
  add_common(pre_cmd, opts);
  std::string pre_out;
  pre_cmd->add_option("--out", pre_out, "output weight file")->required();

  auto* run_cmd = app.add_subcommand("run", "online evaluation; writes per-block metrics");
  add_common(run_cmd, opts);
  std::string run_weights, run_out;
  run_cmd->add_option("--weights", run_weights, "pre-trained weight file (default: pretrain)");
  run_cmd->add_option("--out", run_out, "output metrics CSV")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "BER vs SNR table across training methods");
  add_common(sweep_cmd, opts);
  std::string sweep_out;
  sweep_cmd->add_option("--out", sweep_out, "output sweep CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // usage errors are exit code 1
  }

  try {
    if (taps_cmd->parsed()) {
      if (taps_synthetic) taps_source = "synthetic-test";
      TapSchedule source = resolve_taps(taps_source, taps_blocks);
      TapSchedule schedule;  // file sources may be shorter than requested: unroll the wrap
      schedule.rows.reserve(taps_blocks);
      for (int j = 0; j < taps_blocks; ++j) schedule.rows.push_back(source.row(j));
      save_taps(schedule, taps_out);
      std::cout << "wrote " << schedule.num_blocks() << " blocks to " << taps_out << "\n";
      return 0;
    }

    ExperimentConfig cfg = build_config(opts);
    double snr = cfg.snr_db.front();

    if (pre_cmd->parsed()) {
      std::vector<double> params = pretrain_joint(cfg, snr);
      if (cfg.training == TrainMethod::meta) params = pretrain_meta(cfg, snr, params);
      save_params(wrap_params(cfg, std::move(params)), pre_out);
      std::cout << "wrote weights to " << pre_out << "\n";
      return 0;
    }

    if (run_cmd->parsed()) {
      InitialWeights weights;
      const InitialWeights* wp = nullptr;
      if (!run_weights.empty()) {
        weights = load_weights(cfg, run_weights);
        wp = &weights;
      }
      RunResult result = run_online(cfg, snr, wp);
      write_metrics_csv(result.records, run_out);
      std::cout << "blocks=" << result.records.size() << " pilots=" << result.pilot_blocks
                << " mean_data_ber=" << result.mean_data_ber
                << " decode_failures=" << result.decode_failures << "\n";
      return 0;
    }

    std::vector<SweepRow> rows = ber_sweep(cfg);
    write_sweep_csv(rows, sweep_out);
    std::cout << "wrote " << rows.size() << " rows to " << sweep_out << "\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
