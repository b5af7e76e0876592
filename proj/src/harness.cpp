#include "mvnet/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "mvnet/bits.hpp"
#include "mvnet/optim.hpp"
#include "mvnet/rs17.hpp"

namespace mvnet {

namespace {

// seed stream tags
enum Stream : std::uint64_t {
  kMsg = 1,
  kNoise = 2,
  kPretrainMsg = 3,
  kPretrainNoise = 4,
  kAdapter = 5,
  kInit = 6,
  kMetaPretrain = 7,
};

std::vector<std::uint8_t> random_bits(Rng& rng, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u64() & 1u);
  return bits;
}

std::string format_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void TruthVault::store(int block, std::vector<int> symbols, bool is_pilot) {
  if (block != static_cast<int>(slots_.size()))
    throw std::logic_error("TruthVault: blocks must be stored in order");
  slots_.push_back(Slot{std::move(symbols), is_pilot});
}

const std::vector<int>& TruthVault::metrics_access(int block) const {
  ++metrics_accesses_;
  return slots_.at(block).symbols;
}

const std::vector<int>& TruthVault::pilot_access(int block) const {
  const Slot& slot = slots_.at(block);
  if (!slot.is_pilot) {
    ++data_truth_leaks_;
    throw std::logic_error("TruthVault: adaptive path requested data-block ground truth");
  }
  ++pilot_accesses_;
  return slot.symbols;
}

std::vector<BufferEntry> make_offline_blocks(const ExperimentConfig& cfg, double snr_db,
                                             int count, int first_block) {
  TapSchedule schedule = resolve_taps(cfg.train_taps, first_block + count);
  const double sigma2 = snr_to_variance(snr_db);
  std::vector<BufferEntry> blocks;
  blocks.reserve(count);
  for (int j = first_block; j < first_block + count; ++j) {
    Rng msg_rng = Rng::derive(cfg.seed, j, kPretrainMsg);
    Rng noise_rng = Rng::derive(cfg.seed, j, kPretrainNoise);
    std::vector<int> symbols = bpsk_modulate(random_bits(msg_rng, cfg.block_length));
    std::vector<double> samples = apply_channel(symbols, schedule.row(j), sigma2, noise_rng);
    blocks.push_back(BufferEntry{j, std::move(symbols), std::move(samples)});
  }
  return blocks;
}

std::unique_ptr<EqualizerModel> make_model(const ExperimentConfig& cfg, double snr_db,
                                           std::vector<double> params,
                                           const TapSchedule* test_schedule) {
  ViterbiOptions options{cfg.guard_start};
  switch (cfg.equalizer) {
    case EqualizerKind::viterbinet:
      return std::make_unique<MlpModel>(std::move(params), options);
    case EqualizerKind::lstm:
      return std::make_unique<LstmModel>(LstmConfig{cfg.memory, cfg.lstm_hidden},
                                         std::move(params));
    case EqualizerKind::full_csi:
      if (!test_schedule) throw std::invalid_argument("full-csi model needs a tap schedule");
      return std::make_unique<FullCsiModel>(*test_schedule, snr_to_variance(snr_db), options);
  }
  throw std::logic_error("unreachable");
}

std::vector<double> pretrain_joint(const ExperimentConfig& cfg, double snr_db) {
  if (cfg.equalizer == EqualizerKind::full_csi)
    throw std::invalid_argument("pretrain_joint: full-csi has no trainable weights");
  std::vector<BufferEntry> blocks = make_offline_blocks(cfg, snr_db, cfg.pretrain_blocks);

  Rng init_rng = Rng::derive(cfg.seed, kInit);
  std::vector<double> params;
  if (cfg.equalizer == EqualizerKind::viterbinet) {
    params = mlp_random_init(init_rng);
  } else {
    params = lstm_random_init(LstmConfig{cfg.memory, cfg.lstm_hidden}, init_rng);
  }
  auto model = make_model(cfg, snr_db, params, nullptr);

  // full-batch Adam on the pooled offline set; the linear lr decay settles the
  // endgame (constant-lr Adam oscillates noticeably at this scale)
  AdamState adam(params.size());
  std::vector<double> grad(params.size());
  std::vector<double> block_grad;
  for (int it = 0; it < cfg.pretrain_iters; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const BufferEntry& entry : blocks) {
      model->loss_grad(params, entry, &block_grad);
      for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += block_grad[i];
    }
    double f = static_cast<double>(it) / cfg.pretrain_iters;
    adam.step(params, grad, cfg.pretrain_lr * (1.0 - f) + 1e-4 * f);
  }
  return params;
}

std::vector<double> pretrain_meta(const ExperimentConfig& cfg, double snr_db,
                                  const std::vector<double>& theta_init) {
  if (cfg.pretrain_blocks < 2)
    throw std::invalid_argument("pretrain_meta: need at least two offline blocks");
  std::vector<BufferEntry> blocks = make_offline_blocks(cfg, snr_db, cfg.pretrain_blocks);
  auto model = make_model(cfg, snr_db, theta_init, nullptr);

  AdaptationBuffer buffer(cfg.pretrain_blocks);
  for (auto& b : blocks) buffer.insert(std::move(b));

  Rng rng = Rng::derive(cfg.seed, kMetaPretrain);
  std::vector<double> theta = theta_init;
  std::vector<double> grad, adapted;
  auto mean_scale = [](std::vector<double>& g, const BufferEntry& e) {
    double inv = 1.0 / static_cast<double>(e.samples.size());
    for (double& v : g) v *= inv;
  };
  for (int it = 0; it < cfg.pretrain_meta_iters; ++it) {
    auto pair = select_meta_pair(buffer, cfg.adapt.window, rng);
    if (!pair) break;
    model->loss_grad(theta, *pair->support, &grad);
    mean_scale(grad, *pair->support);
    adapted = theta;
    sgd_step(adapted, grad, cfg.adapt.eta);
    model->loss_grad(adapted, *pair->query, &grad);
    mean_scale(grad, *pair->query);
    sgd_step(theta, grad, cfg.adapt.kappa);
  }
  return theta;
}

RunResult run_online(const ExperimentConfig& cfg, double snr_db, const InitialWeights* weights,
                     TruthVault* vault) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();
  const double sigma2 = snr_to_variance(snr_db);
  TapSchedule schedule = resolve_taps(cfg.test_taps, cfg.total_blocks);

  InitialWeights local;
  if (!weights && cfg.equalizer != EqualizerKind::full_csi) {
    local.phi0 = pretrain_joint(cfg, snr_db);
    if (cfg.training == TrainMethod::meta) {
      local.theta0 = pretrain_meta(cfg, snr_db, local.phi0);
      local.phi0 = local.theta0;
    }
    weights = &local;
  }

  std::unique_ptr<EqualizerModel> model = make_model(
      cfg, snr_db, weights ? weights->phi0 : std::vector<double>{}, &schedule);

  AdaptConfig adapt = cfg.adapt;
  adapt.method = cfg.training;
  OnlineAdapter::DecodeRemodulate codec = [](const std::vector<int>& detected)
      -> std::optional<OnlineAdapter::Remodulated> {
    std::vector<std::uint8_t> bits(detected.size());
    for (std::size_t i = 0; i < detected.size(); ++i) bits[i] = detected[i] < 0 ? 1 : 0;
    std::vector<std::uint8_t> bytes = pack_bits(bits);
    rs::Codeword cw;
    std::copy(bytes.begin(), bytes.end(), cw.begin());
    rs::DecodeOutcome outcome = rs::decode(cw);
    if (!outcome.success) return std::nullopt;
    rs::Codeword corrected = rs::encode(*outcome.message);
    std::vector<std::uint8_t> cbits =
        unpack_bits(std::vector<std::uint8_t>(corrected.begin(), corrected.end()));
    return OnlineAdapter::Remodulated{bpsk_modulate(cbits), outcome.corrected_symbols};
  };
  OnlineAdapter adapter(*model, adapt, codec, Rng::derive(cfg.seed, kAdapter).next_u64());
  if (model->trainable() && weights && !weights->theta0.empty())
    adapter.set_theta(weights->theta0);

  TruthVault local_vault;
  if (!vault) vault = &local_vault;

  Rng pilot_rng(cfg.pilot_seed);
  const std::vector<int> pilot_symbols = bpsk_modulate(random_bits(pilot_rng, cfg.block_length));

  RunResult result;
  result.records.reserve(cfg.total_blocks);
  double ber_sum = 0.0;
  double data_ber_sum = 0.0;
  int data_blocks = 0;

  for (int j = 0; j < cfg.total_blocks; ++j) {
    const bool is_pilot = j % cfg.frame_length == 0;
    const auto t_block = std::chrono::steady_clock::now();

    std::vector<int> truth;
    if (is_pilot) {
      truth = pilot_symbols;
    } else {
      Rng msg_rng = Rng::derive(cfg.seed, j, kMsg);
      rs::Message message{};
      std::vector<std::uint8_t> mbits = random_bits(msg_rng, (rs::kDataBytes) * 8);
      std::vector<std::uint8_t> mbytes = pack_bits(mbits);
      std::copy(mbytes.begin(), mbytes.end(), message.begin());
      rs::Codeword cw = rs::encode(message);
      truth = bpsk_modulate(unpack_bits(std::vector<std::uint8_t>(cw.begin(), cw.end())));
    }
    vault->store(j, std::move(truth), is_pilot);

    Rng noise_rng = Rng::derive(cfg.seed, j, kNoise);
    ObservationBlock obs;
    obs.block_index = j;
    obs.snr_db = snr_db;
    // channel input is read from the vault's single source of truth
    obs.samples = apply_channel(vault->metrics_access(j), schedule.row(j), sigma2, noise_rng);

    SymbolBlock pilot_block;
    const SymbolBlock* pilot_ptr = nullptr;
    if (is_pilot) {
      pilot_block.symbols = vault->pilot_access(j);
      pilot_block.block_index = j;
      pilot_block.is_pilot = true;
      pilot_ptr = &pilot_block;
    }

    ProcessResult proc = adapter.process_block(obs, pilot_ptr);

    MetricRecord rec;
    rec.block = j;
    rec.is_pilot = is_pilot;
    rec.coded_ber = ber(vault->metrics_access(j), proc.detected);
    rec.decode_success = proc.decode_success;
    ber_sum += rec.coded_ber;
    rec.cum_mean_ber = ber_sum / (j + 1);
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t_block)
                      .count();
    result.records.push_back(rec);

    if (is_pilot) {
      ++result.pilot_blocks;
    } else {
      data_ber_sum += rec.coded_ber;
      ++data_blocks;
      if (!proc.decode_success) ++result.decode_failures;
    }

    if (cfg.max_seconds > 0.0) {
      double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
      if (elapsed > cfg.max_seconds)
        throw TimeoutError("run_online: exceeded max_seconds after block " + std::to_string(j));
    }
  }
  result.mean_data_ber = data_blocks ? data_ber_sum / data_blocks : 0.0;
  return result;
}

std::vector<SweepRow> ber_sweep(const ExperimentConfig& cfg) {
  const bool trainable = cfg.equalizer != EqualizerKind::full_csi;
  std::vector<TrainMethod> methods;
  if (trainable)
    methods = {TrainMethod::joint, TrainMethod::online, TrainMethod::meta};
  else
    methods = {cfg.training};

  std::vector<SweepRow> rows;
  for (double snr : cfg.snr_db) {
    // pre-training is shared across methods within one (SNR, seed) cell
    InitialWeights weights;
    if (trainable) {
      weights.phi0 = pretrain_joint(cfg, snr);
      if (std::find(methods.begin(), methods.end(), TrainMethod::meta) != methods.end())
        weights.theta0 = pretrain_meta(cfg, snr, weights.phi0);
    }
    for (TrainMethod method : methods) {
      ExperimentConfig cell = cfg;
      cell.training = method;
      cell.seed = Rng::derive(cfg.seed, static_cast<std::uint64_t>(cfg.equalizer),
                              static_cast<std::uint64_t>(method))
                      .next_u64();
      InitialWeights w = weights;
      if (method == TrainMethod::meta) w.phi0 = w.theta0;
      RunResult run = run_online(cell, snr, trainable ? &w : nullptr);
      SweepRow row;
      row.snr_db = snr;
      row.equalizer = cfg.equalizer;
      row.training = method;
      row.mean_coded_ber = run.mean_data_ber;
      row.blocks = cfg.total_blocks;
      row.seed = cell.seed;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_metrics_csv(const std::vector<MetricRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_metrics_csv: cannot open " + path);
  out << "block,is_pilot,coded_ber,decode_success,cum_mean_ber,wall_ms\n";
  for (const auto& r : records) {
    out << r.block << ',' << (r.is_pilot ? 1 : 0) << ',' << format_g6(r.coded_ber) << ','
        << (r.decode_success ? 1 : 0) << ',' << format_g6(r.cum_mean_ber) << ','
        << format_g6(r.wall_ms) << '\n';
  }
  if (!out) throw std::runtime_error("write_metrics_csv: write failed for " + path);
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_sweep_csv: cannot open " + path);
  out << "snr_db,equalizer,training,mean_coded_ber,blocks,seed\n";
  for (const auto& r : rows) {
    out << format_g6(r.snr_db) << ',' << to_string(r.equalizer) << ',' << to_string(r.training)
        << ',' << format_g6(r.mean_coded_ber) << ',' << r.blocks << ',' << r.seed << '\n';
  }
  if (!out) throw std::runtime_error("write_sweep_csv: write failed for " + path);
}

}  // namespace mvnet
