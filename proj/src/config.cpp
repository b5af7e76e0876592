#include "mvnet/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mvnet {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(std::stod(trim(field)));
  return out;
}

}  // namespace

std::string to_string(EqualizerKind kind) {
  switch (kind) {
    case EqualizerKind::viterbinet: return "viterbinet";
    case EqualizerKind::lstm: return "lstm";
    case EqualizerKind::full_csi: return "full-csi";
  }
  return "?";
}

std::string to_string(TrainMethod method) {
  switch (method) {
    case TrainMethod::joint: return "joint";
    case TrainMethod::online: return "online";
    case TrainMethod::meta: return "meta";
  }
  return "?";
}

EqualizerKind parse_equalizer(const std::string& text) {
  if (text == "viterbinet") return EqualizerKind::viterbinet;
  if (text == "lstm") return EqualizerKind::lstm;
  if (text == "full-csi") return EqualizerKind::full_csi;
  throw std::invalid_argument("unknown equalizer '" + text + "'");
}

TrainMethod parse_training(const std::string& text) {
  if (text == "joint") return TrainMethod::joint;
  if (text == "online") return TrainMethod::online;
  if (text == "meta") return TrainMethod::meta;
  throw std::invalid_argument("unknown training method '" + text + "'");
}

void ExperimentConfig::validate() const {
  if (block_length != 136)
    throw std::invalid_argument("config: block_length must equal the 136 code bits");
  if (frame_length < 1 || frame_length > total_blocks)
    throw std::invalid_argument("config: frame_length must be in [1, total_blocks]");
  if (adapt.meta_period > frame_length)
    throw std::invalid_argument("config: meta_period must not exceed frame_length");
  if (memory != 4) throw std::invalid_argument("config: memory must be 4 (16-state trellis)");
  if (snr_db.empty()) throw std::invalid_argument("config: snr_db list is empty");
  if (pretrain_blocks < 1) throw std::invalid_argument("config: pretrain_blocks must be >= 1");
}

void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "total_blocks") cfg.total_blocks = std::stoi(value);
  else if (key == "frame_length") cfg.frame_length = std::stoi(value);
  else if (key == "block_length") cfg.block_length = std::stoi(value);
  else if (key == "memory") cfg.memory = std::stoi(value);
  else if (key == "snr_db") cfg.snr_db = parse_double_list(value);
  else if (key == "seed") cfg.seed = std::stoull(value);
  else if (key == "equalizer") cfg.equalizer = parse_equalizer(value);
  else if (key == "training") cfg.training = parse_training(value);
  else if (key == "train_taps") cfg.train_taps = value;
  else if (key == "test_taps") cfg.test_taps = value;
  else if (key == "eta") cfg.adapt.eta = std::stod(value);
  else if (key == "kappa") cfg.adapt.kappa = std::stod(value);
  else if (key == "online_iters") cfg.adapt.online_iters = std::stoi(value);
  else if (key == "meta_iters") cfg.adapt.meta_iters = std::stoi(value);
  else if (key == "meta_period") cfg.adapt.meta_period = std::stoi(value);
  else if (key == "window") cfg.adapt.window = std::stoi(value);
  else if (key == "buffer_capacity") cfg.adapt.buffer_capacity = std::stoi(value);
  else if (key == "online_opt") {
    if (value == "adam") cfg.adapt.online_opt = OptKind::adam;
    else if (value == "sgd") cfg.adapt.online_opt = OptKind::sgd;
    else throw std::invalid_argument("config: online_opt must be adam or sgd");
  } else if (key == "pretrain_blocks") cfg.pretrain_blocks = std::stoi(value);
  else if (key == "pretrain_iters") cfg.pretrain_iters = std::stoi(value);
  else if (key == "pretrain_lr") cfg.pretrain_lr = std::stod(value);
  else if (key == "pretrain_meta_iters") cfg.pretrain_meta_iters = std::stoi(value);
  else if (key == "lstm_hidden") cfg.lstm_hidden = std::stoi(value);
  else if (key == "trellis_init") {
    if (value == "guard") cfg.guard_start = true;
    else if (value == "uniform") cfg.guard_start = false;
    else throw std::invalid_argument("config: trellis_init must be guard or uniform");
  } else if (key == "max_seconds") cfg.max_seconds = std::stod(value);
  else if (key == "pilot_seed") cfg.pilot_seed = std::stoull(value);
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: " + path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    try {
      apply_config_entry(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    } catch (const std::exception& e) {
      throw std::runtime_error("config: " + path + ":" + std::to_string(lineno) + ": " +
                               e.what());
    }
  }
  cfg.validate();
  return cfg;
}

TapSchedule resolve_taps(const std::string& source, std::size_t num_blocks) {
  if (source == "synthetic-train") {
    // pre-training variant: same family, different periods, milder swings
    SyntheticTapParams p;
    p.periods = {31.0, 18.0, 44.0, 27.0};
    p.amplitude = 0.1;
    return synthetic_taps(num_blocks, p);
  }
  if (source == "synthetic-test") {
    return synthetic_taps(num_blocks, SyntheticTapParams{});
  }
  if (source.rfind("file:", 0) == 0) return load_taps(source.substr(5));
  throw std::invalid_argument("tap source must be synthetic-train, synthetic-test or file:<path>");
}

}  // namespace mvnet
