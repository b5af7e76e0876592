#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mvnet/config.hpp"
#include "mvnet/models.hpp"

namespace mvnet {

struct MetricRecord {
  int block = 0;
  bool is_pilot = false;
  double coded_ber = 0.0;
  bool decode_success = false;
  double cum_mean_ber = 0.0;
  double wall_ms = 0.0;
};

struct RunResult {
  std::vector<MetricRecord> records;
  double mean_data_ber = 0.0;  // mean coded BER over data blocks
  int pilot_blocks = 0;
  int decode_failures = 0;
};

struct SweepRow {
  double snr_db = 0.0;
  EqualizerKind equalizer;
  TrainMethod training;
  double mean_coded_ber = 0.0;
  int blocks = 0;
  std::uint64_t seed = 0;
};

struct TimeoutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Counts every ground-truth access so tests can assert that the adaptive path
// never touches data-block truth (pilot truth is the only adaptive access).
class TruthVault {
 public:
  void store(int block, std::vector<int> symbols, bool is_pilot);
  const std::vector<int>& metrics_access(int block) const;
  const std::vector<int>& pilot_access(int block) const;  // throws for data blocks
  int metrics_accesses() const { return metrics_accesses_; }
  int pilot_accesses() const { return pilot_accesses_; }
  int data_truth_leaks() const { return data_truth_leaks_; }

 private:
  struct Slot {
    std::vector<int> symbols;
    bool is_pilot = false;
  };
  std::vector<Slot> slots_;
  mutable int metrics_accesses_ = 0;
  mutable int pilot_accesses_ = 0;
  mutable int data_truth_leaks_ = 0;
};

// Offline pre-training on T_t known blocks over the training tap schedule.
std::vector<double> pretrain_joint(const ExperimentConfig& cfg, double snr_db);
// Meta-refines an initialization over consecutive pairs of the offline blocks.
std::vector<double> pretrain_meta(const ExperimentConfig& cfg, double snr_db,
                                  const std::vector<double>& theta_init);

struct InitialWeights {
  std::vector<double> phi0;
  std::vector<double> theta0;  // used by the meta method; may equal phi0
};

RunResult run_online(const ExperimentConfig& cfg, double snr_db,
                     const InitialWeights* weights = nullptr, TruthVault* vault = nullptr);

std::vector<SweepRow> ber_sweep(const ExperimentConfig& cfg);

void write_metrics_csv(const std::vector<MetricRecord>& records, const std::string& path);
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

// Offline training data: block index j maps to known symbols + observations
// over the training schedule (used by pre-training and by tests).
std::vector<BufferEntry> make_offline_blocks(const ExperimentConfig& cfg, double snr_db,
                                             int count, int first_block = 0);

std::unique_ptr<EqualizerModel> make_model(const ExperimentConfig& cfg, double snr_db,
                                           std::vector<double> params,
                                           const TapSchedule* test_schedule);

}  // namespace mvnet
