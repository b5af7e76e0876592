#pragma once

#include <string>
#include <vector>

namespace mvnet {

// Per-block channel impulse responses; one row per coherence block.
struct TapSchedule {
  std::vector<std::vector<double>> rows;

  int memory() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
  std::size_t num_blocks() const { return rows.size(); }
  // Block indices beyond the schedule wrap around (stacked realizations).
  const std::vector<double>& row(std::size_t j) const { return rows[j % rows.size()]; }
};

struct SyntheticTapParams {
  std::vector<double> periods{51.0, 39.0, 33.0, 21.0};
  double decay = 0.2;
  double dc = 0.8;
  double amplitude = 0.2;
};

// Row j, tap l in 1..L: exp(-decay*(l-1)) * (dc + amplitude*cos(2*pi*j/periods[l-1])).
TapSchedule synthetic_taps(std::size_t num_blocks, const SyntheticTapParams& params);

// Line-oriented text, one block per line, comma-separated floats, '#' comments.
TapSchedule load_taps(const std::string& path);
void save_taps(const TapSchedule& schedule, const std::string& path);

}  // namespace mvnet
