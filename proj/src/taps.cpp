#include "mvnet/taps.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mvnet {

TapSchedule synthetic_taps(std::size_t num_blocks, const SyntheticTapParams& params) {
  for (double p : params.periods)
    if (p <= 0.0) throw std::invalid_argument("synthetic_taps: periods must be positive");
  TapSchedule sched;
  sched.rows.resize(num_blocks);
  const std::size_t memory = params.periods.size();
  for (std::size_t j = 0; j < num_blocks; ++j) {
    auto& row = sched.rows[j];
    row.resize(memory);
    for (std::size_t l = 1; l <= memory; ++l) {
      double osc = params.dc +
                   params.amplitude *
                       std::cos(2.0 * std::numbers::pi * static_cast<double>(j) /
                                params.periods[l - 1]);
      row[l - 1] = std::exp(-params.decay * static_cast<double>(l - 1)) * osc;
    }
  }
  return sched;
}

TapSchedule load_taps(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_taps: cannot open " + path);
  TapSchedule sched;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (blank) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      try {
        std::size_t pos = 0;
        double v = std::stod(field, &pos);
        while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
        if (pos != field.size()) throw std::invalid_argument(field);
        if (!std::isfinite(v)) throw std::invalid_argument(field);
        row.push_back(v);
      } catch (const std::exception&) {
        throw std::runtime_error("load_taps: " + path + ":" + std::to_string(lineno) +
                                 ": bad value '" + field + "'");
      }
    }
    if (!sched.rows.empty() && row.size() != sched.rows[0].size())
      throw std::runtime_error("load_taps: " + path + ":" + std::to_string(lineno) +
                               ": inconsistent column count");
    sched.rows.push_back(std::move(row));
  }
  if (sched.rows.empty()) throw std::runtime_error("load_taps: " + path + ": no tap rows");
  return sched;
}

void save_taps(const TapSchedule& schedule, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_taps: cannot open " + path);
  out.precision(17);
  for (const auto& row : schedule.rows) {
    for (std::size_t l = 0; l < row.size(); ++l) {
      if (l) out << ',';
      out << row[l];
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("save_taps: write failed for " + path);
}

}  // namespace mvnet
