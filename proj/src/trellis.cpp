#include "mvnet/trellis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mvnet {

namespace {

constexpr double kLikelihoodFloor = 1e-30;

void neg_log_costs(const LikelihoodProvider& provider, double y, int valid, int num_states,
                   std::vector<double>& out) {
  provider.evaluate_warmup(y, valid, std::span<double>(out.data(), num_states));
  for (int s = 0; s < num_states; ++s) {
    double v = out[s];
    if (!std::isfinite(v) || v < 0.0)
      throw std::runtime_error("likelihood provider returned a negative or non-finite value");
    if (v < kLikelihoodFloor) v = kLikelihoodFloor;
    out[s] = -std::log(v);
  }
}

}  // namespace

GaussianProvider::GaussianProvider(std::vector<double> taps, double noise_variance)
    : taps_(std::move(taps)), noise_variance_(noise_variance) {
  if (noise_variance_ <= 0.0)
    throw std::invalid_argument("GaussianProvider: noise variance must be positive");
}

void GaussianProvider::evaluate(double y, std::span<double> out) const {
  evaluate_warmup(y, memory(), out);
}

void GaussianProvider::evaluate_warmup(double y, int valid, std::span<double> out) const {
  const int L = memory();
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * noise_variance_);
  const double inv2v = 1.0 / (2.0 * noise_variance_);
  for (int state = 0; state < (1 << L); ++state) {
    // y_i = sum_l h_l s_{i-l}; s_{i-l} sits at relative position L-1-l,
    // and lags l >= valid fall in the zero guard.
    double mean = 0.0;
    for (int l = 0; l < valid; ++l) mean += taps_[l] * state_symbol(state, L - 1 - l);
    double d = y - mean;
    out[state] = norm * std::exp(-d * d * inv2v);
  }
}

std::vector<int> viterbi_detect(const std::vector<double>& observations,
                                const LikelihoodProvider& provider, ViterbiOptions options) {
  const int L = provider.memory();
  const int S = 1 << L;
  const int B = static_cast<int>(observations.size());
  if (B < 1) throw std::invalid_argument("viterbi_detect: empty observation block");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(S, options.guard_start ? kInf : 0.0);
  if (options.guard_start) prev[0] = 0.0;
  std::vector<double> cur(S);
  std::vector<double> step_cost(S);
  std::vector<int> backptr(static_cast<std::size_t>(B) * S);

  for (int i = 0; i < B; ++i) {
    neg_log_costs(provider, observations[i], std::min(i + 1, L), S, step_cost);
    for (int state = 0; state < S; ++state) {
      // predecessors: shift out the oldest symbol, ties go to the lower index
      int rest = state & ~(1 << (L - 1));
      int u0 = rest << 1;
      int u1 = u0 | 1;
      int best = prev[u1] < prev[u0] ? u1 : u0;
      cur[state] = prev[best] + step_cost[state];
      backptr[static_cast<std::size_t>(i) * S + state] = best;
    }
    std::swap(prev, cur);
  }

  int state = 0;
  for (int s = 1; s < S; ++s)
    if (prev[s] < prev[state]) state = s;

  std::vector<int> detected(B);
  for (int i = B - 1; i >= 0; --i) {
    detected[i] = state_newest_symbol(state, L);
    state = backptr[static_cast<std::size_t>(i) * S + state];
  }
  return detected;
}

std::vector<int> brute_force_ml(const std::vector<double>& observations,
                                const LikelihoodProvider& provider) {
  const int L = provider.memory();
  const int S = 1 << L;
  const int B = static_cast<int>(observations.size());
  if (B < 1) throw std::invalid_argument("brute_force_ml: empty observation block");
  if (B > 16) throw std::invalid_argument("brute_force_ml: refusing B > 16");

  std::vector<std::vector<double>> costs(B, std::vector<double>(S));
  for (int i = 0; i < B; ++i)
    neg_log_costs(provider, observations[i], std::min(i + 1, L), S, costs[i]);

  double best_cost = std::numeric_limits<double>::infinity();
  std::uint32_t best_seq = 0;
  for (std::uint32_t seq = 0; seq < (1u << B); ++seq) {
    // bit B-1-i of seq encodes symbol i (1 means -1), so increasing seq
    // enumerates sequences in lexicographic order of the state encoding
    double cost = 0.0;
    int state = 0;
    for (int i = 0; i < B; ++i) {
      int bit = (seq >> (B - 1 - i)) & 1u;
      state = (state >> 1) | (bit << (L - 1));
      cost += costs[i][state];
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_seq = seq;
    }
  }

  std::vector<int> detected(B);
  for (int i = 0; i < B; ++i) detected[i] = (best_seq >> (B - 1 - i)) & 1u ? -1 : +1;
  return detected;
}

double ber(std::span<const int> truth, std::span<const int> estimate) {
  if (truth.size() != estimate.size())
    throw std::invalid_argument("ber: length mismatch");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i] != estimate[i]) ++errors;
  return static_cast<double>(errors) / static_cast<double>(truth.size());
}

}  // namespace mvnet
