#pragma once

#include <cstdint>
#include <string_view>

namespace autosgd {

/// Constant-memory accumulator for one stream's decision statistic. Holds the
/// two rolling sums behind
///   Z = sum_j (delta1_j + delta2_j)/2 / sqrt(sum_j max(eps, ((delta1_j - delta2_j)/2)^2 * 2))
/// written out: numerator terms (d1+d2)/2, denominator terms max(eps, (d1-d2)^2/2),
/// with eps floored per term to avoid division by zero when the two paired
/// evaluations agree to floating-point precision.
struct StreamStats {
  double sum_num = 0.0;
  double sum_den = 0.0;
  std::uint64_t count = 0;
  double eps = 1e-12;
};

/// Adds one paired observation. Throws on non-finite deltas, naming the
/// stream via `stream_name`.
StreamStats stats_update(StreamStats s, double delta1, double delta2,
                         std::string_view stream_name = "stream");

/// Current value of the statistic; requires at least one observation.
double z_value(const StreamStats& s);

struct DecisionConfig {
  double z_star = 1.96;
  std::uint64_t min_samples = 30;  // M
};

enum class DecisionOutcome : std::uint8_t {
  Continue,  // all indicators zero: keep running the episode
  Increase,
  Stay,
  Decrease,
  Restart,
};

std::string_view to_string(DecisionOutcome o);

/// Episode-end rule. The z arguments are the statistics of the streams
/// running at rates c*gamma < gamma < C*gamma; `count` is the number of
/// paired observations accumulated so far. Below `min_samples` the episode
/// always continues. Otherwise a rate qualifies for selection when its own
/// statistic clears the threshold and no smaller rate in the grid is
/// significantly worsening; the largest qualifying rate wins. If no rate
/// shows significant improvement, the rule falls back to the largest of
/// {c*gamma, gamma} that is not significantly worsening, and failing that
/// declares a restart.
DecisionOutcome decide(double z_lo, double z_mid, double z_hi,
                       std::uint64_t count, const DecisionConfig& cfg);

}  // namespace autosgd
