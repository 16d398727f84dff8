#include "autosgd/decision.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace autosgd {

StreamStats stats_update(StreamStats s, double delta1, double delta2,
                         std::string_view stream_name) {
  if (!std::isfinite(delta1) || !std::isfinite(delta2))
    throw std::invalid_argument("stats_update: non-finite delta on " +
                                std::string(stream_name));
  s.sum_num += 0.5 * (delta1 + delta2);
  const double half_diff_sq = 0.5 * (delta1 - delta2) * (delta1 - delta2);
  s.sum_den += std::max(s.eps, half_diff_sq);
  s.count += 1;
  return s;
}

double z_value(const StreamStats& s) {
  if (s.count == 0)
    throw std::logic_error("z_value: statistic undefined with no observations");
  return s.sum_num / std::sqrt(s.sum_den);
}

std::string_view to_string(DecisionOutcome o) {
  switch (o) {
    case DecisionOutcome::Continue: return "continue";
    case DecisionOutcome::Increase: return "increase";
    case DecisionOutcome::Stay: return "stay";
    case DecisionOutcome::Decrease: return "decrease";
    case DecisionOutcome::Restart: return "restart";
  }
  return "?";
}

DecisionOutcome decide(double z_lo, double z_mid, double z_hi,
                       std::uint64_t count, const DecisionConfig& cfg) {
  if (!std::isfinite(z_lo) || !std::isfinite(z_mid) || !std::isfinite(z_hi))
    throw std::invalid_argument("decide: non-finite statistic");

  if (count < cfg.min_samples) return DecisionOutcome::Continue;

  const double z = cfg.z_star;
  // A rate qualifies when its statistic exceeds z* and every smaller rate in
  // the grid sits above -z*; the largest qualifying rate wins.
  if (z_hi > z && z_lo >= -z && z_mid >= -z) return DecisionOutcome::Increase;
  if (z_mid > z && z_lo >= -z) return DecisionOutcome::Stay;
  if (z_lo > z) return DecisionOutcome::Decrease;

  // No significant reduction anywhere: prefer the largest of the two lower
  // rates that shows no significant increase.
  if (z_mid >= -z && z_lo >= -z) return DecisionOutcome::Stay;
  if (z_lo >= -z) return DecisionOutcome::Decrease;

  return DecisionOutcome::Restart;
}

}  // namespace autosgd
