// Independent transcription of the episode-end decision rule, written with
// explicit rate-set machinery rather than nested conditionals. Kept separate
// from the production decide() on purpose: the two are cross-checked over
// fuzzed inputs and must never share code.
#pragma once

#include <algorithm>
#include <vector>

#include "autosgd/decision.hpp"

namespace autosgd::testing {

inline DecisionOutcome oracle_decide(double z_lo, double z_mid, double z_hi,
                                     std::uint64_t count, const DecisionConfig& cfg) {
  if (count < cfg.min_samples) return DecisionOutcome::Continue;

  struct Entry {
    double rate;
    double z;
  };
  // Any positive grid works; only the ordering of rates matters.
  const double g = 1.0;
  const std::vector<Entry> grid = {{0.5 * g, z_lo}, {g, z_mid}, {2.0 * g, z_hi}};

  auto chain_ok = [&](const std::vector<Entry>& set, double rate) {
    for (const Entry& other : set)
      if (other.rate < rate && !(other.z >= -cfg.z_star)) return false;
    return true;
  };
  auto classify = [&](double rate) {
    if (rate == 0.5 * g) return DecisionOutcome::Decrease;
    if (rate == g) return DecisionOutcome::Stay;
    return DecisionOutcome::Increase;
  };

  std::vector<double> winners;
  for (const Entry& e : grid)
    if (e.z > cfg.z_star && chain_ok(grid, e.rate)) winners.push_back(e.rate);
  if (!winners.empty())
    return classify(*std::max_element(winners.begin(), winners.end()));

  const std::vector<Entry> lower = {grid[0], grid[1]};
  winners.clear();
  for (const Entry& e : lower)
    if (e.z >= -cfg.z_star && chain_ok(lower, e.rate)) winners.push_back(e.rate);
  if (!winners.empty())
    return classify(*std::max_element(winners.begin(), winners.end()));

  return DecisionOutcome::Restart;
}

}  // namespace autosgd::testing
