#pragma once

#include <cstdint>

#include "autosgd/vec.hpp"

namespace autosgd {

struct RoundAveragerConfig {
  /// Suffix fraction: round boundaries grow by a factor 1/(1-delta) so the
  /// output approximates an online average of the last delta * 100% of
  /// iterates. The default 0.5 gives boundaries T_r = 2^r - 1.
  double delta = 0.5;
};

/// Constant-memory online round-based averaging over an iterate stream.
/// Keeps just two running round means (O(d) memory, independent of the trace
/// length): the finished previous round and the growing current round. The
/// emitted average is the current round's mean at a round boundary and an
/// interpolation between the two means inside a round, with the weight
/// chosen so early-round outputs lean on the previous round and late-round
/// outputs on the current one. Purely a post-processor: it never feeds back
/// into the optimizer producing the stream.
class RoundAverager {
 public:
  explicit RoundAverager(std::size_t dim, RoundAveragerConfig cfg = {});

  /// Consumes x_t and returns the averaged iterate z_t.
  Vec update(const Vec& x);

  std::int64_t t() const { return t_; }
  std::int64_t round() const { return round_; }
  /// Interpolation weight used by the most recent update (1 in round 0 and
  /// at round ends).
  double last_alpha() const { return last_alpha_; }

 private:
  std::int64_t next_boundary(std::int64_t boundary) const;

  RoundAveragerConfig cfg_;
  Vec prev_mean_;
  Vec cur_mean_;
  std::int64_t t_ = 0;           // global index of the next sample
  std::int64_t round_ = 0;       // r
  std::int64_t prev_start_ = 0;  // T_{r-1}
  std::int64_t start_ = 0;       // T_r
  std::int64_t end_ = 1;         // T_{r+1}
  std::int64_t in_round_ = 0;    // samples consumed in round r
  double last_alpha_ = 1.0;
};

}  // namespace autosgd
