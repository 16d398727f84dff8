#include "autosgd/averaging.hpp"

#include <cmath>
#include <stdexcept>

namespace autosgd {

RoundAverager::RoundAverager(std::size_t dim, RoundAveragerConfig cfg)
    : cfg_(cfg), prev_mean_(dim, 0.0), cur_mean_(dim, 0.0) {
  if (!(cfg_.delta >= 0.0 && cfg_.delta < 1.0))
    throw std::invalid_argument("RoundAverager: delta must be in [0, 1)");
}

std::int64_t RoundAverager::next_boundary(std::int64_t boundary) const {
  const double growth = 1.0 / (1.0 - cfg_.delta);
  const auto next = static_cast<std::int64_t>(
      std::llround(growth * static_cast<double>(boundary) + 1.0));
  return std::max(boundary + 1, next);
}

Vec RoundAverager::update(const Vec& x) {
  check_dim(x, cur_mean_.size(), "RoundAverager::update");

  in_round_ += 1;
  const double w = 1.0 / static_cast<double>(in_round_);
  for (std::size_t i = 0; i < x.size(); ++i)
    cur_mean_[i] += w * (x[i] - cur_mean_[i]);

  const std::int64_t t = t_;
  t_ += 1;

  if (t == end_ - 1) {
    // Round boundary: emit the finished round mean, then roll.
    last_alpha_ = 1.0;
    Vec z = cur_mean_;
    prev_mean_ = cur_mean_;
    std::fill(cur_mean_.begin(), cur_mean_.end(), 0.0);
    round_ += 1;
    prev_start_ = start_;
    start_ = end_;
    end_ = next_boundary(end_);
    in_round_ = 0;
    return z;
  }

  if (round_ == 0) {
    last_alpha_ = 1.0;
    return cur_mean_;
  }

  const auto n_cur = static_cast<double>(t - start_ + 1);
  const auto reach = static_cast<double>(t - prev_start_ + 1);
  const auto round_len = static_cast<double>(end_ - start_);
  const double alpha = (reach <= round_len) ? n_cur / reach : n_cur / round_len;
  last_alpha_ = alpha;

  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    z[i] = (1.0 - alpha) * prev_mean_[i] + alpha * cur_mean_[i];
  return z;
}

}  // namespace autosgd
