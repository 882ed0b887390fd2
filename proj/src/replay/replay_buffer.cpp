#include "sarc/replay/replay_buffer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sarc::replay {

ReplayBuffer::ReplayBuffer(int obs_dim, int act_dim, std::size_t capacity)
    : obs_dim_(obs_dim), act_dim_(act_dim), capacity_(capacity) {
  if (obs_dim <= 0 || act_dim <= 0)
    throw std::invalid_argument("ReplayBuffer: dimensions must be positive");
  if (capacity == 0) throw std::invalid_argument("ReplayBuffer: capacity must be positive");
}

void ReplayBuffer::store(const Transition& t) {
  if (t.s.size() != obs_dim_ || t.s_next.size() != obs_dim_ || t.a.size() != act_dim_)
    throw std::invalid_argument("ReplayBuffer::store: transition dims (" +
                                std::to_string(t.s.size()) + ", " + std::to_string(t.a.size()) +
                                ", " + std::to_string(t.s_next.size()) + ") do not match buffer");
  if (!std::isfinite(t.r)) throw std::invalid_argument("ReplayBuffer::store: non-finite reward");

  const auto od = static_cast<std::size_t>(obs_dim_);
  const auto ad = static_cast<std::size_t>(act_dim_);
  if (cursor_ == s_.size() / od) {
    // Still growing toward capacity.
    s_.insert(s_.end(), t.s.data(), t.s.data() + od);
    a_.insert(a_.end(), t.a.data(), t.a.data() + ad);
    r_.push_back(t.r);
    s_next_.insert(s_next_.end(), t.s_next.data(), t.s_next.data() + od);
    d_.push_back(t.d ? 1.0 : 0.0);
  } else {
    std::copy_n(t.s.data(), od, s_.begin() + static_cast<std::ptrdiff_t>(cursor_ * od));
    std::copy_n(t.a.data(), ad, a_.begin() + static_cast<std::ptrdiff_t>(cursor_ * ad));
    r_[cursor_] = t.r;
    std::copy_n(t.s_next.data(), od, s_next_.begin() + static_cast<std::ptrdiff_t>(cursor_ * od));
    d_[cursor_] = t.d ? 1.0 : 0.0;
  }
  cursor_ = (cursor_ + 1) % capacity_;
  size_ = std::min(size_ + 1, capacity_);
}

Transition ReplayBuffer::at(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("ReplayBuffer::at: index out of range");
  Transition t;
  t.s = Eigen::Map<const Vector>(s_.data() + i * obs_dim_, obs_dim_);
  t.a = Eigen::Map<const Vector>(a_.data() + i * act_dim_, act_dim_);
  t.r = r_[i];
  t.s_next = Eigen::Map<const Vector>(s_next_.data() + i * obs_dim_, obs_dim_);
  t.d = d_[i] != 0.0;
  return t;
}

Batch ReplayBuffer::gather(const std::vector<std::size_t>& indices) const {
  const auto n = static_cast<Eigen::Index>(indices.size());
  Batch b;
  b.s.resize(n, obs_dim_);
  b.a.resize(n, act_dim_);
  b.r.resize(n);
  b.s_next.resize(n, obs_dim_);
  b.d.resize(n);
  for (Eigen::Index row = 0; row < n; ++row) {
    const std::size_t i = indices[static_cast<std::size_t>(row)];
    if (i >= size_) throw std::out_of_range("ReplayBuffer::gather: index out of range");
    b.s.row(row) = Eigen::Map<const Eigen::RowVectorXd>(s_.data() + i * obs_dim_, obs_dim_);
    b.a.row(row) = Eigen::Map<const Eigen::RowVectorXd>(a_.data() + i * act_dim_, act_dim_);
    b.r[row] = r_[i];
    b.s_next.row(row) =
        Eigen::Map<const Eigen::RowVectorXd>(s_next_.data() + i * obs_dim_, obs_dim_);
    b.d[row] = d_[i];
  }
  return b;
}

Batch ReplayBuffer::sample_batch(Rng& rng, std::size_t batch_size) const {
  if (size_ == 0) throw std::logic_error("ReplayBuffer::sample_batch: buffer is empty");
  std::vector<std::size_t> idx(batch_size);
  for (auto& i : idx) i = rng.index(size_);
  return gather(idx);
}

}  // namespace sarc::replay
