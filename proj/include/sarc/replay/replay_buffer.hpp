#pragma once

#include <cstddef>
#include <vector>

#include "sarc/common/rng.hpp"
#include "sarc/nnet/matrix.hpp"

namespace sarc::replay {

using nnet::Matrix;
using nnet::Vector;

struct Transition {
  Vector s;
  Vector a;
  double r = 0.0;
  Vector s_next;
  bool d = false;  // genuine termination only, never time-limit truncation
};

// Rows of the sampled transitions, column-stacked per field.
struct Batch {
  Matrix s;
  Matrix a;
  Vector r;
  Matrix s_next;
  Vector d;  // 1.0 for terminal, 0.0 otherwise

  Eigen::Index size() const { return r.size(); }
};

// Fixed-capacity ring buffer with uniform sampling (with replacement).
// Storage grows up to capacity on demand, then the oldest slot is overwritten.
class ReplayBuffer {
 public:
  static constexpr std::size_t kDefaultCapacity = 1'000'000;

  ReplayBuffer(int obs_dim, int act_dim, std::size_t capacity = kDefaultCapacity);

  void store(const Transition& t);
  Batch sample_batch(Rng& rng, std::size_t batch_size) const;
  // Slot-indexed read, i in [0, size()).
  Transition at(std::size_t i) const;
  Batch gather(const std::vector<std::size_t>& indices) const;

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t insert_cursor() const { return cursor_; }
  int obs_dim() const { return obs_dim_; }
  int act_dim() const { return act_dim_; }

 private:
  int obs_dim_;
  int act_dim_;
  std::size_t capacity_;
  std::size_t size_ = 0;
  std::size_t cursor_ = 0;
  std::vector<double> s_;
  std::vector<double> a_;
  std::vector<double> r_;
  std::vector<double> s_next_;
  std::vector<double> d_;
};

}  // namespace sarc::replay
