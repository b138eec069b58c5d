#pragma once

#include <array>
#include <span>
#include <vector>

namespace pacon {

/// States, actions and observations share one fixed-capacity vector type;
/// the active dimension (1 or 2) travels with the models and beliefs.
inline constexpr int kMaxStateDim = 2;
using StateVec = std::array<double, kMaxStateDim>;

inline StateVec make_state(double x) { return {x, 0.0}; }
inline StateVec make_state(double x, double y) { return {x, y}; }

inline double squared_distance(const StateVec& a, const StateVec& b, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return s;
}

struct Particle {
  StateVec state{};
  double weight = 0.0;
};

/// Weighted sample set standing for one belief at planning step `timestamp`.
/// Beliefs are immutable values once built; filter operations return new ones.
class ParticleBelief {
 public:
  ParticleBelief(int dim, std::vector<Particle> particles, int timestamp, bool normalized);

  /// Equal 1/N weights over the given states.
  static ParticleBelief equal_weights(int dim, std::vector<StateVec> states, int timestamp);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(particles_.size()); }
  int timestamp() const { return timestamp_; }
  bool normalized() const { return normalized_; }

  const Particle& particle(int i) const { return particles_[static_cast<std::size_t>(i)]; }
  std::span<const Particle> particles() const { return particles_; }

  double weight_sum() const;
  StateVec weighted_mean() const;

 private:
  std::vector<Particle> particles_;
  int dim_;
  int timestamp_;
  bool normalized_;
};

}  // namespace pacon
