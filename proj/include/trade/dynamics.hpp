#pragma once

// Simulated delay generator and measurer. The generator adds a scheduled,
// destination-specific delay on top of a base matrix while leaving reserved
// destinations untouched; the measurer returns the truth plus seeded noise.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "trade/model.hpp"

namespace trade {

struct DelayPhase {
  double activation_s = 0.0;
  DelayMatrix injected;
  std::string label;
};

/// Piecewise-constant delay schedule. Activation times strictly increase and
/// start at 0.
class DelaySchedule {
 public:
  DelaySchedule() = default;
  DelaySchedule(std::vector<DelayPhase> phases, double update_period_s);

  const std::vector<DelayPhase>& phases() const { return phases_; }
  double update_period_s() const { return update_period_s_; }
  std::size_t dimension() const;

  // Index of the latest phase whose activation time is <= t.
  std::size_t phase_index(double t) const;

 private:
  std::vector<DelayPhase> phases_;
  double update_period_s_ = 300.0;
};

const DelayMatrix& active_matrix(const DelaySchedule& schedule, double t);

/// Destination indices that traffic reaches through the untouched channel.
using ReservedDestinations = std::set<std::size_t>;

/// base + injected on every non-reserved destination column; reserved
/// columns keep the base delay bit-for-bit.
DelayMatrix inject(const DelayMatrix& base, const DelayMatrix& injected, const ReservedDestinations& reserved);

enum class NoiseDistribution { uniform, gaussian };

struct MeasurementNoise {
  NoiseDistribution distribution = NoiseDistribution::uniform;
  double magnitude_ms = 1.0;
  std::uint64_t seed = 0;
};

/// Owns one seeded noise stream. uniform draws from [0, magnitude];
/// gaussian draws N(0, magnitude/3) truncated to [-magnitude, magnitude].
class DelayMeasurer {
 public:
  explicit DelayMeasurer(MeasurementNoise noise);

  DelayMatrix measure(const DelayMatrix& truth);

 private:
  double draw();

  MeasurementNoise noise_;
  std::mt19937_64 rng_;
};

/// One-shot measurement with a fresh stream seeded from `noise.seed`.
DelayMatrix measure(const DelayMatrix& truth, const MeasurementNoise& noise);

inline constexpr double kDefaultBaseDelayMs = 0.5;

}  // namespace trade
