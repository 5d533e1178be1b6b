#include "trade/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "trade/errors.hpp"

namespace trade {

DelaySchedule::DelaySchedule(std::vector<DelayPhase> phases, double update_period_s)
    : phases_(std::move(phases)), update_period_s_(update_period_s) {
  if (phases_.empty()) throw StructuralError("delay schedule has no phases");
  if (!(update_period_s_ > 0.0)) throw StructuralError("delay schedule update period must be > 0");
  if (phases_.front().activation_s != 0.0) {
    throw StructuralError(fmt::format("first delay phase activates at {} s, expected 0", phases_.front().activation_s));
  }
  const std::size_t p = phases_.front().injected.size();
  for (std::size_t i = 1; i < phases_.size(); ++i) {
    if (!(phases_[i].activation_s > phases_[i - 1].activation_s)) {
      throw StructuralError(fmt::format("delay phase {} activation time must exceed the previous one", i));
    }
  }
  for (std::size_t i = 0; i < phases_.size(); ++i) {
    if (phases_[i].injected.size() != p) {
      throw StructuralError(fmt::format("delay phase {} has dimension {}, expected {}", i, phases_[i].injected.size(), p));
    }
  }
}

std::size_t DelaySchedule::dimension() const { return phases_.empty() ? 0 : phases_.front().injected.size(); }

std::size_t DelaySchedule::phase_index(double t) const {
  if (phases_.empty()) throw StructuralError("delay schedule has no phases");
  if (t < 0.0) throw ArgumentError(fmt::format("schedule queried at negative time {}", t));
  auto it = std::upper_bound(phases_.begin(), phases_.end(), t,
                             [](double time, const DelayPhase& ph) { return time < ph.activation_s; });
  return static_cast<std::size_t>(std::distance(phases_.begin(), it)) - 1;
}

const DelayMatrix& active_matrix(const DelaySchedule& schedule, double t) {
  return schedule.phases()[schedule.phase_index(t)].injected;
}

DelayMatrix inject(const DelayMatrix& base, const DelayMatrix& injected, const ReservedDestinations& reserved) {
  if (base.size() != injected.size()) {
    throw StructuralError(fmt::format("base delay dimension {} != injected dimension {}", base.size(), injected.size()));
  }
  const std::size_t p = base.size();
  SquareMatrix out(p);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) {
      if (a == b) continue;
      out(a, b) = reserved.contains(b) ? base(a, b) : base(a, b) + injected(a, b);
    }
  }
  return DelayMatrix(std::move(out));
}

DelayMeasurer::DelayMeasurer(MeasurementNoise noise) : noise_(noise), rng_(noise.seed) {
  if (!(noise_.magnitude_ms >= 0.0) || !std::isfinite(noise_.magnitude_ms)) {
    throw ArgumentError(fmt::format("noise magnitude {} must be finite and >= 0", noise_.magnitude_ms));
  }
}

double DelayMeasurer::draw() {
  const double m = noise_.magnitude_ms;
  if (m == 0.0) return 0.0;
  switch (noise_.distribution) {
    case NoiseDistribution::uniform:
      return std::uniform_real_distribution<double>(0.0, m)(rng_);
    case NoiseDistribution::gaussian: {
      std::normal_distribution<double> nd(0.0, m / 3.0);
      return std::clamp(nd(rng_), -m, m);
    }
  }
  return 0.0;
}

DelayMatrix DelayMeasurer::measure(const DelayMatrix& truth) {
  const std::size_t p = truth.size();
  SquareMatrix out(p);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) {
      if (a == b) continue;
      out(a, b) = std::max(0.0, truth(a, b) + draw());
    }
  }
  return DelayMatrix(std::move(out));
}

DelayMatrix measure(const DelayMatrix& truth, const MeasurementNoise& noise) {
  return DelayMeasurer(noise).measure(truth);
}

}  // namespace trade
