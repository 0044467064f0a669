#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "qharm/qseries.hpp"

namespace qharm {

/// Tolerances shared by every check.
struct Tolerances {
  double tol = kTolerance;
  double margin = kMargin;
};

/// Extremal value of a checked quantity and the grid point attaining it.
struct Extremal {
  double value = std::numeric_limits<double>::quiet_NaN();
  Complex at_z{};
};

struct RadiusSummary {
  double radius = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
};

/// Outcome of one sampled check. Every check samples; none proves.
struct VerificationReport {
  std::string check;
  bool pass = false;
  Extremal extremal;
  std::vector<RadiusSummary> per_radius;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json grid = nlohmann::json::object();
  nlohmann::json details = nlohmann::json::object();
};

/// Tracks a running minimum (or maximum) over grid points. Ties keep the
/// earliest point, so results do not depend on evaluation order.
class ExtremalTracker {
 public:
  enum class Mode { Min, Max };
  explicit ExtremalTracker(Mode mode) : mode_(mode) {}

  void observe(double value, Complex z) {
    const bool better = !seen_ || (mode_ == Mode::Min ? value < best_.value
                                                      : value > best_.value);
    if (better) {
      best_ = {value, z};
      seen_ = true;
    }
  }
  bool seen() const noexcept { return seen_; }
  const Extremal& best() const noexcept { return best_; }

 private:
  Mode mode_;
  Extremal best_;
  bool seen_ = false;
};

}  // namespace qharm
