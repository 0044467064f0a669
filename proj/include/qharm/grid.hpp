#pragma once

#include <cstddef>
#include <vector>

#include "qharm/qseries.hpp"

namespace qharm {

/// Polar sample of the closed disk |z| <= r_max: every radius crossed with
/// M equally spaced angles starting at 0.
class SampleGrid {
 public:
  /// Radii 0.1, 0.2, ..., 0.9, 0.95 and 360 angles.
  SampleGrid();
  /// Throws ConfigError unless every radius lies in (0, 1) and angles >= 16.
  SampleGrid(std::vector<double> radii, std::size_t angles);

  const std::vector<double>& radii() const noexcept { return radii_; }
  std::size_t angles() const noexcept { return angles_; }
  std::size_t size() const noexcept { return radii_.size() * angles_; }
  double r_max() const noexcept;

  double angle(std::size_t j) const noexcept;
  /// Point with lexicographic index (radius i, angle j).
  Complex point(std::size_t i, std::size_t j) const noexcept;
  Complex point(std::size_t flat) const noexcept {
    return point(flat / angles_, flat % angles_);
  }

 private:
  std::vector<double> radii_;
  std::size_t angles_;
};

/// M equally spaced points on |z| = r.
std::vector<Complex> circle_points(double r, std::size_t m);

}  // namespace qharm
