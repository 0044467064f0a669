#include "qharm/grid.hpp"

#include <algorithm>
#include <numbers>

namespace qharm {

SampleGrid::SampleGrid()
    : radii_{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95}, angles_(360) {}

SampleGrid::SampleGrid(std::vector<double> radii, std::size_t angles)
    : radii_(std::move(radii)), angles_(angles) {
  if (radii_.empty()) throw ConfigError("InvalidGrid", "grid has no radii");
  for (double r : radii_) {
    if (!(r > 0.0 && r < 1.0)) {
      throw ConfigError("InvalidGrid", "grid radius outside (0, 1)");
    }
  }
  if (angles_ < 16) throw ConfigError("InvalidGrid", "grid needs >= 16 angles");
}

double SampleGrid::r_max() const noexcept {
  return *std::max_element(radii_.begin(), radii_.end());
}

double SampleGrid::angle(std::size_t j) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(j) /
         static_cast<double>(angles_);
}

Complex SampleGrid::point(std::size_t i, std::size_t j) const noexcept {
  return std::polar(radii_[i], angle(j));
}

std::vector<Complex> circle_points(double r, std::size_t m) {
  std::vector<Complex> pts(m);
  for (std::size_t k = 0; k < m; ++k) {
    pts[k] = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(m));
  }
  return pts;
}

}  // namespace qharm
