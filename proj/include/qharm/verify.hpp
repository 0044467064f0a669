#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qharm/grid.hpp"
#include "qharm/harmonic.hpp"
#include "qharm/report.hpp"

namespace qharm {

/// A hypothesis of a criterion does not hold for the given input.
class HypothesisViolated : public MathError {
 public:
  explicit HypothesisViolated(const std::string& what)
      : MathError("HypothesisViolated", what) {}
};

/// q-deformed kernel z / ((1 + z e^{i theta}) (1 + q z e^{-i theta})).
/// theta = pi gives z / ((1 - z)(1 - qz)); the classical marker gives the
/// undeformed kernel.
Complex phi_q(Complex z, double theta, const QParam& q);

/// z / phi_q(z), well defined at z = 0.
Complex z_over_phi_q(Complex z, double theta, const QParam& q);

/// min over the grid of Re(z d_qF(z) / phi_q(z)); pass iff >= margin.
/// Throws HypothesisViolated unless F(0) = 0 and d_qF(0) != 0.
VerificationReport check_cdr_criterion(const TruncatedSeries& F,
                                       const QParam& q, double theta,
                                       const SampleGrid& grid,
                                       const Tolerances& tol = {});

/// max |omega_q| and min J_f over the grid.
VerificationReport check_sense_preserving(const HarmonicMap& f,
                                          const SampleGrid& grid,
                                          const Tolerances& tol = {});

/// Image of |z| = r as a closed polyline of m vertices.
std::vector<Complex> boundary_polyline(const HarmonicMap& f, double r,
                                       std::size_t m);

/// Shoelace area; positive for counter-clockwise traversal.
double signed_area(std::span<const Complex> polygon);

/// Index pairs of non-adjacent edges of the closed polygon that touch or
/// cross, including collinear overlaps and folds between adjacent edges.
/// Stops after `limit` hits.
std::vector<std::pair<std::size_t, std::size_t>> self_intersections(
    std::span<const Complex> polygon, double tol, std::size_t limit = 1);

/// Edges of the closed polygon crossing the horizontal line Im w = level.
std::size_t horizontal_crossings(std::span<const Complex> polygon,
                                 double level);

/// Passes iff the image of |z| = r is a simple, positively oriented closed
/// polyline. Coincident consecutive vertices fail with DegenerateCurve.
VerificationReport check_univalence_boundary(const HarmonicMap& f, double r,
                                             std::size_t m,
                                             const Tolerances& tol = {});

/// Passes iff every horizontal level across the image of |z| = r meets the
/// boundary polyline 0 or 2 times.
VerificationReport check_convex_real_direction(const HarmonicMap& f, double r,
                                               std::size_t m,
                                               std::size_t levels = 64,
                                               const Tolerances& tol = {});

/// min over the grid of Re f(z); pass iff > -1/2 - tol.
VerificationReport check_half_plane_range(const HarmonicMap& f,
                                          const SampleGrid& grid,
                                          const Tolerances& tol = {});

nlohmann::json describe(const SampleGrid& grid);

}  // namespace qharm
