#include "qharm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qharm {

namespace {

double cross(Complex a, Complex b) {
  return a.real() * b.imag() - a.imag() * b.real();
}

double dot(Complex a, Complex b) {
  return a.real() * b.real() + a.imag() * b.imag();
}

// Sign of the turn a -> b -> c; near-collinear triples snap to 0.
int orientation(Complex a, Complex b, Complex c, double tol) {
  const Complex u = b - a;
  const Complex v = c - a;
  const double x = cross(u, v);
  if (std::abs(x) <= tol * std::abs(u) * std::abs(v)) return 0;
  return x > 0 ? 1 : -1;
}

// c collinear with [a, b]: does it lie within the segment's bounding box?
bool within_box(Complex a, Complex b, Complex c) {
  return std::min(a.real(), b.real()) <= c.real() &&
         c.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= c.imag() &&
         c.imag() <= std::max(a.imag(), b.imag());
}

bool segments_meet(Complex p1, Complex p2, Complex p3, Complex p4, double tol) {
  if (std::max(p1.real(), p2.real()) < std::min(p3.real(), p4.real()) ||
      std::max(p3.real(), p4.real()) < std::min(p1.real(), p2.real()) ||
      std::max(p1.imag(), p2.imag()) < std::min(p3.imag(), p4.imag()) ||
      std::max(p3.imag(), p4.imag()) < std::min(p1.imag(), p2.imag())) {
    return false;
  }
  const int o1 = orientation(p1, p2, p3, tol);
  const int o2 = orientation(p1, p2, p4, tol);
  const int o3 = orientation(p3, p4, p1, tol);
  const int o4 = orientation(p3, p4, p2, tol);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return (o1 == 0 && within_box(p1, p2, p3)) ||
         (o2 == 0 && within_box(p1, p2, p4)) ||
         (o3 == 0 && within_box(p3, p4, p1)) ||
         (o4 == 0 && within_box(p3, p4, p2));
}

nlohmann::json point_json(Complex z) { return {z.real(), z.imag()}; }

std::vector<RadiusSummary> radius_summaries(const SampleGrid& grid) {
  std::vector<RadiusSummary> out;
  out.reserve(grid.radii().size());
  for (double r : grid.radii()) out.push_back({r});
  return out;
}

void record(RadiusSummary& s, double value) {
  s.min = std::min(s.min, value);
  s.max = std::max(s.max, value);
}

}  // namespace

nlohmann::json describe(const SampleGrid& grid) {
  return {{"radii", grid.radii()}, {"angles", grid.angles()}};
}

Complex z_over_phi_q(Complex z, double theta, const QParam& q) {
  const Complex e = std::polar(1.0, theta);
  return (1.0 + z * e) * (1.0 + q.value() * z * std::conj(e));
}

Complex phi_q(Complex z, double theta, const QParam& q) {
  return z / z_over_phi_q(z, theta, q);
}

VerificationReport check_cdr_criterion(const TruncatedSeries& F,
                                       const QParam& q, double theta,
                                       const SampleGrid& grid,
                                       const Tolerances& tol) {
  if (std::abs(F[0]) > tol.tol) {
    throw HypothesisViolated("criterion requires F(0) = 0");
  }
  if (std::abs(F[1]) <= tol.tol) {
    throw HypothesisViolated("criterion requires d_qF(0) != 0");
  }
  const TruncatedSeries dF = q_derivative(F, q);

  VerificationReport rep;
  rep.check = "cdr_criterion";
  rep.per_radius = radius_summaries(grid);
  ExtremalTracker lo(ExtremalTracker::Mode::Min);
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.radii().size(); ++i) {
    for (std::size_t j = 0; j < grid.angles(); ++j) {
      const Complex z = grid.point(i, j);
      const double v = (eval(dF, z) * z_over_phi_q(z, theta, q)).real();
      lo.observe(v, z);
      hi = std::max(hi, v);
      record(rep.per_radius[i], v);
    }
  }
  rep.extremal = lo.best();
  rep.pass = rep.extremal.value >= tol.margin;
  rep.params = {{"q", to_string(q)}, {"theta", theta}, {"margin", tol.margin}};
  rep.grid = describe(grid);
  rep.details = {{"min", rep.extremal.value}, {"max", hi}};
  return rep;
}

VerificationReport check_sense_preserving(const HarmonicMap& f,
                                          const SampleGrid& grid,
                                          const Tolerances& tol) {
  const Dilatation w = dilatation(f);
  const TruncatedSeries dh = q_derivative(f.h(), QParam::classical());
  const TruncatedSeries dg = q_derivative(f.g(), QParam::classical());
  VerificationReport rep;
  rep.check = "sense_preserving";
  rep.per_radius = radius_summaries(grid);
  ExtremalTracker wmax(ExtremalTracker::Mode::Max);
  ExtremalTracker jmin(ExtremalTracker::Mode::Min);
  for (std::size_t i = 0; i < grid.radii().size(); ++i) {
    for (std::size_t j = 0; j < grid.angles(); ++j) {
      const Complex z = grid.point(i, j);
      const double a = std::abs(w.at(z));
      wmax.observe(a, z);
      jmin.observe(std::norm(eval(dh, z)) - std::norm(eval(dg, z)), z);
      record(rep.per_radius[i], a);
    }
  }
  rep.extremal = wmax.best();
  const bool dil_ok = wmax.best().value <= 1.0 - tol.margin;
  const bool jac_ok = jmin.best().value >= tol.margin;
  rep.pass = dil_ok && jac_ok;
  rep.params = {{"q", to_string(f.q())}, {"margin", tol.margin}};
  rep.grid = describe(grid);
  rep.details = {{"max_abs_dilatation", wmax.best().value},
                 {"max_abs_dilatation_at", point_json(wmax.best().at_z)},
                 {"min_jacobian", jmin.best().value},
                 {"min_jacobian_at", point_json(jmin.best().at_z)},
                 {"dilatation_ok", dil_ok},
                 {"jacobian_ok", jac_ok}};
  return rep;
}

std::vector<Complex> boundary_polyline(const HarmonicMap& f, double r,
                                       std::size_t m) {
  std::vector<Complex> pts = circle_points(r, m);
  for (Complex& p : pts) p = eval_map(f, p);
  return pts;
}

double signed_area(std::span<const Complex> polygon) {
  const std::size_t m = polygon.size();
  double twice = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    twice += cross(polygon[k], polygon[(k + 1) % m]);
  }
  return 0.5 * twice;
}

std::vector<std::pair<std::size_t, std::size_t>> self_intersections(
    std::span<const Complex> polygon, double tol, std::size_t limit) {
  std::vector<std::pair<std::size_t, std::size_t>> hits;
  const std::size_t m = polygon.size();
  if (m < 3) return hits;
  auto vertex = [&](std::size_t k) { return polygon[k % m]; };

  // Adjacent edges share a vertex; they only conflict when they fold back.
  for (std::size_t i = 0; i < m && hits.size() < limit; ++i) {
    const Complex a = vertex(i), b = vertex(i + 1), c = vertex(i + 2);
    if (orientation(a, b, c, tol) == 0 && dot(b - a, c - b) < 0) {
      hits.emplace_back(i, (i + 1) % m);
    }
  }
  for (std::size_t i = 0; i < m && hits.size() < limit; ++i) {
    for (std::size_t j = i + 2; j < m && hits.size() < limit; ++j) {
      if (i == 0 && j == m - 1) continue;
      if (segments_meet(vertex(i), vertex(i + 1), vertex(j), vertex(j + 1),
                        tol)) {
        hits.emplace_back(i, j);
      }
    }
  }
  return hits;
}

std::size_t horizontal_crossings(std::span<const Complex> polygon,
                                 double level) {
  const std::size_t m = polygon.size();
  std::size_t count = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double a = polygon[k].imag() - level;
    const double b = polygon[(k + 1) % m].imag() - level;
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) ++count;
  }
  return count;
}

VerificationReport check_univalence_boundary(const HarmonicMap& f, double r,
                                             std::size_t m,
                                             const Tolerances& tol) {
  if (!(r > 0.0 && r < 1.0)) throw ConfigError("InvalidRadius", "r outside (0, 1)");
  if (m < 64) throw ConfigError("InvalidSamples", "boundary needs >= 64 samples");

  const std::vector<Complex> poly = boundary_polyline(f, r, m);
  VerificationReport rep;
  rep.check = "univalence_boundary";
  rep.params = {{"q", to_string(f.q())}, {"radius", r}, {"samples", m}};
  rep.grid = {{"radii", {r}}, {"angles", m}};

  for (std::size_t k = 0; k < m; ++k) {
    if (std::abs(poly[(k + 1) % m] - poly[k]) <= tol.tol) {
      rep.pass = false;
      rep.extremal = {0.0, std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                      static_cast<double>(m))};
      rep.details = {{"error", "DegenerateCurve"}, {"vertex", k}};
      return rep;
    }
  }

  const auto hits = self_intersections(poly, tol.tol);
  const double area = signed_area(poly);
  rep.pass = hits.empty() && area > 0.0;
  rep.extremal = {area, Complex{}};
  rep.details = {{"signed_area", area},
                 {"simple", hits.empty()},
                 {"positively_oriented", area > 0.0}};
  if (!hits.empty()) {
    rep.details["first_intersection"] = {hits.front().first,
                                         hits.front().second};
  }
  return rep;
}

VerificationReport check_convex_real_direction(const HarmonicMap& f, double r,
                                               std::size_t m,
                                               std::size_t levels,
                                               const Tolerances& tol) {
  if (!(r > 0.0 && r < 1.0)) throw ConfigError("InvalidRadius", "r outside (0, 1)");
  if (m < 64) throw ConfigError("InvalidSamples", "boundary needs >= 64 samples");
  if (levels == 0) throw ConfigError("InvalidLevels", "levels must be positive");

  const std::vector<Complex> poly = boundary_polyline(f, r, m);
  double ymin = poly.front().imag(), ymax = ymin;
  for (const Complex& p : poly) {
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  const double height = ymax - ymin;
  const double spacing = height / static_cast<double>(levels);
  const double snap = tol.tol * std::max(1.0, height);

  auto touches_vertex = [&](double c) {
    return std::any_of(poly.begin(), poly.end(), [&](const Complex& p) {
      return std::abs(p.imag() - c) <= snap;
    });
  };

  VerificationReport rep;
  rep.check = "convex_real_direction";
  rep.params = {{"q", to_string(f.q())}, {"radius", r}, {"samples", m},
                {"levels", levels}};
  rep.grid = {{"radii", {r}}, {"angles", m}};

  std::vector<std::size_t> counts;
  counts.reserve(levels);
  bool all_even = true;
  bool tangency = false;
  std::size_t bad = 0;
  ExtremalTracker worst(ExtremalTracker::Mode::Max);
  for (std::size_t k = 0; k < levels; ++k) {
    double c = ymin + (static_cast<double>(k) + 0.5) * spacing;
    if (touches_vertex(c)) {
      c += 1e-3 * spacing;
      if (touches_vertex(c)) {
        tangency = true;
        counts.push_back(0);
        continue;
      }
    }
    const std::size_t n = horizontal_crossings(poly, c);
    counts.push_back(n);
    all_even = all_even && n % 2 == 0;
    if (n != 0 && n != 2) ++bad;
    worst.observe(static_cast<double>(n), Complex{0.0, c});
  }
  rep.pass = bad == 0 && !tangency && height > 0.0;
  rep.extremal = worst.best();
  rep.details = {{"crossings", counts},
                 {"levels_failing", bad},
                 {"all_even", all_even},
                 {"height", height}};
  if (tangency) rep.details["error"] = "TangencyUnresolved";
  return rep;
}

VerificationReport check_half_plane_range(const HarmonicMap& f,
                                          const SampleGrid& grid,
                                          const Tolerances& tol) {
  VerificationReport rep;
  rep.check = "half_plane_range";
  rep.per_radius = radius_summaries(grid);
  ExtremalTracker lo(ExtremalTracker::Mode::Min);
  for (std::size_t i = 0; i < grid.radii().size(); ++i) {
    for (std::size_t j = 0; j < grid.angles(); ++j) {
      const Complex z = grid.point(i, j);
      const double re = eval_map(f, z).real();
      lo.observe(re, z);
      record(rep.per_radius[i], re);
    }
  }
  rep.extremal = lo.best();
  rep.pass = rep.extremal.value > -0.5 - tol.tol;
  rep.params = {{"q", to_string(f.q())}, {"bound", -0.5}};
  rep.grid = describe(grid);
  rep.details = {{"min_real_part", rep.extremal.value}};
  return rep;
}

}  // namespace qharm
