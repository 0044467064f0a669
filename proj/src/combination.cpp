#include "qharm/combination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qharm/verify.hpp"

namespace qharm {

namespace {

double max_abs_coefficient(const TruncatedSeries& s) {
  double m = 0.0;
  for (const Complex& c : s.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

CombinationSpec::CombinationSpec(std::vector<HarmonicMap> maps,
                                 std::vector<double> weights)
    : maps_(std::move(maps)), weights_(std::move(weights)) {
  if (maps_.size() < 2) throw WeightError("combination needs at least two maps");
  if (weights_.size() != maps_.size()) {
    throw WeightError("one weight per map is required");
  }
  for (double t : weights_) {
    if (!(t >= 0.0 && t <= 1.0)) throw WeightError("weight outside [0, 1]");
  }
  const double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "weights sum to " << sum << ", not 1";
    throw WeightError(os.str());
  }
  for (const HarmonicMap& f : maps_) {
    if (!(f.q() == maps_.front().q())) {
      throw MixedParamError("maps were built under different q");
    }
    if (f.order() != maps_.front().order()) {
      throw MixedParamError("maps have different truncation orders");
    }
  }
}

CombinationSpec CombinationSpec::pair(HarmonicMap f1, HarmonicMap f2,
                                      double t) {
  std::vector<HarmonicMap> maps;
  maps.push_back(std::move(f1));
  maps.push_back(std::move(f2));
  return CombinationSpec(std::move(maps), {t, 1.0 - t});
}

HarmonicMap combine(const CombinationSpec& spec) {
  const auto& maps = spec.maps();
  const auto& w = spec.weights();
  TruncatedSeries h(maps.front().order()), g(maps.front().order());
  for (std::size_t j = 0; j < maps.size(); ++j) {
    h += series_scale(maps[j].h(), w[j]);
    g += series_scale(maps[j].g(), w[j]);
  }
  std::ostringstream prov;
  prov.precision(15);
  prov << "combine(";
  for (std::size_t j = 0; j < maps.size(); ++j) {
    prov << (j ? ", " : "") << w[j] << "*[" << maps[j].provenance() << "]";
  }
  prov << ")";
  return HarmonicMap(std::move(h), std::move(g), spec.q(), prov.str());
}

Complex combined_dilatation(const CombinationSpec& spec, Complex z) {
  Complex num{}, den{};
  for (std::size_t j = 0; j < spec.maps().size(); ++j) {
    const HarmonicMap& f = spec.maps()[j];
    const double t = spec.weights()[j];
    if (t == 0.0) continue;
    num += t * q_derivative_at(f.g(), z, f.q());
    den += t * q_derivative_at(f.h(), z, f.q());
  }
  if (std::abs(den) <= kTolerance) {
    throw DenominatorZero("combined dilatation denominator vanishes");
  }
  return num / den;
}

std::vector<double> t_sweep(std::size_t count) {
  if (count < 2) return {0.0};
  std::vector<double> ts(count);
  for (std::size_t k = 0; k < count; ++k) {
    ts[k] = static_cast<double>(k) / static_cast<double>(count - 1);
  }
  return ts;
}

VerificationReport check_th1(const CombinationSpec& spec, double theta,
                             const SampleGrid& grid, const Tolerances& tol) {
  const auto& maps = spec.maps();
  const QParam q = spec.q();

  std::vector<Dilatation> dil;
  std::vector<TruncatedSeries> dF;
  for (const HarmonicMap& f : maps) {
    dil.push_back(dilatation(f));
    dF.push_back(q_derivative(series_sub(f.h(), f.g()), q));
  }

  // w_1 = w_j  <=>  num_1 den_j - num_j den_1 = 0 coefficient-wise.
  double coeff_residual = 0.0;
  for (std::size_t j = 1; j < maps.size(); ++j) {
    const TruncatedSeries a = series_mul(dil[0].num, dil[j].den);
    const TruncatedSeries b = series_mul(dil[j].num, dil[0].den);
    const double scale =
        std::max({1.0, max_abs_coefficient(a), max_abs_coefficient(b)});
    coeff_residual =
        std::max(coeff_residual, max_abs_coefficient(series_sub(a, b)) / scale);
  }

  VerificationReport rep;
  rep.check = "th1";
  rep.per_radius.reserve(grid.radii().size());
  for (double r : grid.radii()) rep.per_radius.push_back({r});

  double point_residual = 0.0;
  ExtremalTracker lo(ExtremalTracker::Mode::Min);
  double hi = -std::numeric_limits<double>::infinity();
  std::vector<double> per_map_min(maps.size(),
                                  std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < grid.radii().size(); ++i) {
    for (std::size_t jj = 0; jj < grid.angles(); ++jj) {
      const Complex z = grid.point(i, jj);
      const Complex w1 = dil[0].at(z);
      const Complex kernel = z_over_phi_q(z, theta, q);
      for (std::size_t j = 0; j < maps.size(); ++j) {
        if (j > 0) point_residual = std::max(point_residual, std::abs(w1 - dil[j].at(z)));
        const double v = (eval(dF[j], z) * kernel).real();
        per_map_min[j] = std::min(per_map_min[j], v);
        lo.observe(v, z);
        hi = std::max(hi, v);
        auto& s = rep.per_radius[i];
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
      }
    }
  }

  const bool equal_dilatations =
      coeff_residual <= tol.tol && point_residual <= tol.tol;
  const bool criterion_ok = lo.best().value >= tol.margin;
  rep.pass = equal_dilatations && criterion_ok;
  rep.extremal = lo.best();
  rep.params = {{"q", to_string(q)},
                {"theta", theta},
                {"weights", spec.weights()},
                {"tol", tol.tol},
                {"margin", tol.margin}};
  rep.grid = describe(grid);
  rep.details = {{"dilatation_coefficient_residual", coeff_residual},
                 {"dilatation_pointwise_residual", point_residual},
                 {"equal_dilatations", equal_dilatations},
                 {"criterion_min_per_map", per_map_min},
                 {"criterion_min", lo.best().value},
                 {"criterion_max", hi}};
  return rep;
}

double qth_condition(const HarmonicMap& f1, const HarmonicMap& f2, Complex z) {
  const Complex a1 = q_derivative_at(f1.h(), z, f1.q());
  const Complex a2 = q_derivative_at(f2.h(), z, f2.q());
  const Complex w1 = q_derivative_at(f1.g(), z, f1.q()) / a1;
  const Complex w2 = q_derivative_at(f2.g(), z, f2.q()) / a2;
  return ((1.0 - w1 * std::conj(w2)) * a1 * std::conj(a2)).real();
}

VerificationReport check_qth(const HarmonicMap& f1, const HarmonicMap& f2,
                             double t, const SampleGrid& grid,
                             const Tolerances& tol) {
  if (!(t >= 0.0 && t <= 1.0)) throw WeightError("t outside [0, 1]");
  const CombinationSpec spec = CombinationSpec::pair(f1, f2, t);
  const Dilatation d1 = dilatation(f1), d2 = dilatation(f2);

  VerificationReport rep;
  rep.check = "qth";
  rep.per_radius.reserve(grid.radii().size());
  for (double r : grid.radii()) rep.per_radius.push_back({r});

  ExtremalTracker cond(ExtremalTracker::Mode::Min);
  ExtremalTracker w1max(ExtremalTracker::Mode::Max);
  ExtremalTracker w2max(ExtremalTracker::Mode::Max);
  ExtremalTracker w3max(ExtremalTracker::Mode::Max);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < grid.radii().size(); ++i) {
    for (std::size_t j = 0; j < grid.angles(); ++j) {
      const Complex z = grid.point(i, j);
      const Complex a1 = eval(d1.den, z), a2 = eval(d2.den, z);
      const Complex w1 = eval(d1.num, z) / a1, w2 = eval(d2.num, z) / a2;
      const double v = ((1.0 - w1 * std::conj(w2)) * a1 * std::conj(a2)).real();
      cond.observe(v, z);
      w1max.observe(std::abs(w1), z);
      w2max.observe(std::abs(w2), z);
      auto& s = rep.per_radius[i];
      s.min = std::min(s.min, v);
      s.max = std::max(s.max, v);
      if (v >= 0.0 && std::abs(w1) < 1.0 && std::abs(w2) < 1.0) {
        const double w3 = std::abs(combined_dilatation(spec, z));
        w3max.observe(w3, z);
        if (w3 > 1.0 - tol.margin) ++violations;
      }
    }
  }

  const bool dilatations_in_range = w1max.best().value < 1.0 && w2max.best().value < 1.0;
  const bool hypothesis_ok = cond.best().value >= -tol.tol;
  rep.pass = dilatations_in_range && hypothesis_ok && violations == 0;
  rep.extremal = cond.best();
  rep.params = {{"q", to_string(f1.q())}, {"t", t}, {"tol", tol.tol},
                {"margin", tol.margin}};
  rep.grid = describe(grid);
  rep.details = {{"condition_min", cond.best().value},
                 {"max_abs_w1", w1max.best().value},
                 {"max_abs_w2", w2max.best().value},
                 {"max_abs_w3", w3max.seen() ? w3max.best().value : 0.0},
                 {"dilatations_in_range", dilatations_in_range},
                 {"consequence_violations", violations}};
  return rep;
}

double qth_identity_residual(const HarmonicMap& f1, const HarmonicMap& f2,
                             double t, Complex z) {
  const Complex a1 = q_derivative_at(f1.h(), z, f1.q());
  const Complex a2 = q_derivative_at(f2.h(), z, f2.q());
  if (std::abs(a1) <= kTolerance || std::abs(a2) <= kTolerance) {
    throw DenominatorZero("d_q h vanishes at the sampled point");
  }
  const Complex w1 = q_derivative_at(f1.g(), z, f1.q()) / a1;
  const Complex w2 = q_derivative_at(f2.g(), z, f2.q()) / a2;
  const double s = 1.0 - t;
  const double lhs = std::norm(t * a1 + s * a2) - std::norm(t * w1 * a1 + s * w2 * a2);
  const double rhs = t * t * (1.0 - std::norm(w1)) * std::norm(a1) +
                     s * s * (1.0 - std::norm(w2)) * std::norm(a2) +
                     2.0 * t * s * ((1.0 - w1 * std::conj(w2)) * a1 * std::conj(a2)).real();
  return std::abs(lhs - rhs);
}

}  // namespace qharm
