#include "qharm/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qharm/grid.hpp"

namespace qharm {

HarmonicMap::HarmonicMap(TruncatedSeries h, TruncatedSeries g, QParam q,
                         std::string provenance)
    : h_(std::move(h)), g_(std::move(g)), q_(q),
      provenance_(std::move(provenance)) {
  const std::size_t n = std::max(h_.order(), g_.order());
  h_ = h_.resized(n);
  g_ = g_.resized(n);
  if (h_[0] != Complex{} || g_[0] != Complex{}) {
    throw NormalizationError("harmonic map requires h(0) = g(0) = 0");
  }
}

double HarmonicMap::normalization_residual() const noexcept {
  return std::abs(h_[1] - 1.0);
}

Complex eval_map(const HarmonicMap& f, Complex z) {
  return eval(f.h(), z) + std::conj(eval(f.g(), z));
}

Dilatation dilatation(const HarmonicMap& f) {
  if (std::abs(f.h()[1]) <= kTolerance) {
    throw ZeroConstantTerm("dilatation: d_q h vanishes at the origin");
  }
  return {q_derivative(f.g(), f.q()), q_derivative(f.h(), f.q())};
}

double jacobian(const HarmonicMap& f, Complex z) {
  const QParam classical = QParam::classical();
  return std::norm(eval(q_derivative(f.h(), classical), z)) -
         std::norm(eval(q_derivative(f.g(), classical), z));
}

std::string_view to_string(ShearConvention c) {
  return c == ShearConvention::Minus ? "minus" : "plus";
}

ShearConvention parse_convention(std::string_view name) {
  if (name == "minus") return ShearConvention::Minus;
  if (name == "plus") return ShearConvention::Plus;
  throw ConfigError("InvalidConvention",
                    "convention must be 'minus' or 'plus'");
}

ShearResult q_shear(const TruncatedSeries& F, const TruncatedSeries& omega,
                    const QParam& q, ShearConvention convention) {
  const std::size_t n = std::max(F.order(), omega.order());
  const TruncatedSeries one = TruncatedSeries::monomial(0, 1.0, n);
  const TruncatedSeries factor = convention == ShearConvention::Minus
                                     ? series_sub(one, omega)
                                     : series_add(one, omega);
  if (std::abs(factor[0]) <= kTolerance) {
    throw ShearSingularity("q_shear: 1 " +
                           std::string(convention == ShearConvention::Minus
                                           ? "-"
                                           : "+") +
                           " omega vanishes at the origin");
  }
  const TruncatedSeries dh = series_div(q_derivative(F.resized(n), q), factor);
  const TruncatedSeries dg = series_mul(omega.resized(n), dh);

  std::ostringstream prov;
  prov << "q_shear(" << to_string(convention) << ", q=" << to_string(q)
       << ")";
  HarmonicMap map(q_integrate(dh, q).resized(n), q_integrate(dg, q).resized(n),
                  q, prov.str());

  const SampleGrid grid;
  double max_abs = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    max_abs = std::max(max_abs, std::abs(eval(omega, grid.point(k))));
  }
  ShearResult result{std::move(map), max_abs, std::nullopt};
  if (max_abs >= 1.0) {
    std::ostringstream os;
    os << "sampled |omega| reaches " << max_abs << " >= 1";
    result.warning = os.str();
  }
  return result;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{
      "half_plane", "q_half_plane", "example1", "s3_f1", "s3_f2", "identity"};
  return names;
}

TruncatedSeries q_half_plane_dilatation(const QParam& q, std::size_t order) {
  const double qv = q.value();
  const TruncatedSeries num{0.0, qv - 2.0, 1.0};
  const TruncatedSeries den{1.0, -qv};
  return series_div(num.resized(order), den);
}

namespace {

// h = z with d_q g prescribed as omega.
HarmonicMap unit_analytic_part(const TruncatedSeries& omega, const QParam& q,
                               std::size_t order, std::string provenance) {
  return HarmonicMap(TruncatedSeries::monomial(1, 1.0, order),
                     q_integrate(omega, q).resized(order), q,
                     std::move(provenance));
}

}  // namespace

HarmonicMap preset(std::string_view name, const QParam& q, std::size_t order) {
  if (order < 3) throw ConfigError("InvalidOrder", "preset order must be >= 3");

  if (name == "identity") {
    return HarmonicMap(TruncatedSeries::monomial(1, 1.0, order),
                       TruncatedSeries(order), q, "preset:identity");
  }
  if (name == "half_plane") {
    const TruncatedSeries den = series_mul(TruncatedSeries{1.0, -1.0}.resized(order),
                                           TruncatedSeries{1.0, -1.0});
    const TruncatedSeries h = series_div(TruncatedSeries{0.0, 1.0, -0.5}, den);
    const TruncatedSeries g = series_div(TruncatedSeries{0.0, 0.0, -0.5}, den);
    return HarmonicMap(h, g, QParam::classical(), "preset:half_plane");
  }
  if (name == "q_half_plane") {
    std::vector<Complex> hc(order + 1), gc(order + 1);
    for (std::size_t n = 0; n + 1 <= order; ++n) {
      const double qn = q_number(static_cast<int>(n + 1), q);
      const double num = static_cast<double>((n + 1) * (n + 2));
      hc[n + 1] = num / (2.0 * qn);
      gc[n + 1] = (2.0 * qn - num) / (2.0 * qn);
    }
    return HarmonicMap(TruncatedSeries(std::move(hc)),
                       TruncatedSeries(std::move(gc)), q,
                       "preset:q_half_plane");
  }
  if (name == "example1") {
    const TruncatedSeries F{0.0, 1.0, -0.5};
    const TruncatedSeries omega =
        TruncatedSeries::monomial(1, q_number(2, q) / 2.0, order);
    ShearResult r = q_shear(F.resized(order), omega, q, ShearConvention::Minus);
    return HarmonicMap(r.map.h(), r.map.g(), q, "preset:example1");
  }
  if (name == "s3_f1") {
    return unit_analytic_part(
        TruncatedSeries::monomial(1, -q_number(2, q) / 2.0, order), q, order,
        "preset:s3_f1");
  }
  if (name == "s3_f2") {
    return unit_analytic_part(
        TruncatedSeries::monomial(2, q_number(3, q) / 3.0, order), q, order,
        "preset:s3_f2");
  }
  throw UnknownPreset(std::string(name));
}

}  // namespace qharm
