#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qharm/qseries.hpp"

namespace qharm {

/// 1 -/+ omega vanishes at the origin, so no derivative pair exists.
class ShearSingularity : public MathError {
 public:
  explicit ShearSingularity(const std::string& what)
      : MathError("ShearSingularity", what) {}
};

class UnknownPreset : public ConfigError {
 public:
  explicit UnknownPreset(const std::string& name)
      : ConfigError("UnknownPreset", "unknown preset '" + name + "'") {}
};

/// h(0) or g(0) is nonzero.
class NormalizationError : public MathError {
 public:
  explicit NormalizationError(const std::string& what)
      : MathError("NormalizationError", what) {}
};

/// Planar harmonic map f = h + conj(g) on the unit disk, built under the
/// deformation q. Construction enforces h(0) = g(0) = 0; the coefficient
/// condition h_1 = 1 is reported by is_normalized().
class HarmonicMap {
 public:
  HarmonicMap(TruncatedSeries h, TruncatedSeries g, QParam q,
              std::string provenance = {});

  const TruncatedSeries& h() const noexcept { return h_; }
  const TruncatedSeries& g() const noexcept { return g_; }
  const QParam& q() const noexcept { return q_; }
  const std::string& provenance() const noexcept { return provenance_; }
  std::size_t order() const noexcept { return h_.order(); }

  /// |h_1 - 1|.
  double normalization_residual() const noexcept;
  bool is_normalized(double tol = 1e-12) const noexcept {
    return normalization_residual() <= tol;
  }

 private:
  TruncatedSeries h_;
  TruncatedSeries g_;
  QParam q_;
  std::string provenance_;
};

/// q-dilatation omega_q = d_q g / d_q h kept as a numerator/denominator pair.
struct Dilatation {
  TruncatedSeries num;
  TruncatedSeries den;

  Complex at(Complex z) const { return eval(num, z) / eval(den, z); }
  /// Expanded quotient num / den.
  TruncatedSeries series() const { return series_div(num, den); }
};

Complex eval_map(const HarmonicMap& f, Complex z);

/// Throws ZeroConstantTerm when h_1 vanishes.
Dilatation dilatation(const HarmonicMap& f);

/// |h'(z)|^2 - |g'(z)|^2 with ordinary derivatives.
double jacobian(const HarmonicMap& f, Complex z);

enum class ShearConvention {
  Minus,  ///< h - g = F
  Plus,   ///< h + g = F
};

std::string_view to_string(ShearConvention c);
/// Accepts "minus" and "plus"; throws ConfigError otherwise.
ShearConvention parse_convention(std::string_view name);

struct ShearResult {
  HarmonicMap map;
  /// Largest |omega| sampled on the default grid.
  double max_dilatation = 0.0;
  /// Set when max_dilatation >= 1; the map is still returned.
  std::optional<std::string> warning;
};

/// Solves d_q h -/+ d_q g = d_q F, d_q g = omega d_q h for the derivative
/// pair and Jackson-integrates it with zero constants. The output keeps the
/// order of F.
ShearResult q_shear(const TruncatedSeries& F, const TruncatedSeries& omega,
                    const QParam& q, ShearConvention convention);

/// Names accepted by preset().
const std::vector<std::string>& preset_names();

/// Builds one of the named maps:
///   half_plane    classical right half-plane map (z - z^2/2)/(1-z)^2 +
///                 conj(-(z^2/2)/(1-z)^2); q is ignored and set classical
///   q_half_plane  q-deformed half-plane map from closed-form coefficients
///   example1      q-shear of z - z^2/2 with omega = ([2]_q/2) z
///   s3_f1         h = z with omega = -([2]_q/2) z, so g = -z^2/2
///   s3_f2         h = z with omega = ([3]_q/3) z^2, so g = z^3/3
///   identity      h = z, g = 0
HarmonicMap preset(std::string_view name, const QParam& q,
                   std::size_t order = kDefaultOrder);

/// (z^2 - 2z + qz) / (1 - qz) expanded to `order`.
TruncatedSeries q_half_plane_dilatation(const QParam& q, std::size_t order);

}  // namespace qharm
