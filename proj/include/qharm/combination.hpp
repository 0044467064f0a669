#pragma once

#include <cstddef>
#include <vector>

#include "qharm/grid.hpp"
#include "qharm/harmonic.hpp"
#include "qharm/report.hpp"

namespace qharm {

class WeightError : public ConfigError {
 public:
  explicit WeightError(const std::string& what)
      : ConfigError("WeightError", what) {}
};

/// Maps in a combination disagree on q or truncation order.
class MixedParamError : public MathError {
 public:
  explicit MixedParamError(const std::string& what)
      : MathError("MixedParamError", what) {}
};

class DenominatorZero : public MathError {
 public:
  explicit DenominatorZero(const std::string& what)
      : MathError("DenominatorZero", what) {}
};

/// Convex combination sum t_j f_j of two or more maps sharing q and order.
class CombinationSpec {
 public:
  /// Throws WeightError unless every t_j is in [0, 1] and they sum to 1
  /// within 1e-12; MixedParamError if q or order differ.
  CombinationSpec(std::vector<HarmonicMap> maps, std::vector<double> weights);

  /// t f1 + (1 - t) f2.
  static CombinationSpec pair(HarmonicMap f1, HarmonicMap f2, double t);

  const std::vector<HarmonicMap>& maps() const noexcept { return maps_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const QParam& q() const noexcept { return maps_.front().q(); }

 private:
  std::vector<HarmonicMap> maps_;
  std::vector<double> weights_;
};

HarmonicMap combine(const CombinationSpec& spec);

/// (sum t_j d_q g_j(z)) / (sum t_j d_q h_j(z)). Throws DenominatorZero when
/// the denominator modulus is <= kTolerance.
Complex combined_dilatation(const CombinationSpec& spec, Complex z);

/// `count` evenly spaced values covering [0, 1].
std::vector<double> t_sweep(std::size_t count = 11);

/// Hypotheses of the equal-dilatation combination theorem: all dilatations
/// coincide (as series after clearing denominators, and on the grid), and
/// Re(z d_q F_j / phi_q) >= margin with F_j = h_j - g_j for every map.
VerificationReport check_th1(const CombinationSpec& spec, double theta,
                             const SampleGrid& grid,
                             const Tolerances& tol = {});

/// Cross-term condition Re{(1 - w1 conj(w2)) d_q h1 conj(d_q h2)} >= 0 on
/// the grid, plus the consequence |w3| < 1 at every point where it holds.
VerificationReport check_qth(const HarmonicMap& f1, const HarmonicMap& f2,
                             double t, const SampleGrid& grid,
                             const Tolerances& tol = {});

/// Value of the cross-term condition at z.
double qth_condition(const HarmonicMap& f1, const HarmonicMap& f2, Complex z);

/// |LHS - RHS| of
///   |t A1 + (1-t) A2|^2 - |t w1 A1 + (1-t) w2 A2|^2
///     = t^2 (1-|w1|^2)|A1|^2 + (1-t)^2 (1-|w2|^2)|A2|^2
///       + 2t(1-t) Re{(1 - w1 conj(w2)) A1 conj(A2)}
/// with A_j = d_q h_j(z) and w_j the q-dilatations.
double qth_identity_residual(const HarmonicMap& f1, const HarmonicMap& f2,
                             double t, Complex z);

}  // namespace qharm
