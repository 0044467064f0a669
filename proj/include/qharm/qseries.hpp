#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qharm {

using Complex = std::complex<double>;

/// Absolute tolerance for coefficient and pointwise comparisons.
inline constexpr double kTolerance = 1e-9;
/// Margin applied to strict inequalities (Re > 0, |w| < 1).
inline constexpr double kMargin = 1e-7;
/// Default truncation order of every series pipeline.
inline constexpr std::size_t kDefaultOrder = 640;

/// Base of every error thrown by the library. Configuration errors are bad
/// user input; math errors are failures of a construction on valid input.
class Error : public std::runtime_error {
 public:
  enum class Category { Config, Math };
  Error(Category category, std::string kind, const std::string& what)
      : std::runtime_error(what), category_(category), kind_(std::move(kind)) {}
  Category category() const noexcept { return category_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  Category category_;
  std::string kind_;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string kind, const std::string& what)
      : Error(Category::Config, std::move(kind), what) {}
};

class MathError : public Error {
 public:
  MathError(std::string kind, const std::string& what)
      : Error(Category::Math, std::move(kind), what) {}
};

/// Division by a series whose constant term vanishes.
class ZeroConstantTerm : public MathError {
 public:
  explicit ZeroConstantTerm(const std::string& what)
      : MathError("ZeroConstantTerm", what) {}
};

/// Deformation parameter q in (0, 1), or the classical q -> 1- limit.
class QParam {
 public:
  static constexpr double kMin = 1e-6;
  static constexpr double kMax = 1.0 - 1e-6;

  /// Throws ConfigError outside [kMin, kMax].
  static QParam of(double value);
  static QParam classical() noexcept { return QParam(); }

  bool is_classical() const noexcept { return classical_; }
  /// 1 for the classical marker.
  double value() const noexcept { return classical_ ? 1.0 : value_; }

  friend bool operator==(const QParam&, const QParam&) = default;

 private:
  QParam() = default;
  explicit QParam(double v) : value_(v), classical_(false) {}

  double value_ = 1.0;
  bool classical_ = true;
};

std::string to_string(const QParam& q);

/// Complex polynomial a_0 + a_1 z + ... + a_N z^N standing in for a power
/// series truncated at order N.
class TruncatedSeries {
 public:
  /// Zero series of the given order.
  explicit TruncatedSeries(std::size_t order = 0);
  /// Throws std::invalid_argument on an empty list or non-finite entries.
  explicit TruncatedSeries(std::vector<Complex> coefficients);
  TruncatedSeries(std::initializer_list<Complex> coefficients);

  static TruncatedSeries monomial(std::size_t power, Complex coefficient,
                                  std::size_t order);
  /// z / (1 - z) truncated at `order`.
  static TruncatedSeries geometric_shifted(std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }

  /// Coefficient of z^k; zero beyond the order.
  Complex operator[](std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : Complex{};
  }

  /// Drops or zero-pads coefficients to reach `order`.
  TruncatedSeries resized(std::size_t order) const;

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(Complex scalar);

  friend bool operator==(const TruncatedSeries&,
                         const TruncatedSeries&) = default;

 private:
  std::vector<Complex> coeffs_;
};

/// [k]_q = 1 + q + ... + q^(k-1); k at the classical marker.
double q_number(int k, const QParam& q);
/// [1]_q [2]_q ... [k]_q, with [0]_q! = 1.
double q_factorial(int k, const QParam& q);

/// Coefficient-wise Jackson derivative, z^k -> [k]_q z^(k-1). The result
/// keeps the input order with a trailing zero.
TruncatedSeries q_derivative(const TruncatedSeries& s, const QParam& q);
/// Difference quotient (s(z) - s(qz)) / ((1-q) z), a_1 at z = 0. At the
/// classical marker this is the ordinary derivative.
Complex q_derivative_at(const TruncatedSeries& s, Complex z, const QParam& q);
/// Jackson integral from 0, z^k -> z^(k+1) / [k+1]_q. Order grows by one.
TruncatedSeries q_integrate(const TruncatedSeries& s, const QParam& q);

/// Sum padded to the larger order.
TruncatedSeries series_add(const TruncatedSeries& s, const TruncatedSeries& t);
TruncatedSeries series_sub(const TruncatedSeries& s, const TruncatedSeries& t);
TruncatedSeries series_scale(const TruncatedSeries& s, Complex scalar);
/// Cauchy product truncated at the larger order.
TruncatedSeries series_mul(const TruncatedSeries& s, const TruncatedSeries& t);
/// Power-series quotient truncated at the larger order. Throws
/// ZeroConstantTerm when |den_0| <= kTolerance.
TruncatedSeries series_div(const TruncatedSeries& num,
                           const TruncatedSeries& den);
/// a_k -> a_k c^k, i.e. the series of z -> s(c z).
TruncatedSeries scale_argument(const TruncatedSeries& s, Complex c);

/// Horner evaluation.
Complex eval(const TruncatedSeries& s, Complex z);

}  // namespace qharm
