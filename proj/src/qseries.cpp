#include "qharm/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qharm {

namespace {

void check_finite(std::span<const Complex> coeffs) {
  for (const Complex& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("series coefficient is not finite");
    }
  }
}

// [0]_q, [1]_q, ..., [n]_q; prefix sums in the same order as q_number.
std::vector<double> q_numbers_upto(std::size_t n, const QParam& q) {
  std::vector<double> out(n + 1);
  double sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    sum += q.is_classical() ? 1.0 : std::pow(q.value(), static_cast<int>(k - 1));
    out[k] = sum;
  }
  return out;
}

}  // namespace

QParam QParam::of(double value) {
  if (!(value >= kMin && value <= kMax)) {
    std::ostringstream os;
    os << "q = " << value << " outside [" << kMin << ", " << kMax << "]";
    throw ConfigError("InvalidQ", os.str());
  }
  return QParam(value);
}

std::string to_string(const QParam& q) {
  if (q.is_classical()) return "classical";
  std::ostringstream os;
  os.precision(15);
  os << q.value();
  return os.str();
}

TruncatedSeries::TruncatedSeries(std::size_t order) : coeffs_(order + 1) {}

TruncatedSeries::TruncatedSeries(std::vector<Complex> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) {
    throw std::invalid_argument("series needs at least one coefficient");
  }
  check_finite(coeffs_);
}

TruncatedSeries::TruncatedSeries(std::initializer_list<Complex> coefficients)
    : TruncatedSeries(std::vector<Complex>(coefficients)) {}

TruncatedSeries TruncatedSeries::monomial(std::size_t power,
                                          Complex coefficient,
                                          std::size_t order) {
  TruncatedSeries s(order);
  if (power <= order) s.coeffs_[power] = coefficient;
  return s;
}

TruncatedSeries TruncatedSeries::geometric_shifted(std::size_t order) {
  TruncatedSeries s(order);
  for (std::size_t k = 1; k <= order; ++k) s.coeffs_[k] = 1.0;
  return s;
}

TruncatedSeries TruncatedSeries::resized(std::size_t order) const {
  TruncatedSeries out(order);
  const std::size_t n = std::min(order + 1, coeffs_.size());
  std::copy_n(coeffs_.begin(), n, out.coeffs_.begin());
  return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  if (other.order() > order()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) {
    coeffs_[k] += other.coeffs_[k];
  }
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  if (other.order() > order()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) {
    coeffs_[k] -= other.coeffs_[k];
  }
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(Complex scalar) {
  for (Complex& c : coeffs_) c *= scalar;
  return *this;
}

double q_number(int k, const QParam& q) {
  if (k < 0) throw std::invalid_argument("q_number: negative k");
  if (q.is_classical()) return static_cast<double>(k);
  double sum = 0.0;
  for (int j = 0; j < k; ++j) sum += std::pow(q.value(), j);
  return sum;
}

double q_factorial(int k, const QParam& q) {
  if (k < 0) throw std::invalid_argument("q_factorial: negative k");
  double product = 1.0;
  for (int j = 1; j <= k; ++j) product *= q_number(j, q);
  return product;
}

TruncatedSeries q_derivative(const TruncatedSeries& s, const QParam& q) {
  const std::size_t n = s.order();
  const std::vector<double> qn = q_numbers_upto(n, q);
  std::vector<Complex> out(n + 1);
  for (std::size_t k = 1; k <= n; ++k) out[k - 1] = qn[k] * s[k];
  return TruncatedSeries(std::move(out));
}

Complex q_derivative_at(const TruncatedSeries& s, Complex z, const QParam& q) {
  if (z == Complex{}) return s[1];
  if (q.is_classical()) return eval(q_derivative(s, q), z);
  const double qv = q.value();
  return (eval(s, z) - eval(s, qv * z)) / ((1.0 - qv) * z);
}

TruncatedSeries q_integrate(const TruncatedSeries& s, const QParam& q) {
  const std::size_t n = s.order();
  const std::vector<double> qn = q_numbers_upto(n + 1, q);
  std::vector<Complex> out(n + 2);
  for (std::size_t k = 0; k <= n; ++k) out[k + 1] = s[k] / qn[k + 1];
  return TruncatedSeries(std::move(out));
}

TruncatedSeries series_add(const TruncatedSeries& s, const TruncatedSeries& t) {
  TruncatedSeries out = s;
  out += t;
  return out;
}

TruncatedSeries series_sub(const TruncatedSeries& s, const TruncatedSeries& t) {
  TruncatedSeries out = s;
  out -= t;
  return out;
}

TruncatedSeries series_scale(const TruncatedSeries& s, Complex scalar) {
  TruncatedSeries out = s;
  out *= scalar;
  return out;
}

TruncatedSeries series_mul(const TruncatedSeries& s, const TruncatedSeries& t) {
  const std::size_t n = std::max(s.order(), t.order());
  std::vector<Complex> out(n + 1);
  const std::size_t ns = std::min(s.order(), n);
  for (std::size_t i = 0; i <= ns; ++i) {
    const Complex a = s[i];
    if (a == Complex{}) continue;
    const std::size_t nt = std::min(t.order(), n - i);
    for (std::size_t j = 0; j <= nt; ++j) out[i + j] += a * t[j];
  }
  return TruncatedSeries(std::move(out));
}

TruncatedSeries series_div(const TruncatedSeries& num,
                           const TruncatedSeries& den) {
  const Complex d0 = den[0];
  if (std::abs(d0) <= kTolerance) {
    throw ZeroConstantTerm("series_div: denominator constant term vanishes");
  }
  const std::size_t n = std::max(num.order(), den.order());
  std::vector<Complex> out(n + 1);
  // out_k = (num_k - sum_{j=1..k} den_j out_{k-j}) / den_0
  for (std::size_t k = 0; k <= n; ++k) {
    Complex acc = num[k];
    const std::size_t jmax = std::min(k, den.order());
    for (std::size_t j = 1; j <= jmax; ++j) acc -= den[j] * out[k - j];
    out[k] = acc / d0;
  }
  return TruncatedSeries(std::move(out));
}

TruncatedSeries scale_argument(const TruncatedSeries& s, Complex c) {
  std::vector<Complex> out(s.coefficients().begin(), s.coefficients().end());
  Complex power = 1.0;
  for (Complex& a : out) {
    a *= power;
    power *= c;
  }
  return TruncatedSeries(std::move(out));
}

Complex eval(const TruncatedSeries& s, Complex z) {
  const auto coeffs = s.coefficients();
  Complex acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace qharm
