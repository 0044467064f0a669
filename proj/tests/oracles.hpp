// Brute-force reference computations used by the tests. None of these call
// into the library's series arithmetic.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qharm/qseries.hpp"

namespace oracle {

using qharm::Complex;

/// sum a_k z^k with explicit powers.
inline Complex power_sum(const std::vector<Complex>& a, Complex z) {
  Complex s{};
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::pow(z, static_cast<int>(k));
  return s;
}

inline std::vector<Complex> coefficients(const qharm::TruncatedSeries& s) {
  return {s.coefficients().begin(), s.coefficients().end()};
}

/// Closed form (1 - q^k) / (1 - q).
inline double q_integer_closed(int k, double q) {
  return (1.0 - std::pow(q, k)) / (1.0 - q);
}

/// Coefficient of z^n in 1/((1-z)(1-qz)) as the Cauchy product of two
/// geometric series: sum_{j=0..n} q^j * 1^(n-j).
inline double kernel_inverse_coefficient(std::size_t n, double q) {
  double s = 0.0;
  for (std::size_t j = 0; j <= n; ++j) s += std::pow(q, static_cast<double>(j));
  return s;
}

/// Naive O(N^2) product of coefficient lists truncated at `order`.
inline std::vector<Complex> naive_product(const std::vector<Complex>& a,
                                          const std::vector<Complex>& b,
                                          std::size_t order) {
  std::vector<Complex> out(order + 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (i + j <= order) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  Complex in_disk(double r_max) {
    const double r = r_max * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, 2.0 * std::numbers::pi));
  }
  std::vector<Complex> coeffs(std::size_t order) {
    std::vector<Complex> c(order + 1);
    for (auto& x : c) x = {uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
    return c;
  }
  qharm::TruncatedSeries series(std::size_t order) {
    return qharm::TruncatedSeries(coeffs(order));
  }
};

}  // namespace oracle
