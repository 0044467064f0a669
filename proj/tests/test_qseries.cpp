#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qharm/qseries.hpp"

using namespace qharm;

namespace {

const QParam kHalf = QParam::of(0.5);

double max_gap(const TruncatedSeries& a, const TruncatedSeries& b,
               std::size_t upto) {
  double m = 0.0;
  for (std::size_t k = 0; k <= upto; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

TEST_CASE("QParam rejects values outside the admissible range") {
  CHECK_THROWS_AS(QParam::of(0.0), ConfigError);
  CHECK_THROWS_AS(QParam::of(1.0), ConfigError);
  CHECK_THROWS_AS(QParam::of(1.5), ConfigError);
  CHECK_THROWS_AS(QParam::of(5e-7), ConfigError);
  CHECK_THROWS_AS(QParam::of(std::nan("")), ConfigError);
  CHECK_NOTHROW(QParam::of(1e-6));
  CHECK_NOTHROW(QParam::of(1.0 - 1e-6));
  CHECK(QParam::classical().is_classical());
  CHECK(QParam::classical().value() == 1.0);
  CHECK(to_string(QParam::classical()) == "classical");
}

TEST_CASE("q_number") {
  CHECK(q_number(0, kHalf) == 0.0);
  CHECK(q_number(1, kHalf) == 1.0);
  CHECK(q_number(2, kHalf) == 1.5);
  CHECK(q_number(3, kHalf) == 1.75);
  CHECK(q_number(7, QParam::classical()) == 7.0);
  CHECK_THROWS_AS(q_number(-1, kHalf), std::invalid_argument);

  for (double qv : {0.1, 0.5, 0.9}) {
    for (int k = 0; k <= 32; ++k) {
      CHECK(q_number(k, QParam::of(qv)) ==
            doctest::Approx(oracle::q_integer_closed(k, qv)).epsilon(1e-14));
    }
  }
}

TEST_CASE("q_factorial") {
  CHECK(q_factorial(0, QParam::of(0.3)) == 1.0);
  CHECK(q_factorial(1, QParam::of(0.3)) == 1.0);
  CHECK(q_factorial(3, kHalf) == 2.625);
  CHECK(q_factorial(5, QParam::classical()) == 120.0);
  CHECK_THROWS_AS(q_factorial(-2, kHalf), std::invalid_argument);
}

TEST_CASE("q-integers approach k as q -> 1 from below") {
  double previous = INFINITY;
  for (double qv : {0.9, 0.99, 0.999}) {
    double gap = 0.0;
    for (int k = 0; k <= 32; ++k) {
      gap = std::max(gap, std::abs(q_number(k, QParam::of(qv)) - k));
    }
    CHECK(gap < previous);
    previous = gap;
  }
}

TEST_CASE("q_derivative applies the power rule") {
  const QParam q = QParam::of(0.3);
  CHECK(q_derivative(TruncatedSeries{0.0, 1.0}, q)[0] == Complex(1.0));

  // z - z^2/2  ->  1 - ([2]_q/2) z
  const TruncatedSeries d = q_derivative(TruncatedSeries{0.0, 1.0, -0.5}, q);
  CHECK(d.order() == 2);
  CHECK(d[0] == Complex(1.0));
  CHECK(d[1] == Complex(-q_number(2, q) / 2.0));
  CHECK(d[2] == Complex(0.0));

  const TruncatedSeries cube = TruncatedSeries::monomial(3, 1.0, 3);
  CHECK(q_derivative(cube, kHalf)[2] == Complex(1.75));

  // Classical marker: ordinary derivative k a_k.
  const TruncatedSeries c = q_derivative(TruncatedSeries{5.0, 2.0, 3.0, 4.0},
                                         QParam::classical());
  CHECK(c[0] == Complex(2.0));
  CHECK(c[1] == Complex(6.0));
  CHECK(c[2] == Complex(12.0));
}

TEST_CASE("q_derivative_at evaluates the difference quotient") {
  const TruncatedSeries sq = TruncatedSeries::monomial(2, 1.0, 2);
  CHECK(std::abs(q_derivative_at(sq, 0.5, kHalf) - 0.75) < 1e-15);

  const TruncatedSeries s{0.3, -2.0, 1.0, 4.0};
  CHECK(q_derivative_at(s, 0.0, kHalf) == Complex(-2.0));

  const TruncatedSeries z{0.0, 1.0};
  oracle::Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    CHECK(std::abs(q_derivative_at(z, rng.in_disk(0.9), QParam::of(0.7)) - 1.0) < 1e-14);
  }
}

TEST_CASE("q_integrate divides by shifted q-integers") {
  const TruncatedSeries one{1.0};
  const TruncatedSeries i1 = q_integrate(one, kHalf);
  CHECK(i1.order() == 1);
  CHECK(i1[0] == Complex(0.0));
  CHECK(i1[1] == Complex(1.0));

  const TruncatedSeries i2 = q_integrate(TruncatedSeries{0.0, 1.0}, kHalf);
  CHECK(i2[2] == Complex(1.0 / 1.5));

  // Integrating the derivative drops only the constant term.
  const TruncatedSeries s{2.0, 1.0, -3.0, 0.5};
  const TruncatedSeries back = q_integrate(q_derivative(s, kHalf), kHalf);
  CHECK(back[0] == Complex(0.0));
  CHECK(max_gap(back, series_sub(s, TruncatedSeries{2.0}), 3) < 1e-15);
}

TEST_CASE("series arithmetic") {
  const TruncatedSeries z{0.0, 1.0};
  const TruncatedSeries z2 = TruncatedSeries::monomial(2, 1.0, 2);
  const TruncatedSeries sum = series_add(z, z2);
  CHECK(sum.order() == 2);
  CHECK(sum[1] == Complex(1.0));
  CHECK(sum[2] == Complex(1.0));
  CHECK(series_mul(z, z.resized(2)) == z2);
  CHECK(series_scale(z, {0.0, 2.0})[1] == Complex(0.0, 2.0));

  SUBCASE("geometric series times (1 - z) telescopes") {
    const std::size_t n = 16;
    TruncatedSeries geo(n);
    geo += series_add(TruncatedSeries{1.0}, TruncatedSeries::geometric_shifted(n));
    const TruncatedSeries p = series_mul(geo, TruncatedSeries{1.0, -1.0});
    CHECK(p[0] == Complex(1.0));
    for (std::size_t k = 1; k <= n; ++k) CHECK(p[k] == Complex(0.0));
  }

  SUBCASE("Cauchy product matches a naive double loop") {
    oracle::Rng rng(11);
    const auto a = rng.coeffs(20), b = rng.coeffs(20);
    const TruncatedSeries p = series_mul(TruncatedSeries(a), TruncatedSeries(b));
    const auto ref = oracle::naive_product(a, b, 20);
    for (std::size_t k = 0; k <= 20; ++k) CHECK(std::abs(p[k] - ref[k]) < 1e-14);
  }
}

TEST_CASE("series_div") {
  const std::size_t n = 24;
  const TruncatedSeries geo = series_div(TruncatedSeries{1.0}.resized(n),
                                         TruncatedSeries{1.0, -1.0});
  for (std::size_t k = 0; k <= n; ++k) CHECK(geo[k] == Complex(1.0));

  const double c = q_number(2, kHalf) / 2.0;
  const TruncatedSeries lin{1.0, -c};
  const TruncatedSeries one = series_div(lin, lin);
  CHECK(one[0] == Complex(1.0));
  CHECK(std::abs(one[1]) < 1e-15);

  // 1 / ((1 - z)(1 - qz)) has coefficients [n+1]_q.
  const TruncatedSeries den = series_mul(TruncatedSeries{1.0, -1.0}.resized(n),
                                         TruncatedSeries{1.0, -0.5});
  const TruncatedSeries inv = series_div(TruncatedSeries{1.0}.resized(n), den);
  CHECK(inv[0] == Complex(1.0));
  CHECK(inv[1] == Complex(1.5));
  CHECK(inv[2] == Complex(1.75));
  for (std::size_t k = 0; k <= n; ++k) {
    CHECK(std::abs(inv[k] - oracle::kernel_inverse_coefficient(k, 0.5)) < 1e-14);
  }

  CHECK_THROWS_AS(series_div(TruncatedSeries{1.0}, TruncatedSeries{0.0, 1.0}),
                  ZeroConstantTerm);
  CHECK_THROWS_AS(series_div(TruncatedSeries{1.0}, TruncatedSeries{1e-10, 1.0}),
                  ZeroConstantTerm);
}

TEST_CASE("scale_argument and eval") {
  const TruncatedSeries s{1.0, -2.0, 3.0};
  CHECK(scale_argument(s, 1.0) == s);
  CHECK(scale_argument(TruncatedSeries::monomial(2, 1.0, 2), 0.5)[2] == Complex(0.25));

  CHECK(eval(s, 0.0) == Complex(1.0));
  const Complex w = eval(TruncatedSeries{0.0, 1.0, -0.5}, Complex(0.0, 0.5));
  CHECK(std::abs(w - Complex(0.125, 0.5)) < 1e-16);

  const TruncatedSeries shifted = TruncatedSeries::geometric_shifted(64);
  CHECK(std::abs(eval(shifted, 0.5) - 1.0) < 1e-18 + std::ldexp(1.0, -63));

  oracle::Rng rng(5);
  const TruncatedSeries r = rng.series(24);
  for (int i = 0; i < 100; ++i) {
    const Complex z = rng.in_disk(0.9);
    const Complex c = rng.in_disk(1.0);
    CHECK(std::abs(eval(scale_argument(r, c), z) - eval(r, c * z)) < 1e-12);
    CHECK(std::abs(eval(r, z) - oracle::power_sum(oracle::coefficients(r), z)) < 1e-12);
  }
}

TEST_CASE("TruncatedSeries rejects non-finite and empty coefficient lists") {
  CHECK_THROWS_AS(TruncatedSeries(std::vector<Complex>{}), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedSeries({1.0, Complex(INFINITY, 0.0)}), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedSeries({Complex(0.0, NAN)}), std::invalid_argument);
}

// Properties over random series, q in {0.1, 0.5, 0.9}.
TEST_CASE("property: Jackson calculus identities") {
  oracle::Rng rng(2024);
  for (double qv : {0.1, 0.5, 0.9}) {
    const QParam q = QParam::of(qv);
    CAPTURE(qv);
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 32.0));
      const TruncatedSeries s = rng.series(n);
      const TruncatedSeries t = rng.series(n);

      // Round trip through the integral.
      const TruncatedSeries back = q_derivative(q_integrate(s, q), q);
      double scale = 0.0;
      for (const auto& c : s.coefficients()) scale = std::max(scale, std::abs(c));
      CHECK(max_gap(back, s, n) / scale <= 1e-12);

      // Coefficient rule agrees with the difference quotient.
      const TruncatedSeries ds = q_derivative(s, q);
      for (int i = 0; i < 10; ++i) {
        const Complex z = rng.in_disk(0.9);
        CHECK(std::abs(eval(ds, z) - q_derivative_at(s, z, q)) <= 1e-9);
      }

      // Linearity holds exactly in coefficient arithmetic up to rounding.
      const Complex a{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      const Complex b{rng.uniform(-2, 2), rng.uniform(-2, 2)};
      const TruncatedSeries lin =
          q_derivative(series_add(series_scale(s, a), series_scale(t, b)), q);
      const TruncatedSeries sep =
          series_add(series_scale(ds, a), series_scale(q_derivative(t, q), b));
      CHECK(max_gap(lin, sep, n) <= 1e-12);

      // q-product rule through order n - 1 (order n is lost to truncation).
      const TruncatedSeries lhs = q_derivative(series_mul(s, t), q);
      const TruncatedSeries rhs =
          series_add(series_mul(scale_argument(s, qv), q_derivative(t, q)),
                     series_mul(ds, t));
      CHECK(max_gap(lhs, rhs, n - 1) <= 1e-10);

      // Division inverts multiplication.
      TruncatedSeries den = rng.series(n);
      den += TruncatedSeries{2.0};
      const TruncatedSeries quo = series_div(s, den);
      CHECK(max_gap(series_mul(quo, den), s, n) <= 1e-10);
    }
  }
}
