#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "qharm/report.hpp"

namespace qharm::suite {

/// Jackson derivative/integral identities on random order-32 series:
/// round trip, difference quotient vs coefficient rule, q-product rule,
/// and [k]_q, [k]_q! against independent direct sums.
VerificationReport kernel_identities(const QParam& q, std::uint64_t seed = 1);

/// Coefficient gap between the q-deformed and the classical half-plane
/// maps for q = 0.9, 0.99, 0.999 at the given truncation order.
VerificationReport classical_limit_sweep(std::size_t order = 64);

/// Shear of z - z^2/2 with omega = ([2]_q/2) z gives h = z, g = z^2/2.
/// Also records the printed ([2]_q/4) z^2 and sign as discrepancies.
VerificationReport example1_pipeline(const QParam& q);

/// Plus-shear of z/(1-z) with omega = (z^2 - 2z + qz)/(1 - qz) against the
/// closed-form coefficients for n <= n_max.
VerificationReport definition2_reproduction(const QParam& q,
                                            std::size_t n_max = 40);

/// Two equal-dilatation shears of z/(1-z); criterion value identically 1,
/// then univalence and horizontal convexity over an 11-point t sweep.
VerificationReport th1_pipeline(const QParam& q, double theta);

/// Polarization identity residual over random (preset pair, t, z) draws,
/// q drawn from `qs`.
VerificationReport qth_identity(const std::vector<QParam>& qs,
                                std::size_t draws = 1000,
                                std::uint64_t seed = 7);

/// Dilatation bound and cross-term positivity for the pair
/// w1 = -([2]_q/2) z, w2 = ([3]_q/3) z^2 over a t sweep.
VerificationReport example2(const QParam& q, const std::vector<double>& ts);

/// Classical half-plane map: range Re w > -1/2, simple and horizontally
/// convex boundary image at r = 0.95.
VerificationReport half_plane_claims();

/// Every per-q check above as one document:
/// {"q", "theta", "t", "checks": [...], "pass"}.
nlohmann::json run_report(const QParam& q, double theta,
                          const std::vector<double>& ts);

}  // namespace qharm::suite
