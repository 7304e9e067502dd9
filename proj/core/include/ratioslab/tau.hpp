#pragma once

#include <vector>

#include "ratioslab/common.hpp"

namespace ratioslab {

// Exact coefficients tau(1..n_max) of q * prod_{n>=1} (1-q^n)^24, the
// weight-12 level-1 cusp form.  Values grow like n^{11/2} d(n); 128-bit
// signed storage covers n_max up to ~10^6 with a wide margin, and every
// arithmetic step is overflow-checked so silent wraparound cannot occur.
class TauTable {
  public:
    explicit TauTable(i64 n_max);

    i64 n_max() const { return n_max_; }

    // tau(n), exact
    i128 tau(i64 n) const;

    // tau(n) / n^{11/2}
    double tau_star(i64 n) const;

    bool is_prime(i64 n) const;
    const std::vector<i64>& primes() const { return primes_; }

  private:
    i64 n_max_;
    std::vector<i128> coeffs_;      // coeffs_[n-1] = tau(n)
    std::vector<bool> composite_;   // sieve over [0, n_max]
    std::vector<i64> primes_;
};

// Prime p with cos(theta) = tau*(p)/2; the unit-circle parameters e^{±i theta}
// multiply to 1 and sum to tau*(p), so every power sum below is real.
struct SatakeAngle {
    i64 p;
    double theta;  // in [0, pi]
};

SatakeAngle satake_angle(const TauTable& table, i64 p);

// e^{ik theta} + e^{-ik theta} = 2 cos(k theta), always in [-2, 2].
double power_sum(const SatakeAngle& angle, i64 k);

// tau*(p^m) evaluated from the angle alone: sin((m+1)theta)/sin(theta),
// with the tangent-case limit ±(m+1) when sin(theta) = 0.
double tau_star_prime_power(const SatakeAngle& angle, i64 m);

}  // namespace ratioslab
