#include "ratioslab/tau.hpp"

#include <cmath>

namespace ratioslab {

namespace {

[[noreturn]] void overflow_bail() {
    throw std::overflow_error(
        "tau series coefficient exceeds 128-bit storage; "
        "an arbitrary-precision build is required for this n_max");
}

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) overflow_bail();
    return r;
}

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) overflow_bail();
    return r;
}

}  // namespace

// eta(z)^3 = q^{1/8} sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}  (Jacobi), so the
// tau generating series is the 8th power of that sparse sum shifted by q.
// The sparse factor has O(sqrt(n)) terms, which makes the whole table an
// O(n^{3/2}) computation: one sparse*sparse square, then six dense*sparse
// passes.  Everything stays in exact integers.
TauTable::TauTable(i64 n_max) : n_max_(n_max) {
    if (n_max < 1) throw std::domain_error("TauTable: n_max must be >= 1");

    const i64 deg = n_max - 1;  // work with coefficients of q^0 .. q^deg

    std::vector<i64> spar_exp;
    std::vector<i64> spar_coef;
    for (i64 k = 0;; ++k) {
        i64 t = k * (k + 1) / 2;
        if (t > deg) break;
        spar_exp.push_back(t);
        spar_coef.push_back((k % 2 == 0) ? (2 * k + 1) : -(2 * k + 1));
    }

    // square of the sparse series
    std::vector<i128> dense(static_cast<size_t>(deg) + 1, 0);
    for (size_t a = 0; a < spar_exp.size(); ++a) {
        for (size_t b = a; b < spar_exp.size(); ++b) {
            i64 e = spar_exp[a] + spar_exp[b];
            if (e > deg) break;
            i128 c = static_cast<i128>(spar_coef[a]) * spar_coef[b];
            if (b > a) c *= 2;
            dense[e] = checked_add(dense[e], c);
        }
    }

    // six more sparse multiplications: dense holds (eta^3-core)^m, m=2..8
    std::vector<i128> next(static_cast<size_t>(deg) + 1, 0);
    for (int pass = 0; pass < 6; ++pass) {
        for (auto& v : next) v = 0;
        for (size_t a = 0; a < spar_exp.size(); ++a) {
            const i64 off = spar_exp[a];
            const i128 c = spar_coef[a];
            const i64 last = deg - off;
            for (i64 i = 0; i <= last; ++i) {
                if (dense[i] == 0) continue;
                next[i + off] = checked_add(next[i + off], checked_mul(dense[i], c));
            }
        }
        dense.swap(next);
    }

    coeffs_.assign(static_cast<size_t>(n_max), 0);
    for (i64 n = 1; n <= n_max; ++n) coeffs_[n - 1] = dense[n - 1];

    composite_.assign(static_cast<size_t>(n_max) + 1, false);
    if (n_max >= 0) {
        composite_[0] = true;
        if (n_max >= 1) composite_[1] = true;
    }
    for (i64 i = 2; i * i <= n_max; ++i) {
        if (!composite_[i]) {
            for (i64 j = i * i; j <= n_max; j += i) composite_[j] = true;
        }
    }
    for (i64 i = 2; i <= n_max; ++i) {
        if (!composite_[i]) primes_.push_back(i);
    }
}

i128 TauTable::tau(i64 n) const {
    if (n < 1 || n > n_max_) throw std::domain_error("TauTable::tau: n out of range");
    return coeffs_[n - 1];
}

double TauTable::tau_star(i64 n) const {
    // |tau(n)| <= d(n) n^{11/2} stays far below the double range at desk
    // scale, so the exact integer converts directly.
    return i128_to_double(tau(n)) * std::pow(static_cast<double>(n), -5.5);
}

bool TauTable::is_prime(i64 n) const {
    if (n < 2 || n > n_max_) return false;
    return !composite_[n];
}

SatakeAngle satake_angle(const TauTable& table, i64 p) {
    if (!table.is_prime(p)) throw std::domain_error("satake_angle: p must be a prime <= n_max");
    double half = table.tau_star(p) / 2.0;
    // The exact value lies in [-1, 1]; clipping guards the float conversion.
    if (half > 1.0) half = 1.0;
    if (half < -1.0) half = -1.0;
    return SatakeAngle{p, std::acos(half)};
}

double power_sum(const SatakeAngle& angle, i64 k) {
    if (k < 1) throw std::domain_error("power_sum: k must be >= 1");
    return 2.0 * std::cos(static_cast<double>(k) * angle.theta);
}

double tau_star_prime_power(const SatakeAngle& angle, i64 m) {
    if (m < 0) throw std::domain_error("tau_star_prime_power: m must be >= 0");
    double s = std::sin(angle.theta);
    if (s < 1e-12) {
        double sign = std::cos(angle.theta) >= 0.0 ? 1.0 : -1.0;
        double v = static_cast<double>(m + 1);
        return (m % 2 == 0) ? v : sign * v;
    }
    return std::sin(static_cast<double>(m + 1) * angle.theta) / s;
}

}  // namespace ratioslab
