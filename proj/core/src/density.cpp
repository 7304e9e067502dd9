#include "ratioslab/density.hpp"

#include <cmath>

#include "ratioslab/parallel.hpp"

namespace ratioslab {

namespace {

void require_scaled(const DiscriminantSet& set) {
    if (set.members.empty() || !(set.X > kTwoPi)) {
        throw std::invalid_argument("density: need a nonempty discriminant set with X > 2 pi");
    }
}

double window_limit(double L, double sigma) { return std::exp(2.0 * sigma * L); }

void require_table_window(const TauTable& tau, double pk_limit) {
    if (static_cast<double>(tau.n_max()) < pk_limit) {
        throw std::invalid_argument(
            "density: transform window exceeds the tau table; rebuild with larger n_max");
    }
}

// character sum sum_d chi_d(p) and divisibility count in one pass
struct PrimeCharData {
    double chi_sum;
    i64 divisible;
};

PrimeCharData prime_char_data(const DiscriminantSet& set, i64 p) {
    Kahan chi;
    i64 div = 0;
    for (i64 d : set.members) {
        if (d % p == 0) {
            ++div;
        } else {
            chi.add(static_cast<double>(kronecker_symbol(d, p)));
        }
    }
    return {chi.sum, div};
}

}  // namespace

NuQuadrature density_quadrature(double sigma, double L, int mesh_level) {
    NuQuadrature q;
    // Prime powers adjacent to the support edge beat against the test
    // function at frequency |sigma - log n / L|, which shrinks like 1/L, so
    // the taper window has to grow faster than L for the truncation leak to
    // keep falling as X grows.
    q.v_taper = std::max({256.0, 32.0 / sigma, 6.0 * L * L});
    q.nodes_per_unit = std::max(24.0, 32.0 * sigma);
    q.mesh_level = mesh_level;
    return q;
}

double explicit_sum_S(const DiscriminantSet& set, const TauTable& tau,
                      const TestFunctionPair& tf, const TruncationPolicy&) {
    require_scaled(set);
    const double L = set.L();
    const double sigma = tf.sigma();
    const double pk_limit = window_limit(L, sigma);
    require_table_window(tau, pk_limit);
    const double Xs = static_cast<double>(set.x_star());

    const auto& primes = tau.primes();
    i64 np = 0;
    while (np < static_cast<i64>(primes.size()) &&
           static_cast<double>(primes[np]) < pk_limit) {
        ++np;
    }

    constexpr int kChunks = 64;
    double partial[kChunks] = {0.0};
    parallel_chunks(
        np,
        [&](i64 b, i64 e, int chunk) {
            Kahan acc;
            for (i64 i = b; i < e; ++i) {
                i64 p = primes[i];
                double lp = std::log(static_cast<double>(p));
                SatakeAngle ang = satake_angle(tau, p);
                PrimeCharData cd = prime_char_data(set, p);
                for (int k = 1; static_cast<double>(k) * lp < 2.0 * sigma * L; ++k) {
                    double gh = tf.g_hat(static_cast<double>(k) * lp / (2.0 * L));
                    if (gh == 0.0) break;
                    double w = power_sum(ang, k) * lp * std::pow(static_cast<double>(p), -0.5 * k) * gh;
                    double charsum = (k % 2 == 0) ? (Xs - static_cast<double>(cd.divisible))
                                                  : cd.chi_sum;
                    acc.add(w * charsum);
                }
            }
            partial[chunk] = acc.sum;
        },
        kChunks);

    Kahan total;
    for (int c = 0; c < std::min<i64>(kChunks, np); ++c) total.add(partial[c]);
    return -total.sum / (L * Xs);
}

std::vector<PrimeContribution> explicit_sum_trace(const DiscriminantSet& set, const TauTable& tau,
                                                  const TestFunctionPair& tf,
                                                  const TruncationPolicy&) {
    require_scaled(set);
    const double L = set.L();
    const double sigma = tf.sigma();
    const double pk_limit = window_limit(L, sigma);
    require_table_window(tau, pk_limit);
    const double Xs = static_cast<double>(set.x_star());

    std::vector<PrimeContribution> out;
    for (i64 p : tau.primes()) {
        if (static_cast<double>(p) >= pk_limit) break;
        double lp = std::log(static_cast<double>(p));
        SatakeAngle ang = satake_angle(tau, p);
        PrimeCharData cd = prime_char_data(set, p);
        for (int k = 1; static_cast<double>(k) * lp < 2.0 * sigma * L; ++k) {
            double gh = tf.g_hat(static_cast<double>(k) * lp / (2.0 * L));
            if (gh == 0.0) break;
            double w = power_sum(ang, k) * lp * std::pow(static_cast<double>(p), -0.5 * k) * gh;
            double charsum = (k % 2 == 0) ? (Xs - static_cast<double>(cd.divisible)) : cd.chi_sum;
            out.push_back({p, k, -w * charsum / (L * Xs)});
        }
    }
    return out;
}

EvenParts s_even_direct(const DiscriminantSet& set, const TauTable& tau,
                        const TestFunctionPair& tf, const TruncationPolicy&) {
    require_scaled(set);
    const double L = set.L();
    const double sigma = tf.sigma();
    const double p_limit = std::exp(sigma * L);  // p^m < e^{sigma L}
    require_table_window(tau, p_limit);
    const double Xs = static_cast<double>(set.x_star());

    Kahan full, corr;
    for (i64 p : tau.primes()) {
        if (static_cast<double>(p) >= p_limit) break;
        double lp = std::log(static_cast<double>(p));
        SatakeAngle ang = satake_angle(tau, p);
        i64 divisible = count_divisible(set, p);
        for (int m = 1; static_cast<double>(m) * lp < sigma * L; ++m) {
            double gh = tf.g_hat(static_cast<double>(m) * lp / L);
            if (gh == 0.0) break;
            double w = power_sum(ang, 2 * m) * lp * std::pow(static_cast<double>(p), -m) * gh;
            full.add(w);
            corr.add(w * static_cast<double>(divisible));
        }
    }
    return {-full.sum / L, corr.sum / (L * Xs)};
}

double s_odd_direct(const DiscriminantSet& set, const TauTable& tau, const TestFunctionPair& tf,
                    const TruncationPolicy&) {
    require_scaled(set);
    const double L = set.L();
    const double sigma = tf.sigma();
    const double pk_limit = window_limit(L, sigma);
    require_table_window(tau, pk_limit);
    const double Xs = static_cast<double>(set.x_star());

    const auto& primes = tau.primes();
    i64 np = 0;
    while (np < static_cast<i64>(primes.size()) &&
           static_cast<double>(primes[np]) < pk_limit) {
        ++np;
    }

    constexpr int kChunks = 64;
    double partial[kChunks] = {0.0};
    parallel_chunks(
        np,
        [&](i64 b, i64 e, int chunk) {
            Kahan acc;
            for (i64 i = b; i < e; ++i) {
                i64 p = primes[i];
                double lp = std::log(static_cast<double>(p));
                SatakeAngle ang = satake_angle(tau, p);
                PrimeCharData cd = prime_char_data(set, p);
                for (int k = 1; static_cast<double>(k) * lp < 2.0 * sigma * L; k += 2) {
                    double gh = tf.g_hat(static_cast<double>(k) * lp / (2.0 * L));
                    if (gh == 0.0) break;
                    acc.add(power_sum(ang, k) * lp * std::pow(static_cast<double>(p), -0.5 * k) *
                            gh * cd.chi_sum);
                }
            }
            partial[chunk] = acc.sum;
        },
        kChunks);

    Kahan total;
    for (int c = 0; c < std::min<i64>(kChunks, np); ++c) total.add(partial[c]);
    return -total.sum / (L * Xs);
}

double sym2_minus_zeta_integral(double X, const TauTable& tau, const TestFunctionPair& tf,
                                const TruncationPolicy&, const DensityOptions& opt) {
    if (!(X > kTwoPi)) throw std::invalid_argument("density: X must exceed 2 pi");
    const double L = std::log(X / kTwoPi);
    const double sigma = tf.sigma();

    // Arithmetic Dirichlet part of L'/L(sym^2) - zeta'/zeta: a finite sum of
    // exact transform values inside the support window.
    Kahan dirichlet;
    const double p_limit = std::exp(sigma * L);
    require_table_window(tau, p_limit);
    for (i64 p : tau.primes()) {
        if (static_cast<double>(p) >= p_limit) break;
        double lp = std::log(static_cast<double>(p));
        double ts = tau.tau_star(p);
        double tau2 = ts * ts - 1.0;       // tau*(p^2)
        double c1 = tau2 - 1.0;            // 2 cos(2 theta)
        {
            double gh = tf.g_hat(lp / L);
            if (gh > 0.0) dirichlet.add(tau2 * lp / static_cast<double>(p) * gh);
        }
        double cprev = 2.0, ccur = c1;
        double pl = static_cast<double>(p);
        for (int l = 2; static_cast<double>(l) * lp < sigma * L; ++l) {
            double gh = tf.g_hat(static_cast<double>(l) * lp / L);
            if (gh == 0.0) break;
            double cnext = c1 * ccur - cprev;  // 2 cos(2 l theta)
            pl *= static_cast<double>(p);
            dirichlet.add(cnext * lp / pl * gh);
            cprev = ccur;
            ccur = cnext;
        }
    }

    // Continued part: the divergent "+1" content of both log-derivatives,
    // i.e. the continuation of sum_p log p p^{-s} via -sum_l mu(l) z'/z(ls).
    const NuQuadrature quad = density_quadrature(sigma, L, opt.mesh_level);
    auto integrand = [&](double nu) -> cx {
        cx s(1.0, kTwoPi * nu / L);
        cx k = -zeta_logderiv(s);  // l = 1 term, mu = 1
        for (const auto& e : moebius_table()) {
            if (std::pow(2.0, -static_cast<double>(e.l)) < 1e-14) break;
            k -= static_cast<double>(e.mu) * zeta_logderiv_cont(static_cast<double>(e.l) * s);
        }
        return tf.g(nu) * k;
    };
    double cont = quad.integrate_hermitian(integrand);

    return (cont - dirichlet.sum) / L;
}

double s_even1_asymptotic(double X, const TauTable& tau, const TestFunctionPair& tf,
                          const TruncationPolicy& pol, const DensityOptions& opt) {
    return 0.5 * tf.g0() + sym2_minus_zeta_integral(X, tau, tf, pol, opt);
}

double s_even2_main(double X, const TauTable& tau, const TestFunctionPair& tf,
                    const TruncationPolicy& pol, const DensityOptions& opt) {
    if (!(X > kTwoPi)) throw std::invalid_argument("density: X must exceed 2 pi");
    if (pol.p_max > tau.n_max()) {
        throw std::invalid_argument("s_even2_main: p_max exceeds tau table range");
    }
    const double L = std::log(X / kTwoPi);
    const double sigma = tf.sigma();

    struct Entry {
        double logp, c1, weight;  // weight = log p / (p + 1)
        int k_cut;
    };
    std::vector<Entry> entries;
    for (i64 p : tau.primes()) {
        if (p > pol.p_max) break;
        double ts = tau.tau_star(p);
        double lp = std::log(static_cast<double>(p));
        int k_cut = std::max<int>(
            pol.k_max, static_cast<int>(std::ceil(std::log(4.0 / pol.tail_tol) / lp)));
        entries.push_back({lp, ts * ts - 2.0, lp / (static_cast<double>(p) + 1.0), k_cut});
    }

    const NuQuadrature quad = density_quadrature(sigma, L, opt.mesh_level);
    auto integrand = [&](double nu) -> cx {
        cx s(1.0, kTwoPi * nu / L);
        KahanCx acc;
        for (const Entry& en : entries) {
            cx x = std::exp(-s * en.logp);
            cx xk = x;
            double cprev = 2.0, ccur = en.c1;
            cx inner = 0.0;
            for (int k = 1; k <= en.k_cut; ++k) {
                inner += ccur * xk;
                double cnext = en.c1 * ccur - cprev;
                cprev = ccur;
                ccur = cnext;
                xk *= x;
            }
            acc.add(en.weight * inner);
        }
        return tf.g(nu) * acc.value();
    };
    return quad.integrate_hermitian(integrand) / L;
}

double archimedean_term(const DiscriminantSet& set, const TestFunctionPair& tf,
                        const DensityOptions& opt) {
    require_scaled(set);
    const double L = set.L();
    Kahan logsum;
    for (i64 d : set.members) logsum.add(std::log(static_cast<double>(d) / kTwoPi));
    const double mean_log = logsum.sum / static_cast<double>(set.x_star());

    const NuQuadrature quad = density_quadrature(tf.sigma(), L, opt.mesh_level);
    auto integrand = [&](double nu) -> cx {
        return tf.g(nu) * (mean_log + digamma(cx(6.0, kPi * nu / L)));
    };
    return quad.integrate_hermitian(integrand) / L;
}

DensityBreakdown nt_one_level_density(double X, double sigma, const TauTable& tau,
                                      const TruncationPolicy& pol, const DensityOptions& opt) {
    if (!(sigma > 0.0 && sigma < 1.0)) {
        throw std::domain_error("nt_one_level_density: sigma must lie in (0, 1)");
    }
    const TestFunctionPair tf = fejer_pair(sigma);
    const DiscriminantSet set = enumerate_discriminants(X);

    DensityBreakdown b;
    b.side = DensityBreakdown::Side::nt;
    b.x = X;
    b.sigma = sigma;
    b.archimedean = archimedean_term(set, tf, opt);
    b.half_g0 = 0.5 * tf.g0();
    b.sym2_minus_zeta = sym2_minus_zeta_integral(X, tau, tf, pol, opt);
    b.even2_main = s_even2_main(X, tau, tf, pol, opt);
    b.odd_term = s_odd_direct(set, tau, tf, pol);
    b.remainder = 0.0;
    b.total = b.archimedean + b.half_g0 + b.sym2_minus_zeta + b.even2_main;
    return b;
}

}  // namespace ratioslab
