#include "ratioslab/ratios.hpp"

#include <cmath>

#include "ratioslab/parallel.hpp"

namespace ratioslab {

namespace {

// sum_{m>=1} (alpha^{2m} + conj^{2m}) x^m in closed geometric form,
// using alpha^2 + conj^2 = tau*(p^2) - 1 and alpha^2 conj^2 = 1.
cx even_power_sum_geom(cx x, double tau2) {
    cx num = (tau2 - 1.0) * x - 2.0 * x * x;
    cx den = 1.0 - (tau2 - 1.0) * x + x * x;
    return num / den;
}

void require_convergent(cx alpha, cx gamma) {
    if (!(1.0 + 2.0 * alpha.real() > 0.5) || !(1.0 + 2.0 * gamma.real() > 0.5) ||
        !(1.0 + alpha.real() + gamma.real() > 0.5)) {
        throw std::domain_error("b_delta: shift outside the convergence range");
    }
}

void require_table(const TauTable& tau, i64 p_max) {
    if (p_max > tau.n_max()) {
        throw std::invalid_argument("b_delta: p_max exceeds tau table range");
    }
}

}  // namespace

BFactors b_factors(i64 p, cx alpha, cx gamma, const TauTable& tau) {
    const double lp = std::log(static_cast<double>(p));
    const double ts = tau.tau_star(p);
    const double tau2 = ts * ts - 1.0;  // tau*(p^2)
    const double pd = static_cast<double>(p);

    const cx xa = std::exp(-(1.0 + 2.0 * alpha) * lp);
    const cx xg = std::exp(-(1.0 + 2.0 * gamma) * lp);
    const cx xag = std::exp(-(1.0 + alpha + gamma) * lp);

    // generating function 1/(1 - tau*(p) t + t^2) split into even/odd parts,
    // evaluated at t^2 = xa
    const cx D = (1.0 + xa) * (1.0 + xa) - (ts * ts) * xa;
    const cx even0 = (1.0 + xa) / D;        // sum_{m>=0} tau*(p^{2m}) xa^m
    const cx odd = ts / D;                  // sum_{m>=0} tau*(p^{2m+1}) xa^m
    const cx even = even0 - 1.0;            // m >= 1

    BFactors f;
    f.p = p;
    f.f1 = 1.0 + pd / (pd + 1.0) * (even - ts * xag * odd + xg * even0);
    f.f2 = 1.0 - tau2 * xa + tau2 * xa * xa - xa * xa * xa;
    f.f3 = 1.0 - xg;
    f.f4 = 1.0 - tau2 * xag + tau2 * xag * xag - xag * xag * xag;
    f.f5 = 1.0 - xag;
    return f;
}

cx b_delta(cx alpha, cx gamma, const TauTable& tau, const TruncationPolicy& pol) {
    require_convergent(alpha, gamma);
    require_table(tau, pol.p_max);
    cx prod = 1.0;
    for (i64 p : tau.primes()) {
        if (p > pol.p_max) break;
        prod *= b_factors(p, alpha, gamma, tau).local();
    }
    return prod;
}

cx b_delta_deriv_closed(double y, const TauTable& tau, const TruncationPolicy& pol) {
    require_table(tau, pol.p_max);
    KahanCx acc;
    for (i64 p : tau.primes()) {
        if (p > pol.p_max) break;
        double lp = std::log(static_cast<double>(p));
        double ts = tau.tau_star(p);
        cx x = std::exp(-(cx(1.0, 2.0 * y)) * lp);
        acc.add(lp / (static_cast<double>(p) + 1.0) * even_power_sum_geom(x, ts * ts - 1.0));
    }
    return acc.value();
}

cx b_delta_deriv_logform(double y, const TauTable& tau, const TruncationPolicy& pol) {
    require_table(tau, pol.p_max);
    KahanCx acc;
    for (i64 p : tau.primes()) {
        if (p > pol.p_max) break;
        const double pd = static_cast<double>(p);
        const double lp = std::log(pd);
        const double ts = tau.tau_star(p);
        const double tau2 = ts * ts - 1.0;
        const cx x = std::exp(-(cx(1.0, 2.0 * y)) * lp);
        const cx x2 = x * x, x3 = x * x * x;

        // f1(r;r) = 1, f1' collapses to the even power sum
        const cx f1_term = -(pd * lp / (pd + 1.0)) * even_power_sum_geom(x, tau2);
        // f2 = f4 at the diagonal; their derivative quotients differ
        const cx F = 1.0 - tau2 * x + tau2 * x2 - x3;
        const cx f2_term = lp * (2.0 * tau2 * x - 4.0 * tau2 * x2 + 6.0 * x3) / F;
        const cx f4_term = lp * (tau2 * x - 2.0 * tau2 * x2 + 3.0 * x3) / F;
        // f3' = 0
        const cx f5_term = lp * x / (1.0 - x);

        acc.add(f1_term + f2_term - f4_term - f5_term);
    }
    return acc.value();
}

cx m_identity(i64 p, double y, const TauTable& tau) {
    const double lp = std::log(static_cast<double>(p));
    const double ts = tau.tau_star(p);
    const double tau2 = ts * ts - 1.0;
    const cx x = std::exp(-(cx(1.0, 2.0 * y)) * lp);
    const cx x2 = x * x, x3 = x * x * x;
    const cx F = 1.0 - tau2 * x + tau2 * x2 - x3;
    return -even_power_sum_geom(x, tau2) + (tau2 * x - 2.0 * tau2 * x2 + 3.0 * x3) / F -
           x / (1.0 - x);
}

RemainderResult remainder_R(double X, const TestFunctionPair& tf, double w, const TauTable& tau,
                            const TruncationPolicy& pol, const DensityOptions& opt,
                            bool use_direct_d_sum) {
    if (!(w > 0.0 && w <= 0.23)) {
        // above 0.23 the principal branch of log zeta(2s) inside the
        // symmetric-square continuation is no longer guaranteed
        throw std::domain_error("remainder_R: w must lie in (0, 0.23]");
    }
    const DiscriminantSet set = enumerate_discriminants(X);
    if (set.members.empty() || !(X > kTwoPi)) {
        throw std::invalid_argument("remainder_R: need X > 2 pi with a nonempty set");
    }
    const double L = set.L();
    const double Xs = static_cast<double>(set.x_star());
    const double c_shift = w * L / kPi;

    // One fused prime pass per node serves both the B product and the
    // symmetric-square continuation: on this contour alpha + gamma = 0, so
    // p^{-(1+alpha+gamma)} = 1/p and p^{-s_strip} equals B's own xa.
    const i64 p_b = std::min<i64>(tau.n_max(), std::max<i64>(pol.p_max, 100000));
    struct Entry {
        double lp, ts, tau2, inv_p, p4w, f45r, ppw;  // ppw = p^{-(1-2w)}
        double taper;
        double pd;
    };
    std::vector<Entry> entries;
    for (i64 p : tau.primes()) {
        if (p > p_b) break;
        Entry e;
        e.pd = static_cast<double>(p);
        e.lp = std::log(e.pd);
        e.ts = tau.tau_star(p);
        e.tau2 = e.ts * e.ts - 1.0;
        e.inv_p = 1.0 / e.pd;
        e.p4w = std::pow(e.pd, -4.0 * w);
        e.ppw = std::pow(e.pd, -(1.0 - 2.0 * w));
        double f4r = 1.0 - e.tau2 * e.inv_p + e.tau2 * e.inv_p * e.inv_p -
                     e.inv_p * e.inv_p * e.inv_p;
        double f5r = 1.0 - e.inv_p;
        e.f45r = f4r * f5r;
        double taper = 1.0;
        if (e.pd > static_cast<double>(p_b) / 2.0) {
            double u = std::log(2.0 * e.pd / static_cast<double>(p_b)) / std::log(2.0);
            double cc = std::cos(0.5 * kPi * u);
            taper = cc * cc;
        }
        e.taper = taper;
        entries.push_back(e);
    }

    const double res_strip = 1.0 - 2.0 * w;  // Re of the sym^2 argument

    auto integrand = [&](double t) -> cx {
        const double y = kPi * t / L;
        const cx expfac(0.0, 2.0 * y);  // 2 i y

        cx b_prod = 1.0;
        KahanCx t0;   // tapered tau*(p^2) p^{-s}
        KahanCx c20;  // l >= 2 cosine block of log L(sym^2)
        for (const Entry& e : entries) {
            // xa = p^{-(1+2 alpha)} = p^{-(1-2w)} e^{2 i y log p}
            cx xa = e.ppw * std::exp(expfac * e.lp);
            cx xg = std::conj(xa) * e.p4w;
            cx D = (1.0 + xa) * (1.0 + xa) - (e.ts * e.ts) * xa;
            cx even0 = (1.0 + xa) / D;
            cx odd = e.ts / D;
            cx f1 = 1.0 + e.pd / (e.pd + 1.0) * ((even0 - 1.0) - e.ts * e.inv_p * odd + xg * even0);
            cx f2 = 1.0 - e.tau2 * xa + e.tau2 * xa * xa - xa * xa * xa;
            cx f3 = 1.0 - xg;
            b_prod *= f1 * f2 * f3 / e.f45r;

            t0.add(e.taper * e.tau2 * xa);
            double bound = e.ppw * e.ppw;
            if (bound > 1e-15) {
                double c1 = e.tau2 - 1.0;  // 2 cos(2 theta)
                double cprev = 2.0, ccur = c1;
                cx xl = xa * xa;
                for (int l = 2; bound > 1e-15 && l < 80; ++l) {
                    double cnext = c1 * ccur - cprev;
                    c20.add(cnext * xl / static_cast<double>(l));
                    cprev = ccur;
                    ccur = cnext;
                    xl *= xa;
                    bound *= e.ppw;
                }
            }
        }
        cx s_strip(res_strip, -2.0 * y);
        cx log_l = t0.value() + c20.value();
        for (const auto& e : moebius_table()) {
            if (std::pow(2.0, -static_cast<double>(e.l) * res_strip) / e.l < 1e-14) break;
            log_l -= (static_cast<double>(e.mu) / e.l) * log_zeta_cont(static_cast<double>(e.l) * s_strip);
        }

        const cx z_d(t, -c_shift);
        const cx E = use_direct_d_sum ? discriminant_exp_sum(set, z_d)
                                      : discriminant_exp_sum_main(set, z_d);
        const cx zeta_v = zeta(cx(1.0 + 2.0 * w, 2.0 * y));
        const cx gamma_v = gamma_ratio(y, w);
        const cx g_v = tf.g(cx(t, -c_shift));
        return g_v * E * gamma_v * zeta_v * std::exp(log_l) * b_prod;
    };

    // delta = L(sym^2, 1) from the same prime data at s = 1 (xa real)
    double log_delta;
    {
        Kahan t0, c20;
        for (const Entry& e : entries) {
            t0.add(e.taper * e.tau2 * e.inv_p);
            double c1 = e.tau2 - 1.0;
            double cprev = 2.0, ccur = c1;
            double xl = e.inv_p * e.inv_p;
            for (int l = 2; xl > 1e-15 && l < 80; ++l) {
                double cnext = c1 * ccur - cprev;
                c20.add(cnext * xl / static_cast<double>(l));
                cprev = ccur;
                ccur = cnext;
                xl *= e.inv_p;
            }
        }
        double moeb = 0.0;
        for (const auto& e : moebius_table()) {
            if (std::pow(2.0, -static_cast<double>(e.l)) / e.l < 1e-14) break;
            moeb -= (static_cast<double>(e.mu) / e.l) *
                    log_zeta_cont(cx(static_cast<double>(e.l), 0.0)).real();
        }
        log_delta = t0.sum + c20.sum + moeb;
    }
    const double delta = std::exp(log_delta);

    NuQuadrature quad;
    quad.v_taper = 128.0;
    quad.nodes_per_unit = std::max(14.0, 20.0 * tf.sigma());
    quad.mesh_level = opt.mesh_level;

    RemainderResult r;
    r.tail = cx(-quad.integrate_hermitian(integrand) / (L * Xs * delta), 0.0);
    r.pole_part = 0.5 * tf.g0();
    return r;
}

namespace {

DensityBreakdown rc_density_impl(double X, double sigma, const TauTable& tau,
                                 const TruncationPolicy& pol, const DensityOptions& opt,
                                 double w) {
    if (!(sigma > 0.0 && sigma < 1.0)) {
        throw std::domain_error("rc_one_level_density: sigma must lie in (0, 1)");
    }
    const TestFunctionPair tf = fejer_pair(sigma);
    const DiscriminantSet set = enumerate_discriminants(X);
    const double L = set.L();

    DensityBreakdown b;
    b.side = DensityBreakdown::Side::rc;
    b.x = X;
    b.sigma = sigma;
    b.archimedean = archimedean_term(set, tf, opt);
    b.sym2_minus_zeta = sym2_minus_zeta_integral(X, tau, tf, pol, opt);

    // middle arithmetic term through the closed geometric form (the
    // derivative of the B product on the diagonal)
    if (pol.p_max > tau.n_max()) {
        throw std::invalid_argument("rc_one_level_density: p_max exceeds tau table range");
    }
    struct Entry {
        double lp, weight, tau2;
    };
    std::vector<Entry> entries;
    for (i64 p : tau.primes()) {
        if (p > pol.p_max) break;
        double lp = std::log(static_cast<double>(p));
        double ts = tau.tau_star(p);
        entries.push_back({lp, lp / (static_cast<double>(p) + 1.0), ts * ts - 1.0});
    }
    const NuQuadrature quad = density_quadrature(sigma, L, opt.mesh_level);
    auto bprime = [&](double nu) -> cx {
        cx s(1.0, kTwoPi * nu / L);
        KahanCx acc;
        for (const Entry& e : entries) {
            cx x = std::exp(-s * e.lp);
            acc.add(e.weight * even_power_sum_geom(x, e.tau2));
        }
        return tf.g(nu) * acc.value();
    };
    b.even2_main = quad.integrate_hermitian(bprime) / L;

    RemainderResult rem = remainder_R(X, tf, w, tau, pol, opt);
    b.half_g0 = rem.pole_part;
    b.remainder = rem.tail;
    b.odd_term = 0.0;
    b.total = b.archimedean + b.half_g0 + b.sym2_minus_zeta + b.even2_main + rem.tail.real();
    return b;
}

}  // namespace

DensityBreakdown rc_one_level_density(double X, double sigma, const TauTable& tau,
                                      const TruncationPolicy& pol, const DensityOptions& opt) {
    return rc_density_impl(X, sigma, tau, pol, opt, 0.2);
}

ComparisonReport compare(double X, double sigma, const TauTable& tau, const TruncationPolicy& pol,
                         const CompareOptions& copt) {
    DensityOptions opt;
    opt.mesh_level = copt.mesh_level;

    ComparisonReport rep;
    rep.x = X;
    rep.sigma = sigma;
    rep.nt = nt_one_level_density(X, sigma, tau, pol, opt);
    rep.rc = rc_density_impl(X, sigma, tau, pol, opt, copt.w);
    if (copt.structural_zero) {
        rep.rc.total -= rep.rc.remainder.real();
        rep.rc.remainder = 0.0;
    }
    rep.abs_diff = std::abs(rep.nt.total - rep.rc.total);
    rep.rel_diff = rep.abs_diff / std::abs(rep.nt.total);
    rep.predicted_rate = std::pow(X, -0.5 * (1.0 - sigma));
    return rep;
}

}  // namespace ratioslab
