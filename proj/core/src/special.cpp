#include "ratioslab/special.hpp"

#include <algorithm>
#include <cmath>

namespace ratioslab {

// ---------------------------------------------------------------------------
// test function pairs
// ---------------------------------------------------------------------------

namespace {

double sinc(double u) {
    if (std::abs(u) < 1e-5) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

cx sinc(cx u) {
    if (std::abs(u) < 1e-5) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

}  // namespace

TestFunctionPair::TestFunctionPair(double sigma, Kind kind) : sigma_(sigma), kind_(kind) {}

TestFunctionPair TestFunctionPair::make_fejer(double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0)) {
        throw std::domain_error("fejer_pair: sigma must lie in (0, 1)");
    }
    return TestFunctionPair(sigma, Kind::fejer);
}

TestFunctionPair TestFunctionPair::make_bump(double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0)) {
        throw std::domain_error("bump_pair: sigma must lie in (0, 1)");
    }
    TestFunctionPair tf(sigma, Kind::bump);
    // 96-point rule on [0, sigma]; the transform integrand is C-infinity so
    // this is far below 1e-12.
    std::vector<double> x, w;
    gauss_legendre(96, x, w);
    tf.nodes_.resize(x.size());
    tf.weights_.resize(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        tf.nodes_[i] = 0.5 * sigma * (x[i] + 1.0);
        tf.weights_[i] = 0.5 * sigma * w[i];
    }
    return tf;
}

double TestFunctionPair::g_hat(double omega) const {
    double a = std::abs(omega);
    if (a >= sigma_) return 0.0;
    if (kind_ == Kind::fejer) return 1.0 - a / sigma_;
    double r = a / sigma_;
    return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

double TestFunctionPair::g(double x) const {
    if (kind_ == Kind::fejer) {
        double s = sinc(kPi * sigma_ * x);
        return sigma_ * s * s;
    }
    Kahan acc;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        acc.add(2.0 * weights_[i] * g_hat(nodes_[i]) * std::cos(kTwoPi * x * nodes_[i]));
    }
    return acc.sum;
}

cx TestFunctionPair::g(cx z) const {
    if (kind_ == Kind::fejer) {
        cx s = sinc(kPi * sigma_ * z);
        return sigma_ * s * s;
    }
    KahanCx acc;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        acc.add(2.0 * weights_[i] * g_hat(nodes_[i]) * std::cos(kTwoPi * z * nodes_[i]));
    }
    return acc.value();
}

TestFunctionPair fejer_pair(double sigma) { return TestFunctionPair::make_fejer(sigma); }
TestFunctionPair bump_pair(double sigma) { return TestFunctionPair::make_bump(sigma); }

// ---------------------------------------------------------------------------
// digamma / log gamma
// ---------------------------------------------------------------------------

cx digamma(cx s) {
    if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real())) {
        throw std::domain_error("digamma: pole at nonpositive integer");
    }
    cx acc = 0.0;
    while (s.real() < 12.0) {
        acc -= 1.0 / s;
        s += 1.0;
    }
    // psi(s) ~ ln s - 1/(2s) - sum B_{2k}/(2k s^{2k})
    static const double c[7] = {1.0 / 12.0,  -1.0 / 120.0,      1.0 / 252.0, -1.0 / 240.0,
                                1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
    cx inv = 1.0 / s, inv2 = inv * inv;
    cx tail = 0.0, pw = inv2;
    for (int k = 0; k < 7; ++k) {
        tail += c[k] * pw;
        pw *= inv2;
    }
    return acc + std::log(s) - 0.5 * inv - tail;
}

cx log_gamma(cx s) {
    if (s.real() <= 0.0 && s.imag() == 0.0) {
        throw std::domain_error("log_gamma: requires Re(s) > 0 off the real poles");
    }
    cx shift = 0.0;
    while (s.real() < 12.0) {
        shift -= std::log(s);
        s += 1.0;
    }
    static const double c[7] = {1.0 / 12.0,   -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
                                1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0};
    cx inv = 1.0 / s, inv2 = inv * inv;
    cx tail = 0.0, pw = inv;
    for (int k = 0; k < 7; ++k) {
        tail += c[k] * pw;
        pw *= inv2;
    }
    return shift + (s - 0.5) * std::log(s) - s + 0.5 * std::log(kTwoPi) + tail;
}

cx gamma_ratio(double y, double w) {
    if (!(w > -0.5 && w < 0.25)) {
        throw std::domain_error("gamma_ratio: w must lie in (-1/2, 1/4)");
    }
    return std::exp(log_gamma(cx(6.0 - w, -y)) - log_gamma(cx(6.0 + w, y)));
}

// ---------------------------------------------------------------------------
// zeta by Euler-Maclaurin
// ---------------------------------------------------------------------------

namespace {

// B_{2k}/(2k)! for k = 1..8
const double kZetaBern[8] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
};

void zeta_em(cx s, cx& z, cx& dz) {
    if (s == cx(1.0, 0.0)) throw std::domain_error("zeta: pole at s = 1");
    const int N = 24 + static_cast<int>(std::ceil(std::abs(s.imag())));

    KahanCx sum, dsum;
    for (int n = 1; n < N; ++n) {
        double ln = std::log(static_cast<double>(n));
        cx t = std::exp(-s * ln);
        sum.add(t);
        dsum.add(-ln * t);
    }
    z = sum.value();
    dz = dsum.value();

    const double lnN = std::log(static_cast<double>(N));
    cx Npow = std::exp(-s * lnN);  // N^{-s}

    cx t0 = Npow * static_cast<double>(N) / (s - 1.0);
    z += t0;
    dz += -t0 * (lnN + 1.0 / (s - 1.0));

    cx t1 = 0.5 * Npow;
    z += t1;
    dz += -lnN * t1;

    // Bernoulli corrections: B_{2k}/(2k)! (s)(s+1)..(s+2k-2) N^{-s-2k+1}
    cx poch = s;          // rising product with 2k-1 factors
    cx pochlog = 1.0 / s;  // derivative/product = sum 1/(s+j)
    double Nshift = 1.0 / static_cast<double>(N);  // N^{-2k+1} builds up
    for (int k = 1; k <= 8; ++k) {
        if (k > 1) {
            cx a = s + static_cast<double>(2 * k - 3);
            cx b = s + static_cast<double>(2 * k - 2);
            poch *= a * b;
            pochlog += 1.0 / a + 1.0 / b;
            Nshift /= static_cast<double>(N) * static_cast<double>(N);
        }
        cx term = kZetaBern[k - 1] * poch * Npow * Nshift;
        z += term;
        dz += term * (pochlog - lnN);
    }
}

}  // namespace

cx zeta(cx s) {
    cx z, dz;
    zeta_em(s, z, dz);
    return z;
}

cx zeta_logderiv(cx s) {
    cx z, dz;
    zeta_em(s, z, dz);
    return dz / z;
}

// ---------------------------------------------------------------------------
// symmetric square
// ---------------------------------------------------------------------------

const std::vector<MoebiusEntry>& moebius_table() {
    static const std::vector<MoebiusEntry> table = {
        {2, -1},  {3, -1},  {5, -1},  {6, 1},   {7, -1},  {10, 1},  {11, -1}, {13, -1},
        {14, 1},  {15, 1},  {17, -1}, {19, -1}, {21, 1},  {22, 1},  {23, -1}, {26, 1},
        {29, -1}, {30, -1}, {31, -1}, {33, 1},  {34, 1},  {35, 1},  {37, -1}, {38, 1},
        {39, 1},  {41, -1}, {42, -1}, {43, -1}, {46, 1},  {47, -1}, {51, 1},  {53, -1},
        {55, 1},  {57, 1},  {58, 1},  {59, -1},
    };
    return table;
}

namespace {

const std::vector<i64>& small_primes() {
    static const std::vector<i64> primes = [] {
        std::vector<i64> v;
        for (i64 n = 2; n <= 10000; ++n) {
            bool ok = true;
            for (i64 d = 2; d * d <= n; ++d) {
                if (n % d == 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) v.push_back(n);
        }
        return v;
    }();
    return primes;
}

}  // namespace

// log zeta: principal log of the Euler-Maclaurin value for moderate Re(v)
// (|Im log zeta| < pi once zeta(Re v) < e^pi, i.e. Re(v) >= 1.045, so the
// principal branch is the analytic one), truncated Euler product far right.
cx log_zeta_cont(cx v) {
    if (v.real() < 1.045) {
        throw std::domain_error("log_zeta_cont: Re(v) too small for a safe principal branch");
    }
    if (v.real() <= 4.5) return std::log(zeta(v));
    KahanCx acc;
    const double res = v.real();
    for (i64 p : small_primes()) {
        double lp = std::log(static_cast<double>(p));
        double mag = std::pow(static_cast<double>(p), -res);
        if (mag * static_cast<double>(p) / (res - 1.0) < 1e-14) break;
        cx u = std::exp(-v * lp);
        acc.add(-std::log(1.0 - u));
    }
    return acc.value();
}

// zeta'/zeta with the same split
cx zeta_logderiv_cont(cx v) {
    if (v.real() <= 4.5) return zeta_logderiv(v);
    KahanCx acc;
    const double res = v.real();
    for (i64 p : small_primes()) {
        double lp = std::log(static_cast<double>(p));
        double mag = std::pow(static_cast<double>(p), -res);
        if (lp * mag * static_cast<double>(p) / (res - 1.0) < 1e-14) break;
        cx u = std::exp(-v * lp);
        acc.add(-lp * u / (1.0 - u));
    }
    return acc.value();
}

Sym2Evaluator::Sym2Evaluator(const TauTable& tau, i64 p_limit) : p_limit_(p_limit) {
    if (p_limit > tau.n_max()) {
        throw std::invalid_argument("Sym2Evaluator: p_limit exceeds tau table range");
    }
    const double P = static_cast<double>(p_limit);
    for (i64 p : tau.primes()) {
        if (p > p_limit) break;
        double ts = tau.tau_star(p);
        double t2 = ts * ts - 1.0;  // tau*(p^2)
        double weight = 1.0;
        if (static_cast<double>(p) > P / 2.0) {
            double u = std::log(2.0 * static_cast<double>(p) / P) / std::log(2.0);
            double c = std::cos(0.5 * kPi * u);
            weight = c * c;
        }
        p_.push_back(p);
        logp_.push_back(std::log(static_cast<double>(p)));
        tau2_.push_back(t2);
        cos2t_.push_back(t2 - 1.0);  // 2 cos(2 theta_p)
        inv_taper_tau2_.push_back(weight * t2);
    }
}

cx Sym2Evaluator::log_l(cx s) const {
    if (!(s.real() > 0.53)) {
        throw std::domain_error("Sym2Evaluator::log_l: Re(s) too far left");
    }
    const double res = s.real();
    KahanCx acc;
    // tapered l=1 arithmetic part and absolutely convergent l>=2 block
    for (size_t i = 0; i < p_.size(); ++i) {
        cx x = std::exp(-s * logp_[i]);
        acc.add(inv_taper_tau2_[i] * x);
        double absx2 = std::pow(static_cast<double>(p_[i]), -2.0 * res);
        if (absx2 < 1e-15) continue;
        cx xl = x * x;
        double cprev = 2.0, ccur = cos2t_[i];
        double bound = absx2;
        for (int l = 2; bound > 1e-15 && l < 80; ++l) {
            double cnext = cos2t_[i] * ccur - cprev;  // 2 cos(2 l theta)
            acc.add(cnext * xl / static_cast<double>(l));
            cprev = ccur;
            ccur = cnext;
            xl *= x;
            bound *= std::pow(static_cast<double>(p_[i]), -res);
        }
    }
    // continuation of the divergent "+1" part: -sum_{l>=2} mu(l)/l log zeta(ls)
    cx moeb = 0.0;
    for (const auto& e : moebius_table()) {
        cx v = static_cast<double>(e.l) * s;
        if (std::pow(2.0, -v.real()) / e.l < 1e-14) break;
        moeb += (static_cast<double>(-e.mu) / e.l) * log_zeta_cont(v);
    }
    return acc.value() + moeb;
}

cx Sym2Evaluator::logderiv(cx s) const {
    if (!(s.real() > 0.53)) {
        throw std::domain_error("Sym2Evaluator::logderiv: Re(s) too far left");
    }
    const double res = s.real();
    KahanCx acc;  // accumulates D(s)-pieces: tapered T1 and l>=2 cosine block
    for (size_t i = 0; i < p_.size(); ++i) {
        cx x = std::exp(-s * logp_[i]);
        acc.add(inv_taper_tau2_[i] * logp_[i] * x);
        double absx2 = std::pow(static_cast<double>(p_[i]), -2.0 * res);
        if (absx2 * logp_[i] < 1e-15) continue;
        cx xl = x * x;
        double cprev = 2.0, ccur = cos2t_[i];
        double bound = absx2;
        for (int l = 2; bound * logp_[i] > 1e-15 && l < 80; ++l) {
            double cnext = cos2t_[i] * ccur - cprev;
            acc.add(cnext * logp_[i] * xl);
            cprev = ccur;
            ccur = cnext;
            xl *= x;
            bound *= std::pow(static_cast<double>(p_[i]), -res);
        }
    }
    // L'/L = -sum_{l>=2} mu(l) (zeta'/zeta)(ls) - T1 - C2
    cx moeb = 0.0;
    for (const auto& e : moebius_table()) {
        cx v = static_cast<double>(e.l) * s;
        if (std::pow(2.0, -v.real()) < 1e-14) break;
        moeb += static_cast<double>(-e.mu) * zeta_logderiv_cont(v);
    }
    return moeb - acc.value();
}

double Sym2Evaluator::constant_at_one() const { return std::exp(log_l(cx(1.0, 0.0)).real()); }

// ---------------------------------------------------------------------------
// public wrappers
// ---------------------------------------------------------------------------

cx l_sym2(cx s, const TauTable& tau, const TruncationPolicy& pol) {
    if (s.real() >= 1.1) {
        if (pol.p_max > tau.n_max()) {
            throw std::invalid_argument("l_sym2: p_max exceeds tau table range");
        }
        KahanCx logacc;
        for (i64 p : tau.primes()) {
            if (p > pol.p_max) break;
            double ts = tau.tau_star(p);
            double c2 = ts * ts - 2.0;  // 2 cos(2 theta)
            cx u = std::exp(-s * std::log(static_cast<double>(p)));
            logacc.add(-std::log((1.0 - c2 * u + u * u) * (1.0 - u)));
        }
        return std::exp(logacc.value());
    }
    Sym2Evaluator eval(tau, std::min<i64>(tau.n_max(), 100000));
    return std::exp(eval.log_l(s));
}

cx l_sym2_logderiv(cx s, const TauTable& tau, const TruncationPolicy& pol) {
    if (s.real() >= 1.1) {
        if (pol.p_max > tau.n_max()) {
            throw std::invalid_argument("l_sym2_logderiv: p_max exceeds tau table range");
        }
        const double res = s.real();
        KahanCx acc;
        for (i64 p : tau.primes()) {
            if (p > pol.p_max) break;
            double lp = std::log(static_cast<double>(p));
            double ts = tau.tau_star(p);
            double c1 = ts * ts - 2.0;  // 2 cos(2 theta)
            cx x = std::exp(-s * lp);
            cx xl = x;
            double cprev = 2.0, ccur = c1;
            double bound = std::pow(static_cast<double>(p), -res);
            for (int l = 1; bound * lp > 1e-16 && l < 100; ++l) {
                acc.add(-(ccur + 1.0) * lp * xl);
                double cnext = c1 * ccur - cprev;
                cprev = ccur;
                ccur = cnext;
                xl *= x;
                bound *= std::pow(static_cast<double>(p), -res);
            }
        }
        return acc.value();
    }
    Sym2Evaluator eval(tau, std::min<i64>(tau.n_max(), 100000));
    return eval.logderiv(s);
}

double l_sym2_at_one(const TauTable& tau, const TruncationPolicy&) {
    Sym2Evaluator eval(tau, std::min<i64>(tau.n_max(), 100000));
    return eval.constant_at_one();
}

}  // namespace ratioslab
