#pragma once

#include <vector>

#include "ratioslab/common.hpp"
#include "ratioslab/tau.hpp"

namespace ratioslab {

// Cutoffs for Euler products and prime-power sums.  Windows that come from a
// test function's compact support are derived from sigma and L instead.
struct TruncationPolicy {
    i64 p_max = 10000;
    int k_max = 20;
    double tail_tol = 1e-8;
};

// Even test function g with compactly supported transform
// g_hat(w) = int g(x) e^{2 pi i x w} dx, supp(g_hat) in (-sigma, sigma).
class TestFunctionPair {
  public:
    enum class Kind { fejer, bump };

    double sigma() const { return sigma_; }
    Kind kind() const { return kind_; }

    double g(double x) const;
    cx g(cx z) const;  // entire extension, needed on shifted contours
    double g_hat(double omega) const;
    double g0() const { return g(0.0); }

    static TestFunctionPair make_fejer(double sigma);
    static TestFunctionPair make_bump(double sigma);

  private:
    TestFunctionPair(double sigma, Kind kind);
    double sigma_ = 0.5;
    Kind kind_ = Kind::fejer;
    // bump kind: cached Gauss-Legendre rule for the cosine transform
    std::vector<double> nodes_, weights_;
};

// g(x) = sigma (sin(pi sigma x)/(pi sigma x))^2, g_hat = triangle of height 1
// on (-sigma, sigma).  Requires 0 < sigma < 1.
TestFunctionPair fejer_pair(double sigma);

// C-infinity bump transform pair for robustness checks: g_hat(w) =
// exp(1 - 1/(1-(w/sigma)^2)) inside (-sigma, sigma), g by quadrature.
TestFunctionPair bump_pair(double sigma);

// Gamma'/Gamma by recurrence shift plus the Stirling series.
cx digamma(cx s);

// log Gamma on Re(s) > 0 (principal), same method.
cx log_gamma(cx s);

// Gamma(6-w-iy) / Gamma(6+w+iy) via the log-Gamma difference.
cx gamma_ratio(double y, double w);

// Riemann zeta on 1/2 <= Re(s) <= 3-ish, |Im(s)| up to a few thousand,
// by Euler-Maclaurin with 8 Bernoulli corrections and shift N = 20 + |Im s|.
cx zeta(cx s);

// zeta'(s)/zeta(s), same machinery with the differentiated formula.
cx zeta_logderiv(cx s);

// Symmetric-square machinery.  The local factor has roots alpha_p^2, 1,
// conj(alpha_p)^2, so
//   log L(sym^2, s) = sum_p sum_l (2 cos(2 l theta_p) + 1) / (l p^{l s}).
// The "+1" part is log zeta(s); subtracting the prime zeta function
// P(s) = sum_l mu(l)/l log zeta(l s) continues the divergent l=1 piece, and
// what is left over is a zero-mean (Sato-Tate) tapered prime sum plus an
// absolutely convergent l>=2 block.  The result evaluates log L and L'/L on
// 1/2 < Re(s) <= 1 with no pole at s = 1 and no extrapolation.
class Sym2Evaluator {
  public:
    Sym2Evaluator(const TauTable& tau, i64 p_limit);

    cx log_l(cx s) const;     // log L(sym^2, s), Re(s) > 0.53, Re(s) <= ~1.2
    cx logderiv(cx s) const;  // L'/L(sym^2, s), same domain, analytic at s=1
    double constant_at_one() const;  // L(sym^2, 1)

    i64 p_limit() const { return p_limit_; }

  private:
    i64 p_limit_;
    std::vector<double> logp_, inv_taper_tau2_;  // taper weight * tau*(p^2)
    std::vector<double> tau2_, cos2t_;           // tau*(p^2), 2 cos(2 theta_p)
    std::vector<i64> p_;
};

// Truncated Euler product over p <= pol.p_max; requires Re(s) >= 1.1 where
// the declared tail bound holds.  Left of that the Sym2Evaluator route is
// used automatically (needs table depth; see Sym2Evaluator).
cx l_sym2(cx s, const TauTable& tau, const TruncationPolicy& pol);
cx l_sym2_logderiv(cx s, const TauTable& tau, const TruncationPolicy& pol);

// L(sym^2, 1): the normalizing constant of the ratios-side remainder.
double l_sym2_at_one(const TauTable& tau, const TruncationPolicy& pol);

// Continuations shared by the density integrands: Euler-Maclaurin for
// moderate Re(v), truncated Euler products far right of the critical strip.
cx log_zeta_cont(cx v);       // requires Re(v) >= 1.045 (principal branch)
cx zeta_logderiv_cont(cx v);

// squarefree l <= 59 with mu(l); enough for every prime-zeta Moebius block
// used here (terms decay like 2^{-l Re s})
struct MoebiusEntry {
    int l;
    int mu;
};
const std::vector<MoebiusEntry>& moebius_table();

}  // namespace ratioslab
