#pragma once

#include "ratioslab/density.hpp"

namespace ratioslab {

// Local Euler factor values of the arithmetic product B(alpha; gamma) at one
// prime.  f2..f5 follow the four rational factors; f1 carries the three
// tau-power series, summed in closed form through the generating function
// sum_m tau*(p^m) t^m = 1/(1 - tau*(p) t + t^2).
struct BFactors {
    i64 p;
    cx f1, f2, f3, f4, f5;
    cx local() const { return f1 * f2 * f3 / (f4 * f5); }
};

BFactors b_factors(i64 p, cx alpha, cx gamma, const TauTable& tau);

// Truncated product over p <= pol.p_max; B(r; r) = 1 identically.
cx b_delta(cx alpha, cx gamma, const TauTable& tau, const TruncationPolicy& pol);

// dB/dalpha on the diagonal alpha = gamma = iy, two routes:
//  - closed:   sum_p log p/(p+1) * geometric form of the even power sums
//  - logform:  the five-term f_i'/f_i combination evaluated term by term
cx b_delta_deriv_closed(double y, const TauTable& tau, const TruncationPolicy& pol);
cx b_delta_deriv_logform(double y, const TauTable& tau, const TruncationPolicy& pol);

// The per-prime cancellation that collapses the logform into the closed
// form; identically zero for every p and y.
cx m_identity(i64 p, double y, const TauTable& tau);

struct RemainderResult {
    cx tail;          // shifted-contour integral, decays like X^{-(1-sigma)/2}
    double pole_part; // g(0)/2, assembled symbolically
};

// Shifted-contour evaluation of the ratios-side residual integral at shift
// w in (0, 0.23]; the zeta pole crossed by the shift contributes exactly
// g(0)/2, reported separately from the decaying tail.
//   use_direct_d_sum: evaluate the d-sum directly instead of its closed form.
RemainderResult remainder_R(double X, const TestFunctionPair& tf, double w, const TauTable& tau,
                            const TruncationPolicy& pol, const DensityOptions& opt = {},
                            bool use_direct_d_sum = false);

DensityBreakdown rc_one_level_density(double X, double sigma, const TauTable& tau,
                                      const TruncationPolicy& pol, const DensityOptions& opt = {});

struct ComparisonReport {
    double x = 0.0;
    double sigma = 0.0;
    DensityBreakdown nt;
    DensityBreakdown rc;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    double predicted_rate = 0.0;  // X^{-(1-sigma)/2}
};

struct CompareOptions {
    // Drop the decaying remainder and compute both middle terms through the
    // same closed form, making the two assemblies term-identical.
    bool structural_zero = false;
    int mesh_level = 0;
    double w = 0.2;  // contour shift inside the remainder
};

ComparisonReport compare(double X, double sigma, const TauTable& tau, const TruncationPolicy& pol,
                         const CompareOptions& copt = {});

}  // namespace ratioslab
