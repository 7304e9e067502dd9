#pragma once

#include <vector>

#include "ratioslab/discriminants.hpp"
#include "ratioslab/quadrature.hpp"
#include "ratioslab/special.hpp"
#include "ratioslab/tau.hpp"

namespace ratioslab {

// Per-term values of one side of the one-level-density comparison.
// total = archimedean + half_g0 + sym2_minus_zeta + even2_main, plus
// Re(remainder) on the ratios side.  The measured odd-power term is recorded
// but never added; it belongs to the error budget.
struct DensityBreakdown {
    enum class Side { nt, rc };
    Side side = Side::nt;
    double x = 0.0;
    double sigma = 0.0;
    double archimedean = 0.0;
    double half_g0 = 0.0;
    double sym2_minus_zeta = 0.0;
    double even2_main = 0.0;
    double odd_term = 0.0;  // nt only
    cx remainder = 0.0;     // rc only: shifted-contour tail, pole part excluded
    double total = 0.0;
};

// Numerical knobs for the nu-integrals; mesh_level refines everything 2x.
struct DensityOptions {
    int mesh_level = 0;
};

// The direct triple sum over d <= X, primes p and k >= 1 inside the
// transform window p^k < (X/2pi)^{2 sigma}; the ground truth every
// decomposition is checked against.
double explicit_sum_S(const DiscriminantSet& set, const TauTable& tau,
                      const TestFunctionPair& tf, const TruncationPolicy& pol);

struct EvenParts {
    double even1;  // full-p sum (chi^2 = 1 part), no d dependence
    double even2;  // p | d correction, positive sign, exact divisibility counts
};
EvenParts s_even_direct(const DiscriminantSet& set, const TauTable& tau,
                        const TestFunctionPair& tf, const TruncationPolicy& pol);

double s_odd_direct(const DiscriminantSet& set, const TauTable& tau,
                    const TestFunctionPair& tf, const TruncationPolicy& pol);

// g(0)/2 + (1/L) int g(nu) (L'/L(sym^2) - zeta'/zeta)(1 + 2 pi i nu / L) dnu,
// the zeta parts by analytic continuation, the arithmetic Dirichlet-sum parts
// by their exact transform values.  The 1/nu poles cancel in the +-nu pairing.
double s_even1_asymptotic(double X, const TauTable& tau, const TestFunctionPair& tf,
                          const TruncationPolicy& pol, const DensityOptions& opt = {});

// The integral part alone (without g(0)/2); shared with the ratios side.
double sym2_minus_zeta_integral(double X, const TauTable& tau, const TestFunctionPair& tf,
                                const TruncationPolicy& pol, const DensityOptions& opt = {});

// (1/L) int g(nu) sum_p log p/(p+1) sum_k (alpha^{2k}+conj^{2k}) p^{-k(1+2 pi i nu/L)} dnu
// with the k-sum taken to a tail_tol-derived cutoff.
double s_even2_main(double X, const TauTable& tau, const TestFunctionPair& tf,
                    const TruncationPolicy& pol, const DensityOptions& opt = {});

double archimedean_term(const DiscriminantSet& set, const TestFunctionPair& tf,
                        const DensityOptions& opt = {});

DensityBreakdown nt_one_level_density(double X, double sigma, const TauTable& tau,
                                      const TruncationPolicy& pol,
                                      const DensityOptions& opt = {});

// per-prime-power contributions to the direct sum (CLI --trace)
struct PrimeContribution {
    i64 p;
    int k;
    double contribution;
};
std::vector<PrimeContribution> explicit_sum_trace(const DiscriminantSet& set, const TauTable& tau,
                                                  const TestFunctionPair& tf,
                                                  const TruncationPolicy& pol);

// quadrature layout shared by the density integrals (exposed for tests)
NuQuadrature density_quadrature(double sigma, double L, int mesh_level);

}  // namespace ratioslab
