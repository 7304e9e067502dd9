#pragma once

#include <functional>

#include "ratioslab/common.hpp"

namespace ratioslab {

// Quadrature layout for the one-level-density nu-integrals.  The integrands
// are Hermitian (F(-nu) = conj F(nu)), so every integral over the real line
// is computed as 2 Re of the half-line piece.  A cos^2 taper over
// [v_taper, 2 v_taper] suppresses the leakage of the oscillatory tail; the
// panel structure depends only on the parameters, never on the worker count.
struct NuQuadrature {
    double v_taper = 256.0;       // taper window start
    double nodes_per_unit = 8.0;  // oscillation resolution
    int mesh_level = 0;           // each level doubles the panel count

    // integral over (-inf, inf) of the Hermitian integrand, i.e.
    // 2 * Re int_0^{2 v_taper} W(nu) F(nu) dnu
    double integrate_hermitian(const std::function<cx(double)>& F) const;

    // same layout for a plain real even integrand (both half-lines included)
    double integrate_even(const std::function<double(double)>& f) const;

    double taper(double nu) const;
};

}  // namespace ratioslab
