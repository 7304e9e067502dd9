#pragma once

#include <vector>

#include "ratioslab/common.hpp"

namespace ratioslab {

// Positive fundamental discriminants d <= X whose quadratic character is
// even (chi_d(-1) = +1): either d = 1 mod 4 squarefree, or d/4 = 2,3 mod 4
// squarefree.  d = 1 (the trivial character) is excluded.
struct DiscriminantSet {
    double X = 0.0;
    std::vector<i64> members;  // ascending

    i64 x_star() const { return static_cast<i64>(members.size()); }
    double L() const { return std::log(X / kTwoPi); }
};

bool is_even_fundamental(i64 d);

DiscriminantSet enumerate_discriminants(double X);

// chi_d(n) as the Kronecker symbol (d|n).  Validates that d is an even
// fundamental discriminant; the raw symbol is exposed for hot loops.
int kronecker_symbol(i64 a, i64 n);
int kronecker_chi(i64 d, i64 n);

i64 count_divisible(const DiscriminantSet& set, i64 p);

// sum_d exp(-2 pi i z log(d/2pi)/L) over the set, and its closed-form main
// term X* e^{-2 pi i z} (1 - 2 pi i z / L)^{-1}.  For z = nu - i w L / pi
// with |w| < 1/2 the two agree up to a small power of X.
cx discriminant_exp_sum(const DiscriminantSet& set, cx z);
cx discriminant_exp_sum_main(const DiscriminantSet& set, cx z);

}  // namespace ratioslab
