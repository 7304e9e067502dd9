#include "ratioslab/discriminants.hpp"

#include <cmath>
#include <utility>

namespace ratioslab {

namespace {

bool squarefree(i64 n) {
    // trial division; fine for the desk-scale X this library targets
    if (n % 4 == 0) return false;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

}  // namespace

bool is_even_fundamental(i64 d) {
    if (d <= 1) return false;  // d = 1 is the trivial character, not a twist
    if (d % 4 == 1) return squarefree(d);
    if (d % 4 == 0) {
        i64 m = d / 4;
        i64 r = m % 4;
        return (r == 2 || r == 3) && squarefree(m);
    }
    return false;
}

DiscriminantSet enumerate_discriminants(double X) {
    DiscriminantSet set;
    set.X = X;
    if (X < 5.0) return set;  // smallest member is 5
    i64 limit = static_cast<i64>(std::floor(X));
    for (i64 d = 5; d <= limit; ++d) {
        if (is_even_fundamental(d)) set.members.push_back(d);
    }
    return set;
}

int kronecker_symbol(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    if (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        int t = 0;
        while (n % 2 == 0) {
            n /= 2;
            ++t;
        }
        int am8 = static_cast<int>(((a % 8) + 8) % 8);
        if (t % 2 == 1 && (am8 == 3 || am8 == 5)) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            int nm8 = static_cast<int>(n % 8);
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int kronecker_chi(i64 d, i64 n) {
    if (!is_even_fundamental(d)) {
        throw std::domain_error("kronecker_chi: d is not an even fundamental discriminant");
    }
    if (n < 1) throw std::domain_error("kronecker_chi: n must be positive");
    return kronecker_symbol(d, n);
}

i64 count_divisible(const DiscriminantSet& set, i64 p) {
    i64 count = 0;
    for (i64 d : set.members) {
        if (d % p == 0) ++count;
    }
    return count;
}

cx discriminant_exp_sum(const DiscriminantSet& set, cx z) {
    const double L = set.L();
    const cx factor = cx(0.0, -kTwoPi) * z / L;
    KahanCx acc;
    for (i64 d : set.members) {
        acc.add(std::exp(factor * std::log(static_cast<double>(d) / kTwoPi)));
    }
    return acc.value();
}

cx discriminant_exp_sum_main(const DiscriminantSet& set, cx z) {
    const double L = set.L();
    cx num = static_cast<double>(set.x_star()) * std::exp(cx(0.0, -kTwoPi) * z);
    cx den = 1.0 - cx(0.0, kTwoPi) * z / L;
    return num / den;
}

}  // namespace ratioslab
