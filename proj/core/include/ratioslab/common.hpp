#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ratioslab {

using cx = std::complex<double>;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Kahan-compensated accumulator.  All family/prime sums use one of these with
// a fixed summation order so results do not depend on the worker count.
struct Kahan {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

struct KahanCx {
    Kahan re, im;
    void add(cx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cx value() const { return {re.sum, im.sum}; }
};

// Exact conversion of a signed 128-bit integer to double (two 64-bit halves).
inline double i128_to_double(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v)
                              : static_cast<unsigned __int128>(v);
    double hi = static_cast<double>(static_cast<u64>(u >> 64));
    double lo = static_cast<double>(static_cast<u64>(u));
    double d = hi * 18446744073709551616.0 + lo;
    return neg ? -d : d;
}

inline std::string i128_to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v)
                              : static_cast<unsigned __int128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    return {s.rbegin(), s.rend()};
}

}  // namespace ratioslab
