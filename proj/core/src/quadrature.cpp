#include "ratioslab/quadrature.hpp"

#include <cmath>
#include <vector>

#include "ratioslab/parallel.hpp"

namespace ratioslab {

namespace {

constexpr int kGL = 31;

struct GLRule {
    double x[kGL];
    double w[kGL];
};

// Gauss-Legendre 31-point rule on [-1, 1], generated once by Newton iteration.
const GLRule& gl31() {
    static const GLRule rule = [] {
        GLRule r;
        const int n = kGL;
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
            r.x[i] = t;
            r.w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
        return r;
    }();
    return rule;
}

}  // namespace

double NuQuadrature::taper(double nu) const {
    if (nu <= v_taper) return 1.0;
    double end = 2.0 * v_taper;
    if (nu >= end) return 0.0;
    // C-infinity partition ramp; its transform decays faster than any power,
    // so the truncation leaks far less than the plain cosine window
    double u = (nu - v_taper) / v_taper;
    double a = std::exp(-1.0 / (1.0 - u));
    double b = std::exp(-1.0 / u);
    return a / (a + b);
}

double NuQuadrature::integrate_hermitian(const std::function<cx(double)>& F) const {
    const double end = 2.0 * v_taper;
    // ~kGL nodes per panel; panel width sized to the requested density
    const double scale = static_cast<double>(1 << mesh_level);
    i64 panels = static_cast<i64>(std::ceil(end * nodes_per_unit * scale / kGL));
    if (panels < 8) panels = 8;
    const double h = end / static_cast<double>(panels);
    const GLRule& rule = gl31();

    std::vector<double> partial(static_cast<size_t>(panels), 0.0);
    parallel_chunks(panels, [&](i64 b, i64 e, int) {
        for (i64 j = b; j < e; ++j) {
            double lo = h * static_cast<double>(j);
            Kahan acc;
            for (int i = 0; i < kGL; ++i) {
                double nu = lo + 0.5 * h * (rule.x[i] + 1.0);
                double w = 0.5 * h * rule.w[i] * taper(nu);
                acc.add(w * 2.0 * F(nu).real());
            }
            partial[static_cast<size_t>(j)] = acc.sum;
        }
    });
    Kahan total;
    for (double v : partial) total.add(v);
    return total.sum;
}

double NuQuadrature::integrate_even(const std::function<double(double)>& f) const {
    return integrate_hermitian([&f](double nu) { return cx(f(nu), 0.0); });
}

}  // namespace ratioslab
