// Test-only oracles, kept independent of the library code paths they check.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace testing_oracles {

// Adaptive Simpson quadrature with interval bisection.
inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    const double m  = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left  = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                                  double tol = 1e-12, int depth = 60) {
    const double m  = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), tol, depth);
}

// ∫₀¹ √(log(a/ε)) dε with the integrable endpoint handled by splitting near 0
// and substituting ε = a e^{−t²} on the singular piece:
//   ∫₀^c √(log(a/ε)) dε = ∫_{√(log(a/c))}^∞ 2 a t² e^{−t²} dt.
inline double entropy_integral_lhs(double a) {
    if (!(a > 1.0)) throw std::invalid_argument("entropy_integral_lhs: a must be > 1");
    const double c     = 1e-6;
    const double upper = adaptive_quadrature(
        [a](double eps) { return std::sqrt(std::log(a / eps)); }, c, 1.0);
    const double t0 = std::sqrt(std::log(a / c));
    // Truncate the tail where 2 a t² e^{−t²} is far below tolerance.
    const double t1   = std::sqrt(t0 * t0 + 80.0);
    const double head = adaptive_quadrature(
        [a](double t) { return 2.0 * a * t * t * std::exp(-t * t); }, t0, t1);
    return upper + head;
}

// Greedy ε-net size of a point cloud: repeatedly pick an uncovered point as a
// center and remove everything within ε of it.
inline int greedy_cover_count(const std::vector<std::vector<double>>& points, double eps) {
    std::vector<bool> covered(points.size(), false);
    int count = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (covered[i]) continue;
        ++count;
        for (std::size_t j = i; j < points.size(); ++j) {
            if (covered[j]) continue;
            double s = 0.0;
            for (std::size_t k = 0; k < points[i].size(); ++k) {
                const double d = points[i][k] - points[j][k];
                s += d * d;
            }
            if (s <= eps * eps) covered[j] = true;
        }
    }
    return count;
}

// Fine mesh of the interval [−R, R] (d=1) or the disk of radius R (d=2).
inline std::vector<std::vector<double>> ball_mesh(int d, double R, int per_axis) {
    std::vector<std::vector<double>> pts;
    if (d == 1) {
        for (int i = 0; i < per_axis; ++i)
            pts.push_back({-R + 2.0 * R * i / (per_axis - 1)});
        return pts;
    }
    for (int i = 0; i < per_axis; ++i)
        for (int j = 0; j < per_axis; ++j) {
            const double x = -R + 2.0 * R * i / (per_axis - 1);
            const double y = -R + 2.0 * R * j / (per_axis - 1);
            if (x * x + y * y <= R * R) pts.push_back({x, y});
        }
    return pts;
}

} // namespace testing_oracles
