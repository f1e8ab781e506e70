// Small numerical building blocks shared across the library: 2x2 complex
// matrices, piecewise-cubic interpolation on uniform grids, and composite
// Gauss-Legendre quadrature with optional geometric grading toward the
// interval endpoints.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace mkdv5 {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// 2x2 complex matrices (column-major layout irrelevant; direct fields).
// ---------------------------------------------------------------------------
struct Mat2 {
    cplx a11{1.0}, a12{0.0}, a21{0.0}, a22{1.0};

    static Mat2 identity() { return {}; }

    friend Mat2 operator*(const Mat2& A, const Mat2& B) {
        return {A.a11 * B.a11 + A.a12 * B.a21, A.a11 * B.a12 + A.a12 * B.a22,
                A.a21 * B.a11 + A.a22 * B.a21, A.a21 * B.a12 + A.a22 * B.a22};
    }
    friend Mat2 operator+(const Mat2& A, const Mat2& B) {
        return {A.a11 + B.a11, A.a12 + B.a12, A.a21 + B.a21, A.a22 + B.a22};
    }
    friend Mat2 operator*(cplx s, const Mat2& A) {
        return {s * A.a11, s * A.a12, s * A.a21, s * A.a22};
    }
    cplx det() const { return a11 * a22 - a12 * a21; }
};

// ---------------------------------------------------------------------------
// Cubic Hermite interpolation on a uniform grid with finite-difference
// slopes (4th-order accurate in the interior for smooth data, exact at the
// nodes). Used for sampled potentials and reflection coefficients.
// ---------------------------------------------------------------------------
template <typename T>
class UniformCubic {
  public:
    UniformCubic() = default;
    UniformCubic(double x0, double dx, std::vector<T> values)
        : x0_(x0), dx_(dx), v_(std::move(values)) {
        if (v_.size() < 4) throw std::invalid_argument("UniformCubic: need >= 4 samples");
        const std::size_t n = v_.size();
        d_.resize(n);
        // 4th-order centered slopes; one-sided cubic slopes at the ends.
        d_[0] = (-11.0 / 6.0 * v_[0] + 3.0 * v_[1] - 1.5 * v_[2] + v_[3] / 3.0) / dx_;
        d_[1] = (v_[2] - v_[0]) / (2.0 * dx_);
        for (std::size_t i = 2; i + 2 < n; ++i)
            d_[i] = (v_[i - 2] - 8.0 * v_[i - 1] + 8.0 * v_[i + 1] - v_[i + 2]) / (12.0 * dx_);
        d_[n - 2] = (v_[n - 1] - v_[n - 3]) / (2.0 * dx_);
        d_[n - 1] = (11.0 / 6.0 * v_[n - 1] - 3.0 * v_[n - 2] + 1.5 * v_[n - 3] - v_[n - 4] / 3.0) / dx_;
    }

    double xmin() const { return x0_; }
    double xmax() const { return x0_ + dx_ * (static_cast<double>(v_.size()) - 1.0); }
    double spacing() const { return dx_; }
    const std::vector<T>& values() const { return v_; }

    T operator()(double x) const {
        const std::size_t n = v_.size();
        double u = (x - x0_) / dx_;
        if (u <= 0.0) return v_.front();
        if (u >= static_cast<double>(n - 1)) return v_.back();
        std::size_t i = static_cast<std::size_t>(u);
        if (i >= n - 1) i = n - 2;
        const double s = u - static_cast<double>(i);
        const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        const double h10 = s * (1.0 - s) * (1.0 - s);
        const double h01 = s * s * (3.0 - 2.0 * s);
        const double h11 = s * s * (s - 1.0);
        return h00 * v_[i] + h01 * v_[i + 1] + (h10 * d_[i] + h11 * d_[i + 1]) * dx_;
    }

  private:
    double x0_ = 0.0, dx_ = 1.0;
    std::vector<T> v_, d_;
};

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature.
// ---------------------------------------------------------------------------
namespace quad {

// Nodes/weights on [-1,1], computed once per order by Newton iteration on
// the Legendre recurrence (standard Golub-Welsch-free construction).
inline const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order) {
    static thread_local std::vector<std::pair<std::vector<double>, std::vector<double>>> cache(64);
    if (order < 2 || order >= 64) throw std::invalid_argument("gauss_legendre: order out of range");
    auto& entry = cache[static_cast<std::size_t>(order)];
    if (!entry.first.empty()) return entry;
    std::vector<double> x(order), w(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[order - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[order - 1 - i] = w[i];
    }
    entry = {std::move(x), std::move(w)};
    return entry;
}

template <typename F>
auto panel(F&& f, double a, double b, int order = 16) {
    const auto& [x, w] = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    using R = decltype(f(mid));
    R acc{};
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * f(mid + half * x[i]);
    return half * acc;
}

// Composite rule on [a,b]: `base` uniform panels, plus `levels` geometrically
// graded panels shrinking toward each endpoint flagged in grade_a/grade_b.
// The grading resolves integrands whose derivatives blow up like log|s-a|.
template <typename F>
auto graded(F&& f, double a, double b, bool grade_a, bool grade_b, int base = 16,
            int levels = 36, int order = 16) {
    using R = decltype(f(0.5 * (a + b)));
    R acc{};
    double lo = a, hi = b;
    const double len = b - a;
    std::vector<std::pair<double, double>> panels;
    if (grade_a) {
        // panels [a + len/2^{k+1}, a + len/2^k], k = 1..levels, innermost kept
        double frac = 0.25;
        double prev = a + len * 0.5;
        for (int k = 1; k < levels; ++k, frac *= 0.5) {
            double next = a + len * frac;
            panels.emplace_back(next, prev);
            prev = next;
        }
        panels.emplace_back(a, prev);
        lo = a + len * 0.5;
    }
    if (grade_b) {
        double frac = 0.25;
        double prev = b - len * 0.5;
        for (int k = 1; k < levels; ++k, frac *= 0.5) {
            double next = b - len * frac;
            panels.emplace_back(prev, next);
            prev = next;
        }
        panels.emplace_back(prev, b);
        hi = b - len * 0.5;
    }
    if (grade_a && grade_b) {
        // graded halves already cover everything
        lo = a + len * 0.5;
        hi = lo;
    }
    for (auto& [pa, pb] : panels) acc += panel(f, pa, pb, order);
    if (hi > lo) {
        const double step = (hi - lo) / base;
        for (int i = 0; i < base; ++i) acc += panel(f, lo + i * step, lo + (i + 1) * step, order);
    }
    return acc;
}

}  // namespace quad

}  // namespace mkdv5
