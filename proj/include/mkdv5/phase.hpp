// Oscillatory phase of the degree-5 flow: theta(z; z0) = 16 z^5 - 80 z0^4 z,
// its stationary structure, and the lower bound for Re(i theta) on rays
// leaving the stationary point at angle pi - alpha.
#pragma once

#include <complex>
#include <stdexcept>
#include <utility>

#include "mkdv5/numerics.hpp"

namespace mkdv5::phase {

struct PhaseContext {
    double x;   // position, < 0 in the studied region
    double t;   // time, > 0
    double z0;  // positive stationary point, z0^4 = -x/(80 t)
};

inline double z0_from_ray(double x, double t) {
    if (!(x < 0.0) || !(t > 0.0))
        throw std::domain_error("z0_from_ray: requires x < 0 and t > 0");
    return std::pow(-x / (80.0 * t), 0.25);
}

inline PhaseContext context_from_ray(double x, double t) {
    return {x, t, z0_from_ray(x, t)};
}

// Horner evaluation of 16 z^5 - 80 z0^4 z.
inline cplx theta(cplx z, double z0) {
    const double c = 80.0 * z0 * z0 * z0 * z0;
    const cplx z2 = z * z;
    return z * (16.0 * z2 * z2 - c);
}

inline cplx theta_derivative(cplx z, double z0) {
    const double c = 80.0 * z0 * z0 * z0 * z0;
    const cplx z2 = z * z;
    return 80.0 * z2 * z2 - c;
}

inline std::pair<double, double> stationary_points(double z0) {
    if (!(z0 > 0.0)) throw std::domain_error("stationary_points: z0 must be positive");
    return {-z0, z0};
}

// Point on the ray z = z0 + u z0 e^{i(pi - alpha)}.
inline cplx ray_point(double u, double alpha, double z0) {
    return cplx(z0) + u * z0 * std::exp(cplx(0.0, pi - alpha));
}

// Re(i theta) along the ray, exact trigonometric form.
inline double re_i_theta_on_ray(double u, double alpha, double z0) {
    const double z5 = z0 * z0 * z0 * z0 * z0;
    const double bracket = 10.0 * std::sin(2.0 * alpha) - 10.0 * u * std::sin(3.0 * alpha) +
                           5.0 * u * u * std::sin(4.0 * alpha) -
                           u * u * u * std::sin(5.0 * alpha);
    return 16.0 * z5 * u * u * bracket;
}

// Minimum of the bracket over u in [0, 1/cos(alpha)]; positive for
// 0 < alpha <= pi/8 (checked by the invariant suite).
inline double c_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha <= pi / 8.0))
        throw std::domain_error("c_alpha: alpha must lie in (0, pi/8]");
    const double ca = std::cos(alpha);
    return 10.0 * std::sin(2.0 * alpha) - 10.0 * std::sin(3.0 * alpha) / ca +
           5.0 * std::sin(4.0 * alpha) / (ca * ca) - std::sin(5.0 * alpha) / (ca * ca * ca);
}

// theta re-expanded about z0. Note the quadratic prefactor carries z0^3.
inline cplx theta_expansion_about_z0(cplx z, double z0) {
    const double z5 = z0 * z0 * z0 * z0 * z0;
    const cplx w = z - z0;
    const cplx bracket = 1.0 + w / z0 + w * w / (2.0 * z0 * z0) + w * w * w / (10.0 * z0 * z0 * z0);
    return -64.0 * z5 + 160.0 * z0 * z0 * z0 * w * w * bracket;
}

}  // namespace mkdv5::phase
