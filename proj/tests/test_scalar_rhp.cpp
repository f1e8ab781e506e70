#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "mkdv5/scalar_rhp.hpp"
#include "mkdv5/scattering.hpp"

using namespace mkdv5;
using namespace mkdv5::scalar_rhp;

namespace {

// Synthetic reflection with even modulus profile |r(s)|^2 = m2(s) and an
// odd phase, matching the symmetry class r(z) = conj(r(-z)).
ReflectionFunction synthetic_reflection(double m2peak, double phase_slope, double zmax = 4.0,
                                        std::size_t n = 801) {
    std::vector<double> grid(n);
    std::vector<cplx> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = -zmax + 2.0 * zmax * static_cast<double>(i) / static_cast<double>(n - 1);
        grid[i] = z;
        const double m2 = m2peak * std::exp(-z * z);
        vals[i] = std::sqrt(m2) * std::exp(cplx(0.0, phase_slope * z));
    }
    return ReflectionFunction(grid, vals);
}

ReflectionFunction constant_modulus_reflection(double modulus, double zmax = 4.0,
                                               std::size_t n = 801) {
    std::vector<double> grid(n);
    std::vector<cplx> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = -zmax + 2.0 * zmax * static_cast<double>(i) / static_cast<double>(n - 1);
        grid[i] = z;
        vals[i] = modulus * std::exp(cplx(0.0, 0.4 * z));
    }
    return ReflectionFunction(grid, vals);
}

ReflectionFunction zero_reflection(double zmax = 4.0, std::size_t n = 401) {
    std::vector<double> grid(n);
    std::vector<cplx> vals(n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = -zmax + 2.0 * zmax * static_cast<double>(i) / static_cast<double>(n - 1);
    return ReflectionFunction(grid, vals);
}

}  // namespace

TEST_CASE("nu from the defining formula") {
    const double target = std::sqrt(1.0 - std::exp(-2.0 * pi));
    auto r = constant_modulus_reflection(target);
    CHECK(nu(r, 0.8) == Catch::Approx(1.0).epsilon(1e-10));

    auto rz = zero_reflection();
    CHECK(nu(rz, 0.8) == 0.0);
}

TEST_CASE("nu cross-checked against the box potential closed form") {
    // |a|, |b| for a box of height h on [0,w] at real z, from the constant
    // coefficient matrix exponential with mu = sqrt(h^2 - z^2).
    const double h = 1.0, w = 1.0, z0 = 0.5;
    auto modulus_closed = [&](double z) {
        const cplx mu = std::sqrt(cplx(h * h - z * z));
        const cplx ch = std::cosh(w * mu);
        const cplx sh = (std::abs(mu) < 1e-12) ? cplx(w) : std::sinh(w * mu) / mu;
        const cplx a = ch + cplx(0.0, -z) * sh;  // |a| entry of S
        const cplx b = -h * sh;
        return std::abs(b / a);
    };
    auto q = scattering::Potential::box(h, w);
    auto sd = scattering::scatter(q, scattering::uniform_grid(-3.0, 3.0, 601));
    ReflectionFunction r(sd.zgrid, sd.r);
    const double nu_scatter = nu(r, z0);
    const double m = modulus_closed(z0);
    const double nu_closed = -std::log(1.0 - m * m) / (2.0 * pi);
    CHECK(nu_scatter == Catch::Approx(nu_closed).epsilon(1e-6));
}

TEST_CASE("chi vanishes for constant-modulus reflection") {
    auto r = constant_modulus_reflection(0.6);
    auto sd = make_scalar_rhp(r, 0.9);
    for (cplx z : {cplx(0.3, 0.4), cplx(-1.2, 0.1), cplx(0.0, -2.0)})
        CHECK(std::abs(chi(z, sd)) < 1e-12);
}

TEST_CASE("chi decays like a Cauchy integral at infinity") {
    auto sd = make_scalar_rhp(synthetic_reflection(0.5, 0.3), 0.7);
    CHECK(std::abs(chi(cplx(0.0, 1e6), sd)) < 1e-5);
}

TEST_CASE("chi obeys the |w| log|w| modulus of continuity at z0") {
    auto sd = make_scalar_rhp(synthetic_reflection(0.5, 0.3), 0.7);
    const double alpha = pi / 8.0;
    const cplx chi_end = -chi_at_minus_z0(sd);  // chi(z0) by odd symmetry

    // Lipschitz constant of f(s) = log[(1-|r|^2)/(1-|r(-z0)|^2)] on the cut.
    double lip = 0.0;
    for (int i = 0; i < 400; ++i) {
        const double s = -sd.z0 + 2.0 * sd.z0 * i / 400.0, h = 1e-5;
        lip = std::max(lip, std::abs(sd.reflection.log_one_minus_r2(s + h) -
                                     sd.reflection.log_one_minus_r2(s - h)) /
                                (2.0 * h));
    }
    for (double u : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        const cplx w = u * std::exp(cplx(0.0, alpha));
        const double lhs = std::abs(chi(cplx(sd.z0) + w, sd) - chi_end);
        const double bound = (lip / pi) * (2.0 / std::sin(alpha)) * u *
                             std::log(1.0 + 2.0 * sd.z0 / u);
        CHECK(lhs <= bound);
    }
}

TEST_CASE("delta of the zero reflection is one") {
    auto sd = make_scalar_rhp(zero_reflection(), 0.5);
    for (cplx z : {cplx(1.0, 1.0), cplx(-0.2, 0.5), cplx(3.0, -0.1)})
        CHECK(std::abs(delta(z, sd) - 1.0) < 1e-13);
}

TEST_CASE("delta symmetries for Schwartz-class reflection") {
    auto sd = make_scalar_rhp(synthetic_reflection(0.45, 0.2), 0.8);
    for (cplx z : {cplx(1.0, 1.0), cplx(0.3, 0.9), cplx(-1.4, -0.6), cplx(2.2, 0.4)}) {
        const cplx d = delta(z, sd);
        CHECK(std::abs(d * std::conj(delta(std::conj(z), sd)) - 1.0) < 1e-9);
        CHECK(std::abs(d - std::conj(delta(-std::conj(z), sd))) < 1e-9);
    }
}

TEST_CASE("delta agrees with the chi + branch-power decomposition") {
    auto sd = make_scalar_rhp(synthetic_reflection(0.5, 0.25), 0.7);
    const double alpha = pi / 6.0;
    for (double u : {0.5, 0.1, 0.01}) {
        const cplx z = cplx(sd.z0) + u * std::exp(cplx(0.0, alpha));
        CHECK(std::abs(delta(z, sd) - delta_via_chi(z, sd)) < 1e-8);
    }
}

TEST_CASE("delta is unimodular on the real axis outside the cut") {
    auto sd = make_scalar_rhp(synthetic_reflection(0.5, 0.3), 0.7);
    for (double s : {0.95, 1.4, -1.1, -3.0, 2.6}) {
        CHECK(std::abs(std::abs(delta(cplx(s, 1e-9), sd)) - 1.0) < 1e-8);
    }
}

TEST_CASE("boundary values satisfy the jump identities") {
    auto sd = make_scalar_rhp(synthetic_reflection(0.5, 0.3), 0.7);
    for (double s : {-0.6, -0.25, 0.0, 0.33, 0.65}) {
        const cplx dp = delta_boundary(s, Side::plus, sd);
        const cplx dm = delta_boundary(s, Side::minus, sd);
        const double m2 = 1.0 - std::norm(sd.reflection(s));
        CHECK(std::abs(std::abs(dp * dm) - 1.0) < 1e-8);
        CHECK(std::abs(dp / dm - m2) < 1e-6);
        CHECK(std::abs(std::abs(dp) - std::sqrt(m2)) < 1e-8);

        // agreement with the off-cut evaluator just above the cut
        CHECK(std::abs(delta(cplx(s, 1e-8), sd) - dp) < 1e-5);
    }
    CHECK_THROWS(delta_boundary(0.7, Side::plus, sd));

    auto sd0 = make_scalar_rhp(zero_reflection(), 0.5);
    CHECK(std::abs(delta_boundary(0.2, Side::plus, sd0) - 1.0) < 1e-12);
    CHECK(std::abs(delta_boundary(0.2, Side::minus, sd0) - 1.0) < 1e-12);
}

TEST_CASE("phi integral special cases and oracle") {
    // modulus constancy only holds to interpolation accuracy on the grid
    auto sdc = make_scalar_rhp(constant_modulus_reflection(0.6), 0.9);
    CHECK(std::abs(phi_integral(sdc)) < 1e-10);

    // |r(s)|^2 = rho (1 - s^2/z0^2) inside the cut; brute-force trapezoid
    // oracle with 10^6 panels.
    const double rho = 0.4, z0 = 0.8, zmax = 4.0;
    const std::size_t n = 1601;
    std::vector<double> grid(n);
    std::vector<cplx> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = -zmax + 2.0 * zmax * static_cast<double>(i) / static_cast<double>(n - 1);
        grid[i] = z;
        const double m2 = rho * std::max(0.0, 1.0 - z * z / (z0 * z0));
        vals[i] = std::sqrt(m2);
    }
    ReflectionFunction r(grid, vals);
    auto sd = make_scalar_rhp(r, z0);

    auto integrand = [&](double s) {
        const double f = sd.reflection.log_one_minus_r2(s);  // reference value is 0 at +-z0
        const double d = s + z0;
        if (std::abs(d) < 1e-12) return 0.0;
        return f / d;
    };
    const std::size_t panels = 1000000;
    double acc = 0.0;
    const double hstep = 2.0 * z0 / static_cast<double>(panels);
    for (std::size_t i = 0; i <= panels; ++i) {
        const double s = -z0 + hstep * static_cast<double>(i);
        const double wgt = (i == 0 || i == panels) ? 0.5 : 1.0;
        acc += wgt * integrand(s);
    }
    const double oracle = acc * hstep / pi;
    CHECK(phi_integral(sd) == Catch::Approx(oracle).margin(1e-8));
}

TEST_CASE("phi integral self-converges under node doubling") {
    auto sd = make_scalar_rhp(synthetic_reflection(0.5, 0.3), 0.7);
    const double gref = sd.reflection.log_one_minus_r2(-sd.z0);
    auto f = [&](double s) {
        const double d = s + sd.z0;
        if (std::abs(d) < 1e-9) return 0.0;
        return (sd.reflection.log_one_minus_r2(s) - gref) / d;
    };
    const double coarse = quad::graded(f, -sd.z0, sd.z0, true, true, 16, 40, 16) / pi;
    const double fine = quad::graded(f, -sd.z0, sd.z0, true, true, 32, 40, 32) / pi;
    CHECK(std::abs(coarse - fine) < 1e-9);
}

TEST_CASE("asymmetric reflection data is rejected") {
    const std::size_t n = 401;
    std::vector<double> grid(n);
    std::vector<cplx> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = -4.0 + 8.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        grid[i] = z;
        vals[i] = 0.5 * std::exp(-(z - 0.4) * (z - 0.4));  // modulus not even
    }
    ReflectionFunction r(grid, vals);
    CHECK_THROWS(nu(r, 0.7));
}
