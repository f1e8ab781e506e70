// Scalar Riemann-Hilbert factor delta(z) = exp Cauchy[log(1-|r|^2)] over the
// cut (-z0, z0), the regularized remainder chi(z), the exponent
// nu = -(2 pi)^{-1} log(1 - |r(-z0)|^2), and the principal-value boundary
// evaluators on the cut. All quadratures are composite Gauss-Legendre with
// geometric grading toward the panel ends that sit close to a singularity
// of the kernel.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "mkdv5/numerics.hpp"

namespace mkdv5::scalar_rhp {

// ---------------------------------------------------------------------------
// Reflection coefficient as a grid interpolant with sup bound < 1.
// ---------------------------------------------------------------------------
class ReflectionFunction {
  public:
    ReflectionFunction() = default;
    ReflectionFunction(const std::vector<double>& zgrid, const std::vector<cplx>& values) {
        if (zgrid.size() != values.size() || zgrid.size() < 4)
            throw std::invalid_argument("ReflectionFunction: bad grid");
        const double dz = zgrid[1] - zgrid[0];
        for (std::size_t i = 1; i < zgrid.size(); ++i)
            if (std::abs(zgrid[i] - zgrid[i - 1] - dz) > 1e-9 * (1.0 + std::abs(dz)))
                throw std::invalid_argument("ReflectionFunction: grid must be uniform");
        double sup = 0.0;
        for (auto v : values) sup = std::max(sup, std::abs(v));
        if (sup >= 1.0)
            throw std::invalid_argument("ReflectionFunction: |r| must stay below 1");
        sup_ = sup;
        interp_ = UniformCubic<cplx>(zgrid.front(), dz, values);
    }

    cplx operator()(double z) const { return interp_(z); }
    double sup_bound() const { return sup_; }
    double zmin() const { return interp_.xmin(); }
    double zmax() const { return interp_.xmax(); }

    // log(1 - |r(s)|^2), clamped to the grid range (zero outside).
    double log_one_minus_r2(double s) const {
        if (s < zmin() || s > zmax()) return 0.0;
        return std::log(1.0 - std::norm(interp_(s)));
    }

  private:
    UniformCubic<cplx> interp_;
    double sup_ = 0.0;
};

struct ScalarRHPData {
    double z0 = 0.0;
    double nu = 0.0;
    ReflectionFunction reflection;
};

inline double nu(const ReflectionFunction& r, double z0) {
    if (!(z0 > 0.0)) throw std::domain_error("nu: z0 must be positive");
    const double m_minus = std::abs(r(-z0)), m_plus = std::abs(r(z0));
    if (m_minus >= 1.0) throw std::domain_error("nu: |r(-z0)| >= 1");
    // The construction assumes the Schwartz symmetry r(z) = conj(r(-z)); with
    // unequal endpoint moduli the exponent is ill-defined.
    if (std::abs(m_minus - m_plus) > 1e-6 * (1.0 + m_minus))
        throw std::invalid_argument("nu: reflection without |r(z0)| = |r(-z0)| symmetry");
    return -std::log(1.0 - m_minus * m_minus) / (2.0 * pi);
}

inline ScalarRHPData make_scalar_rhp(ReflectionFunction r, double z0) {
    ScalarRHPData sd;
    sd.z0 = z0;
    sd.nu = nu(r, z0);
    sd.reflection = std::move(r);
    return sd;
}

// ---------------------------------------------------------------------------
// Cauchy integral over the cut with an a-priori panel split keyed to the
// projection of z onto the cut, so evaluation points close to the cut are
// resolved by the geometric grading.
// ---------------------------------------------------------------------------
namespace detail {

template <typename Density>
cplx cauchy_over_cut(Density&& dens, double z0, cplx z, int levels = 48, int order = 16) {
    auto f = [&](double s) { return dens(s) / (cplx(s) - z); };
    const double xr = z.real();
    if (xr > -z0 + 1e-13 && xr < z0 - 1e-13 && std::abs(z.imag()) < 1.0) {
        return quad::graded(f, -z0, xr, true, true, 8, levels, order) +
               quad::graded(f, xr, z0, true, true, 8, levels, order);
    }
    return quad::graded(f, -z0, z0, true, true, 16, levels, order);
}

}  // namespace detail

inline double dist_to_cut(cplx z, double z0) {
    const double x = z.real(), y = std::abs(z.imag());
    if (x < -z0) return std::abs(z - cplx(-z0));
    if (x > z0) return std::abs(z - cplx(z0));
    return y;
}

// chi(z) = (2 pi i)^{-1} Int_{-z0}^{z0} [log(1-|r|^2) - log(1-|r(-z0)|^2)] / (s - z) ds
inline cplx chi(cplx z, const ScalarRHPData& sd) {
    if (dist_to_cut(z, sd.z0) < 1e-12)
        throw std::domain_error("chi: z too close to the cut; use the boundary routine");
    const double gref = sd.reflection.log_one_minus_r2(-sd.z0);
    auto dens = [&](double s) { return cplx(sd.reflection.log_one_minus_r2(s) - gref); };
    return detail::cauchy_over_cut(dens, sd.z0, z) / cplx(0.0, 2.0 * pi);
}

// (1/pi) Int_{-z0}^{z0} log[(1-|r(s)|^2)/(1-|r(-z0)|^2)] ds / (s + z0)
inline double phi_integral(const ScalarRHPData& sd) {
    const double gref = sd.reflection.log_one_minus_r2(-sd.z0);
    auto f = [&](double s) {
        const double num = sd.reflection.log_one_minus_r2(s) - gref;
        const double den = s + sd.z0;
        // integrand extends continuously with value (d/ds)log(1-|r|^2) at -z0
        if (std::abs(den) < 1e-9) {
            const double h = 1e-6 * sd.z0;
            return (sd.reflection.log_one_minus_r2(-sd.z0 + h) - gref) / h;
        }
        return num / den;
    };
    return quad::graded(f, -sd.z0, sd.z0, true, true, 16, 40, 16) / pi;
}

// Endpoint values of chi: purely imaginary for symmetric-|r| data,
// chi(-z0) = -i * phi_integral / 2 and chi(z0) = -chi(-z0).
inline cplx chi_at_minus_z0(const ScalarRHPData& sd) {
    return cplx(0.0, -0.5 * phi_integral(sd));
}

// delta(z) from the defining Cauchy integral of log(1-|r|^2) over the cut.
inline cplx delta(cplx z, const ScalarRHPData& sd) {
    if (dist_to_cut(z, sd.z0) < 1e-12)
        throw std::domain_error("delta: z too close to the cut; use delta_boundary");
    auto dens = [&](double s) { return cplx(sd.reflection.log_one_minus_r2(s)); };
    const cplx I = detail::cauchy_over_cut(dens, sd.z0, z) / cplx(0.0, 2.0 * pi);
    return std::exp(I);
}

// Second computation path: delta = exp(chi(z) + i nu [log(z-z0) - log(z+z0)])
// with the principal branches |arg(z +- z0)| < pi.
inline cplx delta_via_chi(cplx z, const ScalarRHPData& sd) {
    const cplx branch = std::log(z - sd.z0) - std::log(z + sd.z0);
    return std::exp(chi(z, sd) + cplx(0.0, sd.nu) * branch);
}

enum class Side { plus, minus };

// Boundary values on the open cut: modulus from the jump identity,
// phase from the principal-value integral with singularity subtraction.
inline cplx delta_boundary(double s, Side side, const ScalarRHPData& sd) {
    const double z0 = sd.z0;
    if (!(s > -z0 && s < z0))
        throw std::domain_error("delta_boundary: s must lie strictly inside the cut");
    if (std::min(z0 - s, s + z0) < 1e-10)
        throw std::domain_error("delta_boundary: endpoint singularity");
    const double gs = sd.reflection.log_one_minus_r2(s);
    auto sub = [&](double y) {
        const double d = y - s;
        if (std::abs(d) < 1e-9) {
            const double h = 1e-6;
            return (sd.reflection.log_one_minus_r2(s + h) -
                    sd.reflection.log_one_minus_r2(s - h)) /
                   (2.0 * h);
        }
        return (sd.reflection.log_one_minus_r2(y) - gs) / d;
    };
    const double pv = quad::graded(sub, -z0, s, true, true, 12, 36, 16) +
                      quad::graded(sub, s, z0, true, true, 12, 36, 16) +
                      gs * std::log((z0 - s) / (z0 + s));
    const double sign = (side == Side::plus) ? 1.0 : -1.0;
    const cplx logd = 0.5 * sign * gs + pv / cplx(0.0, 2.0 * pi);
    return std::exp(logd);
}

// Phase correction from the full-line Szego-type factor: the imaginary part
// of (2 pi i)^{-1} p.v. Int_R log(1-|r(s)|^2)/(s - z0) ds, evaluated over the
// grid range (the density vanishes to truncation level outside).
inline double line_phase_correction(const ScalarRHPData& sd) {
    const double z0 = sd.z0;
    const double Z0 = sd.reflection.zmin(), Z1 = sd.reflection.zmax();
    if (!(z0 > Z0 && z0 < Z1))
        throw std::domain_error("line_phase_correction: z0 outside the reflection grid");
    const double gz0 = sd.reflection.log_one_minus_r2(z0);
    auto sub = [&](double y) {
        const double d = y - z0;
        if (std::abs(d) < 1e-9) {
            const double h = 1e-6;
            return (sd.reflection.log_one_minus_r2(z0 + h) -
                    sd.reflection.log_one_minus_r2(z0 - h)) /
                   (2.0 * h);
        }
        return (sd.reflection.log_one_minus_r2(y) - gz0) / d;
    };
    const double pv = quad::graded(sub, Z0, z0, true, true, 16, 36, 16) +
                      quad::graded(sub, z0, Z1, true, true, 16, 36, 16) +
                      gz0 * std::log((Z1 - z0) / (z0 - Z0));
    // (2 pi i)^{-1} * (real pv)  ->  imaginary part is -pv / (2 pi)
    return -pv / (2.0 * pi);
}

}  // namespace mkdv5::scalar_rhp
