#include "quadsemi/gaussian_function.hpp"

#include "quadsemi/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace quadsemi {

cplx GaussianFunction::log_value(const CVec& x) const {
    const cplx quad = (x.transpose() * A * x)(0, 0);
    const cplx lin = (b.transpose() * x)(0, 0);
    const double sign = side == Side::Real ? -0.5 : 0.5;
    return sign * quad + lin + c;
}

cplx GaussianFunction::operator()(const CVec& x) const { return std::exp(log_value(x)); }

GaussianFunction GaussianFunction::real(CMat a, CVec b, cplx c) {
    return {Side::Real, symmetrize(a), std::move(b), c};
}

GaussianFunction GaussianFunction::bargmann(CMat a, CVec b, cplx c) {
    return {Side::Bargmann, symmetrize(a), std::move(b), c};
}

GaussianFunction scaled(const GaussianFunction& g, cplx s) {
    GaussianFunction out = g;
    if (s == cplx(0.0)) {
        out.c = cplx(-std::numeric_limits<double>::infinity(), 0.0);
    } else {
        out.c += std::log(s);
    }
    return out;
}

GaussianExponent integrate_real(const ParametricGaussian& g) {
    const auto m = g.A.rows();
    const CMat a = symmetrize(g.A);
    if (!(min_eigenvalue(RMat(a.real())) > 0.0)) {
        throw Error(ErrorCode::IntegrabilityFailure,
                    "real part of the Gaussian exponent is not negative definite");
    }
    const auto lu = a.partialPivLu();
    const CMat a_inv_p = lu.solve(g.P);
    const CVec a_inv_p0 = lu.solve(g.p0);
    GaussianExponent out;
    out.quad = symmetrize(CMat(g.C + g.P.transpose() * a_inv_p));
    out.lin = g.d + g.P.transpose() * a_inv_p0;
    out.constant = g.e + 0.5 * (g.p0.transpose() * a_inv_p0)(0, 0) +
                   0.5 * static_cast<double>(m) * std::log(2.0 * std::numbers::pi) -
                   0.5 * log_det_principal(a);
    return out;
}

double bargmann_norm(const GaussianFunction& u, const RMat& weight) {
    const int n = u.dim();
    const CMat l = complexification(n);
    const RMat holo = symmetrize(CMat(l.transpose() * u.A * l)).real();
    ParametricGaussian g;
    g.A = (2.0 * (2.0 * weight - holo)).cast<cplx>();
    g.p0 = (2.0 * (l.transpose() * u.b).real()).cast<cplx>();
    g.P = CMat::Zero(2 * n, 0);
    g.C = CMat::Zero(0, 0);
    g.d = CVec::Zero(0);
    g.e = 2.0 * u.c.real();
    const GaussianExponent r = integrate_real(g);
    return std::exp(0.5 * r.constant.real());
}

}  // namespace quadsemi
