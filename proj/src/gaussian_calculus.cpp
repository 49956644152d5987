#include "quadsemi/gaussian_calculus.hpp"

#include "quadsemi/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace quadsemi {

cplx PolynomialGaussian::operator()(const CVec& x) const {
    const cplx poly = (x.transpose() * quad * x)(0, 0) + (lin.transpose() * x)(0, 0) + constant;
    return poly * base(x);
}

PolynomialGaussian weyl_apply(const QuadraticSymbol& sym, const GaussianFunction& g) {
    // With grad log g = -A x + b:
    //   x.Qxx x                 -> multiplication
    //   2 x.Qxxi D (symmetrized) -> 2 x.Qxxi D - i tr Qxxi
    //   D.Qxixi D               -> -(grad log g).Qxixi(grad log g) - tr(Qxixi Hess log g)
    const CMat qxx = sym.block_xx();
    const CMat qxxi = sym.block_xxi();
    const CMat qxixi = sym.block_xixi();
    const CMat& a = g.A;
    const CVec& b = g.b;

    PolynomialGaussian out;
    out.base = g;
    out.quad = symmetrize(CMat(qxx + 2.0 * I_unit * qxxi * a - a * qxixi * a));
    out.lin = -2.0 * I_unit * qxxi * b + 2.0 * a * qxixi * b;
    out.constant = -I_unit * qxxi.trace() + (qxixi * a).trace() -
                   (b.transpose() * qxixi * b)(0, 0);
    return out;
}

GroundState ground_state(const QuadraticSymbol& sym, const HamiltonStructure& h, cplx rho) {
    const int n = sym.dim();
    const CMat ex = h.lambda_plus.topRows(n);
    const CMat exi = h.lambda_plus.bottomRows(n);
    Eigen::JacobiSVD<CMat> svd(ex);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 1e-12 * sv(0))) {
        throw Error(ErrorCode::GraphFailure, "Lambda+ is not a graph over the x-space");
    }
    GroundState gs;
    gs.T_plus = symmetrize(CMat(exi * ex.inverse()));
    gs.u0 = GaussianFunction::real(CMat(-I_unit * gs.T_plus), CVec::Zero(n));
    if (!(min_eigenvalue(RMat(gs.u0.A.real())) > 0.0)) {
        throw Error(ErrorCode::GraphFailure, "ground state exponent has no positive real part");
    }
    const PolynomialGaussian w = weyl_apply(sym, gs.u0);
    gs.eigenvalue = w.constant;
    const double scale = std::max(1.0, sym.matrix().norm());
    gs.residual = std::max({w.quad.norm(), w.lin.norm(), std::abs(w.constant - rho)}) / scale;
    return gs;
}

double lp_norm(const GaussianFunction& g, double p) {
    const int n = g.dim();
    const RMat ra = symmetrize(RMat(g.A.real()));
    if (!(min_eigenvalue(ra) > 0.0)) {
        throw Error(ErrorCode::IntegrabilityFailure, "Re A is not positive definite");
    }
    const RVec rb = g.b.real();
    const double peak = 0.5 * rb.dot(ra.ldlt().solve(rb)) + g.c.real();
    if (std::isinf(p)) return std::exp(peak);
    const double log_norm = (n / (2.0 * p)) * std::log(2.0 * std::numbers::pi / p) -
                            std::log(ra.determinant()) / (2.0 * p) + peak;
    return std::exp(log_norm);
}

bool in_bargmann_space(const GaussianFunction& u, const WeightPhi0& weight) {
    const CMat l = complexification(weight.n);
    const RMat holo = symmetrize(CMat(l.transpose() * u.A * l)).real();
    return min_eigenvalue(RMat(weight.real_form - 0.5 * holo)) > 0.0;
}

GaussianFunction fbi_forward(const FbiPhase& phase, const GaussianFunction& g) {
    const int n = g.dim();
    ParametricGaussian pg;
    pg.A = symmetrize(CMat(g.A - I_unit * phase.yy));
    pg.P = I_unit * phase.zy.transpose();
    pg.p0 = g.b;
    pg.C = I_unit * phase.zz;
    pg.d = CVec::Zero(n);
    pg.e = g.c + std::log(phase.c_phi);
    const GaussianExponent r = integrate_real(pg);
    return GaussianFunction::bargmann(r.quad, r.lin, r.constant);
}

GaussianFunction fbi_adjoint(const FbiPhase& phase, const WeightPhi0& weight,
                             const GaussianFunction& v) {
    const int n = v.dim();
    const CMat l = complexification(n);
    const CMat lb = l.conjugate();
    ParametricGaussian pg;
    pg.A = symmetrize(CMat(I_unit * lb.transpose() * phase.zz.conjugate() * lb -
                           l.transpose() * v.A * l + 4.0 * weight.real_form.cast<cplx>()));
    pg.P = -I_unit * lb.transpose() * phase.zy.conjugate();
    pg.p0 = l.transpose() * v.b;
    pg.C = -I_unit * phase.yy.conjugate();
    pg.d = CVec::Zero(n);
    pg.e = v.c + std::log(phase.c_phi);
    const GaussianExponent r = integrate_real(pg);
    return GaussianFunction::real(CMat(-r.quad), r.lin, r.constant);
}

GaussianFunction propagate(const WeightFamily& tf, double t, const GaussianFunction& g) {
    const GaussianFunction u = fbi_forward(tf.phase(), g);
    return fbi_adjoint(tf.phase(), tf.weight(), pullback_form(tf, t, u));
}

std::vector<double> sharpness_lower_bound(const WeightFamily& tf, const GaussianFunction& u0,
                                          double p, double q, const std::vector<double>& grid) {
    const double base = lp_norm(u0, p);
    std::vector<double> out;
    out.reserve(grid.size());
    for (double t : grid) out.push_back(lp_norm(propagate(tf, t, u0), q) / base);
    return out;
}

}  // namespace quadsemi
