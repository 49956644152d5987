#include "quadsemi/propagator.hpp"

#include "quadsemi/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace quadsemi {

WeightFamily::WeightFamily(CMat m, WeightPhi0 weight, FbiPhase phase)
    : m_(std::move(m)), weight_(std::move(weight)), phase_(std::move(phase)) {}

WeightFamily WeightFamily::from(const NormalForm& nf) { return {nf.M, nf.weight, nf.phase}; }

CMat WeightFamily::evolution(double t) const { return expm(CMat(I_unit * t * m_)); }

RMat WeightFamily::phi(double t) const {
    const RMat e = real_representation(evolution(t));
    return symmetrize(RMat(e.transpose() * weight_.real_form * e));
}

RMat WeightFamily::remainder(double t) const {
    // Phi0 - (I + D)^T Phi0 (I + D) with D = e^{itM} - I.
    const RMat d = real_representation(expm_minus_identity(CMat(I_unit * t * m_)));
    const RMat& w = weight_.real_form;
    return symmetrize(RMat(-(d.transpose() * w + w * d + d.transpose() * w * d)));
}

cplx WeightFamily::psi(double t, const CVec& z, const CVec& theta) const {
    return weight_.polarization(evolution(t) * z, theta);
}

CVec WeightFamily::psi_dz(double t, const CVec& z, const CVec& theta) const {
    const CMat e = evolution(t);
    return e.transpose() * weight_.polarization_dz(e * z, theta);
}

cplx WeightFamily::amplitude(double t) const {
    return weight_.c_phi0 * std::exp(0.5 * I_unit * m_.trace() * t);
}

double alpha(const WeightFamily& tf, double t, const Tolerances& tol) {
    if (t == 0.0) return 0.0;
    const double a = min_eigenvalue(tf.remainder(t));
    if (a < -tol.alpha_floor) {
        std::ostringstream os;
        os << "alpha(" << t << ") = " << a;
        throw Error(ErrorCode::NegativeAlpha, os.str());
    }
    return a;
}

double alpha_limit_time(const WeightFamily& tf, double accuracy) {
    // In the norm |P z| with P^T P = Phi0 the flow e^{itM} is a contraction
    // semigroup, so the bound below is non-increasing in t.
    const RMat& w = tf.weight().real_form;
    Eigen::SelfAdjointEigenSolver<RMat> es(w);
    const RMat p = es.operatorSqrt();
    const RMat p_inv = es.operatorInverseSqrt();
    const double top = es.eigenvalues().maxCoeff();
    auto bound = [&](double t) {
        const RMat e = real_representation(tf.evolution(t));
        const double s = norm2(RMat(p * e * p_inv));
        return top * s * s;
    };
    double hi = 1.0;
    while (bound(hi) > accuracy) {
        hi *= 2.0;
        if (hi > 1e8) throw Error(ErrorCode::NonPositiveGamma, "Phi_t does not decay");
    }
    double lo = 0.0;
    for (int k = 0; k < 60 && hi - lo > 1e-6 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (bound(mid) > accuracy ? lo : hi) = mid;
    }
    return hi;
}

AlphaCurve alpha_curve(const WeightFamily& tf, const std::vector<double>& grid,
                       const Tolerances& tol) {
    AlphaCurve c;
    c.t = grid;
    c.alpha.reserve(grid.size());
    for (double t : grid) c.alpha.push_back(alpha(tf, t, tol));
    c.alpha_inf = min_eigenvalue(tf.weight().real_form);
    c.t_inf = alpha_limit_time(tf);
    return c;
}

std::vector<double> default_time_grid() {
    std::vector<double> g;
    for (int k = 0; k < 16; ++k) g.push_back(std::pow(10.0, -4.0 + 3.0 * k / 16.0));
    for (int k = 1; k <= 100; ++k) g.push_back(0.1 * k);
    return g;
}

EstimateConstants fundamental_estimate_constants(const WeightPhi0& weight) {
    Eigen::SelfAdjointEigenSolver<CMat> es(weight.levi, Eigen::EigenvaluesOnly);
    return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

double fundamental_identity_residual(const WeightFamily& tf, double t, const CVec& z,
                                     const CVec& w) {
    const WeightPhi0& wt = tf.weight();
    const CVec ez = tf.evolution(t) * z;
    const CVec d = w - ez;
    const double lhs = 2.0 * tf.psi(t, z, w.conjugate()).real() - wt.value(ez) - wt.value(w);
    const double rhs = -(d.adjoint() * wt.levi * d)(0, 0).real();
    return std::abs(lhs - rhs);
}

double eikonal_residual(const WeightFamily& tf, double t, const CVec& z, const CVec& theta,
                        double h) {
    const cplx dt = (tf.psi(t + h, z, theta) - tf.psi(t - h, z, theta)) / (2.0 * h);
    const CVec zeta = (2.0 / I_unit) * tf.psi_dz(t, z, theta);
    const cplx reduced = (zeta.transpose() * tf.M() * z)(0, 0);
    return std::abs(2.0 * dt + reduced);
}

double transport_residual(const WeightFamily& tf, double t, double h) {
    const cplx a = tf.amplitude(t);
    const cplx da = (tf.amplitude(t + h) - tf.amplitude(t - h)) / (2.0 * h);
    return std::abs(da + tf.M().trace() / (2.0 * I_unit) * a) / std::abs(a);
}

namespace {

// ||exp(-k |y|^2)||_{L^s(R^n)}
double gaussian_lebesgue_norm(double k, double s, int n) {
    if (std::isinf(s)) return 1.0;
    return std::pow(std::numbers::pi / (s * k), n / (2.0 * s));
}

double dual_exponent(double p) {
    if (p == 1.0) return kInf;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

void check_pair(double p, double q) {
    if (!(p >= 1.0) || !(q >= 1.0)) {
        throw Error(ErrorCode::PQOrdering, "exponents must lie in [1, inf]");
    }
    if (p > q) {
        std::ostringstream os;
        os << "p = " << p << " exceeds q = " << q;
        throw Error(ErrorCode::PQOrdering, os.str());
    }
}

}  // namespace

double bound_constant(const WeightFamily& tf, double p, double q) {
    check_pair(p, q);
    const int n = tf.dim();
    // Kernel bound |K_t(x,y)| <= c_phi^2 |a(t)| \int\int e^{-R_t(z)} e^{-c|w - e^{itM}z|^2}
    //   g(x - r(z)) g(y - r(w)) dz dw with g = e^{-c_y |.|^2}. Each (z, w) slice is rank one
    // with L^p -> L^q norm ||g||_q ||g||_{p'}; the w integral is (pi / c)^n and the
    // z integral at most (pi / alpha)^n.
    const double c = fundamental_estimate_constants(tf.weight()).c;
    const double c_y = 0.5 * min_eigenvalue(symmetrize(RMat(tf.phase().yy.imag())));
    const double nn = static_cast<double>(n);
    const double cphi = tf.phase().c_phi;
    return cphi * cphi * tf.weight().c_phi0 * std::pow(std::numbers::pi / c, nn) *
           std::pow(std::numbers::pi, nn) * gaussian_lebesgue_norm(c_y, q, n) *
           gaussian_lebesgue_norm(c_y, dual_exponent(p), n);
}

BoundCurve upper_bound_curve(const WeightFamily& tf, double gamma, int k0, double p, double q,
                             const std::vector<double>& grid, double t_short, double eps,
                             const Tolerances& tol) {
    BoundCurve b;
    b.p = p;
    b.q = q;
    b.gamma = gamma;
    b.k0 = k0;
    b.n = tf.dim();
    b.constant = bound_constant(tf, p, q);
    b.eps = eps;
    b.t = grid;
    const double nn = static_cast<double>(b.n);
    const double power = 2.0 * k0 + 1.0;

    b.c_short = kInf;
    for (double t : grid) {
        const double a = alpha(tf, t, tol);
        b.alpha.push_back(a);
        b.envelope.push_back(b.constant * std::pow(a, -nn) * std::exp(-gamma * t));
        if (t > 0.0 && t <= t_short) b.c_short = std::min(b.c_short, a / std::pow(t, power));
    }
    if (std::isinf(b.c_short)) b.c_short = alpha(tf, t_short, tol) / std::pow(t_short, power);

    const double a_eps = alpha(tf, eps, tol);
    for (double t : grid) {
        b.large_t.push_back(t >= eps ? b.constant * std::pow(a_eps, -nn) * std::exp(-gamma * t)
                                     : std::nan(""));
        b.small_t.push_back(b.constant * std::pow(b.c_short * std::pow(t, power), -nn));
    }
    return b;
}

GaussianFunction pullback_form(const WeightFamily& tf, double t, const GaussianFunction& u) {
    const CMat e = tf.evolution(t);
    GaussianFunction out = u;
    out.side = Side::Bargmann;
    out.A = symmetrize(CMat(e.transpose() * u.A * e));
    out.b = e.transpose() * u.b;
    out.c = u.c + 0.5 * I_unit * tf.M().trace() * t;
    return out;
}

GaussianFunction bergman_form(const WeightFamily& tf, double t, const GaussianFunction& u) {
    // Integrate over X = (Re w, Im w) with w = L X and conj w = conj(L) X.
    const int n = tf.dim();
    const WeightPhi0& wt = tf.weight();
    const CMat e = tf.evolution(t);
    const CMat l = complexification(n);
    const CMat lb = l.conjugate();

    ParametricGaussian g;
    g.A = symmetrize(CMat(-2.0 * lb.transpose() * wt.zz.conjugate() * lb -
                          l.transpose() * u.A * l +
                          4.0 * wt.real_form.cast<cplx>()));
    g.P = 2.0 * lb.transpose() * wt.levi * e;
    g.p0 = l.transpose() * u.b;
    g.C = symmetrize(CMat(2.0 * e.transpose() * wt.zz * e));
    g.d = CVec::Zero(n);
    g.e = u.c + std::log(tf.amplitude(t));
    const GaussianExponent r = integrate_real(g);
    return GaussianFunction::bargmann(r.quad, r.lin, r.constant);
}

double gaussian_distance(const GaussianFunction& a, const GaussianFunction& b) {
    const double scale = std::max({1.0, a.A.norm(), a.b.norm()});
    double d = std::max((a.A - b.A).norm(), (a.b - b.b).norm());
    if (std::isinf(a.c.real()) && std::isinf(b.c.real()) && a.c.real() < 0 && b.c.real() < 0) {
        return d / scale;
    }
    // The log-amplitude only matters modulo 2 pi i.
    const cplx dc = a.c - b.c;
    const double im = std::remainder(dc.imag(), 2.0 * std::numbers::pi);
    d = std::max(d, std::abs(cplx(dc.real(), im)));
    return d / scale;
}

double weighted_norm_identity_residual(const WeightFamily& tf, double gamma, double t,
                                       const GaussianFunction& u) {
    const GaussianFunction v = pullback_form(tf, t, u);
    const double lhs = bargmann_norm(v, tf.phi(t));
    const double rhs = std::exp(gamma * t) * bargmann_norm(u, tf.weight().real_form);
    return std::abs(lhs / rhs - 1.0);
}

}  // namespace quadsemi
