#include "quadsemi/symbol.hpp"

#include "quadsemi/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace quadsemi {

cplx QuadraticSymbol::operator()(const CVec& x) const { return polarized(x, x); }

cplx QuadraticSymbol::polarized(const CVec& x, const CVec& y) const {
    return (x.transpose() * q_ * y)(0, 0);
}

QuadraticSymbol make_symbol(int n, const CMat& raw, const Tolerances& tol) {
    if (n <= 0 || raw.rows() != 2 * n || raw.cols() != 2 * n) {
        std::ostringstream os;
        os << "expected a " << 2 * n << "x" << 2 * n << " coefficient matrix, got " << raw.rows()
           << "x" << raw.cols();
        throw Error(ErrorCode::DimensionMismatch, os.str());
    }
    QuadraticSymbol sym;
    sym.n_ = n;
    sym.q_ = symmetrize(raw);
    sym.asymmetric_ = (raw - raw.transpose()).cwiseAbs().maxCoeff() > 0.0;

    const RMat re = sym.q_.real();
    sym.re_min_eig_ = min_eigenvalue(re);
    const double scale = norm2(re);
    if (sym.re_min_eig_ < -tol.psd * scale) {
        std::ostringstream os;
        os << "Re Q has eigenvalue " << sym.re_min_eig_ << " < 0";
        throw Error(ErrorCode::ReNotPSD, os.str());
    }
    return sym;
}

SymplecticStructure::SymplecticStructure(int dim) : n(dim), J(RMat::Zero(2 * dim, 2 * dim)) {
    J.topRightCorner(dim, dim) = RMat::Identity(dim, dim);
    J.bottomLeftCorner(dim, dim) = -RMat::Identity(dim, dim);
}

cplx SymplecticStructure::sigma(const CVec& x, const CVec& y) const {
    return (x.tail(n).transpose() * y.head(n))(0, 0) - (x.head(n).transpose() * y.tail(n))(0, 0);
}

CMat hamilton_matrix(const QuadraticSymbol& sym) {
    const SymplecticStructure s(sym.dim());
    return s.J.cast<cplx>() * sym.matrix();
}

double hamilton_identity_residual(const QuadraticSymbol& sym, const CMat& f, int probes,
                                  std::uint64_t seed) {
    const SymplecticStructure s(sym.dim());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    const auto dim = 2 * sym.dim();
    auto draw = [&] {
        CVec v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx(gauss(rng), gauss(rng));
        return v;
    };
    const double scale = std::max(1.0, norm2(sym.matrix()));
    double worst = 0.0;
    for (int k = 0; k < probes; ++k) {
        const CVec x = draw();
        const CVec y = draw();
        const double err = std::abs(s.sigma(x, f * y) - sym.polarized(x, y));
        worst = std::max(worst, err / (scale * x.norm() * y.norm()));
    }
    return worst;
}

namespace {

struct SphereProblem {
    RMat re;
    RMat im;

    Eigen::Vector2d residual(const RVec& x) const {
        return {x.dot(re * x), x.dot(im * x)};
    }
};

// Gauss-Newton on the residual (Re q, Im q) restricted to the unit sphere.
RVec polish(const SphereProblem& p, RVec x) {
    x.normalize();
    const auto dim = x.size();
    double value = p.residual(x).norm();
    for (int iter = 0; iter < 200 && value > 0.0; ++iter) {
        const Eigen::Vector2d r = p.residual(x);
        RMat jac(2, dim);
        jac.row(0) = 2.0 * (p.re * x).transpose();
        jac.row(1) = 2.0 * (p.im * x).transpose();
        const RMat proj = RMat::Identity(dim, dim) - x * x.transpose();
        const RMat jt = jac * proj;
        RVec step = -jt.completeOrthogonalDecomposition().solve(r);
        step = proj * step;
        const RVec grad = proj * (jac.transpose() * r);

        bool improved = false;
        for (const RVec& dir : {step, RVec(-grad)}) {
            double scale = 1.0;
            for (int ls = 0; ls < 40; ++ls) {
                RVec trial = (x + scale * dir).normalized();
                const double v = p.residual(trial).norm();
                if (v < value) {
                    x = trial;
                    value = v;
                    improved = true;
                    break;
                }
                scale *= 0.5;
            }
            if (improved) break;
        }
        if (!improved) break;
    }
    return x;
}

}  // namespace

EllipticityReport ellipticity(const QuadraticSymbol& sym, const Tolerances& tol,
                              std::uint64_t seed) {
    const SphereProblem prob{symmetrize(RMat(sym.matrix().real())),
                             symmetrize(RMat(sym.matrix().imag()))};
    const auto dim = prob.re.rows();
    std::vector<RVec> starts;
    double certified = 0.0;
    constexpr int angles = 64;
    for (int k = 0; k < angles; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / angles;
        const RMat comb = std::cos(theta) * prob.re + std::sin(theta) * prob.im;
        Eigen::SelfAdjointEigenSolver<RMat> es(comb);
        certified = std::max(certified, es.eigenvalues()(0));
        starts.push_back(es.eigenvectors().col(0));
        starts.push_back(es.eigenvectors().col(dim - 1));
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (int k = 0; k < 32; ++k) {
        RVec v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) v(i) = gauss(rng);
        starts.push_back(v);
    }

    EllipticityReport rep;
    rep.min_abs_q = std::numeric_limits<double>::infinity();
    for (const RVec& s : starts) {
        const RVec x = polish(prob, s);
        const double v = prob.residual(x).norm();
        if (v < rep.min_abs_q) {
            rep.min_abs_q = v;
            rep.argmin = x;
        }
    }
    rep.certified_lower = certified;
    const double scale = std::max(norm2(sym.matrix()), 1e-300);
    rep.elliptic = rep.min_abs_q > tol.ellipticity * scale;
    return rep;
}

}  // namespace quadsemi
