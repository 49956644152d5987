#include "quadsemi/oracle.hpp"

#include "quadsemi/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace quadsemi {

HermiteQuadrature gauss_hermite(int count) {
    RMat jac = RMat::Zero(count, count);
    for (int k = 1; k < count; ++k) {
        jac(k, k - 1) = jac(k - 1, k) = std::sqrt(0.5 * k);
    }
    Eigen::SelfAdjointEigenSolver<RMat> es(jac, Eigen::EigenvaluesOnly);
    HermiteQuadrature q;
    q.nodes = es.eigenvalues();
    const RMat h = hermite_functions(q.nodes, count);
    q.scaled_weights = h.rowwise().squaredNorm().cwiseInverse();
    return q;
}

RMat hermite_functions(const RVec& x, int modes) {
    RMat h(x.size(), modes);
    const double h0 = std::pow(std::numbers::pi, -0.25);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double xi = x(i);
        h(i, 0) = h0 * std::exp(-0.5 * xi * xi);
        if (modes > 1) h(i, 1) = std::sqrt(2.0) * xi * h(i, 0);
        for (int k = 1; k + 1 < modes; ++k) {
            h(i, k + 1) = std::sqrt(2.0 / (k + 1)) * xi * h(i, k) - std::sqrt(double(k) / (k + 1)) * h(i, k - 1);
        }
    }
    return h;
}

namespace {

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// One-axis matrices on `modes` functions, from a basis of modes + 2 so that
// products of two ladder expressions are exact after truncation.
struct AxisOperators {
    CMat x, d, xx, dd, sym_xd;  // sym_xd = x d + d x
};

AxisOperators axis_operators(int modes) {
    const int big = modes + 2;
    CMat a = CMat::Zero(big, big);
    for (int k = 1; k < big; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const CMat ad = a.adjoint();
    const CMat x = (a + ad) / std::sqrt(2.0);
    const CMat d = I_unit * (ad - a) / std::sqrt(2.0);
    auto top = [&](const CMat& m) { return CMat(m.topLeftCorner(modes, modes)); };
    return {top(x), top(d), top(x * x), top(d * d), top(x * d + d * x)};
}

// The tensor operator acting as `first` on axis 0 and `second` on axis 1;
// index k_0 + N k_1.
CMat on_axes(const CMat& first, const CMat& second) { return kron(second, first); }

}  // namespace

LadderOperators ladder_operators(int n, int modes) {
    const AxisOperators ax = axis_operators(modes);
    const CMat id = CMat::Identity(modes, modes);
    LadderOperators l;
    if (n == 1) {
        l.x.push_back(ax.x);
        l.d.push_back(ax.d);
    } else {
        l.x = {on_axes(ax.x, id), on_axes(id, ax.x)};
        l.d = {on_axes(ax.d, id), on_axes(id, ax.d)};
    }
    return l;
}

HermiteDiscretization discretize(const QuadraticSymbol& sym, int modes) {
    const int n = sym.dim();
    if (n < 1 || n > 2 || modes < 16) {
        std::ostringstream os;
        os << "the oracle supports n <= 2 and at least 16 modes (n = " << n << ", N = " << modes << ")";
        throw Error(ErrorCode::UnsupportedDimension, os.str());
    }
    const CMat qxx = sym.block_xx();
    const CMat qxxi = sym.block_xxi();
    const CMat qxixi = sym.block_xixi();
    const AxisOperators ax = axis_operators(modes);

    HermiteDiscretization disc;
    disc.n = n;
    disc.N = modes;
    if (n == 1) {
        disc.A_mat = qxx(0, 0) * ax.xx + qxxi(0, 0) * ax.sym_xd + qxixi(0, 0) * ax.dd;
    } else {
        const CMat id = CMat::Identity(modes, modes);
        // Weyl symbol x_j xi_k quantizes to (x_j D_k + D_k x_j) / 2, which is
        // x_j D_k when j != k.
        auto diag = [&](int j, const CMat& m) { return j == 0 ? on_axes(m, id) : on_axes(id, m); };
        disc.A_mat = CMat::Zero(modes * modes, modes * modes);
        for (int j = 0; j < 2; ++j) {
            disc.A_mat += qxx(j, j) * diag(j, ax.xx) + qxxi(j, j) * diag(j, ax.sym_xd) +
                          qxixi(j, j) * diag(j, ax.dd);
        }
        disc.A_mat += (qxx(0, 1) + qxx(1, 0)) * on_axes(ax.x, ax.x);
        disc.A_mat += (qxixi(0, 1) + qxixi(1, 0)) * on_axes(ax.d, ax.d);
        disc.A_mat += 2.0 * qxxi(0, 1) * on_axes(ax.x, ax.d);
        disc.A_mat += 2.0 * qxxi(1, 0) * on_axes(ax.d, ax.x);
    }

    const HermiteQuadrature gq = gauss_hermite(modes);
    const RMat h = hermite_functions(gq.nodes, modes);
    if (n == 1) {
        disc.nodes = gq.nodes.transpose();
        disc.weights = gq.scaled_weights;
        disc.collocation = h;
    } else {
        const auto m = static_cast<Eigen::Index>(modes) * modes;
        disc.nodes.resize(2, m);
        disc.weights.resize(m);
        for (int i1 = 0; i1 < modes; ++i1)
            for (int i0 = 0; i0 < modes; ++i0) {
                const int i = i0 + modes * i1;
                disc.nodes(0, i) = gq.nodes(i0);
                disc.nodes(1, i) = gq.nodes(i1);
                disc.weights(i) = gq.scaled_weights(i0) * gq.scaled_weights(i1);
            }
        disc.collocation = on_axes(h.cast<cplx>(), h.cast<cplx>()).real();
    }
    return disc;
}

CMat KernelMatrix::folded() const { return values * weights.cast<cplx>().asDiagonal(); }

namespace {

KernelMatrix kernel_from(const HermiteDiscretization& disc, double t, CMat coefficients) {
    if (!coefficients.allFinite()) {
        std::ostringstream os;
        os << "e^{-tA} is not finite at t = " << t;
        throw Error(ErrorCode::ExpFailure, os.str());
    }
    KernelMatrix k;
    k.t = t;
    k.coefficients = std::move(coefficients);
    const CMat h = disc.collocation.cast<cplx>();
    k.values = h * k.coefficients * h.transpose();
    k.weights = disc.weights;
    return k;
}

}  // namespace

KernelMatrix semigroup_matrix(const HermiteDiscretization& disc, double t) {
    return kernel_from(disc, t, expm(CMat(-t * disc.A_mat)));
}

std::vector<KernelMatrix> semigroup_matrices(const HermiteDiscretization& disc,
                                             const std::vector<double>& times) {
    std::vector<KernelMatrix> out;
    out.reserve(times.size());
    CMat current;
    double last = 0.0;
    double cached_step = -1.0;
    CMat cached;
    for (double t : times) {
        if (out.empty() || t < last) {
            current = expm(CMat(-t * disc.A_mat));
        } else {
            const double step = t - last;
            if (std::abs(step - cached_step) > 1e-12 * std::max(1.0, step)) {
                cached = expm(CMat(-step * disc.A_mat));
                cached_step = step;
            }
            current = cached * current;
        }
        last = t;
        out.push_back(kernel_from(disc, t, current));
    }
    return out;
}

bool is_corner(double p, double q) { return p == 1.0 || std::isinf(q) || (p == 2.0 && q == 2.0); }

namespace {

// Weighted discrete L^s norm of a vector of magnitudes.
double weighted_norm(const RVec& mag, const RVec& w, double s) {
    if (std::isinf(s)) return mag.maxCoeff();
    return std::pow((w.array() * mag.array().pow(s)).sum(), 1.0 / s);
}

}  // namespace

double corner_norm(const KernelMatrix& k, double p, double q) {
    if (!is_corner(p, q)) {
        std::ostringstream os;
        os << "(" << p << ", " << q << ") is not a computable corner";
        throw Error(ErrorCode::UnsupportedPair, os.str());
    }
    if (p == 2.0 && q == 2.0) return norm2(k.coefficients);
    const RMat mag = k.values.cwiseAbs();
    double best = 0.0;
    if (p == 1.0) {
        for (Eigen::Index j = 0; j < mag.cols(); ++j) {
            best = std::max(best, weighted_norm(mag.col(j), k.weights, q));
        }
        return best;
    }
    const double dual = std::isinf(p) ? 1.0 : p / (p - 1.0);
    for (Eigen::Index i = 0; i < mag.rows(); ++i) {
        best = std::max(best, weighted_norm(RVec(mag.row(i).transpose()), k.weights, dual));
    }
    return best;
}

double decay_fit(const std::vector<double>& t, const std::vector<double>& values, double lo,
                 double hi) {
    double st = 0, sy = 0, stt = 0, sty = 0;
    int m = 0;
    for (std::size_t i = 0; i < t.size() && i < values.size(); ++i) {
        if (t[i] < lo || t[i] > hi) continue;
        const double y = std::log(values[i]);
        st += t[i];
        sy += y;
        stt += t[i] * t[i];
        sty += t[i] * y;
        ++m;
    }
    if (m < 5) {
        std::ostringstream os;
        os << "decay fit needs at least 5 samples in [" << lo << ", " << hi << "], got " << m;
        throw Error(ErrorCode::InsufficientSamples, os.str());
    }
    const double denom = m * stt - st * st;
    return (m * sty - st * sy) / denom;
}

CVec gaussian_on_nodes(const HermiteDiscretization& disc, const GaussianFunction& g) {
    const auto m = disc.nodes.cols();
    CVec v(m);
    for (Eigen::Index i = 0; i < m; ++i) v(i) = g(disc.nodes.col(i).cast<cplx>());
    return v;
}

CVec project_gaussian(const HermiteDiscretization& disc, const GaussianFunction& g) {
    const CVec v = gaussian_on_nodes(disc, g);
    return disc.collocation.transpose().cast<cplx>() * (disc.weights.cast<cplx>().asDiagonal() * v);
}

double discrete_l2(const HermiteDiscretization& disc, const CVec& values) {
    return std::sqrt((disc.weights.array() * values.array().abs2()).sum());
}

}  // namespace quadsemi
