#include "quadsemi/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>

namespace quadsemi {

CMat symmetrize(const CMat& a) { return (a + a.transpose()) / 2.0; }
RMat symmetrize(const RMat& a) { return (a + a.transpose()) / 2.0; }
CMat hermitian_part(const CMat& a) { return (a + a.adjoint()) / 2.0; }

double norm2(const CMat& a) {
    if (a.size() == 0) return 0.0;
    if (std::min(a.rows(), a.cols()) > 32) {
        const CMat g = a.cols() <= a.rows() ? CMat(a.adjoint() * a) : CMat(a * a.adjoint());
        Eigen::SelfAdjointEigenSolver<CMat> es(g, Eigen::EigenvaluesOnly);
        return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    }
    Eigen::JacobiSVD<CMat> svd(a);
    return svd.singularValues()(0);
}

double norm2(const RMat& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<RMat> svd(a);
    return svd.singularValues()(0);
}

namespace {

double norm1(const CMat& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

template <std::size_t N>
void pade_low(const CMat& a, const std::array<double, N>& b, CMat& u, CMat& v) {
    const auto n = a.rows();
    const CMat id = CMat::Identity(n, n);
    const CMat a2 = a * a;
    CMat power = id;
    CMat uu = CMat::Zero(n, n);
    CMat vv = CMat::Zero(n, n);
    for (std::size_t k = 0; k + 1 < N; k += 2) {
        vv += b[k] * power;
        uu += b[k + 1] * power;
        power = power * a2;
    }
    u = a * uu;
    v = vv;
}

void pade13(const CMat& a, CMat& u, CMat& v) {
    static constexpr std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    const auto n = a.rows();
    const CMat id = CMat::Identity(n, n);
    const CMat a2 = a * a;
    const CMat a4 = a2 * a2;
    const CMat a6 = a4 * a2;
    const CMat inner_u = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
    u = a * (inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

}  // namespace

CMat expm(const CMat& a) {
    const auto n = a.rows();
    if (n == 0) return a;
    const double l1 = norm1(a);
    CMat u, v;
    if (l1 < 1.495585217958292e-2) {
        pade_low<4>(a, {120.0, 60.0, 12.0, 1.0}, u, v);
    } else if (l1 < 2.539398330063230e-1) {
        pade_low<6>(a, {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0}, u, v);
    } else if (l1 < 9.504178996162932e-1) {
        pade_low<8>(a, {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0},
                    u, v);
    } else if (l1 < 2.097847961257068) {
        pade_low<10>(a,
                     {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                      2162160.0, 110880.0, 3960.0, 90.0, 1.0},
                     u, v);
    } else {
        const double theta13 = 5.371920351148152;
        int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(l1 / theta13))));
        const CMat scaled = a / std::ldexp(1.0, squarings);
        pade13(scaled, u, v);
        CMat result = (v - u).partialPivLu().solve(v + u);
        for (int k = 0; k < squarings; ++k) result = result * result;
        return result;
    }
    return (v - u).partialPivLu().solve(v + u);
}

CMat expm_minus_identity(const CMat& a) {
    const auto n = a.rows();
    if (norm1(a) >= 0.5) return expm(a) - CMat::Identity(n, n);
    CMat term = a;
    CMat sum = a;
    for (int k = 2; k < 40; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
        if (norm1(term) <= 1e-17 * norm1(sum)) break;
    }
    return sum;
}

RMat real_representation(const CMat& a) {
    const auto n = a.rows();
    const auto m = a.cols();
    RMat r(2 * n, 2 * m);
    r.topLeftCorner(n, m) = a.real();
    r.topRightCorner(n, m) = -a.imag();
    r.bottomLeftCorner(n, m) = a.imag();
    r.bottomRightCorner(n, m) = a.real();
    return r;
}

CMat complexification(int n) {
    CMat l = CMat::Zero(n, 2 * n);
    l.leftCols(n) = CMat::Identity(n, n);
    l.rightCols(n) = I_unit * CMat::Identity(n, n);
    return l;
}

SchurForm complex_schur(const CMat& a) {
    Eigen::ComplexSchur<CMat> cs(a, true);
    return {cs.matrixT(), cs.matrixU()};
}

namespace {

// Swap diagonal entries k and k+1 of the upper triangular factor.
void swap_adjacent(SchurForm& s, Eigen::Index k) {
    const cplx t11 = s.T(k, k);
    const cplx t22 = s.T(k + 1, k + 1);
    const cplx t12 = s.T(k, k + 1);
    Eigen::Vector2cd x(t12, t22 - t11);
    const double len = x.norm();
    if (len == 0.0) return;
    x /= len;
    Eigen::Matrix2cd g;
    g << x(0), -std::conj(x(1)), x(1), std::conj(x(0));
    s.T.middleRows(k, 2) = g.adjoint() * s.T.middleRows(k, 2);
    s.T.middleCols(k, 2) = s.T.middleCols(k, 2) * g;
    s.U.middleCols(k, 2) = s.U.middleCols(k, 2) * g;
    s.T(k + 1, k) = 0.0;
}

}  // namespace

int reorder_schur(SchurForm& schur, const std::function<bool(cplx)>& select) {
    const auto n = schur.T.rows();
    int placed = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (!select(schur.T(j, j))) continue;
        for (Eigen::Index k = j - 1; k >= placed; --k) swap_adjacent(schur, k);
        ++placed;
    }
    return placed;
}

RMat null_space(const RMat& a, double rel_tol) {
    const auto cols = a.cols();
    if (a.rows() == 0) return RMat::Identity(cols, cols);
    Eigen::JacobiSVD<RMat> svd(a, Eigen::ComputeFullV);
    const RVec& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    if (smax > 0.0) {
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) > rel_tol * smax) ++rank;
        }
    }
    return svd.matrixV().rightCols(cols - rank);
}

cplx log_det_principal(const CMat& a) {
    Eigen::ComplexEigenSolver<CMat> es(a, false);
    cplx sum = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) sum += std::log(es.eigenvalues()(i));
    return sum;
}

namespace {

cplx det_along(const CMat& a, double s) {
    const auto n = a.rows();
    CMat as = (1.0 - s) * CMat::Identity(n, n) + s * a;
    return as.partialPivLu().determinant();
}

cplx continue_log(const CMat& a, double s0, double s1, cplx d0, int depth) {
    const cplx d1 = det_along(a, s1);
    const cplx ratio = d1 / d0;
    if (std::abs(std::arg(ratio)) > 0.5 && depth < 40) {
        const double mid = 0.5 * (s0 + s1);
        const cplx dm = det_along(a, mid);
        return continue_log(a, s0, mid, d0, depth + 1) + continue_log(a, mid, s1, dm, depth + 1);
    }
    return std::log(ratio);
}

}  // namespace

cplx log_det_continued(const CMat& a, int steps) {
    cplx acc = 0.0;
    cplx previous = 1.0;
    for (int k = 1; k <= steps; ++k) {
        const double s0 = static_cast<double>(k - 1) / steps;
        const double s1 = static_cast<double>(k) / steps;
        acc += continue_log(a, s0, s1, previous, 0);
        previous = det_along(a, s1);
    }
    return acc;
}

double min_eigenvalue(const RMat& a) {
    Eigen::SelfAdjointEigenSolver<RMat> es(symmetrize(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double max_eigenvalue(const RMat& a) {
    Eigen::SelfAdjointEigenSolver<RMat> es(symmetrize(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(a.rows() - 1);
}

}  // namespace quadsemi
