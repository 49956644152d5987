#include "quadsemi/normal_form.hpp"

#include "quadsemi/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace quadsemi {

namespace {

CMat sigma_gram(const CMat& left, const CMat& right) {
    const SymplecticStructure s(static_cast<int>(left.rows() / 2));
    return left.transpose() * s.form().cast<cplx>() * right;
}

double inverse_condition(const CMat& a) {
    Eigen::JacobiSVD<CMat> svd(a);
    const auto& sv = svd.singularValues();
    return sv(0) > 0.0 ? sv(sv.size() - 1) / sv(0) : 0.0;
}

}  // namespace

PairingBases pairing_bases(const HamiltonStructure& h, const std::optional<CMat>& mix_plus) {
    PairingBases b;
    b.E = h.lambda_plus;
    if (mix_plus) b.E = b.E * (*mix_plus);
    const CMat g0 = h.lambda_minus;
    const CMat pairing = sigma_gram(g0, b.E);  // sigma(g0_j, e_k)
    if (inverse_condition(pairing) < 1e-12) {
        throw Error(ErrorCode::DegeneratePairing, "Lambda+ x Lambda- pairing matrix is singular");
    }
    b.G = g0 * pairing.transpose().inverse();
    return b;
}

CanonicalMap build_canonical_map(const PairingBases& bases) {
    const auto n = bases.E.cols();
    CMat w(2 * n, 2 * n);
    w << bases.E, bases.G;
    CanonicalMap map;
    map.K_inv = w;
    map.K = w.partialPivLu().inverse();
    return map;
}

double symplectic_residual(const CanonicalMap& map) {
    const SymplecticStructure s(map.dim());
    const CMat j = s.J.cast<cplx>();
    return norm2(CMat(map.K.transpose() * j * map.K - j));
}

ReducedSymbol reduced_matrix(const QuadraticSymbol& sym, const CanonicalMap& map,
                             const Tolerances& tol) {
    const auto n = sym.dim();
    const CMat qt = map.K_inv.transpose() * sym.matrix() * map.K_inv;
    const double scale = std::max(norm2(qt), 1e-300);
    ReducedSymbol out;
    out.M = 2.0 * qt.bottomLeftCorner(n, n);
    out.residual = std::max(norm2(CMat(qt.topLeftCorner(n, n))),
                            norm2(CMat(qt.bottomRightCorner(n, n)))) /
                   scale;
    if (out.residual > 1e2 * tol.structure) {
        std::ostringstream os;
        os << "pure blocks of the reduced symbol have relative size " << out.residual;
        throw Error(ErrorCode::NormalFormResidual, os.str());
    }
    return out;
}

cplx FbiPhase::operator()(const CVec& z, const CVec& y) const {
    return 0.5 * (z.transpose() * zz * z)(0, 0) + (z.transpose() * zy * y)(0, 0) +
           0.5 * (y.transpose() * yy * y)(0, 0);
}

CMat FbiPhase::induced_map() const {
    // eta = -zy^T z - yy y  =>  z = -zy^{-T} (eta + yy y); zeta = zz z + zy y.
    const auto n = dim();
    const CMat zy_t_inv = zy.transpose().inverse();
    CMat k(2 * n, 2 * n);
    const CMat a = -zy_t_inv * yy;
    const CMat b = -zy_t_inv;
    k.topLeftCorner(n, n) = a;
    k.topRightCorner(n, n) = b;
    k.bottomLeftCorner(n, n) = zz * a + zy;
    k.bottomRightCorner(n, n) = zz * b;
    return k;
}

FbiPhase generating_phase(const CanonicalMap& map, const Tolerances& tol) {
    const auto n = map.dim();
    const CMat b = map.B();
    if (inverse_condition(b) < tol.fiber) {
        throw Error(ErrorCode::FiberTangency,
                    "the vertical fiber is not mapped transversally; B is singular");
    }
    const CMat b_inv = b.inverse();
    FbiPhase ph;
    ph.zy = -b_inv.transpose();
    ph.yy = symmetrize(CMat(b_inv * map.A()));
    ph.zz = symmetrize(CMat(map.D() * b_inv));

    const RMat im_yy = symmetrize(RMat(ph.yy.imag()));
    Eigen::SelfAdjointEigenSolver<RMat> es(im_yy, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues()(0) > 0.0)) {
        throw Error(ErrorCode::ConvexityFailure, "Im phi''_yy is not positive definite");
    }
    const double nn = static_cast<double>(n);
    ph.c_phi = std::pow(2.0, -nn / 2.0) * std::pow(std::numbers::pi, -0.75 * nn) *
               std::pow(im_yy.determinant(), -0.25) * std::abs(ph.zy.determinant());
    return ph;
}

RVec to_real(const CVec& z) {
    RVec x(2 * z.size());
    x << z.real(), z.imag();
    return x;
}

CVec to_complex(const RVec& x) {
    const auto n = x.size() / 2;
    return x.head(n).cast<cplx>() + I_unit * x.tail(n).cast<cplx>();
}

double WeightPhi0::value(const CVec& z) const {
    const RVec x = to_real(z);
    return x.dot(real_form * x);
}

cplx WeightPhi0::polarization(const CVec& z, const CVec& theta) const {
    return 0.5 * (z.transpose() * zz * z)(0, 0) + (theta.transpose() * levi * z)(0, 0) +
           0.5 * (theta.transpose() * zz.conjugate() * theta)(0, 0);
}

CVec WeightPhi0::dz(const CVec& z) const { return polarization_dz(z, z.conjugate()); }

CVec WeightPhi0::polarization_dz(const CVec& z, const CVec& theta) const {
    return zz * z + levi.transpose() * theta;
}

WeightPhi0 weight_from_phase(const FbiPhase& phase) {
    const int n = phase.dim();
    const CMat l = complexification(n);
    const RMat im_yy = symmetrize(RMat(phase.yy.imag()));
    const RMat coupling = (phase.zy.transpose() * l).imag();  // Im(zy^T z) as a map of X
    const CMat zz_form = symmetrize(CMat(l.transpose() * phase.zz * l));

    WeightPhi0 w;
    w.n = n;
    const RMat solved = im_yy.ldlt().solve(coupling);
    w.real_form = symmetrize(RMat(-0.5 * RMat(zz_form.imag()) + 0.5 * coupling.transpose() * solved));
    w.r_map = -solved;

    // Complex Hessian blocks from the real Hessian H = 2 * real_form.
    const RMat hess = 2.0 * w.real_form;
    const RMat huu = hess.topLeftCorner(n, n);
    const RMat huv = hess.topRightCorner(n, n);
    const RMat hvu = hess.bottomLeftCorner(n, n);
    const RMat hvv = hess.bottomRightCorner(n, n);
    w.zz = 0.25 * ((huu - hvv).cast<cplx>() - I_unit * (huv + hvu).cast<cplx>());
    w.levi = hermitian_part(CMat(0.25 * ((huu + hvv).cast<cplx>() + I_unit * (hvu - huv).cast<cplx>())));

    if (!(min_eigenvalue(w.real_form) > 0.0)) {
        throw Error(ErrorCode::ConvexityFailure, "Phi0 is not strictly convex");
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(w.levi, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues()(0) > 0.0)) {
        throw Error(ErrorCode::LeviFailure, "Levi matrix of Phi0 is not positive definite");
    }
    const double nn = static_cast<double>(n);
    w.c_phi0 = std::pow(2.0, nn) * std::pow(std::numbers::pi, -nn) * w.levi.determinant().real();
    return w;
}

double isospectral_mismatch(const CMat& M, const HamiltonStructure& h) {
    Eigen::ComplexEigenSolver<CMat> es(M, false);
    std::vector<cplx> target;
    for (const auto& c : h.clusters) {
        if (c.lambda.imag() <= 0.0) continue;
        for (int k = 0; k < c.multiplicity; ++k) target.push_back(2.0 * c.lambda);
    }
    std::vector<cplx> have(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    if (have.size() != target.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const cplx& t : target) {
        auto best = have.begin();
        for (auto it = have.begin(); it != have.end(); ++it) {
            if (std::abs(*it - t) < std::abs(*best - t)) best = it;
        }
        worst = std::max(worst, std::abs(*best - t));
        have.erase(best);
    }
    return worst;
}

NormalForm normal_form(const QuadraticSymbol& sym, const HamiltonStructure& h,
                       const NormalFormOptions& opts) {
    const int n = sym.dim();
    NormalForm nf;
    nf.bases = pairing_bases(h, opts.mix_plus);
    nf.map = build_canonical_map(nf.bases);
    nf.symplectic_residual = symplectic_residual(nf.map);
    nf.pairing_residual =
        norm2(CMat(sigma_gram(nf.bases.G, nf.bases.E) - CMat::Identity(n, n)));

    const ReducedSymbol red = reduced_matrix(sym, nf.map, opts.tol);
    nf.M = red.M;
    nf.reduction_residual = red.residual;

    CMat blocks = CMat::Zero(2 * n, 2 * n);
    blocks.topLeftCorner(n, n) = 0.5 * nf.M;
    blocks.bottomRightCorner(n, n) = -0.5 * nf.M.transpose();
    nf.egorov_residual = norm2(CMat(nf.map.K * h.F * nf.map.K_inv - blocks)) /
                         std::max(norm2(h.F), 1e-300);
    nf.isospectral_residual = isospectral_mismatch(nf.M, h);

    nf.phase = generating_phase(nf.map, opts.tol);
    nf.induced_map_residual =
        norm2(CMat(nf.phase.induced_map() - nf.map.K)) / std::max(norm2(nf.map.K), 1e-300);
    nf.weight = weight_from_phase(nf.phase);

    // K maps real points onto {(z, (2/i) dPhi0/dz)}.
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        CVec x(2 * n);
        for (int i = 0; i < 2 * n; ++i) x(i) = gauss(rng);
        const CVec image = nf.map.K * x;
        const CVec z = image.head(n);
        const CVec zeta = image.tail(n);
        const CVec predicted = (2.0 / I_unit) * nf.weight.dz(z);
        worst = std::max(worst, (zeta - predicted).norm() / std::max(image.norm(), 1e-300));
    }
    nf.graph_residual = worst;
    return nf;
}

}  // namespace quadsemi
