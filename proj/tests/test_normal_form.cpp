#include "quadsemi/error.hpp"
#include "quadsemi/normal_form.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <numbers>

using namespace quadsemi;

TEST(NormalForm, HarmonicReducedMatrix) {
    const support::Pipeline p = support::pipeline("harmonic");
    ASSERT_EQ(p.nf.M.rows(), 1);
    EXPECT_NEAR(std::abs(p.nf.M(0, 0) - 2.0 * I_unit), 0.0, 1e-12);
}

TEST(NormalForm, DaviesReducedMatrix) {
    const support::Pipeline p = support::pipeline("davies");
    EXPECT_NEAR(std::abs(p.nf.M(0, 0) - std::polar(2.0, 0.75 * std::numbers::pi)), 0.0, 1e-12);
}

TEST(NormalForm, HarmonicCanonicalMapOnBasis) {
    const support::Pipeline base = support::pipeline("harmonic");
    const support::Pipeline p = support::pipeline("harmonic", support::harmonic_unit_mix(base.h));
    CVec e(2), g(2);
    e << 1.0, I_unit;
    g << 1.0, -I_unit;
    g *= 0.5 * I_unit;
    EXPECT_LT((p.nf.bases.E.col(0) - e).norm(), 1e-12);
    EXPECT_LT((p.nf.bases.G.col(0) - g).norm(), 1e-12);
    const CVec ke = p.nf.map.K * e;
    const CVec kg = p.nf.map.K * g;
    EXPECT_NEAR(std::abs(ke(0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(ke(1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(kg(0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(kg(1) - 1.0), 0.0, 1e-12);
}

TEST(NormalForm, HarmonicBargmannWeight) {
    const support::Pipeline p = support::pipeline("harmonic");
    const WeightPhi0& w = p.nf.weight;
    EXPECT_LT((w.real_form - 0.5 * RMat::Identity(2, 2)).norm(), 1e-12);
    EXPECT_NEAR(w.c_phi0, 1.0 / std::numbers::pi, 1e-12);
    EXPECT_NEAR(std::abs(w.levi(0, 0) - 0.5), 0.0, 1e-12);
    EXPECT_LT(p.nf.induced_map_residual, 1e-12);
}

TEST(NormalForm, HarmonicWeightScalesWithBasis) {
    const support::Pipeline base = support::pipeline("harmonic");
    const support::Pipeline p = support::pipeline("harmonic", support::harmonic_unit_mix(base.h));
    EXPECT_LT((p.nf.weight.real_form - RMat::Identity(2, 2)).norm(), 1e-12);
    EXPECT_NEAR(p.nf.weight.c_phi0, 2.0 / std::numbers::pi, 1e-12);
}

TEST(NormalForm, ResidualsOnCatalog) {
    for (const auto& name : support::propagating_catalog()) {
        const NormalForm& nf = support::pipeline(name).nf;
        EXPECT_LT(nf.symplectic_residual, 1e-10) << name;
        EXPECT_LT(nf.pairing_residual, 1e-10) << name;
        EXPECT_LT(nf.reduction_residual, 1e-10) << name;
        EXPECT_LT(nf.egorov_residual, 1e-10) << name;
        EXPECT_LT(nf.isospectral_residual, 1e-10) << name;
        EXPECT_LT(nf.induced_map_residual, 1e-10) << name;
        EXPECT_LT(nf.graph_residual, 1e-10) << name;
        EXPECT_GT(min_eigenvalue(RMat(nf.phase.yy.imag())), 0.0) << name;
        EXPECT_GT(min_eigenvalue(nf.weight.real_form), 0.0) << name;
    }
}

TEST(NormalForm, PairingSign) {
    const NormalForm& nf = support::pipeline("kfp").nf;
    const SymplecticStructure s(2);
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            const cplx v = s.sigma(nf.bases.G.col(j), nf.bases.E.col(k));
            EXPECT_NEAR(std::abs(v - (j == k ? 1.0 : 0.0)), 0.0, 1e-12);
        }
    }
}

TEST(NormalForm, PolarizationRestrictsToWeight) {
    std::mt19937_64 rng(21);
    for (const auto& name : support::propagating_catalog()) {
        const WeightPhi0& w = support::pipeline(name).nf.weight;
        const CVec z = support::random_vector(rng, w.n);
        EXPECT_NEAR(std::abs(w.polarization(z, z.conjugate()) - w.value(z)), 0.0,
                    1e-12 * std::max(1.0, w.value(z)))
            << name;
        const RVec x = to_real(z);
        EXPECT_NEAR(w.value(z), x.dot(w.real_form * x), 1e-12 * std::max(1.0, w.value(z))) << name;
    }
}

TEST(NormalForm, HolomorphicDerivative) {
    std::mt19937_64 rng(22);
    const WeightPhi0& w = support::pipeline("coupled2").nf.weight;
    const CVec z = support::random_vector(rng, 2);
    const double h = 1e-6;
    for (int j = 0; j < 2; ++j) {
        CVec dx = CVec::Zero(2), dy = CVec::Zero(2);
        dx(j) = h;
        dy(j) = I_unit * h;
        const double px = (w.value(z + dx) - w.value(z - dx)) / (2 * h);
        const double py = (w.value(z + dy) - w.value(z - dy)) / (2 * h);
        EXPECT_NEAR(std::abs(w.dz(z)(j) - 0.5 * cplx(px, -py)), 0.0, 1e-6);
    }
}

TEST(NormalForm, GaugeInvariance) {
    std::mt19937_64 rng(23);
    for (const std::string name : {"davies", "kfp", "coupled2"}) {
        const support::Pipeline a = support::pipeline(name);
        const int n = a.sym.dim();
        const CMat mix = support::random_matrix(rng, n, n) + 2.0 * CMat::Identity(n, n);
        const support::Pipeline b = support::pipeline(name, mix);
        EXPECT_NEAR(a.energy.gamma, b.energy.gamma, 1e-12) << name;
        EXPECT_LT(isospectral_mismatch(b.nf.M, b.h), 1e-8) << name;
        EXPECT_LT(b.nf.symplectic_residual, 1e-8) << name;
        EXPECT_LT(b.nf.graph_residual, 1e-8) << name;
        EXPECT_LT(std::abs(a.nf.M.trace() - b.nf.M.trace()), 1e-8) << name;
    }
}

TEST(NormalForm, PhaseInducesCanonicalMap) {
    for (const auto& name : support::propagating_catalog()) {
        const NormalForm& nf = support::pipeline(name).nf;
        EXPECT_LT((nf.phase.induced_map() - nf.map.K).norm() / nf.map.K.norm(), 1e-10) << name;
    }
}

TEST(NormalForm, DegeneratePairing) {
    const support::Pipeline p = support::pipeline("kfp");
    try {
        pairing_bases(p.h, CMat::Zero(2, 2));
        FAIL() << "expected DegeneratePairing";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegeneratePairing);
    }
}

TEST(NormalForm, ReducedFlowIsStable) {
    for (const auto& name : support::propagating_catalog()) {
        const CMat im = I_unit * support::pipeline(name).nf.M;
        const CVec ev = Eigen::ComplexEigenSolver<CMat>(im).eigenvalues();
        for (Eigen::Index i = 0; i < ev.size(); ++i) EXPECT_LT(ev(i).real(), 0.0) << name;
    }
}
