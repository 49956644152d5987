#include "quadsemi/error.hpp"
#include "quadsemi/spectral.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace quadsemi;

namespace {

HamiltonStructure structure(const std::string& name) {
    return eigenstructure(hamilton_matrix(catalog_problem(name).symbol));
}

}  // namespace

TEST(Spectral, HarmonicEnergy) {
    const GroundEnergy e = ground_energy(structure("harmonic"));
    EXPECT_NEAR(std::abs(e.rho - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(e.gamma, 1.0, 1e-12);
}

TEST(Spectral, DaviesEnergy) {
    const GroundEnergy e = ground_energy(structure("davies"));
    EXPECT_NEAR(std::abs(e.rho - std::polar(1.0, std::numbers::pi / 4.0)), 0.0, 1e-12);
    EXPECT_NEAR(e.gamma, 0.7071067811865476, 1e-12);
}

TEST(Spectral, IsotropicHarmonicEnergy) {
    const HamiltonStructure h = structure("harmonic2");
    ASSERT_EQ(h.clusters.size(), 2u);
    const GroundEnergy e = ground_energy(h);
    EXPECT_NEAR(std::abs(e.rho - 2.0), 0.0, 1e-12);
}

TEST(Spectral, KfpEnergy) {
    const HamiltonStructure h = structure("kfp");
    cplx sum = 0.0;
    for (Eigen::Index i = 0; i < h.eigenvalues.size(); ++i) {
        if (h.eigenvalues(i).imag() > 0.0) sum += -I_unit * h.eigenvalues(i);
    }
    const GroundEnergy e = ground_energy(h);
    EXPECT_NEAR(std::abs(e.rho - sum), 0.0, 1e-12);
    EXPECT_GT(e.gamma, 0.0);
}

TEST(Spectral, SpectrumSymmetry) {
    for (const auto& name : support::propagating_catalog()) {
        const HamiltonStructure h = structure(name);
        for (Eigen::Index i = 0; i < h.eigenvalues.size(); ++i) {
            const cplx l = h.eigenvalues(i);
            double best = kInf;
            for (Eigen::Index j = 0; j < h.eigenvalues.size(); ++j) {
                best = std::min(best, std::abs(h.eigenvalues(j) + l));
            }
            EXPECT_LT(best, 1e-8) << name;
        }
    }
}

TEST(Spectral, LagrangianPlanesHaveSigns) {
    for (const auto& name : support::propagating_catalog()) {
        const HamiltonStructure h = structure(name);
        EXPECT_EQ(h.lambda_plus.cols(), h.n) << name;
        EXPECT_LT(h.lagrangian_residual, 1e-10) << name;
        EXPECT_GT(h.positivity_plus, 0.0) << name;
        EXPECT_LT(h.positivity_minus, 0.0) << name;
        const CMat fp = h.F * h.lambda_plus;
        const CMat proj = h.lambda_plus * (h.lambda_plus.adjoint() * fp);
        EXPECT_LT((fp - proj).norm(), 1e-10) << name;
    }
}

TEST(Spectral, RealEigenvalueRejected) {
    const CMat f = hamilton_matrix(catalog_problem("free_schrodinger").symbol);
    try {
        eigenstructure(f);
        FAIL() << "expected RealEigenvalueDetected";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RealEigenvalueDetected);
    }
}

TEST(Spectral, HarmonicLattice) {
    const SpectrumLattice l = spectrum_lattice(structure("harmonic"), 7.0);
    ASSERT_EQ(l.points.size(), 4u);
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(std::abs(l.points[k].value - (1.0 + 2.0 * k)), 0.0, 1e-12);
        EXPECT_EQ(l.points[k].multiplicity, 1);
    }
}

TEST(Spectral, DaviesLattice) {
    const SpectrumLattice l = spectrum_lattice(structure("davies"), 3.0);
    const cplx mu = std::polar(1.0, std::numbers::pi / 4.0);
    // Re (1 + 2k) mu <= 3 only for k = 0, 1
    ASSERT_EQ(l.points.size(), 2u);
    for (int k = 0; k < 2; ++k) {
        EXPECT_NEAR(std::abs(l.points[k].value - (1.0 + 2.0 * k) * mu), 0.0, 1e-12);
    }
}

TEST(Spectral, IsotropicHarmonicLattice) {
    const SpectrumLattice l = spectrum_lattice(structure("harmonic2"), 6.0);
    ASSERT_EQ(l.points.size(), 3u);
    const int mult[] = {1, 2, 3};
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(std::abs(l.points[k].value - (2.0 + 2.0 * k)), 0.0, 1e-12);
        EXPECT_EQ(l.points[k].multiplicity, mult[k]);
    }
}

TEST(Spectral, CutoffTooLarge) {
    try {
        spectrum_lattice(structure("harmonic2"), 1e6, 1000);
        FAIL() << "expected CutoffTooLarge";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CutoffTooLarge);
    }
}

TEST(Spectral, GammaIsLatticeMinimum) {
    for (const auto& name : support::propagating_catalog()) {
        const HamiltonStructure h = structure(name);
        const GroundEnergy e = ground_energy(h);
        const SpectrumLattice l = spectrum_lattice(h, 10.0 * e.gamma);
        double lowest = kInf;
        for (const auto& p : l.points) lowest = std::min(lowest, p.value.real());
        EXPECT_NEAR(lowest, e.gamma, 1e-12) << name;
        EXPECT_NEAR(std::abs(l.points.front().value - e.rho), 0.0, 1e-12) << name;
    }
}
