#include "quadsemi/error.hpp"
#include "quadsemi/singular_space.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace quadsemi;

namespace {

SingularSpaceReport of(const std::string& name) {
    return singular_space(hamilton_matrix(catalog_problem(name).symbol));
}

ErrorCode code_of_require(const SingularSpaceReport& r) {
    try {
        require_trivial(r);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::IoError;
}

}  // namespace

TEST(SingularSpace, Harmonic) {
    const SingularSpaceReport r = of("harmonic");
    EXPECT_TRUE(r.trivial());
    EXPECT_EQ(r.k0, 0);
    EXPECT_NO_THROW(require_trivial(r));
}

TEST(SingularSpace, HeatIsNontrivial) {
    const SingularSpaceReport r = of("heat");
    EXPECT_EQ(r.dim, 1);
    EXPECT_FALSE(r.k0.has_value());
    // S is the x axis
    EXPECT_NEAR(std::abs(r.basis(0, 0)), 1.0, 1e-12);
    EXPECT_EQ(code_of_require(r), ErrorCode::SingularSpaceNontrivial);
}

TEST(SingularSpace, FreeSchrodingerIsWholeSpace) {
    const SingularSpaceReport r = of("free_schrodinger");
    EXPECT_EQ(r.dim, 2);
    EXPECT_EQ(code_of_require(r), ErrorCode::SingularSpaceNontrivial);
}

TEST(SingularSpace, DaviesHasOneStep) {
    const SingularSpaceReport r = of("davies");
    EXPECT_TRUE(r.trivial());
    EXPECT_EQ(r.k0, 1);
    ASSERT_GE(r.partial_dims.size(), 2u);
    EXPECT_EQ(r.partial_dims[0], 1);
    EXPECT_EQ(r.partial_dims[1], 0);
}

TEST(SingularSpace, KfpHasOneStep) {
    const SingularSpaceReport r = of("kfp");
    EXPECT_TRUE(r.trivial());
    EXPECT_EQ(r.k0, 1);
    EXPECT_EQ(r.partial_dims[0], 2);
}

TEST(SingularSpace, KfpBruteForceKernelChain) {
    const CMat f = hamilton_matrix(catalog_problem("kfp").symbol);
    const RMat re = f.real();
    const RMat im = f.imag();
    RMat stacked = re;
    EXPECT_EQ(null_space(stacked, 1e-12).cols(), 2);
    stacked.conservativeResize(8, 4);
    stacked.bottomRows(4) = re * im;
    EXPECT_EQ(null_space(stacked, 1e-12).cols(), 0);
}

TEST(SingularSpace, InvariantUnderOrthogonalSymplecticChange) {
    for (const std::string name : {"heat", "davies", "harmonic"}) {
        const QuadraticSymbol s = catalog_problem(name).symbol;
        const double th = 0.37;
        RMat u(2, 2);
        u << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
        const CMat q = u.transpose().cast<cplx>() * s.matrix() * u.cast<cplx>();
        const SingularSpaceReport a = singular_space(hamilton_matrix(s));
        const SingularSpaceReport b = singular_space(hamilton_matrix(make_symbol(1, q)));
        EXPECT_EQ(a.dim, b.dim) << name;
        EXPECT_EQ(a.k0, b.k0) << name;
    }
}

TEST(SingularSpace, ScaleOfImaginaryPartDoesNotMatter) {
    CMat q = catalog_problem("davies").symbol.matrix();
    q.imag() *= 1e4;
    const SingularSpaceReport r = singular_space(hamilton_matrix(make_symbol(1, q)));
    EXPECT_EQ(r.k0, 1);
}
