#include "quadsemi/error.hpp"
#include "quadsemi/symbol.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace quadsemi;
using support::complex_matrix;

namespace {

CVec vec(std::initializer_list<cplx> v) {
    CVec out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (cplx x : v) out(i++) = x;
    return out;
}

}  // namespace

TEST(Symbol, AcceptsHarmonicAndFreeSchrodinger) {
    EXPECT_NO_THROW(make_symbol(1, CMat::Identity(2, 2)));
    const QuadraticSymbol free = make_symbol(1, complex_matrix({{0.0, 0.0}, {0.0, I_unit}}));
    EXPECT_NEAR(free.re_min_eigenvalue(), 0.0, 1e-15);
}

TEST(Symbol, RejectsNegativeRealPart) {
    try {
        make_symbol(1, complex_matrix({{-1.0, 0.0}, {0.0, 0.0}}));
        FAIL() << "expected ReNotPSD";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ReNotPSD);
    }
}

TEST(Symbol, RejectsWrongShape) {
    try {
        make_symbol(2, CMat::Identity(2, 2));
        FAIL() << "expected DimensionMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(Symbol, SymmetrizesInput) {
    const QuadraticSymbol s = make_symbol(1, complex_matrix({{1.0, 2.0}, {0.0, 1.0}}));
    EXPECT_TRUE(s.was_asymmetric());
    EXPECT_NEAR(std::abs(s.matrix()(0, 1) - 1.0), 0.0, 1e-15);
    EXPECT_FALSE(make_symbol(1, CMat::Identity(2, 2)).was_asymmetric());
}

TEST(Symbol, Evaluate) {
    const QuadraticSymbol h = make_symbol(1, CMat::Identity(2, 2));
    EXPECT_NEAR(std::abs(h(vec({1.0, 0.0})) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(h(vec({1.0, 1.0})) - 2.0), 0.0, 1e-15);
    const QuadraticSymbol kfp = make_symbol(2, kfp_matrix(1.0));
    EXPECT_NEAR(std::abs(kfp(vec({0.0, 1.0, 0.0, 0.0})) - 0.25), 0.0, 1e-15);
}

TEST(Symbol, KfpCoefficients) {
    // eta^2 + v^2/4 + i(v xi - a x eta) at a generic point
    const double a = 1.7;
    const QuadraticSymbol kfp = make_symbol(2, kfp_matrix(a));
    const double x = 0.3, v = -1.1, xi = 0.7, eta = 2.0;
    const cplx expect = eta * eta + v * v / 4.0 + I_unit * (v * xi - a * x * eta);
    EXPECT_NEAR(std::abs(kfp(vec({x, v, xi, eta})) - expect), 0.0, 1e-14);
}

TEST(Symbol, Homogeneity) {
    std::mt19937_64 rng(11);
    const QuadraticSymbol kfp = make_symbol(2, kfp_matrix(1.0));
    const CVec x = support::random_vector(rng, 4);
    const cplx s(0.4, -1.3);
    EXPECT_NEAR(std::abs(kfp(CVec(s * x)) - s * s * kfp(x)), 0.0, 1e-13);
}

TEST(Symbol, HamiltonMatrixExamples) {
    const CMat f = hamilton_matrix(make_symbol(1, CMat::Identity(2, 2)));
    EXPECT_LT((f - complex_matrix({{0.0, 1.0}, {-1.0, 0.0}})).norm(), 1e-15);
    const CMat g = hamilton_matrix(make_symbol(1, complex_matrix({{0.0, 0.0}, {0.0, I_unit}})));
    EXPECT_LT((g - complex_matrix({{0.0, I_unit}, {0.0, 0.0}})).norm(), 1e-15);
}

TEST(Symbol, HamiltonIdentityOnRandomPairs) {
    for (const auto& name : catalog_names()) {
        const QuadraticSymbol s = catalog_problem(name).symbol;
        const CMat f = hamilton_matrix(s);
        EXPECT_LT(hamilton_identity_residual(s, f, 100, 0), 1e-12) << name;
    }
}

TEST(Symbol, ReFActionOnKfp) {
    // Re q = eta^2 + v^2/4 so Re F kills the x and xi directions
    const CMat f = hamilton_matrix(make_symbol(2, kfp_matrix(1.0)));
    const RMat re = f.real();
    EXPECT_LT(re.col(0).norm(), 1e-15);
    EXPECT_LT(re.col(2).norm(), 1e-15);
    EXPECT_GT(re.col(1).norm(), 0.1);
    EXPECT_GT(re.col(3).norm(), 0.1);
}

TEST(Symbol, SigmaMatchesForm) {
    const SymplecticStructure s(2);
    std::mt19937_64 rng(12);
    const CVec x = support::random_vector(rng, 4);
    const CVec y = support::random_vector(rng, 4);
    const cplx expect = (x.tail(2).transpose() * y.head(2)).value() - (x.head(2).transpose() * y.tail(2)).value();
    EXPECT_NEAR(std::abs(s.sigma(x, y) - expect), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(s.sigma(x, y) - (x.transpose() * s.form().cast<cplx>() * y)(0, 0)), 0.0, 1e-13);
}

TEST(Symbol, Ellipticity) {
    EXPECT_TRUE(is_elliptic(make_symbol(1, CMat::Identity(2, 2))));
    EXPECT_FALSE(is_elliptic(make_symbol(1, complex_matrix({{0.0, 0.0}, {0.0, 1.0}}))));
    EXPECT_FALSE(is_elliptic(make_symbol(2, kfp_matrix(1.0))));
    EXPECT_TRUE(is_elliptic(make_symbol(1, complex_matrix({{I_unit, 0.0}, {0.0, 1.0}}))));
    const EllipticityReport r = ellipticity(make_symbol(1, CMat::Identity(2, 2)));
    EXPECT_NEAR(r.min_abs_q, 1.0, 1e-8);
    EXPECT_LE(r.certified_lower, r.min_abs_q + 1e-12);
}
