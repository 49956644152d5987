#include "quadsemi/error.hpp"
#include "quadsemi/propagator.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace quadsemi;

namespace {

WeightFamily bargmann_harmonic() { return support::pipeline("harmonic").family(); }

double log_log_slope(const std::function<double(double)>& f, double lo, double hi) {
    std::vector<double> x, y;
    for (int k = 0; k <= 20; ++k) {
        const double t = lo * std::pow(hi / lo, k / 20.0);
        x.push_back(std::log(t));
        y.push_back(std::log(f(t)));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

TEST(Propagator, HarmonicAlphaClosedForm) {
    const WeightFamily tf = bargmann_harmonic();
    EXPECT_EQ(alpha(tf, 0.0), 0.0);
    for (double t : {1e-4, 1e-2, 0.3, 1.0, 4.0}) {
        EXPECT_NEAR(alpha(tf, t), 0.5 * (1.0 - std::exp(-4.0 * t)), 1e-13) << t;
    }
}

TEST(Propagator, RemainderMatchesDifference) {
    const WeightFamily tf = support::pipeline("kfp").family();
    for (double t : {0.05, 0.5, 2.0}) {
        const RMat diff = tf.weight().real_form - tf.phi(t);
        EXPECT_LT((tf.remainder(t) - diff).norm(), 1e-12) << t;
    }
}

TEST(Propagator, ShortTimeExponents) {
    const std::vector<std::pair<std::string, double>> cases{{"harmonic", 1.0}, {"davies", 3.0}, {"kfp", 3.0}};
    for (const auto& [name, power] : cases) {
        const WeightFamily tf = support::pipeline(name).family();
        const double slope = log_log_slope([&](double t) { return alpha(tf, t); }, 1e-3, 1e-2);
        EXPECT_NEAR(slope, power, 0.05 * power) << name;
    }
}

TEST(Propagator, AlphaCurveMonotoneWithLimit) {
    for (const auto& name : support::propagating_catalog()) {
        const WeightFamily tf = support::pipeline(name).family();
        const AlphaCurve c = alpha_curve(tf, default_time_grid());
        for (std::size_t i = 0; i < c.t.size(); ++i) {
            EXPECT_GT(c.alpha[i], 0.0) << name;
            if (i) EXPECT_GE(c.alpha[i], c.alpha[i - 1] - 1e-14) << name;
            if (c.t[i] >= c.t_inf) EXPECT_NEAR(c.alpha[i], c.alpha_inf, 1e-6) << name;
        }
        EXPECT_NEAR(alpha(tf, c.t_inf), c.alpha_inf, 1e-6) << name;
    }
}

TEST(Propagator, EstimateConstants) {
    const EstimateConstants h = fundamental_estimate_constants(bargmann_harmonic().weight());
    EXPECT_NEAR(h.c, 0.5, 1e-12);
    EXPECT_NEAR(h.C, 0.5, 1e-12);
    const EstimateConstants k = fundamental_estimate_constants(support::pipeline("kfp").nf.weight);
    EXPECT_GT(k.c, 0.0);
    EXPECT_LE(k.c, k.C);
}

TEST(Propagator, FundamentalIdentity) {
    std::mt19937_64 rng(31);
    for (const auto& name : support::propagating_catalog()) {
        const WeightFamily tf = support::pipeline(name).family();
        const CVec z = support::random_vector(rng, tf.dim());
        const CVec w = support::random_vector(rng, tf.dim());
        EXPECT_LT(fundamental_identity_residual(tf, 0.0, z, z), 1e-12) << name;
        for (double t : {0.1, 1.0, 3.0}) {
            EXPECT_LT(fundamental_identity_residual(tf, t, z, w), 1e-10) << name;
        }
    }
}

TEST(Propagator, EikonalAndTransport) {
    std::mt19937_64 rng(32);
    for (const auto& name : support::propagating_catalog()) {
        const WeightFamily tf = support::pipeline(name).family();
        const CVec z = support::random_vector(rng, tf.dim());
        const CVec th = support::random_vector(rng, tf.dim());
        for (double t : {0.2, 1.5}) {
            EXPECT_LT(eikonal_residual(tf, t, z, th), 1e-6) << name;
            EXPECT_LT(transport_residual(tf, t), 1e-6) << name;
        }
    }
}

TEST(Propagator, PQOrdering) {
    const WeightFamily tf = bargmann_harmonic();
    try {
        upper_bound_curve(tf, 1.0, 0, kInf, 2.0, {1.0});
        FAIL() << "expected PQOrdering";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PQOrdering);
    }
    EXPECT_THROW(bound_constant(tf, 0.5, 2.0), Error);
    EXPECT_NO_THROW(bound_constant(tf, 1.0, kInf));
}

TEST(Propagator, EnvelopeFormsAndShortTimeBlowUp) {
    const support::Pipeline p = support::pipeline("kfp");
    const WeightFamily tf = p.family();
    const BoundCurve b = upper_bound_curve(tf, p.energy.gamma, 1, 2.0, kInf, default_time_grid());
    const double slope = log_log_slope(
        [&](double t) { return b.constant * std::pow(alpha(tf, t), -2.0) * std::exp(-p.energy.gamma * t); },
        1e-3, 1e-2);
    EXPECT_NEAR(slope, -6.0, 0.3);
    for (std::size_t i = 0; i < b.t.size(); ++i) {
        EXPECT_GT(b.envelope[i], 0.0);
        if (b.t[i] >= b.eps) EXPECT_GE(b.large_t[i], b.envelope[i] * (1.0 - 1e-12));
        if (b.t[i] <= 0.1) EXPECT_GE(b.small_t[i], b.envelope[i] * (1.0 - 1e-12));
    }
}

TEST(Propagator, HarmonicPullbackOfConstant) {
    const WeightFamily tf = bargmann_harmonic();
    const GaussianFunction one = GaussianFunction::bargmann(CMat::Zero(1, 1), CVec::Zero(1));
    for (double t : {0.5, 2.0}) {
        const GaussianFunction v = pullback_form(tf, t, one);
        EXPECT_NEAR(std::abs(v.c - (-t)), 0.0, 1e-12);
        EXPECT_LT(v.A.norm() + v.b.norm(), 1e-15);
    }
}

TEST(Propagator, BergmanFormIdentities) {
    std::mt19937_64 rng(33);
    for (const auto& name : support::propagating_catalog()) {
        const support::Pipeline p = support::pipeline(name);
        const WeightFamily tf = p.family();
        for (int k = 0; k < 3; ++k) {
            const GaussianFunction u = support::random_bargmann(rng, p.nf.weight);
            EXPECT_LT(gaussian_distance(bergman_form(tf, 0.0, u), u), 1e-10) << name;
            for (double t : {0.3, 2.0}) {
                EXPECT_LT(gaussian_distance(bergman_form(tf, t, u), pullback_form(tf, t, u)), 1e-8) << name;
                EXPECT_LT(weighted_norm_identity_residual(tf, p.energy.gamma, t, u), 1e-8) << name;
            }
        }
    }
}

TEST(Propagator, PullbackSemigroupLaw) {
    std::mt19937_64 rng(34);
    const support::Pipeline p = support::pipeline("coupled2");
    const WeightFamily tf = p.family();
    const GaussianFunction u = support::random_bargmann(rng, p.nf.weight);
    const GaussianFunction two = pullback_form(tf, 0.4, pullback_form(tf, 0.7, u));
    EXPECT_LT(gaussian_distance(two, pullback_form(tf, 1.1, u)), 1e-12);
}

TEST(Propagator, DefaultGrid) {
    const auto g = default_time_grid();
    EXPECT_EQ(g.size(), 116u);
    EXPECT_NEAR(g.front(), 1e-4, 1e-18);
    EXPECT_NEAR(g.back(), 10.0, 1e-12);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
}

TEST(Propagator, LargeTimeFormIsPureExponential) {
    const WeightFamily tf = bargmann_harmonic();
    std::vector<double> grid;
    for (int k = 0; k <= 8; ++k) grid.push_back(2.0 + 0.5 * k);
    const BoundCurve b = upper_bound_curve(tf, 1.0, 0, 2.0, 2.0, grid);
    const double first = b.large_t[0] * std::exp(grid[0]);
    const double first_env = b.envelope[0] * std::exp(grid[0]);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_NEAR(b.large_t[i] * std::exp(grid[i]) / first, 1.0, 1e-8);
        EXPECT_NEAR(b.envelope[i] * std::exp(grid[i]) / first_env, 1.0, 1e-3);
    }
}
