#pragma once

#include "quadsemi/gaussian_function.hpp"
#include "quadsemi/linalg.hpp"
#include "quadsemi/normal_form.hpp"
#include "quadsemi/tolerances.hpp"

#include <limits>
#include <vector>

namespace quadsemi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// The propagated weights Phi_t(z) = Phi0(e^{itM} z) and the amplitude of the
// Bergman form of the conjugated semigroup.
class WeightFamily {
public:
    WeightFamily(CMat m, WeightPhi0 weight, FbiPhase phase);
    static WeightFamily from(const NormalForm& nf);

    int dim() const noexcept { return weight_.n; }
    const CMat& M() const noexcept { return m_; }
    const WeightPhi0& weight() const noexcept { return weight_; }
    const FbiPhase& phase() const noexcept { return phase_; }

    // e^{itM}
    CMat evolution(double t) const;
    // Real 2n x 2n matrix of Phi_t.
    RMat phi(double t) const;
    // Real matrix of R_t = Phi0 - Phi_t, computed through e^{itM} - I so that
    // small t does not lose digits.
    RMat remainder(double t) const;
    cplx psi(double t, const CVec& z, const CVec& theta) const;
    // d Psi_t / dz at (z, theta).
    CVec psi_dz(double t, const CVec& z, const CVec& theta) const;
    // C_Phi0 e^{(i/2) tr(M) t}
    cplx amplitude(double t) const;

private:
    CMat m_;
    WeightPhi0 weight_;
    FbiPhase phase_;
};

// min over |z| = 1 of R_t(z). Throws NegativeAlpha below -tol.alpha_floor.
double alpha(const WeightFamily& tf, double t, const Tolerances& tol = {});

struct AlphaCurve {
    std::vector<double> t;
    std::vector<double> alpha;
    double alpha_inf = 0.0;  // min over |z| = 1 of Phi0
    double t_inf = 0.0;      // alpha is within 1e-6 of alpha_inf from here on
};

AlphaCurve alpha_curve(const WeightFamily& tf, const std::vector<double>& grid,
                       const Tolerances& tol = {});

// First time at which ||Phi0|| ||e^{itM}||^2 <= `accuracy`.
double alpha_limit_time(const WeightFamily& tf, double accuracy = 1e-7);

// 16 log-spaced points on [1e-4, 1e-1) followed by 0.1, 0.2, ..., 10.
std::vector<double> default_time_grid();

struct EstimateConstants {
    double c = 0.0;  // lambda_min of the Levi matrix
    double C = 0.0;  // lambda_max
};

EstimateConstants fundamental_estimate_constants(const WeightPhi0& weight);

// |2 Re Psi_t(z, conj w) - Phi_t(z) - Phi0(w) + Levi (w - e^{itM} z) . conj(w - e^{itM} z)|
double fundamental_identity_residual(const WeightFamily& tf, double t, const CVec& z,
                                     const CVec& w);

// |2 d_t Psi_t + q~(z, (2/i) d_z Psi_t)| by centered differences of step h.
double eikonal_residual(const WeightFamily& tf, double t, const CVec& z, const CVec& theta,
                        double h = 1e-4);

// |a'(t) + (1/2i) tr(M) a(t)| / |a(t)| by centered differences of step h.
double transport_residual(const WeightFamily& tf, double t, double h = 1e-4);

struct BoundCurve {
    double p = 2.0;
    double q = 2.0;
    double gamma = 0.0;
    int k0 = 0;
    int n = 0;
    double constant = 0.0;  // C_pq
    double c_short = 0.0;   // min over grid points t <= t_short of alpha(t) / t^{2k0+1}
    double eps = 0.0;       // start of the large-time form
    std::vector<double> t;
    std::vector<double> alpha;
    std::vector<double> envelope;  // C_pq alpha(t)^{-n} e^{-gamma t}
    std::vector<double> large_t;   // C_pq alpha(eps)^{-n} e^{-gamma t} for t >= eps, else NaN
    std::vector<double> small_t;   // C_pq (c_short t^{2k0+1})^{-n}
};

// 1 <= p <= q <= inf, each in [1, inf]; throws PQOrdering when p > q.
BoundCurve upper_bound_curve(const WeightFamily& tf, double gamma, int k0, double p, double q,
                             const std::vector<double>& grid, double t_short = 0.1,
                             double eps = 0.1, const Tolerances& tol = {});

// The explicit constant alone.
double bound_constant(const WeightFamily& tf, double p, double q);

// e^{(i/2) tr(M) t} u(e^{itM} z) for a Bargmann-side Gaussian u.
GaussianFunction pullback_form(const WeightFamily& tf, double t, const GaussianFunction& u);

// a(t) * integral of e^{2 Psi_t(z, conj w)} u(w) e^{-2 Phi0(w)} over C^n, in
// closed form.
GaussianFunction bergman_form(const WeightFamily& tf, double t, const GaussianFunction& u);

// Largest coefficient mismatch of two Bargmann-side Gaussians, relative to
// the size of the coefficients.
double gaussian_distance(const GaussianFunction& a, const GaussianFunction& b);

// | ||G~(t) u||_{Phi_t} / (e^{gamma t} ||u||_{Phi0}) - 1 |
double weighted_norm_identity_residual(const WeightFamily& tf, double gamma, double t,
                                       const GaussianFunction& u);

}  // namespace quadsemi
