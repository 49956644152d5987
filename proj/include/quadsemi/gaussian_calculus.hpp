#pragma once

#include "quadsemi/gaussian_function.hpp"
#include "quadsemi/normal_form.hpp"
#include "quadsemi/propagator.hpp"
#include "quadsemi/spectral.hpp"
#include "quadsemi/symbol.hpp"

#include <vector>

namespace quadsemi {

// (x.quad x + lin.x + constant) * base
struct PolynomialGaussian {
    CMat quad;
    CVec lin;
    cplx constant{0.0, 0.0};
    GaussianFunction base;

    cplx operator()(const CVec& x) const;
};

// q^w(x, D) g for a real-side Gaussian g, exact.
PolynomialGaussian weyl_apply(const QuadraticSymbol& sym, const GaussianFunction& g);

struct GroundState {
    GaussianFunction u0;
    CMat T_plus;         // Lambda+ = {(y, T_plus y)}
    cplx eigenvalue;     // constant term of q^w u0 / u0
    double residual = 0; // quadratic and linear parts of q^w u0 / u0, plus |eigenvalue - rho|
};

// Throws GraphFailure when Lambda+ is not a graph over the x-space.
GroundState ground_state(const QuadraticSymbol& sym, const HamiltonStructure& h, cplx rho);

// ||g||_{L^p(R^n)}, p in [1, inf]. Throws IntegrabilityFailure unless Re A > 0.
double lp_norm(const GaussianFunction& g, double p);

// True when Phi0(z) - Re(1/2 A z.z + b.z) grows quadratically.
bool in_bargmann_space(const GaussianFunction& u, const WeightPhi0& weight);

// c_phi \int e^{i phi(z, y)} g(y) dy
GaussianFunction fbi_forward(const FbiPhase& phase, const GaussianFunction& g);

// c_phi \int e^{-i conj(phi(z, x))} v(z) e^{-2 Phi0(z)} L(dz)
GaussianFunction fbi_adjoint(const FbiPhase& phase, const WeightPhi0& weight,
                             const GaussianFunction& v);

// e^{-t q^w} g through the Bargmann side.
GaussianFunction propagate(const WeightFamily& tf, double t, const GaussianFunction& g);

// t -> ||e^{-t q^w} u0||_q / ||u0||_p
std::vector<double> sharpness_lower_bound(const WeightFamily& tf, const GaussianFunction& u0,
                                          double p, double q, const std::vector<double>& grid);

}  // namespace quadsemi
