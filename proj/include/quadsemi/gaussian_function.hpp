#pragma once

#include "quadsemi/linalg.hpp"

namespace quadsemi {

enum class Side {
    Real,      // g(x) = exp(-1/2 x.A x + b.x + c), x in R^n
    Bargmann,  // u(z) = exp(+1/2 z.A z + b.z + c), z in C^n, holomorphic
};

struct GaussianFunction {
    Side side = Side::Real;
    CMat A;
    CVec b;
    cplx c{0.0, 0.0};  // log-amplitude

    int dim() const noexcept { return static_cast<int>(A.rows()); }
    cplx operator()(const CVec& x) const;
    cplx log_value(const CVec& x) const;

    static GaussianFunction real(CMat a, CVec b, cplx c = 0.0);
    static GaussianFunction bargmann(CMat a, CVec b, cplx c = 0.0);
};

// The multiple s * g, stored as a shift of the log-amplitude. s = 0 is
// represented by c = -inf.
GaussianFunction scaled(const GaussianFunction& g, cplx s);

// exp(-1/2 X.A X + X.(P p + p0) + 1/2 p.C p + d.p + e) for real X in R^m and a
// (formal, possibly complex) parameter p in C^k.
struct ParametricGaussian {
    CMat A;   // m x m, complex symmetric
    CMat P;   // m x k
    CVec p0;  // m
    CMat C;   // k x k
    CVec d;   // k
    cplx e{0.0, 0.0};
};

// Result of integrating X out: exp(1/2 p.quad p + lin.p + constant).
struct GaussianExponent {
    CMat quad;
    CVec lin;
    cplx constant{0.0, 0.0};
};

// Closed-form integral over R^m; requires Re A positive definite (throws
// IntegrabilityFailure otherwise). det(A)^{-1/2} is taken on the branch
// continued from the identity.
GaussianExponent integrate_real(const ParametricGaussian& g);

// ||u|| in L^2(C^n, exp(-2 Phi(z)) L(dz)) for a Bargmann-side Gaussian, with
// Phi(z) = X.weight X on X = (Re z, Im z). Throws IntegrabilityFailure.
double bargmann_norm(const GaussianFunction& u, const RMat& weight);

}  // namespace quadsemi
