#pragma once

#include "quadsemi/linalg.hpp"
#include "quadsemi/tolerances.hpp"

#include <cstdint>

namespace quadsemi {

// Complex quadratic form q(X) = X . Q X on R^{2n}, coordinates ordered
// X = (x_1..x_n, xi_1..xi_n). Q is stored symmetric.
class QuadraticSymbol {
public:
    int dim() const noexcept { return n_; }
    const CMat& matrix() const noexcept { return q_; }

    // Smallest eigenvalue of Re Q.
    double re_min_eigenvalue() const noexcept { return re_min_eig_; }
    // True when the raw input differed from its symmetrization.
    bool was_asymmetric() const noexcept { return asymmetric_; }

    cplx operator()(const CVec& x) const;
    cplx polarized(const CVec& x, const CVec& y) const;

    // Blocks of Q: q = x.Qxx x + 2 x.Qxxi xi + xi.Qxixi xi.
    CMat block_xx() const { return q_.topLeftCorner(n_, n_); }
    CMat block_xxi() const { return q_.topRightCorner(n_, n_); }
    CMat block_xixi() const { return q_.bottomRightCorner(n_, n_); }

    friend QuadraticSymbol make_symbol(int n, const CMat& raw, const Tolerances& tol);

private:
    int n_ = 0;
    CMat q_;
    double re_min_eig_ = 0.0;
    bool asymmetric_ = false;
};

// Throws DimensionMismatch or ReNotPSD.
QuadraticSymbol make_symbol(int n, const CMat& raw, const Tolerances& tol = {});

// J with J(a, b) = (b, -a) in (x, xi) blocks.
struct SymplecticStructure {
    int n = 0;
    RMat J;

    explicit SymplecticStructure(int dim);

    // sigma((x,xi),(y,eta)) = xi.y - x.eta, bilinear over C.
    cplx sigma(const CVec& x, const CVec& y) const;
    // Matrix S with sigma(X, Y) = X^T S Y (S = -J).
    RMat form() const { return -J; }
};

// F = J Q, so that q(X, Y) = sigma(X, F Y).
CMat hamilton_matrix(const QuadraticSymbol& sym);

// Largest |sigma(X, F Y) - q(X, Y)| over `probes` random complex pairs,
// relative to ||Q||.
double hamilton_identity_residual(const QuadraticSymbol& sym, const CMat& f, int probes,
                                  std::uint64_t seed);

struct EllipticityReport {
    bool elliptic = false;
    double min_abs_q = 0.0;       // best upper bound found by minimization
    double certified_lower = 0.0; // max over theta of lambda_min(cos Re Q + sin Im Q), clipped at 0
    RVec argmin;                  // unit vector attaining min_abs_q
};

// Minimum of |q| over the real unit sphere by multistart minimization with
// a local polish; elliptic iff that minimum exceeds tol.ellipticity * ||Q||.
EllipticityReport ellipticity(const QuadraticSymbol& sym, const Tolerances& tol = {},
                              std::uint64_t seed = 0);

inline bool is_elliptic(const QuadraticSymbol& sym, const Tolerances& tol = {}) {
    return ellipticity(sym, tol).elliptic;
}

}  // namespace quadsemi
