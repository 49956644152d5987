#pragma once

#include "quadsemi/linalg.hpp"
#include "quadsemi/spectral.hpp"
#include "quadsemi/symbol.hpp"
#include "quadsemi/tolerances.hpp"

#include <optional>

namespace quadsemi {

// Bases e_j of Lambda+ and g_j of Lambda- normalized so that
// sigma(g_j, e_k) = delta_jk. With this sign the map e_j -> (delta_j, 0),
// g_j -> (0, delta_j) preserves sigma.
struct PairingBases {
    CMat E;  // 2n x n
    CMat G;  // 2n x n
};

// `mix_plus`, when given, replaces the orthonormal Lambda+ basis E by E * mix_plus
// (any invertible n x n matrix). Throws DegeneratePairing.
PairingBases pairing_bases(const HamiltonStructure& h,
                           const std::optional<CMat>& mix_plus = std::nullopt);

// Complex linear canonical map (y, eta) -> (z, zeta), z = A y + B eta,
// zeta = C y + D eta.
struct CanonicalMap {
    CMat K;
    CMat K_inv;

    int dim() const noexcept { return static_cast<int>(K.rows() / 2); }
    CMat A() const { return K.topLeftCorner(dim(), dim()); }
    CMat B() const { return K.topRightCorner(dim(), dim()); }
    CMat C() const { return K.bottomLeftCorner(dim(), dim()); }
    CMat D() const { return K.bottomRightCorner(dim(), dim()); }
};

// K = [E G]^{-1}.
CanonicalMap build_canonical_map(const PairingBases& bases);

// ||K^T J K - J||.
double symplectic_residual(const CanonicalMap& map);

struct ReducedSymbol {
    CMat M;               // q(K^{-1}(z, zeta)) = M z . zeta
    double residual = 0;  // largest of the zz and zeta-zeta blocks, relative to ||Q~||
};

// Throws NormalFormResidual when the pure blocks do not vanish.
ReducedSymbol reduced_matrix(const QuadraticSymbol& sym, const CanonicalMap& map,
                             const Tolerances& tol = {});

// phi(z, y) = 1/2 zz z.z + z . zy y + 1/2 yy y.y
struct FbiPhase {
    CMat zz;
    CMat zy;
    CMat yy;
    double c_phi = 0.0;  // 2^{-n/2} pi^{-3n/4} det(Im yy)^{-1/4} |det zy|

    int dim() const noexcept { return static_cast<int>(zz.rows()); }
    cplx operator()(const CVec& z, const CVec& y) const;
    // The canonical map (y, -phi'_y) -> (z, phi'_z).
    CMat induced_map() const;
};

// Throws FiberTangency when B is numerically singular and ConvexityFailure
// when Im yy is not positive definite.
FbiPhase generating_phase(const CanonicalMap& map, const Tolerances& tol = {});

// Phi0(z) = sup_y -Im phi(z, y), stored both as the real quadratic form on
// (Re z, Im z) and through its complex Hessian blocks.
struct WeightPhi0 {
    int n = 0;
    RMat real_form;  // Phi0 = X^T real_form X, X = (Re z, Im z)
    CMat zz;         // Phi''_{zz}
    CMat levi;       // Phi''_{zbar z}, Hermitian
    double c_phi0 = 0.0;  // 2^n pi^{-n} det levi
    RMat r_map;      // r(z) = r_map X, the maximizing y

    double value(const CVec& z) const;
    // Polarization: Psi0(z, theta) with Psi0(z, conj z) = Phi0(z).
    cplx polarization(const CVec& z, const CVec& theta) const;
    // d Phi0 / dz (holomorphic derivative).
    CVec dz(const CVec& z) const;
    // d Psi0 / dz at (z, theta).
    CVec polarization_dz(const CVec& z, const CVec& theta) const;
};

RVec to_real(const CVec& z);
CVec to_complex(const RVec& x);

// Throws ConvexityFailure or LeviFailure.
WeightPhi0 weight_from_phase(const FbiPhase& phase);

struct NormalForm {
    PairingBases bases;
    CanonicalMap map;
    CMat M;
    FbiPhase phase;
    WeightPhi0 weight;

    double symplectic_residual = 0.0;   // ||K^T J K - J||
    double pairing_residual = 0.0;      // || sigma(G, E) - I ||
    double reduction_residual = 0.0;    // pure blocks of q~
    double egorov_residual = 0.0;       // ||K F K^{-1} - 1/2 diag(M, -M^T)|| / ||F||
    double isospectral_residual = 0.0;  // Spec M vs 2 Spec F with Im > 0
    double induced_map_residual = 0.0;  // phase-generated map vs K
    double graph_residual = 0.0;        // K(R^{2n}) vs Lambda_Phi0
};

struct NormalFormOptions {
    std::optional<CMat> mix_plus;
    std::uint64_t seed = 0;  // probes for the Lambda_Phi0 graph check
    Tolerances tol{};
};

NormalForm normal_form(const QuadraticSymbol& sym, const HamiltonStructure& h,
                       const NormalFormOptions& opts = {});

// Worst mismatch between Spec(M) and 2 lambda over the clusters with Im > 0,
// eigenvalues matched greedily with multiplicity.
double isospectral_mismatch(const CMat& M, const HamiltonStructure& h);

}  // namespace quadsemi
