#pragma once

#include "quadsemi/linalg.hpp"
#include "quadsemi/symbol.hpp"
#include "quadsemi/tolerances.hpp"

#include <cstddef>
#include <vector>

namespace quadsemi {

// One cluster of numerically coincident eigenvalues of F.
struct EigenCluster {
    cplx lambda;       // cluster mean
    int multiplicity;  // algebraic (cluster size)
    CMat basis;        // orthonormal basis of the generalized eigenspace
};

struct HamiltonStructure {
    int n = 0;
    CMat F;
    CVec eigenvalues;                  // all 2n, in Schur order
    std::vector<EigenCluster> clusters;
    CMat lambda_plus;                  // 2n x n, orthonormal, sum of V_lambda with Im > 0
    CMat lambda_minus;                 // 2n x n, orthonormal, sum of V_lambda with Im < 0

    // Diagnostics filled by eigenstructure().
    double lagrangian_residual = 0.0;  // max |sigma| within each plane, relative
    double positivity_plus = 0.0;      // min eigenvalue of (1/i) sigma(Z, conj Z) on Lambda+
    double positivity_minus = 0.0;     // max eigenvalue of the same form on Lambda-
};

// Hermitian matrix of Z -> (1/i) sigma(Z, conj Z) on the column span of `basis`.
CMat positivity_form(const CMat& basis);

// Eigenvalues clustered within tol.cluster * ||F||; invariant bases from a
// reordered complex Schur form. Throws RealEigenvalueDetected when an
// eigenvalue lies within the clustering tolerance of the real axis and
// NormalFormResidual when Lambda+/- fail the Lagrangian or sign checks.
HamiltonStructure eigenstructure(const CMat& hamilton, const Tolerances& tol = {});

struct GroundEnergy {
    cplx rho;
    double gamma;
};

// rho = sum over Im lambda > 0 of -i r_lambda lambda; throws NonPositiveGamma.
GroundEnergy ground_energy(const HamiltonStructure& h);

struct LatticePoint {
    cplx value;
    int multiplicity;  // number of multi-indices alpha in N^n producing this value
};

struct SpectrumLattice {
    std::vector<std::pair<cplx, int>> generators;  // (mu = -i lambda, r_lambda), Im lambda > 0
    std::vector<LatticePoint> points;              // sorted by real part
    double e_max = 0.0;
};

// All points sum_j (1 + 2 alpha_j) mu_j with Re <= e_max, where mu_j runs over
// -i lambda for the n eigenvalues with Im lambda > 0 repeated by algebraic
// multiplicity. Throws CutoffTooLarge past `max_points` enumerated indices.
SpectrumLattice spectrum_lattice(const HamiltonStructure& h, double e_max,
                                 std::size_t max_points = 200000);

}  // namespace quadsemi
