#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

namespace quadsemi {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr cplx I_unit{0.0, 1.0};

// (A + A^T) / 2
CMat symmetrize(const CMat& a);
RMat symmetrize(const RMat& a);

// (A + A^H) / 2
CMat hermitian_part(const CMat& a);

// Spectral norm.
double norm2(const CMat& a);
double norm2(const RMat& a);

// Matrix exponential by scaling and squaring with the degree-13 Pade
// approximant (Higham 2005). Degrees 3..9 are used for small ||A||_1.
CMat expm(const CMat& a);

// exp(A) - I without cancellation for small ||A||.
CMat expm_minus_identity(const CMat& a);

// Real 2n x 2n matrix of z -> A z acting on (Re z, Im z).
RMat real_representation(const CMat& a);

// The n x 2n complex matrix L with z = L (Re z, Im z).
CMat complexification(int n);

// Complex Schur form A = U T U^H.
struct SchurForm {
    CMat T;
    CMat U;
};

SchurForm complex_schur(const CMat& a);

// Reorder a Schur form in place so that the eigenvalues accepted by
// `select` occupy the leading diagonal positions. Adjacent swaps by Givens
// rotations; returns the number of selected eigenvalues.
int reorder_schur(SchurForm& schur, const std::function<bool(cplx)>& select);

// Orthonormal basis of the numerical null space of `a`, with singular
// values below rel_tol * sigma_max treated as zero. When sigma_max == 0 the
// whole space is returned.
RMat null_space(const RMat& a, double rel_tol);

// log det(A) as the sum of principal logarithms of the eigenvalues. For
// complex symmetric A with Re A > 0 this is the branch continued from the
// identity along (1-s) I + s A.
cplx log_det_principal(const CMat& a);

// log det(A) by explicit argument tracking along (1-s) I + s A. Each step
// accumulates the principal log of det(A_{k+1}) / det(A_k).
cplx log_det_continued(const CMat& a, int steps = 64);

// Smallest eigenvalue of a real symmetric matrix.
double min_eigenvalue(const RMat& a);
double max_eigenvalue(const RMat& a);

}  // namespace quadsemi
