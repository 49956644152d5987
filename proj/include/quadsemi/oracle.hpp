#pragma once

#include "quadsemi/gaussian_function.hpp"
#include "quadsemi/linalg.hpp"
#include "quadsemi/symbol.hpp"

#include <utility>
#include <vector>

namespace quadsemi {

// Gauss-Hermite rule for the weight e^{-x^2}. `scaled_weights` are
// w_i e^{x_i^2}, the weights that integrate products of Hermite functions.
struct HermiteQuadrature {
    RVec nodes;
    RVec scaled_weights;
};

HermiteQuadrature gauss_hermite(int count);

// values(i, k) = h_k(x_i), L^2-normalized Hermite functions.
RMat hermite_functions(const RVec& x, int modes);

// q^w(x, D) on the span of the first N Hermite functions per axis.
struct HermiteDiscretization {
    int n = 0;
    int N = 0;
    CMat A_mat;            // N^n x N^n; index k_1 + N k_2 for n = 2
    RMat nodes;            // n x N^n tensor quadrature nodes
    RVec weights;          // length N^n, tensor scaled weights
    RMat collocation;      // N^n x N^n, values(i, k) of the tensor basis at the nodes
};

// Throws UnsupportedDimension unless 1 <= n <= 2 and N >= 16.
HermiteDiscretization discretize(const QuadraticSymbol& sym, int modes);

// Hermite-basis matrices of x_j and D_j on `modes` functions per axis, taken
// from a basis of modes + 2 so that products of two of them are exact.
struct LadderOperators {
    std::vector<CMat> x;
    std::vector<CMat> d;
};

LadderOperators ladder_operators(int n, int modes);

struct KernelMatrix {
    double t = 0.0;
    CMat coefficients;  // e^{-t A_mat}
    CMat values;        // K_t(x_i, y_j)
    RVec weights;

    // K_t(x_i, y_j) w_j, the matrix acting on nodal values.
    CMat folded() const;
};

// Throws ExpFailure when e^{-t A_mat} is not finite.
KernelMatrix semigroup_matrix(const HermiteDiscretization& disc, double t);

// The same for an increasing list of times. Each step multiplies the previous
// result by e^{-(t_k - t_{k-1}) A_mat}, reusing exponentials of repeated steps.
std::vector<KernelMatrix> semigroup_matrices(const HermiteDiscretization& disc,
                                             const std::vector<double>& times);

// Computable corners: p = 1, q = inf, or (2, 2). Others throw UnsupportedPair.
double corner_norm(const KernelMatrix& k, double p, double q);
bool is_corner(double p, double q);

// Least-squares slope of log(values) against t over samples with t in
// [lo, hi]. Throws InsufficientSamples below 5 samples.
double decay_fit(const std::vector<double>& t, const std::vector<double>& values, double lo,
                 double hi);

// Hermite coefficients of a real-side Gaussian by quadrature on the nodes.
CVec project_gaussian(const HermiteDiscretization& disc, const GaussianFunction& g);

// Values of a real-side Gaussian on the tensor nodes.
CVec gaussian_on_nodes(const HermiteDiscretization& disc, const GaussianFunction& g);

// Discrete L^2 norm of nodal values.
double discrete_l2(const HermiteDiscretization& disc, const CVec& values);

}  // namespace quadsemi
