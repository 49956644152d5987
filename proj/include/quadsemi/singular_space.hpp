#pragma once

#include "quadsemi/linalg.hpp"
#include "quadsemi/tolerances.hpp"

#include <optional>
#include <vector>

namespace quadsemi {

// S = (intersection over j < 2n of ker[(Re F)(Im F)^j]) within R^{2n}.
struct SingularSpaceReport {
    RMat basis;                    // 2n x dim, orthonormal columns
    int dim = 0;
    std::optional<int> k0;         // empty when S != {0}
    std::vector<int> partial_dims; // dim of the intersection over 0..j, j = 0..2n-1

    bool trivial() const noexcept { return dim == 0; }
};

// Nested kernel intersections by SVD of the stacked real matrices
// (Re F)(Im F / ||Im F||)^j. The normalization of Im F leaves every kernel
// unchanged and keeps the blocks on a common scale.
SingularSpaceReport singular_space(const CMat& hamilton, const Tolerances& tol = {});

// Throws SingularSpaceNontrivial (message lists the basis) when dim > 0.
void require_trivial(const SingularSpaceReport& report);

}  // namespace quadsemi
