#include "quadsemi/singular_space.hpp"

#include "quadsemi/error.hpp"

#include <sstream>

namespace quadsemi {

SingularSpaceReport singular_space(const CMat& hamilton, const Tolerances& tol) {
    const auto dim = hamilton.rows();
    const RMat re = hamilton.real();
    RMat im = hamilton.imag();
    const double im_norm = norm2(im);
    if (im_norm > 0.0) im /= im_norm;

    SingularSpaceReport rep;
    RMat stacked(0, dim);
    RMat block = re;
    RMat kernel = RMat::Identity(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        RMat next(stacked.rows() + dim, dim);
        next << stacked, block;
        stacked = std::move(next);
        kernel = null_space(stacked, tol.rank);
        rep.partial_dims.push_back(static_cast<int>(kernel.cols()));
        if (!rep.k0 && kernel.cols() == 0) rep.k0 = static_cast<int>(j);
        block = block * im;
    }
    rep.basis = kernel;
    rep.dim = static_cast<int>(kernel.cols());
    if (rep.dim != 0) rep.k0.reset();
    return rep;
}

void require_trivial(const SingularSpaceReport& report) {
    if (report.trivial()) return;
    std::ostringstream os;
    os << "singular space has dimension " << report.dim << "; basis columns:";
    for (Eigen::Index c = 0; c < report.basis.cols(); ++c) {
        os << " (";
        for (Eigen::Index r = 0; r < report.basis.rows(); ++r) {
            os << (r ? ", " : "") << report.basis(r, c);
        }
        os << ")";
    }
    throw Error(ErrorCode::SingularSpaceNontrivial, os.str());
}

}  // namespace quadsemi
