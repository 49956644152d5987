#include "quadsemi/spectral.hpp"

#include "quadsemi/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace quadsemi {

CMat positivity_form(const CMat& basis) {
    const auto n = basis.rows() / 2;
    const SymplecticStructure s(static_cast<int>(n));
    const CMat form = s.form().cast<cplx>();
    const CMat p = (basis.transpose() * form * basis.conjugate()) / I_unit;
    return hermitian_part(p);
}

namespace {

double max_sigma_within(const CMat& basis) {
    const auto n = basis.rows() / 2;
    const SymplecticStructure s(static_cast<int>(n));
    const CMat gram = basis.transpose() * s.form().cast<cplx>() * basis;
    return gram.cwiseAbs().maxCoeff();
}

std::vector<std::vector<int>> cluster_indices(const CVec& ev, double tol) {
    const auto m = static_cast<int>(ev.size());
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (std::abs(ev(i) - ev(j)) <= tol) parent[find(i)] = find(j);
        }
    }
    std::vector<std::vector<int>> groups;
    std::vector<int> slot(m, -1);
    for (int i = 0; i < m; ++i) {
        const int root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[slot[root]].push_back(i);
    }
    return groups;
}

}  // namespace

HamiltonStructure eigenstructure(const CMat& hamilton, const Tolerances& tol) {
    HamiltonStructure h;
    const auto dim = hamilton.rows();
    h.n = static_cast<int>(dim / 2);
    h.F = hamilton;

    const SchurForm base = complex_schur(hamilton);
    h.eigenvalues = base.T.diagonal();
    const double scale = std::max(norm2(hamilton), 1e-300);
    const double ctol = tol.cluster * scale;

    for (Eigen::Index i = 0; i < dim; ++i) {
        if (std::abs(h.eigenvalues(i).imag()) < ctol) {
            std::ostringstream os;
            os << "eigenvalue " << h.eigenvalues(i) << " of F is numerically real";
            throw Error(ErrorCode::RealEigenvalueDetected, os.str());
        }
    }

    for (const auto& group : cluster_indices(h.eigenvalues, ctol)) {
        cplx mean = 0.0;
        for (int i : group) mean += h.eigenvalues(i);
        mean /= static_cast<double>(group.size());
        SchurForm s = base;
        const int r = reorder_schur(s, [&](cplx z) {
            for (int i : group) {
                if (std::abs(z - h.eigenvalues(i)) <= ctol * 1e-3 + 1e-14 * scale) return true;
            }
            return false;
        });
        h.clusters.push_back({mean, r, s.U.leftCols(r)});
    }
    std::sort(h.clusters.begin(), h.clusters.end(), [](const EigenCluster& a, const EigenCluster& b) {
        if ((a.lambda.imag() > 0.0) != (b.lambda.imag() > 0.0)) return a.lambda.imag() > 0.0;
        return std::abs(a.lambda) < std::abs(b.lambda);
    });

    SchurForm plus = base;
    const int n_plus = reorder_schur(plus, [](cplx z) { return z.imag() > 0.0; });
    SchurForm minus = base;
    const int n_minus = reorder_schur(minus, [](cplx z) { return z.imag() < 0.0; });
    if (n_plus != h.n || n_minus != h.n) {
        std::ostringstream os;
        os << "expected " << h.n << " eigenvalues in each half plane, found " << n_plus << " and "
           << n_minus;
        throw Error(ErrorCode::RealEigenvalueDetected, os.str());
    }
    h.lambda_plus = plus.U.leftCols(h.n);
    h.lambda_minus = minus.U.leftCols(h.n);

    h.lagrangian_residual =
        std::max(max_sigma_within(h.lambda_plus), max_sigma_within(h.lambda_minus));
    Eigen::SelfAdjointEigenSolver<CMat> ep(positivity_form(h.lambda_plus), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<CMat> em(positivity_form(h.lambda_minus), Eigen::EigenvaluesOnly);
    h.positivity_plus = ep.eigenvalues()(0);
    h.positivity_minus = em.eigenvalues()(h.n - 1);

    if (h.lagrangian_residual > 1e2 * tol.structure) {
        throw Error(ErrorCode::NormalFormResidual, "stable planes are not Lagrangian");
    }
    if (!(h.positivity_plus > 0.0) || !(h.positivity_minus < 0.0)) {
        throw Error(ErrorCode::NormalFormResidual, "stable planes fail the positivity sign test");
    }
    return h;
}

GroundEnergy ground_energy(const HamiltonStructure& h) {
    cplx rho = 0.0;
    for (const auto& c : h.clusters) {
        if (c.lambda.imag() > 0.0) rho += -I_unit * static_cast<double>(c.multiplicity) * c.lambda;
    }
    if (!(rho.real() > 0.0)) {
        std::ostringstream os;
        os << "Re rho = " << rho.real() << " is not positive";
        throw Error(ErrorCode::NonPositiveGamma, os.str());
    }
    return {rho, rho.real()};
}

SpectrumLattice spectrum_lattice(const HamiltonStructure& h, double e_max, std::size_t max_points) {
    SpectrumLattice lat;
    lat.e_max = e_max;
    std::vector<cplx> mu;
    for (const auto& c : h.clusters) {
        if (c.lambda.imag() <= 0.0) continue;
        const cplx m = -I_unit * c.lambda;
        lat.generators.emplace_back(m, c.multiplicity);
        for (int k = 0; k < c.multiplicity; ++k) mu.push_back(m);
    }

    // suffix[j] = sum of Re mu over j..end, the least the remaining indices add.
    std::vector<double> suffix(mu.size() + 1, 0.0);
    for (std::size_t j = mu.size(); j-- > 0;) suffix[j] = suffix[j + 1] + mu[j].real();

    std::vector<cplx> raw;
    std::size_t visited = 0;
    auto recurse = [&](auto&& self, std::size_t j, cplx acc) -> void {
        if (j == mu.size()) {
            raw.push_back(acc);
            return;
        }
        for (int a = 0;; ++a) {
            const cplx next = acc + static_cast<double>(1 + 2 * a) * mu[j];
            if (next.real() + suffix[j + 1] > e_max + 1e-12 * std::max(1.0, std::abs(e_max))) break;
            if (++visited > max_points) {
                throw Error(ErrorCode::CutoffTooLarge, "lattice enumeration exceeded point limit");
            }
            self(self, j + 1, next);
        }
    };
    recurse(recurse, 0, cplx(0.0));

    std::sort(raw.begin(), raw.end(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    for (const cplx& z : raw) {
        const double merge = 1e-9 * std::max(1.0, std::abs(z));
        bool merged = false;
        for (auto it = lat.points.rbegin(); it != lat.points.rend(); ++it) {
            if (z.real() - it->value.real() > merge) break;
            if (std::abs(z - it->value) <= merge) {
                ++it->multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) lat.points.push_back({z, 1});
    }
    return lat;
}

}  // namespace quadsemi
