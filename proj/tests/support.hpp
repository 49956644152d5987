#pragma once

#include "quadsemi/gaussian_calculus.hpp"
#include "quadsemi/normal_form.hpp"
#include "quadsemi/problem.hpp"
#include "quadsemi/propagator.hpp"
#include "quadsemi/singular_space.hpp"
#include "quadsemi/spectral.hpp"
#include "quadsemi/symbol.hpp"

#include <optional>
#include <random>
#include <string>

namespace quadsemi::support {

inline const std::vector<std::string>& propagating_catalog() {
    static const std::vector<std::string> names{"harmonic", "davies", "kfp", "harmonic2", "coupled2"};
    return names;
}

inline CMat complex_matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    CMat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (cplx v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

inline CVec random_vector(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
    return v;
}

inline CMat random_matrix(std::mt19937_64& rng, int rows, int cols) {
    CMat m(rows, cols);
    for (int j = 0; j < cols; ++j) m.col(j) = random_vector(rng, rows);
    return m;
}

// A Bargmann-side Gaussian well inside H_{Phi0}.
inline GaussianFunction random_bargmann(std::mt19937_64& rng, const WeightPhi0& w) {
    const CMat raw = symmetrize(random_matrix(rng, w.n, w.n));
    const double room = std::min(min_eigenvalue(w.real_form),
                                 Eigen::SelfAdjointEigenSolver<CMat>(w.levi).eigenvalues().minCoeff());
    return GaussianFunction::bargmann(raw * (0.25 * room / norm2(raw)), 0.5 * random_vector(rng, w.n),
                                      cplx(0.1, -0.3));
}

// A real-side Gaussian with Re A > 0.
inline GaussianFunction random_real_gaussian(std::mt19937_64& rng, int n) {
    const CMat raw = random_matrix(rng, n, n);
    CMat a = symmetrize(raw);
    a.real() = symmetrize(RMat(raw.real() * raw.real().transpose())) + 0.5 * RMat::Identity(n, n);
    return GaussianFunction::real(a, 0.5 * random_vector(rng, n), cplx(0.2, 0.4));
}

struct Pipeline {
    QuadraticSymbol sym;
    CMat F;
    HamiltonStructure h;
    GroundEnergy energy;
    NormalForm nf;

    WeightFamily family() const { return WeightFamily::from(nf); }
};

inline Pipeline pipeline(const QuadraticSymbol& sym, const std::optional<CMat>& mix = std::nullopt) {
    Pipeline p{sym, hamilton_matrix(sym), {}, {}, {}};
    p.h = eigenstructure(p.F);
    p.energy = ground_energy(p.h);
    NormalFormOptions opts;
    opts.mix_plus = mix;
    p.nf = normal_form(sym, p.h, opts);
    return p;
}

inline Pipeline pipeline(const std::string& catalog_name,
                         const std::optional<CMat>& mix = std::nullopt) {
    return pipeline(catalog_problem(catalog_name).symbol, mix);
}

// Lambda+ basis of the harmonic oscillator scaled to e = (1, i).
inline CMat harmonic_unit_mix(const HamiltonStructure& h) {
    const cplx first = h.lambda_plus(0, 0);
    return CMat::Constant(1, 1, 1.0 / first);
}

}  // namespace quadsemi::support
