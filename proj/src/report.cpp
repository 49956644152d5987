#include "quadsemi/report.hpp"

#include "quadsemi/error.hpp"
#include "quadsemi/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace quadsemi {

namespace {

using nlohmann::json;

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json complex_matrix_json(const CMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json real_matrix_json(const RMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

CVec random_complex(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::normal_distribution<double> g;
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = scale * cplx(g(rng), g(rng));
    return v;
}

// A Bargmann-side Gaussian comfortably inside H_{Phi0}.
GaussianFunction random_bargmann(std::mt19937_64& rng, const WeightPhi0& w) {
    const int n = w.n;
    const CMat raw = [&] {
        CMat m(n, n);
        for (int j = 0; j < n; ++j) m.col(j) = random_complex(rng, n);
        return symmetrize(m);
    }();
    const double room = std::min(min_eigenvalue(w.real_form),
                                 Eigen::SelfAdjointEigenSolver<CMat>(w.levi).eigenvalues().minCoeff());
    const CMat a = raw * (0.25 * room / std::max(norm2(raw), 1e-300));
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    return GaussianFunction::bargmann(a, random_complex(rng, n, 0.5), cplx(u(rng), u(rng)));
}

void add(AnalysisReport& r, std::string name, double value, double tol) {
    r.checks.push_back({std::move(name), value, tol});
}

void propagation_checks(AnalysisReport& r, std::uint64_t seed) {
    const NormalForm& nf = *r.normal_form;
    const WeightFamily& tf = *r.weights;
    const int n = r.n;
    add(r, "symplectic", nf.symplectic_residual, 1e-8);
    add(r, "pairing", nf.pairing_residual, 1e-8);
    add(r, "reduction", nf.reduction_residual, 1e-8);
    add(r, "egorov", nf.egorov_residual, 1e-8);
    add(r, "isospectral", nf.isospectral_residual, 1e-8);
    add(r, "induced_map", nf.induced_map_residual, 1e-8);
    add(r, "weight_graph", nf.graph_residual, 1e-8);
    add(r, "ground_state", r.ground->residual, 1e-10);

    std::mt19937_64 rng(seed + 17);
    std::uniform_real_distribution<double> ut(0.05, 3.0);
    double eik = 0.0, trans = 0.0, fund = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double t = ut(rng);
        const CVec z = random_complex(rng, n);
        const CVec th = random_complex(rng, n);
        const CVec w = random_complex(rng, n);
        const double scale = std::max(1.0, z.squaredNorm() + th.squaredNorm());
        eik = std::max(eik, eikonal_residual(tf, t, z, th) / scale);
        trans = std::max(trans, transport_residual(tf, t));
        fund = std::max(fund, fundamental_identity_residual(tf, t, z, w) /
                                  std::max(1.0, z.squaredNorm() + w.squaredNorm()));
    }
    add(r, "eikonal", eik, 1e-6);
    add(r, "transport", trans, 1e-6);
    add(r, "fundamental_identity", fund, 1e-8);

    double bergman = 0.0, projector = 0.0, weighted = 0.0, unitarity = 0.0, round_trip = 0.0;
    for (int k = 0; k < 5; ++k) {
        const GaussianFunction u = random_bargmann(rng, nf.weight);
        projector = std::max(projector, gaussian_distance(bergman_form(tf, 0.0, u), u));
        for (int j = 0; j < 5; ++j) {
            const double t = ut(rng);
            bergman = std::max(bergman,
                               gaussian_distance(bergman_form(tf, t, u), pullback_form(tf, t, u)));
            weighted = std::max(weighted, weighted_norm_identity_residual(tf, r.energy->gamma, t, u));
        }
    }
    const GaussianFunction& u0 = r.ground->u0;
    const GaussianFunction v0 = fbi_forward(nf.phase, u0);
    unitarity = std::abs(bargmann_norm(v0, nf.weight.real_form) / lp_norm(u0, 2.0) - 1.0);
    round_trip = gaussian_distance(fbi_adjoint(nf.phase, nf.weight, v0), u0);
    add(r, "bergman_pullback", bergman, 1e-8);
    add(r, "bergman_projector", projector, 1e-10);
    add(r, "weighted_norm", weighted, 1e-8);
    add(r, "fbi_unitarity", unitarity, 1e-10);
    add(r, "fbi_round_trip", round_trip, 1e-8);
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

std::string complex_text(cplx z) {
    std::ostringstream os;
    os << format_number(z.real()) << (z.imag() < 0 ? " - " : " + ") << format_number(std::abs(z.imag()))
       << "i";
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

void require_propagation(const AnalysisReport& r) {
    if (!r.propagation()) {
        throw Error(ErrorCode::SingularSpaceNontrivial,
                    "bounds need S = {0}; '" + r.name + "' has dim S = " + std::to_string(r.singular.dim));
    }
}

void require_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw Error(ErrorCode::EmptyGrid, "the time grid is empty");
}

}  // namespace

bool AnalysisReport::failed() const {
    for (const auto& c : checks) {
        if (!c.pass()) return true;
    }
    return false;
}

AnalysisReport run_analyze(const ProblemFile& problem, const AnalyzeOptions& opts) {
    const QuadraticSymbol& sym = problem.symbol;
    AnalysisReport r;
    r.name = problem.name;
    r.n = sym.dim();
    r.Q = sym.matrix();
    r.warnings = problem.warnings;
    r.re_min_eigenvalue = sym.re_min_eigenvalue();
    r.ellipticity = ellipticity(sym, opts.tol, opts.seed);

    const CMat f = hamilton_matrix(sym);
    add(r, "hamilton_identity", hamilton_identity_residual(sym, f, 32, opts.seed), 1e-12);
    r.singular = singular_space(f, opts.tol);
    r.spectrum = Eigen::ComplexEigenSolver<CMat>(f, false).eigenvalues();

    if (!r.singular.trivial()) {
        r.skipped = {"spectral", "normal_form", "propagation", "bounds"};
        return r;
    }
    if (opts.structure_only) {
        r.skipped = {"normal_form", "propagation", "bounds"};
    }

    r.hamilton = eigenstructure(f, opts.tol);
    add(r, "lagrangian", r.hamilton->lagrangian_residual, 1e2 * opts.tol.structure);
    r.energy = ground_energy(*r.hamilton);
    r.lattice = spectrum_lattice(*r.hamilton, opts.e_max > 0.0 ? opts.e_max : 10.0 * r.energy->gamma);
    if (opts.structure_only) return r;

    NormalFormOptions nfo;
    nfo.seed = opts.seed;
    nfo.tol = opts.tol;
    r.normal_form = normal_form(sym, *r.hamilton, nfo);
    r.weights = WeightFamily::from(*r.normal_form);
    r.ground = ground_state(sym, *r.hamilton, r.energy->rho);
    r.alpha_inf = min_eigenvalue(r.normal_form->weight.real_form);
    r.t_inf = alpha_limit_time(*r.weights);
    propagation_checks(r, opts.seed);
    return r;
}

json report_json(const AnalysisReport& r, bool dump_normal_form) {
    json j;
    j["name"] = r.name;
    j["n"] = r.n;
    j["Q"] = complex_matrix_json(r.Q);
    j["warnings"] = r.warnings;
    j["re_min_eigenvalue"] = r.re_min_eigenvalue;
    j["elliptic"] = r.ellipticity.elliptic;
    j["min_abs_q"] = r.ellipticity.min_abs_q;
    j["singular_space"] = {{"dim", r.singular.dim},
                           {"k0", r.singular.k0 ? json(*r.singular.k0) : json(nullptr)},
                           {"partial_dims", r.singular.partial_dims},
                           {"basis", real_matrix_json(r.singular.basis)}};
    json eigen = json::array();
    for (Eigen::Index i = 0; i < r.spectrum.size(); ++i) eigen.push_back(complex_json(r.spectrum(i)));
    j["spectrum_F"] = eigen;
    if (r.energy) {
        j["rho"] = complex_json(r.energy->rho);
        j["gamma"] = r.energy->gamma;
    }
    if (r.lattice) {
        json pts = json::array();
        for (const auto& p : r.lattice->points) {
            pts.push_back({{"value", complex_json(p.value)}, {"multiplicity", p.multiplicity}});
        }
        j["lattice"] = {{"e_max", r.lattice->e_max}, {"points", pts}};
    }
    if (r.propagation()) {
        j["alpha_inf"] = r.alpha_inf;
        j["t_inf"] = r.t_inf;
        j["ground_state"] = {{"A", complex_matrix_json(r.ground->u0.A)},
                             {"eigenvalue", complex_json(r.ground->eigenvalue)}};
    }
    if (dump_normal_form && r.normal_form) {
        const NormalForm& nf = *r.normal_form;
        j["normal_form"] = {{"M", complex_matrix_json(nf.M)},
                            {"K", complex_matrix_json(nf.map.K)},
                            {"phase_zz", complex_matrix_json(nf.phase.zz)},
                            {"phase_zy", complex_matrix_json(nf.phase.zy)},
                            {"phase_yy", complex_matrix_json(nf.phase.yy)},
                            {"c_phi", nf.phase.c_phi},
                            {"phi0", real_matrix_json(nf.weight.real_form)},
                            {"levi", complex_matrix_json(nf.weight.levi)},
                            {"c_phi0", nf.weight.c_phi0}};
    }
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass()}});
    }
    j["checks"] = checks;
    j["skipped"] = r.skipped;
    j["curve_files"] = r.curve_files;
    j["status"] = r.failed() ? "FAILED" : "OK";
    return j;
}

std::string report_text(const AnalysisReport& r, bool dump_normal_form) {
    std::ostringstream os;
    os << "problem: " << r.name << " (n = " << r.n << ")\n";
    for (const auto& w : r.warnings) os << "warning: " << w << "\n";
    os << "min eig Re Q: " << format_number(r.re_min_eigenvalue) << "\n";
    os << "elliptic: " << (r.ellipticity.elliptic ? "yes" : "no")
       << " (min |q| on sphere " << format_number(r.ellipticity.min_abs_q) << ")\n";
    os << "singular space: dim " << r.singular.dim;
    if (r.singular.k0) os << ", k0 = " << *r.singular.k0;
    os << "\n";
    os << "Spec F:";
    for (Eigen::Index i = 0; i < r.spectrum.size(); ++i) os << "  " << complex_text(r.spectrum(i));
    os << "\n";
    if (r.energy) {
        os << "rho: " << complex_text(r.energy->rho) << "\n";
        os << "gamma: " << format_number(r.energy->gamma) << "\n";
    }
    if (r.lattice) {
        os << "spectrum of q^w up to Re <= " << format_number(r.lattice->e_max)
           << " (re,im,multiplicity):\n";
        for (const auto& p : r.lattice->points) {
            os << "  " << format_number(p.value.real()) << "," << format_number(p.value.imag()) << ","
               << p.multiplicity << "\n";
        }
    }
    if (r.propagation()) {
        os << "alpha_inf: " << format_number(r.alpha_inf) << ", reached from t = "
           << format_number(r.t_inf) << "\n";
        os << "ground state eigenvalue: " << complex_text(r.ground->eigenvalue) << "\n";
    }
    if (dump_normal_form && r.normal_form) {
        Eigen::IOFormat fmt(Eigen::FullPrecision, 0, ", ", "\n", "    [", "]");
        os << "M =\n" << r.normal_form->M.format(fmt) << "\n";
        os << "K =\n" << r.normal_form->map.K.format(fmt) << "\n";
        os << "Phi0 (real form) =\n" << r.normal_form->weight.real_form.format(fmt) << "\n";
        os << "Levi =\n" << r.normal_form->weight.levi.format(fmt) << "\n";
        os << "c_phi = " << format_number(r.normal_form->phase.c_phi)
           << ", C_Phi0 = " << format_number(r.normal_form->weight.c_phi0) << "\n";
    }
    if (!r.checks.empty()) {
        os << "checks:\n";
        for (const auto& c : r.checks) {
            os << "  " << (c.pass() ? "ok  " : "FAIL") << " " << c.name << " = " << format_number(c.value)
               << " (tol " << format_number(c.tolerance) << ")\n";
        }
    }
    if (!r.skipped.empty()) os << "skipped: " << join(r.skipped, ", ") << "\n";
    for (const auto& f : r.curve_files) os << "wrote " << f << "\n";
    os << "status: " << (r.failed() ? "FAILED" : "OK") << "\n";
    return os.str();
}

ExponentPair parse_pair(const std::string& text) {
    auto one = [&](std::string s) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        if (s == "inf" || s == "infty" || s == "Inf") return kInf;
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !(v >= 1.0)) {
            throw Error(ErrorCode::ParseError, "bad exponent '" + s + "' in pair '" + text + "'");
        }
        return v;
    };
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw Error(ErrorCode::ParseError, "expected p,q but got '" + text + "'");
    }
    return {one(text.substr(0, comma)), one(text.substr(comma + 1))};
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string exponent_label(double p) { return std::isinf(p) ? "inf" : format_number(p); }

std::string pair_label(const ExponentPair& pq) {
    return exponent_label(pq.first) + "_" + exponent_label(pq.second);
}

std::vector<ExponentPair> standard_pairs() {
    return {{1.0, 1.0}, {1.0, kInf}, {2.0, 2.0}, {2.0, kInf}, {kInf, kInf}};
}

std::string bounds_csv(const AnalysisReport& r, const ExponentPair& pq,
                       const std::vector<double>& grid) {
    require_propagation(r);
    require_grid(grid);
    const WeightFamily& tf = *r.weights;
    const int k0 = r.singular.k0.value_or(0);
    const BoundCurve b = upper_bound_curve(tf, r.energy->gamma, k0, pq.first, pq.second, grid);
    const auto lower = sharpness_lower_bound(tf, r.ground->u0, pq.first, pq.second, grid);
    std::ostringstream os;
    os << "t,alpha,envelope_" << pair_label(pq) << ",gamma_exp,lower\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << format_number(grid[i]) << "," << format_number(b.alpha[i]) << ","
           << format_number(b.envelope[i]) << "," << format_number(std::exp(-r.energy->gamma * grid[i]))
           << "," << format_number(lower[i]) << "\n";
    }
    return os.str();
}

std::vector<std::string> emit_curves(AnalysisReport& r, const std::string& out_dir,
                                     const CurveOptions& opts) {
    require_grid(opts.grid);
    require_propagation(r);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir + ": " + ec.message());
    const std::filesystem::path dir(out_dir);
    std::vector<std::string> files;

    const AlphaCurve ac = alpha_curve(*r.weights, opts.grid);
    std::ostringstream alpha;
    alpha << "t,alpha,alpha_inf\n";
    for (std::size_t i = 0; i < ac.t.size(); ++i) {
        alpha << format_number(ac.t[i]) << "," << format_number(ac.alpha[i]) << ","
              << format_number(ac.alpha_inf) << "\n";
    }
    write_file(dir / "alpha.csv", alpha.str());
    files.push_back((dir / "alpha.csv").string());

    std::vector<std::vector<double>> lows;
    for (const auto& pq : opts.pairs) {
        const auto path = dir / ("bounds_" + pair_label(pq) + ".csv");
        write_file(path, bounds_csv(r, pq, opts.grid));
        files.push_back(path.string());
        lows.push_back(sharpness_lower_bound(*r.weights, r.ground->u0, pq.first, pq.second, opts.grid));
    }

    std::ostringstream sharp;
    sharp << "t";
    for (const auto& pq : opts.pairs) sharp << ",lower_" << pair_label(pq);
    sharp << "\n";
    for (std::size_t i = 0; i < opts.grid.size(); ++i) {
        sharp << format_number(opts.grid[i]);
        for (const auto& l : lows) sharp << "," << format_number(l[i]);
        sharp << "\n";
    }
    write_file(dir / "sharpness.csv", sharp.str());
    files.push_back((dir / "sharpness.csv").string());

    r.curve_files.insert(r.curve_files.end(), files.begin(), files.end());
    return files;
}

std::vector<GaussianRow> gaussian_verification(const AnalysisReport& r,
                                               const std::vector<ExponentPair>& pairs,
                                               const std::vector<double>& grid) {
    require_propagation(r);
    require_grid(grid);
    std::vector<GaussianRow> rows;
    const int k0 = r.singular.k0.value_or(0);
    for (const auto& [p, q] : pairs) {
        const BoundCurve b = upper_bound_curve(*r.weights, r.energy->gamma, k0, p, q, grid);
        const auto lower = sharpness_lower_bound(*r.weights, r.ground->u0, p, q, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            rows.push_back({p, q, grid[i], lower[i], b.envelope[i], lower[i] / b.envelope[i]});
        }
    }
    return rows;
}

std::string gaussian_csv(const std::vector<GaussianRow>& rows) {
    std::ostringstream os;
    os << "p,q,t,lower_bound,upper_envelope,ratio\n";
    for (const auto& row : rows) {
        os << exponent_label(row.p) << "," << exponent_label(row.q) << "," << format_number(row.t) << ","
           << format_number(row.lower_bound) << "," << format_number(row.upper_envelope) << ","
           << format_number(row.ratio) << "\n";
    }
    return os.str();
}

std::vector<OracleRow> oracle_verification(const AnalysisReport& r, int modes,
                                           const std::vector<ExponentPair>& corners,
                                           const std::vector<double>& times) {
    require_propagation(r);
    require_grid(times);
    const QuadraticSymbol sym = make_symbol(r.n, r.Q);
    const HermiteDiscretization disc = discretize(sym, modes);
    const int k0 = r.singular.k0.value_or(0);
    std::vector<OracleRow> rows;
    std::vector<std::vector<double>> env, low;
    for (const auto& [p, q] : corners) {
        env.push_back(upper_bound_curve(*r.weights, r.energy->gamma, k0, p, q, times).envelope);
        low.push_back(sharpness_lower_bound(*r.weights, r.ground->u0, p, q, times));
    }
    const std::vector<KernelMatrix> kernels = semigroup_matrices(disc, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const KernelMatrix& k = kernels[i];
        for (std::size_t c = 0; c < corners.size(); ++c) {
            const auto [p, q] = corners[c];
            rows.push_back({times[i], p, q, corner_norm(k, p, q), env[c][i], low[c][i]});
        }
    }
    return rows;
}

std::string oracle_csv(const std::vector<OracleRow>& rows) {
    std::ostringstream os;
    os << "t,corner,oracle_norm,predicted_envelope,lower_bound\n";
    for (const auto& row : rows) {
        os << format_number(row.t) << "," << exponent_label(row.p) << "_" << exponent_label(row.q) << ","
           << format_number(row.oracle_norm) << "," << format_number(row.predicted_envelope) << ","
           << format_number(row.lower_bound) << "\n";
    }
    return os.str();
}

}  // namespace quadsemi
