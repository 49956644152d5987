#pragma once

#include "quadsemi/gaussian_calculus.hpp"
#include "quadsemi/normal_form.hpp"
#include "quadsemi/problem.hpp"
#include "quadsemi/propagator.hpp"
#include "quadsemi/singular_space.hpp"
#include "quadsemi/spectral.hpp"
#include "quadsemi/symbol.hpp"
#include "quadsemi/tolerances.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace quadsemi {

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;

    bool pass() const { return value <= tolerance; }
};

struct AnalyzeOptions {
    bool structure_only = false;
    std::uint64_t seed = 0;
    Tolerances tol{};
    double e_max = 0.0;  // lattice cutoff on Re; 0 means 10 gamma
};

struct AnalysisReport {
    std::string name;
    int n = 0;
    CMat Q;
    std::vector<std::string> warnings;

    double re_min_eigenvalue = 0.0;
    EllipticityReport ellipticity;
    SingularSpaceReport singular;
    CVec spectrum;  // eigenvalues of F

    // Present only when S = {0} and the structure was accepted.
    std::optional<HamiltonStructure> hamilton;
    std::optional<GroundEnergy> energy;
    std::optional<SpectrumLattice> lattice;
    std::optional<NormalForm> normal_form;
    std::optional<WeightFamily> weights;
    std::optional<GroundState> ground;
    double alpha_inf = 0.0;
    double t_inf = 0.0;

    std::vector<Check> checks;
    std::vector<std::string> skipped;
    std::vector<std::string> curve_files;

    bool propagation() const { return weights.has_value(); }
    bool failed() const;
};

// Structure always; spectral and propagation sections only when S = {0} and
// `structure_only` is off. Errors past the structural stage propagate.
AnalysisReport run_analyze(const ProblemFile& problem, const AnalyzeOptions& opts = {});

nlohmann::json report_json(const AnalysisReport& report, bool dump_normal_form = false);
std::string report_text(const AnalysisReport& report, bool dump_normal_form = false);

using ExponentPair = std::pair<double, double>;

// "2,2", "1,inf", "inf,inf"; throws ParseError.
ExponentPair parse_pair(const std::string& text);
std::string exponent_label(double p);
std::string pair_label(const ExponentPair& pq);  // "2_2", "1_inf"

// Shortest round-trip decimal representation.
std::string format_number(double v);

struct CurveOptions {
    std::vector<ExponentPair> pairs{{2.0, 2.0}};
    std::vector<double> grid = default_time_grid();
};

// Writes alpha.csv, sharpness.csv and one bounds_<p>_<q>.csv per pair into
// out_dir, appends the paths to report.curve_files and returns them.
// Throws EmptyGrid, IoError or SingularSpaceNontrivial.
std::vector<std::string> emit_curves(AnalysisReport& report, const std::string& out_dir,
                                     const CurveOptions& opts = {});

std::string bounds_csv(const AnalysisReport& report, const ExponentPair& pq,
                       const std::vector<double>& grid);

struct GaussianRow {
    double p, q, t, lower_bound, upper_envelope, ratio;
};

std::vector<GaussianRow> gaussian_verification(const AnalysisReport& report,
                                               const std::vector<ExponentPair>& pairs,
                                               const std::vector<double>& grid);
std::string gaussian_csv(const std::vector<GaussianRow>& rows);

struct OracleRow {
    double t, p, q, oracle_norm, predicted_envelope, lower_bound;
};

std::vector<OracleRow> oracle_verification(const AnalysisReport& report, int modes,
                                           const std::vector<ExponentPair>& corners,
                                           const std::vector<double>& times);
std::string oracle_csv(const std::vector<OracleRow>& rows);

// The five pairs (1,1), (1,inf), (2,2), (2,inf), (inf,inf).
std::vector<ExponentPair> standard_pairs();

}  // namespace quadsemi
