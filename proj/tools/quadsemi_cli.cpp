#include "quadsemi/error.hpp"
#include "quadsemi/oracle.hpp"
#include "quadsemi/problem.hpp"
#include "quadsemi/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace quadsemi;

namespace {

ProblemFile load(const std::string& source, const Tolerances& tol) {
    if (std::filesystem::exists(source)) return parse_problem(source, tol);
    if (in_catalog(source)) return catalog_problem(source, tol);
    throw Error(ErrorCode::IoError, "no such file or catalog entry: " + source);
}

std::vector<ExponentPair> pairs_from(const std::vector<std::string>& raw,
                                     std::vector<ExponentPair> fallback) {
    if (raw.empty()) return fallback;
    std::vector<ExponentPair> out;
    for (const auto& s : raw) out.push_back(parse_pair(s));
    return out;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Short- and long-time L^p -> L^q bounds for quadratic semigroups"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for randomized probes")->capture_default_str();

    std::string file;
    bool dump_nf = false, structure_only = false, as_json = false;
    auto* analyze = app.add_subcommand("analyze", "structural and spectral report");
    analyze->add_option("file", file, "problem JSON or catalog name")->required();
    analyze->add_flag("--dump-normal-form", dump_nf, "print the normal-form matrices");
    analyze->add_flag("--structure-only", structure_only, "stop after the spectral analysis");
    analyze->add_flag("--json", as_json, "emit the report as JSON");

    std::vector<std::string> pq_raw;
    std::string out_dir = ".";
    auto* bounds = app.add_subcommand("bounds", "write alpha, envelope and lower-bound CSVs");
    bounds->add_option("file", file, "problem JSON or catalog name")->required();
    bounds->add_option("--pq", pq_raw, "exponent pair such as 2,2 or 1,inf (repeatable)");
    bounds->add_option("--out", out_dir, "output directory")->capture_default_str();

    bool gaussian = false, oracle = false;
    int modes = 0;
    std::string out_file;
    auto* verify = app.add_subcommand("verify", "compare bounds with exact or discretized norms");
    verify->add_option("file", file, "problem JSON or catalog name")->required();
    auto* g_flag = verify->add_flag("--gaussian", gaussian, "closed-form ground-state lower bounds");
    auto* o_flag = verify->add_flag("--oracle", oracle, "Hermite discretization corner norms");
    g_flag->excludes(o_flag);
    verify->add_option("--pq", pq_raw, "exponent pair (repeatable)");
    verify->add_option("--modes", modes, "Hermite modes per axis (oracle)");
    verify->add_option("--out", out_file, "CSV file (default stdout)");

    std::string entry;
    auto* catalog = app.add_subcommand("catalog", "built-in problems");
    catalog->require_subcommand(1);
    auto* list = catalog->add_subcommand("list", "list entries");
    auto* dump = catalog->add_subcommand("dump", "print an entry as JSON");
    dump->add_option("name", entry)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 4;
    }

    try {
        const Tolerances tol = Tolerances::from_env();
        AnalyzeOptions opts;
        opts.seed = seed;
        opts.tol = tol;

        if (*catalog) {
            if (*list) {
                for (const auto& n : catalog_names()) std::cout << n << "\n";
            } else if (*dump) {
                std::cout << catalog_json(entry).dump(2) << "\n";
            }
            return 0;
        }

        const ProblemFile problem = load(file, tol);
        for (const auto& w : problem.warnings) std::cerr << "warning: " << w << "\n";

        if (*analyze) {
            opts.structure_only = structure_only;
            const AnalysisReport r = run_analyze(problem, opts);
            if (as_json) {
                std::cout << report_json(r, dump_nf).dump(2) << "\n";
            } else {
                std::cout << report_text(r, dump_nf);
            }
            if (!r.singular.trivial() && !structure_only) {
                std::cerr << "SingularSpaceNontrivial: dim S = " << r.singular.dim << "\n";
                return exit_code(ErrorCode::SingularSpaceNontrivial);
            }
            return r.failed() ? 3 : 0;
        }

        AnalysisReport r = run_analyze(problem, opts);
        if (r.failed()) {
            std::cerr << report_text(r);
            return 3;
        }
        if (*bounds) {
            CurveOptions co;
            co.pairs = pairs_from(pq_raw, {{2.0, 2.0}});
            for (const auto& f : emit_curves(r, out_dir, co)) std::cout << f << "\n";
            return 0;
        }
        if (*verify) {
            if (oracle) {
                if (modes == 0) modes = r.n == 1 ? 128 : 16;
                std::vector<double> times;
                for (int k = 1; k <= 12; ++k) times.push_back(0.5 * k);
                times.insert(times.begin(), 0.1);
                const auto rows = oracle_verification(
                    r, modes, pairs_from(pq_raw, standard_pairs()), times);
                emit(oracle_csv(rows), out_file);
            } else {
                std::vector<double> grid;
                for (int k = 1; k <= 50; ++k) grid.push_back(0.1 * k);
                const auto rows = gaussian_verification(r, pairs_from(pq_raw, standard_pairs()), grid);
                emit(gaussian_csv(rows), out_file);
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
