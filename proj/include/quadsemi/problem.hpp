#pragma once

#include "quadsemi/linalg.hpp"
#include "quadsemi/symbol.hpp"
#include "quadsemi/tolerances.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace quadsemi {

struct ProblemFile {
    std::string name;
    int n = 0;
    RMat Q_re;
    RMat Q_im;
    nlohmann::json params = nlohmann::json::object();
    std::vector<std::string> warnings;
    QuadraticSymbol symbol;
};

// Throws ParseError, DimensionMismatch (with the offending field) or ReNotPSD.
ProblemFile parse_problem_json(const nlohmann::json& doc, const Tolerances& tol = {});
ProblemFile parse_problem_text(const std::string& text, const Tolerances& tol = {});
// Also throws IoError when the file cannot be read.
ProblemFile parse_problem(const std::string& path, const Tolerances& tol = {});

nlohmann::json problem_to_json(const std::string& name, const CMat& q,
                               const nlohmann::json& params = nlohmann::json::object());

// Built-in problems: free_schrodinger, harmonic, heat, davies, kfp, harmonic2, coupled2.
std::vector<std::string> catalog_names();
bool in_catalog(const std::string& name);
nlohmann::json catalog_json(const std::string& name);
ProblemFile catalog_problem(const std::string& name, const Tolerances& tol = {});

// q = eta^2 + v^2/4 + i(v xi - a x eta) on (x, v, xi, eta).
CMat kfp_matrix(double a);

}  // namespace quadsemi
