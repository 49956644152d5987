#include "quadsemi/problem.hpp"

#include "quadsemi/error.hpp"

#include <fstream>
#include <sstream>

namespace quadsemi {

namespace {

using nlohmann::json;

std::string line_context(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::ostringstream os;
    os << "line " << line << ", column " << col;
    return os.str();
}

RMat read_matrix(const json& doc, const std::string& field, int dim) {
    if (!doc.contains(field)) {
        if (field == "Q_im") return RMat::Zero(dim, dim);
        throw Error(ErrorCode::ParseError, "missing field '" + field + "'");
    }
    const json& m = doc.at(field);
    if (!m.is_array()) throw Error(ErrorCode::ParseError, "field '" + field + "' is not an array");
    if (static_cast<int>(m.size()) != dim) {
        std::ostringstream os;
        os << "field '" << field << "' has " << m.size() << " rows, expected " << dim;
        throw Error(ErrorCode::DimensionMismatch, os.str());
    }
    RMat out(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const json& row = m[i];
        if (!row.is_array()) {
            std::ostringstream os;
            os << "field '" << field << "' row " << i << " is not an array";
            throw Error(ErrorCode::ParseError, os.str());
        }
        if (static_cast<int>(row.size()) != dim) {
            std::ostringstream os;
            os << "field '" << field << "' row " << i << " has " << row.size() << " entries, expected "
               << dim;
            throw Error(ErrorCode::DimensionMismatch, os.str());
        }
        for (int j = 0; j < dim; ++j) {
            if (!row[j].is_number()) {
                std::ostringstream os;
                os << "field '" << field << "' entry (" << i << ", " << j << ") is not a number";
                throw Error(ErrorCode::ParseError, os.str());
            }
            out(i, j) = row[j].get<double>();
        }
    }
    return out;
}

json matrix_json(const RMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

ProblemFile parse_problem_json(const json& doc, const Tolerances& tol) {
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "problem must be a JSON object");
    ProblemFile p;
    p.name = doc.value("name", std::string("unnamed"));
    if (!doc.contains("n") || !doc.at("n").is_number_integer()) {
        throw Error(ErrorCode::ParseError, "field 'n' must be a positive integer");
    }
    p.n = doc.at("n").get<int>();
    if (p.n < 1) throw Error(ErrorCode::ParseError, "field 'n' must be a positive integer");
    p.Q_re = read_matrix(doc, "Q_re", 2 * p.n);
    p.Q_im = read_matrix(doc, "Q_im", 2 * p.n);
    if (doc.contains("params")) p.params = doc.at("params");
    const CMat raw = p.Q_re.cast<cplx>() + I_unit * p.Q_im.cast<cplx>();
    p.symbol = make_symbol(p.n, raw, tol);
    if (p.symbol.was_asymmetric()) {
        p.warnings.push_back("Q was not symmetric; replaced by (Q + Q^T) / 2");
    }
    return p;
}

ProblemFile parse_problem_text(const std::string& text, const Tolerances& tol) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError,
                    "malformed JSON at " + line_context(text, e.byte) + ": " + e.what());
    }
    return parse_problem_json(doc, tol);
}

ProblemFile parse_problem(const std::string& path, const Tolerances& tol) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_problem_text(ss.str(), tol);
    } catch (const Error& e) {
        if (error_category(e.code()) != ErrorCategory::Input) throw;
        throw Error(e.code(), path + ": " + std::string(e.what()));
    }
}

json problem_to_json(const std::string& name, const CMat& q, const json& params) {
    json doc;
    doc["name"] = name;
    doc["n"] = static_cast<int>(q.rows() / 2);
    doc["Q_re"] = matrix_json(q.real());
    doc["Q_im"] = matrix_json(q.imag());
    if (!params.empty()) doc["params"] = params;
    return doc;
}

CMat kfp_matrix(double a) {
    CMat q = CMat::Zero(4, 4);
    q(3, 3) = 1.0;
    q(1, 1) = 0.25;
    q(1, 2) = q(2, 1) = 0.5 * I_unit;
    q(0, 3) = q(3, 0) = -0.5 * a * I_unit;
    return q;
}

std::vector<std::string> catalog_names() {
    return {"free_schrodinger", "harmonic", "heat", "davies", "kfp", "harmonic2", "coupled2"};
}

bool in_catalog(const std::string& name) {
    for (const auto& c : catalog_names()) {
        if (c == name) return true;
    }
    return false;
}

json catalog_json(const std::string& name) {
    CMat q;
    json params = json::object();
    if (name == "free_schrodinger") {
        q = CMat::Zero(2, 2);
        q(1, 1) = I_unit;
    } else if (name == "harmonic") {
        q = CMat::Identity(2, 2);
    } else if (name == "heat") {
        q = CMat::Zero(2, 2);
        q(1, 1) = 1.0;
    } else if (name == "davies") {
        q = CMat::Zero(2, 2);
        q(0, 0) = I_unit;
        q(1, 1) = 1.0;
    } else if (name == "kfp") {
        q = kfp_matrix(1.0);
        params["a"] = 1.0;
    } else if (name == "harmonic2") {
        q = CMat::Identity(4, 4);
    } else if (name == "coupled2") {
        RMat re(4, 4), im(4, 4);
        re << 1.0, 0.2, 0.0, 0.1,
              0.2, 0.6, 0.1, 0.0,
              0.0, 0.1, 0.8, 0.0,
              0.1, 0.0, 0.0, 0.5;
        im << 0.3, 0.0, 0.2, 0.0,
              0.0, -0.4, 0.0, 0.1,
              0.2, 0.0, 0.5, 0.3,
              0.0, 0.1, 0.3, 0.0;
        q = re.cast<cplx>() + I_unit * im.cast<cplx>();
    } else {
        throw Error(ErrorCode::IoError, "no catalog entry named '" + name + "'");
    }
    return problem_to_json(name, q, params);
}

ProblemFile catalog_problem(const std::string& name, const Tolerances& tol) {
    return parse_problem_json(catalog_json(name), tol);
}

}  // namespace quadsemi
