#include "cli/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace kbiframe::cli {

namespace {

double finite_number(const Json& j, const char* what) {
    if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InputError(std::string(what) + ": non-finite number");
    return v;
}

std::size_t positive_size(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() <= 0) {
        throw InputError(std::string("field '") + key + "' must be a positive integer");
    }
    return j[key].get<std::size_t>();
}

std::vector<Vector> family_from_json(const Json& j, std::size_t count, std::size_t dim, const char* key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != count) {
        throw InputError(std::string("field '") + key + "' must be an array of " + std::to_string(count) + " vectors");
    }
    std::vector<Vector> out;
    out.reserve(count);
    for (const auto& v : j[key]) {
        Vector vec = vector_from_json(v);
        if (vec.size() != dim) {
            throw InputError(std::string("vector in '") + key + "' has length " + std::to_string(vec.size()) +
                             ", expected " + std::to_string(dim));
        }
        out.push_back(std::move(vec));
    }
    return out;
}

} // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw InputError("complex entry must be a [re, im] array");
    return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
}

Json vector_to_json(std::span<const Complex> v) {
    Json a = Json::array();
    for (const auto& z : v) a.push_back(complex_to_json(z));
    return a;
}

Vector vector_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("vector must be an array of [re, im] entries");
    Vector v;
    v.reserve(j.size());
    for (const auto& z : j) v.push_back(complex_from_json(z));
    return v;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["data"] = std::move(rows);
    return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("matrix file must hold a JSON object");
    const std::size_t rows = positive_size(j, "rows");
    const std::size_t cols = positive_size(j, "cols");
    if (!j.contains("data") || !j["data"].is_array() || j["data"].size() != rows) {
        throw InputError("field 'data' must be an array of " + std::to_string(rows) + " rows");
    }
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = j["data"][r];
        if (!row.is_array() || row.size() != cols) {
            throw InputError("row " + std::to_string(r) + " must hold " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[c]);
    }
    return m;
}

Json pair_to_json(const VectorPairSystem& p) {
    Json x = Json::array();
    Json y = Json::array();
    for (std::size_t j = 0; j < p.count(); ++j) {
        x.push_back(vector_to_json(p.x()[j]));
        y.push_back(vector_to_json(p.y()[j]));
    }
    Json out;
    out["dim"] = p.dim();
    out["count"] = p.count();
    out["x"] = std::move(x);
    out["y"] = std::move(y);
    return out;
}

VectorPairSystem pair_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("pair file must hold a JSON object");
    const std::size_t dim = positive_size(j, "dim");
    const std::size_t count = positive_size(j, "count");
    return {family_from_json(j, count, dim, "x"), family_from_json(j, count, dim, "y")};
}

Json tolerances_to_json(const ToleranceProfile& tol) {
    Json j;
    j["rank_rel"] = tol.rank_rel;
    j["psd_rel"] = tol.psd_rel;
    j["eq_rel"] = tol.eq_rel;
    return j;
}

ToleranceProfile tolerances_from_env() {
    ToleranceProfile tol;
    auto apply = [](const char* name, double& slot) {
        const char* raw = std::getenv(name);
        if (raw == nullptr || *raw == '\0') return;
        char* end = nullptr;
        const double v = std::strtod(raw, &end);
        if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
            throw InputError(std::string(name) + " must be a positive number");
        }
        slot = v;
    };
    apply("BIFRAME_TOL_RANK", tol.rank_rel);
    apply("BIFRAME_TOL_PSD", tol.psd_rel);
    apply("BIFRAME_TOL_EQ", tol.eq_rel);
    return tol;
}

Json real_to_json(double x) {
    if (std::isinf(x) && x > 0) return "Infinity";
    return x;
}

Json bounds_to_json(const BoundsReport& r) {
    Json j;
    j["feasible"] = r.feasible;
    j["alpha_opt"] = r.alpha_opt ? Json(*r.alpha_opt) : Json(nullptr);
    j["beta_opt"] = r.beta_opt;
    j["alpha_sup"] = r.alpha_sup;
    j["lambda_min_form"] = r.lambda_min_form;
    j["hermitian_defect"] = r.hermitian_defect;
    if (r.witness) {
        j["witness"] = vector_to_json(*r.witness);
        j["witness_form"] = r.witness_form;
        j["witness_k_norm2"] = r.witness_k_norm2;
    } else {
        j["witness"] = nullptr;
    }
    j["bisection_steps"] = r.bisection_steps;
    j["tolerances"] = tolerances_to_json(r.tol_used);
    return j;
}

Json profile_to_json(const OperatorProfile& p) {
    Json j;
    j["gamma"] = real_to_json(p.gamma);
    j["rank"] = p.rank;
    j["ep"] = p.is_ep;
    j["normal"] = p.is_normal;
    j["semi_regular"] = p.is_semi_regular;
    j["invertible"] = p.is_invertible;
    j["closed_range"] = p.closed_range;
    j["penrose_residual"] = p.penrose_residual;
    Json chain = Json::array();
    for (bool b : p.semi_regular_chain) chain.push_back(b);
    j["kernel_in_power_range"] = std::move(chain);
    return j;
}

Json verify_to_json(const VerifyResult& v) {
    Json j;
    j["holds"] = v.holds;
    j["lower_slack"] = v.lower_slack;
    j["upper_slack"] = v.upper_slack;
    Json viol = Json::array();
    for (const auto& b : v.violations) {
        Json e;
        e["side"] = std::string(to_string(b.side));
        e["margin"] = b.margin;
        e["lower_term"] = b.lower_term;
        e["form"] = b.form;
        e["upper_term"] = b.upper_term;
        e["witness"] = vector_to_json(b.witness);
        viol.push_back(std::move(e));
    }
    j["violations"] = std::move(viol);
    return j;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("cannot parse " + path.string() + ": " + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << dump(j);
    if (!out) throw InputError("write failed for " + path.string());
}

ComplexMatrix read_matrix(const std::filesystem::path& path) {
    try {
        return matrix_from_json(read_json_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

VectorPairSystem read_pair(const std::filesystem::path& path) {
    try {
        return pair_from_json(read_json_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    } catch (const Error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

} // namespace kbiframe::cli
