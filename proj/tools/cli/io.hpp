#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "kbiframe/kbiframe.hpp"

namespace kbiframe::cli {

using Json = nlohmann::ordered_json;

/// Malformed file, unreadable path or bad flag value; maps to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Complex numbers are always serialized as [re, im].
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json vector_to_json(std::span<const Complex> v);
Vector vector_from_json(const Json& j);

/// {"rows", "cols", "data": row-major nested [re, im] pairs}
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// {"dim", "count", "x": [...], "y": [...]}
Json pair_to_json(const VectorPairSystem& p);
VectorPairSystem pair_from_json(const Json& j);

Json tolerances_to_json(const ToleranceProfile& tol);
/// Applies BIFRAME_TOL_RANK / BIFRAME_TOL_PSD / BIFRAME_TOL_EQ overrides.
ToleranceProfile tolerances_from_env();

/// Real number, or the string "Infinity" for +inf.
Json real_to_json(double x);

Json bounds_to_json(const BoundsReport& r);
Json profile_to_json(const OperatorProfile& p);
Json verify_to_json(const VerifyResult& v);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
/// Two-space indented dump with trailing newline; the canonical on-disk form.
std::string dump(const Json& j);

ComplexMatrix read_matrix(const std::filesystem::path& path);
VectorPairSystem read_pair(const std::filesystem::path& path);

} // namespace kbiframe::cli
