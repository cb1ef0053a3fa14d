#pragma once

#include "quadlie/tstar.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quadlie {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Everything an algebra file can carry. Indices in the file are 0-based.
struct AlgebraDoc {
    LieAlgebra g;
    std::optional<BilinearForm> form_b;
    std::optional<BilinearForm> form_omega;
    std::vector<Matrix> derivations;
    std::optional<CyclicCocycle> theta;
    std::optional<Subspace> manin_u, manin_v;
};

/// Parses text into JSON. Syntax errors become InputError with line and column.
Json parse_json_text(const std::string& text, const std::string& origin);
Json read_json_file(const std::string& path);

/// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& j);

Json to_json(const Rational& r);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const CyclicCocycle& theta);
Json to_json(const AlgebraDoc& doc);

/// All of these throw InputError naming the offending field.
Rational rational_from_json(const Json& j, const std::string& field);
Vector vector_from_json(const Json& j, std::size_t n, const std::string& field);
Matrix matrix_from_json(const Json& j, std::size_t n, const std::string& field);
CyclicCocycle cocycle_from_json(const Json& j, std::size_t n, const std::string& field);
/// Shapes, index ranges and form kinds only; Jacobi and friends are left to the caller.
AlgebraDoc algebra_from_json(const Json& j);

/// Accepts either an algebra file or a bundle with an "algebra" member.
AlgebraDoc load_algebra(const std::string& path);

}  // namespace quadlie
