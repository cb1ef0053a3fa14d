#pragma once

#include "quadlie/forms.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace quadlie {

/// Basis of Der(g) as matrices (RREF order of the flattened unknowns).
std::vector<Matrix> derivation_space(const LieAlgebra& g);
/// Derivations that are also skew for B.
std::vector<Matrix> skew_derivation_space(const LieAlgebra& g, const BilinearForm& b);

struct InvertibleSearch {
    std::optional<Matrix> found;
    Vector coefficients;          // combination of the space basis that gave `found`
    bool definitive = false;      // absence is proven (no invertible element exists)
    std::size_t grid_points = 0;  // grid points tried
    std::size_t random_trials = 0;
    std::string note;
};

/// Search a linear space of square matrices for a nonsingular element.
/// Small-first integer grid, then seeded random combinations; for at most
/// four parameters a full evaluation grid decides absence exactly.
InvertibleSearch find_invertible(const std::vector<Matrix>& space, std::uint64_t seed, std::size_t trials);

/// x.y = D^{-1}[x, D y]
class LeftSymmetricProduct {
public:
    LeftSymmetricProduct() = default;
    explicit LeftSymmetricProduct(std::size_t dim) : dim_(dim), p_(dim * dim * dim, Rational(0)) {}

    std::size_t dim() const noexcept { return dim_; }
    Rational& p(std::size_t i, std::size_t j, std::size_t k) { return p_[(i * dim_ + j) * dim_ + k]; }
    const Rational& p(std::size_t i, std::size_t j, std::size_t k) const { return p_[(i * dim_ + j) * dim_ + k]; }
    Vector product(const Vector& x, const Vector& y) const;

private:
    std::size_t dim_ = 0;
    std::vector<Rational> p_;
};

/// Builds the product and certifies left symmetry, Lie admissibility and
/// that D is a derivation of it. Throws StructuralError otherwise.
LeftSymmetricProduct left_symmetric(const LieAlgebra& g, const Matrix& d);

struct ConnectionReport {
    bool torsion_free = true;
    bool metric_compatible = true;
    std::vector<std::string> failures;
    bool ok() const noexcept { return torsion_free && metric_compatible; }
};

/// Torsion and compatibility of x.y with <x,y> = B(Dx, Dy).
ConnectionReport metric_connection_check(const LieAlgebra& g, const BilinearForm& b, const Matrix& d);

/// [Rx,Ry] - R[Rx,y] - R[x,Ry] = 0 on all basis pairs.
Check cybe_check(const LieAlgebra& g, const Matrix& r);
/// Same plus [x,y].
Check mcybe_check(const LieAlgebra& g, const Matrix& r);

}  // namespace quadlie
