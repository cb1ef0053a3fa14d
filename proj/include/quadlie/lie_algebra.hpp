#pragma once

#include "quadlie/matrix.hpp"
#include "quadlie/rational.hpp"

#include <atomic>
#include <string>
#include <vector>

namespace quadlie {

/// Finite-dimensional Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c(i,j,k) e_k over a named basis.
///
/// Antisymmetry is maintained by construction (set_bracket writes both
/// c(i,j,.) and c(j,i,.)). The Jacobi identity is not: call
/// `jacobi_check` / `require_lie` before handing a hand-built value to a
/// construction.
class LieAlgebra {
public:
    LieAlgebra() = default;
    explicit LieAlgebra(std::size_t dim);
    LieAlgebra(std::size_t dim, std::vector<std::string> names);
    LieAlgebra(const LieAlgebra& other);
    LieAlgebra(LieAlgebra&& other) noexcept;
    LieAlgebra& operator=(const LieAlgebra& other);
    LieAlgebra& operator=(LieAlgebra&& other) noexcept;

    static LieAlgebra abelian(std::size_t dim, const std::string& prefix = "x");

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    void set_names(std::vector<std::string> names);

    const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }

    /// Sets [e_i, e_j] = v and [e_j, e_i] = -v.
    void set_bracket(std::size_t i, std::size_t j, const Vector& v);
    void set_structure(std::size_t i, std::size_t j, std::size_t k, const Rational& value);

    Vector bracket(std::size_t i, std::size_t j) const;
    Vector bracket(const Vector& x, const Vector& y) const;

    /// ad(x) as a matrix: column j is [x, e_j].
    Matrix ad(const Vector& x) const;
    Matrix ad(std::size_t i) const;

    bool is_abelian() const;

    /// Structure constants equal (names ignored).
    bool same_structure(const LieAlgebra& other) const { return dim_ == other.dim_ && c_ == other.c_; }

    /// Set once jacobi_check succeeds; cleared by any mutation.
    bool jacobi_certified() const noexcept { return jacobi_ok_.load(std::memory_order_acquire); }
    void mark_jacobi_certified() const noexcept { jacobi_ok_.store(true, std::memory_order_release); }

private:
    std::size_t dim_ = 0;
    std::vector<std::string> names_;
    std::vector<Rational> c_;
    mutable std::atomic<bool> jacobi_ok_{false};
};

/// Default basis names prefix1..prefixN.
std::vector<std::string> numbered_names(const std::string& prefix, std::size_t n);

/// Change of basis: the returned algebra has basis p.column(0..n-1) of `g`.
/// `p` must be invertible.
LieAlgebra change_basis(const LieAlgebra& g, const Matrix& p);

/// Whether `p` (columns = images of the basis of `from`) is a Lie algebra
/// homomorphism from -> to. Returns a description of the first failure.
std::string homomorphism_defect(const LieAlgebra& from, const LieAlgebra& to, const Matrix& p);

}  // namespace quadlie
