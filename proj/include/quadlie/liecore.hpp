#pragma once

#include "quadlie/kernels.hpp"
#include "quadlie/lie_algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quadlie {

/// Subspace of K^n kept as an RREF basis, so equal subspaces compare equal.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t parent_dim) : parent_dim_(parent_dim) {}
    /// Span of arbitrary (possibly dependent) vectors.
    Subspace(std::size_t parent_dim, const std::vector<Vector>& vectors);

    static Subspace full(std::size_t n);

    std::size_t parent_dim() const noexcept { return parent_dim_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    bool is_zero() const noexcept { return basis_.empty(); }
    const std::vector<Vector>& basis() const noexcept { return basis_; }

    bool contains(const Vector& v) const;
    bool contains(const Subspace& other) const;

    /// n x dim matrix whose columns are the basis.
    Matrix as_columns() const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.parent_dim_ == b.parent_dim_ && a.basis_ == b.basis_;
    }

private:
    std::size_t parent_dim_ = 0;
    std::vector<Vector> basis_;
};

Subspace operator+(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

struct JacobiReport {
    bool ok = true;
    std::optional<kernels::Triple> witness;
    std::string message;
};

/// Exhaustive Jacobi check over i<j<k. Marks g certified on success.
JacobiReport jacobi_check(const LieAlgebra& g);
/// Throws InputError with the witness unless g satisfies Jacobi.
void require_lie(const LieAlgebra& g);

Subspace center(const LieAlgebra& g);

/// span{[a, b] : a in A, b in B}
Subspace bracket_span(const LieAlgebra& g, const Subspace& a, const Subspace& b);

struct LowerCentralSeries {
    Subspace derived;
    std::vector<Subspace> terms;   // C^0 = g, C^1 = [g,g], ... up to stabilization
    bool nilpotent = false;
    std::size_t nilpotency_class = 0;  // smallest k with C^k = 0; 0 when not nilpotent
};

LowerCentralSeries derived_and_lcs(const LieAlgebra& g);

bool is_ideal(const LieAlgebra& g, const Subspace& s);
bool is_subalgebra(const LieAlgebra& g, const Subspace& s);

struct Quotient {
    LieAlgebra algebra;
    Matrix projection;  // dim(q) x dim(g)
    Matrix section;     // dim(g) x dim(q), columns = complement basis
};

/// Lexicographically earliest coordinate complement of the ideal.
Quotient quotient(const LieAlgebra& g, const Subspace& ideal);
/// Explicit complement (columns of `complement`).
Quotient quotient(const LieAlgebra& g, const Subspace& ideal, const std::vector<Vector>& complement);

/// Standard basis vectors completing the RREF pivots of s.
std::vector<Vector> lex_complement(const Subspace& s);

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

struct Fingerprint {
    std::size_t dim = 0;
    std::size_t center_dim = 0;
    std::size_t derived_dim = 0;
    std::size_t nilpotency_class = 0;
    std::vector<std::size_t> lcs_profile;

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const LieAlgebra& g);
std::string to_string(const Fingerprint& f);

/// Name of a unit column is the matching basis name, others get fallback + position.
std::vector<std::string> basis_names(const std::vector<std::string>& names, const std::vector<Vector>& cols,
                                     const std::string& fallback);

}  // namespace quadlie
