#pragma once

// Exact linear algebra over the rationals. Everything here is deterministic
// and free of shared state.

#include "quadlie/matrix.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace quadlie {

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;  // strictly increasing
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis of {v : m v = 0}, one vector per free column, read off the RREF.
std::vector<Vector> kernel(const Matrix& m);

struct Solution {
    Vector particular;             // free variables set to zero
    std::vector<Vector> kernel;
};

/// Solves a x = b exactly. Empty optional when inconsistent.
std::optional<Solution> solve(const Matrix& a, const Vector& b);

Rational determinant(const Matrix& m);
Matrix inverse(const Matrix& m);

// ---- spans of vector lists --------------------------------------------------

/// Nonzero rows of the RREF of the stacked vectors.
std::vector<Vector> rref_basis(const std::vector<Vector>& vectors, std::size_t dim);
bool in_span(const std::vector<Vector>& basis, const Vector& v);
bool spans_equal(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim);
std::vector<Vector> intersect_spans(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim);
/// Coordinates of v in the given (independent) basis; empty when v is outside the span.
std::optional<Vector> coordinates(const std::vector<Vector>& basis, const Vector& v);

// ---- polynomials ------------------------------------------------------------

/// Univariate rational polynomial, coefficients in ascending degree order.
/// The zero polynomial has no coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> ascending);

    static Polynomial monomial(const Rational& c, std::size_t degree);

    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const Rational& leading() const { return coeffs_.back(); }

    Rational evaluate(const Rational& x) const;
    Matrix evaluate(const Matrix& m) const;
    Polynomial derivative() const;
    Polynomial monic() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Quotient and remainder of a / b (b nonzero).
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

/// Monic characteristic polynomial det(t I - m), via Hessenberg reduction.
Polynomial char_poly(const Matrix& m);

/// Monic minimal polynomial.
Polynomial minimal_polynomial(const Matrix& m);

struct RationalRoots {
    std::vector<std::pair<Rational, std::size_t>> roots;  // ascending, with multiplicity
    bool splits = false;                                  // multiplicities sum to the degree
};

/// All rational roots via rational-root-theorem candidates.
RationalRoots rational_roots(const Polynomial& p);

/// ker (m - lambda I)^n, n = size of m.
std::vector<Vector> generalized_eigenspace(const Matrix& m, const Rational& lambda);

/// ker (m - lambda I).
std::vector<Vector> eigenspace(const Matrix& m, const Rational& lambda);

/// True iff the minimal polynomial is squarefree (gcd(p, p') = 1), i.e. m is
/// diagonalizable over an algebraic closure.
bool minpoly_squarefree(const Matrix& m);

}  // namespace quadlie
