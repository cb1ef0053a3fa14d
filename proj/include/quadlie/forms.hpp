#pragma once

#include "quadlie/liecore.hpp"

#include <optional>
#include <string>

namespace quadlie {

enum class FormKind { symmetric, skew };

/// Bilinear form B(x, y) = x^T M y. The kind is checked on construction.
class BilinearForm {
public:
    BilinearForm() = default;
    BilinearForm(Matrix m, FormKind kind);

    static BilinearForm symmetric(Matrix m) { return {std::move(m), FormKind::symmetric}; }
    static BilinearForm skew(Matrix m) { return {std::move(m), FormKind::skew}; }
    /// x1..xn, f1..fn pairing: B(x_i, f_j) = delta_ij.
    static BilinearForm hyperbolic(std::size_t n);

    const Matrix& matrix() const noexcept { return m_; }
    FormKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return m_.rows(); }

    Rational operator()(const Vector& x, const Vector& y) const;
    bool nondegenerate() const;

    friend bool operator==(const BilinearForm&, const BilinearForm&) = default;

private:
    Matrix m_;
    FormKind kind_ = FormKind::symmetric;
};

/// Result of a pass/fail certification with the first failing index tuple.
struct Check {
    bool ok = true;
    std::string reason;
    std::vector<std::size_t> witness;

    explicit operator bool() const noexcept { return ok; }
    static Check pass() { return {}; }
    static Check fail(std::string why, std::vector<std::size_t> w = {}) { return {false, std::move(why), std::move(w)}; }
};

Check is_invariant_scalar_product(const LieAlgebra& g, const BilinearForm& b);
Check is_symplectic(const LieAlgebra& g, const BilinearForm& w);

/// Endomorphism with the properties that have been verified for it.
struct DerivationMatrix {
    Matrix matrix;
    bool derivation = false;
    bool skew = false;        // w.r.t. the scalar product it was certified against
    bool invertible = false;
    bool semisimple = false;  // squarefree minimal polynomial
};

bool is_derivation(const LieAlgebra& g, const Matrix& m);
/// B(Mx, y) + B(x, My) = 0
bool is_skew(const BilinearForm& b, const Matrix& m);
/// Fills every flag; skew only when b is given.
DerivationMatrix certify_derivation(const LieAlgebra& g, const Matrix& m, const BilinearForm* b = nullptr);

/// Unique D with B(D x, y) = w(x, y); certified invertible skew derivation.
DerivationMatrix derivation_from_pair(const LieAlgebra& g, const BilinearForm& b, const BilinearForm& w);
/// w(x, y) = B(D x, y); certified symplectic.
BilinearForm symplectic_from_derivation(const LieAlgebra& g, const BilinearForm& b, const Matrix& d);

Subspace orthogonal(const BilinearForm& b, const Subspace& s);

enum class Isotropy { nondegenerate, completely_isotropic, lagrangian, mixed };
Isotropy isotropy_class(const BilinearForm& b, const Subspace& s);
std::string to_string(Isotropy i);

/// Gram matrix of b restricted to the basis of s.
Matrix gram(const BilinearForm& b, const Subspace& s);

/// A proper nonzero nondegenerate ideal, if one is found among central lines
/// characteristic ideals and the self-adjoint centroid. Absence does not prove irreducibility.
std::optional<Subspace> reducibility_witness(const LieAlgebra& g, const BilinearForm& b);

/// Basis of {T : T ad(x) = ad(x) T for all x, B(Tx, y) = B(x, Ty)}.
std::vector<Matrix> symmetric_centroid(const LieAlgebra& g, const BilinearForm& b);

/// True when a generic element of symmetric_centroid has a single eigenvalue over the
/// algebraic closure, i.e. no orthogonal splitting exists even after extending scalars.
/// Randomized with a fixed seed; a wrong "true" needs an unlucky combination.
bool centroid_is_local(const LieAlgebra& g, const BilinearForm& b);

/// Empty when p (columns = images) is an isometric isomorphism (g1,b1) -> (g2,b2).
std::string isometry_defect(const LieAlgebra& g1, const BilinearForm& b1, const LieAlgebra& g2,
                            const BilinearForm& b2, const Matrix& p);

}  // namespace quadlie
