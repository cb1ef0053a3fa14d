#include "quadlie/forms.hpp"

#include "quadlie/errors.hpp"
#include "quadlie/ratlin.hpp"
#include <random>

namespace quadlie {

BilinearForm::BilinearForm(Matrix m, FormKind kind) : m_(std::move(m)), kind_(kind) {
    if (!m_.is_square()) throw InputError("bilinear form matrix must be square");
    if (kind_ == FormKind::symmetric && !m_.is_symmetric()) throw InputError("form declared symmetric is not symmetric");
    if (kind_ == FormKind::skew && !m_.is_antisymmetric()) throw InputError("form declared skew is not skew-symmetric");
}

BilinearForm BilinearForm::hyperbolic(std::size_t n) {
    Matrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) m(i, n + i) = m(n + i, i) = 1;
    return symmetric(std::move(m));
}

Rational BilinearForm::operator()(const Vector& x, const Vector& y) const {
    if (x.size() != dim() || y.size() != dim()) throw InputError("form evaluated on vectors of the wrong length");
    return dot(x, m_ * y);
}

bool BilinearForm::nondegenerate() const { return !is_zero(determinant(m_)); }

namespace {

void require_dims(const LieAlgebra& g, const BilinearForm& b) {
    if (b.dim() != g.dim()) throw InputError("form dimension does not match the algebra");
}

std::string triple_names(const LieAlgebra& g, const kernels::Triple& t) {
    const auto& n = g.names();
    return "(" + n[t[0]] + ", " + n[t[1]] + ", " + n[t[2]] + ")";
}

}  // namespace

Check is_invariant_scalar_product(const LieAlgebra& g, const BilinearForm& b) {
    require_dims(g, b);
    if (b.kind() != FormKind::symmetric) throw InputError("invariant scalar product must be a symmetric form");
    if (!b.nondegenerate()) return Check::fail("form is degenerate");
    if (const auto w = kernels::invariance_violation(g, b.matrix()))
        return Check::fail("B([x,y],z) != B(x,[y,z]) on " + triple_names(g, *w), {(*w)[0], (*w)[1], (*w)[2]});
    return Check::pass();
}

Check is_symplectic(const LieAlgebra& g, const BilinearForm& w) {
    require_dims(g, w);
    if (w.kind() != FormKind::skew) throw InputError("symplectic candidate must be a skew form");
    if (g.dim() % 2 != 0) return Check::fail("odd dimension");
    if (!w.nondegenerate()) return Check::fail("form is degenerate");
    if (const auto t = kernels::cocycle_violation(g, w.matrix()))
        return Check::fail("2-cocycle identity fails on " + triple_names(g, *t), {(*t)[0], (*t)[1], (*t)[2]});
    return Check::pass();
}

bool is_derivation(const LieAlgebra& g, const Matrix& m) {
    if (m.rows() != g.dim() || m.cols() != g.dim()) throw InputError("derivation matrix has the wrong shape");
    return !kernels::leibniz_violation(g, m);
}

bool is_skew(const BilinearForm& b, const Matrix& m) {
    if (m.rows() != b.dim() || m.cols() != b.dim()) throw InputError("matrix and form sizes differ");
    return (m.transpose() * b.matrix() + b.matrix() * m).is_zero();
}

DerivationMatrix certify_derivation(const LieAlgebra& g, const Matrix& m, const BilinearForm* b) {
    DerivationMatrix d;
    d.matrix = m;
    d.derivation = is_derivation(g, m);
    d.skew = b != nullptr && is_skew(*b, m);
    d.invertible = !is_zero(determinant(m));
    d.semisimple = minpoly_squarefree(m);
    return d;
}

DerivationMatrix derivation_from_pair(const LieAlgebra& g, const BilinearForm& b, const BilinearForm& w) {
    require_dims(g, b);
    require_dims(g, w);
    if (b.kind() != FormKind::symmetric || w.kind() != FormKind::skew)
        throw InputError("derivation_from_pair needs a symmetric B and a skew w");
    if (!b.nondegenerate()) throw InputError("B is degenerate");
    // B(D e_i, e_j) = (D^T B)_ij = w_ij, so D = -B^{-1} w
    const Matrix d = Rational(-1) * (inverse(b.matrix()) * w.matrix());
    DerivationMatrix out = certify_derivation(g, d, &b);
    if (!out.derivation) throw StructuralError("recovered D is not a derivation");
    if (!out.invertible) throw StructuralError("recovered D is singular (w degenerate)");
    if (!out.skew) throw StructuralError("recovered D is not skew-symmetric for B");
    return out;
}

BilinearForm symplectic_from_derivation(const LieAlgebra& g, const BilinearForm& b, const Matrix& d) {
    require_dims(g, b);
    if (d.rows() != g.dim() || d.cols() != g.dim()) throw InputError("derivation matrix has the wrong shape");
    if (is_zero(determinant(d))) throw InputError("D is not invertible");
    if (!is_skew(b, d)) throw InputError("D is not skew-symmetric for B");
    if (!is_derivation(g, d)) throw InputError("D is not a derivation");
    BilinearForm w = BilinearForm::skew(d.transpose() * b.matrix());
    if (const auto c = is_symplectic(g, w); !c) throw StructuralError("B(D.,.) is not symplectic: " + c.reason);
    return w;
}

Subspace orthogonal(const BilinearForm& b, const Subspace& s) {
    if (s.parent_dim() != b.dim()) throw InputError("subspace and form sizes differ");
    if (s.is_zero()) return Subspace::full(b.dim());
    std::vector<Vector> rows;
    for (const auto& v : s.basis()) rows.push_back(b.matrix().transpose() * v);
    return Subspace(b.dim(), kernel(Matrix::from_rows(rows, b.dim())));
}

Matrix gram(const BilinearForm& b, const Subspace& s) {
    const auto& v = s.basis();
    Matrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = b(v[i], v[j]);
    return m;
}

Isotropy isotropy_class(const BilinearForm& b, const Subspace& s) {
    if (orthogonal(b, s) == s) return Isotropy::lagrangian;
    const Matrix gm = gram(b, s);
    if (gm.is_zero()) return Isotropy::completely_isotropic;
    if (!is_zero(determinant(gm))) return Isotropy::nondegenerate;
    return Isotropy::mixed;
}

std::string to_string(Isotropy i) {
    switch (i) {
        case Isotropy::nondegenerate: return "nondegenerate";
        case Isotropy::completely_isotropic: return "completely-isotropic";
        case Isotropy::lagrangian: return "lagrangian";
        case Isotropy::mixed: return "mixed";
    }
    return "?";
}

std::vector<Matrix> symmetric_centroid(const LieAlgebra& g, const BilinearForm& b) {
    const std::size_t n = g.dim();
    const Matrix& m = b.matrix();
    std::vector<Vector> rows;
    const auto var = [n](std::size_t r, std::size_t c) { return r * n + c; };
    for (std::size_t i = 0; i < n; ++i) {
        const Matrix ad = g.ad(i);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                Vector row(n * n);
                for (std::size_t k = 0; k < n; ++k) {
                    row[var(r, k)] += ad(k, c);
                    row[var(k, c)] -= ad(r, k);
                }
                if (!is_zero(row)) rows.push_back(std::move(row));
            }
    }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            Vector row(n * n);
            for (std::size_t k = 0; k < n; ++k) {
                row[var(k, r)] += m(k, c);
                row[var(k, c)] -= m(r, k);
            }
            if (!is_zero(row)) rows.push_back(std::move(row));
        }
    std::vector<Matrix> out;
    for (const auto& v : kernel(Matrix::from_rows(rows, n * n))) {
        Matrix t(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) t(r, c) = v[var(r, c)];
        out.push_back(std::move(t));
    }
    return out;
}

bool centroid_is_local(const LieAlgebra& g, const BilinearForm& b) {
    const std::size_t n = g.dim();
    const std::vector<Matrix> basis = symmetric_centroid(g, b);
    std::mt19937_64 rng(n * 7919 + basis.size());
    Matrix t(n, n);
    for (const auto& m : basis) t = t + Rational(static_cast<long>(rng() % 101) - 50) * m;
    const Polynomial p = char_poly(t);
    return divmod(p, gcd(p, p.derivative())).first.degree() == 1;
}

namespace {

// Generalized eigenspaces of a self-adjoint centroid element are ideals, mutually
// orthogonal, hence nondegenerate. An orthogonal splitting shows up as a projection.
std::optional<Subspace> centroid_witness(const LieAlgebra& g, const BilinearForm& b) {
    const std::size_t n = g.dim();
    const std::vector<Matrix> basis = symmetric_centroid(g, b);
    if (basis.size() < 2) return std::nullopt;  // only the scalars
    std::vector<Matrix> tries = basis;
    // a few fixed combinations, in case no single basis element separates
    for (long salt = 1; salt <= 3; ++salt) {
        Matrix t(n, n);
        for (std::size_t k = 0; k < basis.size(); ++k)
            t = t + Rational(static_cast<long>((k + 1) * salt % 7) - 3) * basis[k];
        tries.push_back(std::move(t));
    }
    for (const auto& t : tries) {
        for (const auto& [r, mult] : rational_roots(char_poly(t)).roots) {
            (void)mult;
            const Subspace w(n, generalized_eigenspace(t, r));
            if (w.is_zero() || w.dim() == n) continue;
            if (is_ideal(g, w) && !is_zero(determinant(gram(b, w)))) return w;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Subspace> reducibility_witness(const LieAlgebra& g, const BilinearForm& b) {
    require_dims(g, b);
    const std::size_t n = g.dim();
    if (n < 2) return std::nullopt;
    const Subspace z = center(g);
    const auto& zb = z.basis();
    // any line in the center is an ideal; look for a non-isotropic one
    for (std::size_t i = 0; i < zb.size(); ++i) {
        if (!is_zero(b(zb[i], zb[i]))) return Subspace(n, {zb[i]});
        for (std::size_t j = i + 1; j < zb.size(); ++j)
            if (!is_zero(b(zb[i], zb[j]))) return Subspace(n, {zb[i] + zb[j]});
    }
    std::vector<Subspace> candidates{z};
    const auto lcs = derived_and_lcs(g);
    for (std::size_t k = 1; k < lcs.terms.size(); ++k) candidates.push_back(lcs.terms[k]);
    const std::size_t base = candidates.size();
    for (std::size_t k = 0; k < base; ++k) {
        candidates.push_back(orthogonal(b, candidates[k]));
        candidates.push_back(intersect(candidates[k], orthogonal(b, candidates[k])));
    }
    for (const auto& s : candidates) {
        if (s.is_zero() || s.dim() == n) continue;
        if (!is_ideal(g, s)) continue;
        if (!is_zero(determinant(gram(b, s)))) return s;
    }
    return centroid_witness(g, b);
}

std::string isometry_defect(const LieAlgebra& g1, const BilinearForm& b1, const LieAlgebra& g2,
                            const BilinearForm& b2, const Matrix& p) {
    if (g1.dim() != g2.dim()) return "dimensions differ";
    if (p.rows() != g2.dim() || p.cols() != g1.dim()) return "map has the wrong shape";
    if (is_zero(determinant(p))) return "map is singular";
    if (auto h = homomorphism_defect(g1, g2, p); !h.empty()) return h;
    if (!(p.transpose() * b2.matrix() * p == b1.matrix())) return "forms are not preserved";
    return {};
}

}  // namespace quadlie
