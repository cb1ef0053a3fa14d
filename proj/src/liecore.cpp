#include "quadlie/liecore.hpp"

#include "quadlie/errors.hpp"
#include "quadlie/ratlin.hpp"

#include <sstream>

namespace quadlie {

Subspace::Subspace(std::size_t parent_dim, const std::vector<Vector>& vectors)
    : parent_dim_(parent_dim), basis_(rref_basis(vectors, parent_dim)) {
    for (const auto& v : vectors)
        if (v.size() != parent_dim) throw InputError("subspace vector has the wrong length");
}

Subspace Subspace::full(std::size_t n) {
    std::vector<Vector> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back(unit_vector(n, i));
    return Subspace(n, e);
}

bool Subspace::contains(const Vector& v) const {
    if (v.size() != parent_dim_) throw InputError("vector length does not match subspace");
    return in_span(basis_, v);
}

bool Subspace::contains(const Subspace& other) const {
    for (const auto& v : other.basis_)
        if (!contains(v)) return false;
    return true;
}

Matrix Subspace::as_columns() const { return Matrix::from_columns(basis_, parent_dim_); }

Subspace operator+(const Subspace& a, const Subspace& b) {
    if (a.parent_dim() != b.parent_dim()) throw InputError("subspaces of different spaces");
    std::vector<Vector> all = a.basis();
    all.insert(all.end(), b.basis().begin(), b.basis().end());
    return Subspace(a.parent_dim(), all);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.parent_dim() != b.parent_dim()) throw InputError("subspaces of different spaces");
    return Subspace(a.parent_dim(), intersect_spans(a.basis(), b.basis(), a.parent_dim()));
}

JacobiReport jacobi_check(const LieAlgebra& g) {
    JacobiReport r;
    if (g.jacobi_certified()) return r;
    r.witness = kernels::jacobi_violation(g);
    if (r.witness) {
        r.ok = false;
        const auto& n = g.names();
        const auto [i, j, k] = *r.witness;
        r.message = "Jacobi identity fails on (" + n[i] + ", " + n[j] + ", " + n[k] + ")";
    } else {
        g.mark_jacobi_certified();
    }
    return r;
}

void require_lie(const LieAlgebra& g) {
    const auto r = jacobi_check(g);
    if (!r.ok) throw InputError(r.message);
}

Subspace center(const LieAlgebra& g) {
    const std::size_t n = g.dim();
    // rows (j,k): v -> k-th coordinate of [v, e_j]
    Matrix stacked(n * n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) stacked(j * n + k, i) = g.c(i, j, k);
    return Subspace(n, kernel(stacked));
}

Subspace bracket_span(const LieAlgebra& g, const Subspace& a, const Subspace& b) {
    std::vector<Vector> out;
    for (const auto& x : a.basis())
        for (const auto& y : b.basis()) {
            Vector v = g.bracket(x, y);
            if (!is_zero(v)) out.push_back(std::move(v));
        }
    return Subspace(g.dim(), out);
}

LowerCentralSeries derived_and_lcs(const LieAlgebra& g) {
    LowerCentralSeries out;
    const Subspace all = Subspace::full(g.dim());
    out.terms.push_back(all);
    while (!out.terms.back().is_zero()) {
        Subspace next = bracket_span(g, all, out.terms.back());
        if (next == out.terms.back()) break;
        out.terms.push_back(std::move(next));
    }
    out.derived = out.terms.size() > 1 ? out.terms[1] : out.terms[0];
    if (g.dim() == 0) out.derived = Subspace(0);
    out.nilpotent = out.terms.back().is_zero();
    out.nilpotency_class = out.nilpotent ? out.terms.size() - 1 : 0;
    return out;
}

bool is_ideal(const LieAlgebra& g, const Subspace& s) {
    for (std::size_t j = 0; j < g.dim(); ++j)
        for (const auto& v : s.basis())
            if (!s.contains(g.bracket(unit_vector(g.dim(), j), v))) return false;
    return true;
}

bool is_subalgebra(const LieAlgebra& g, const Subspace& s) {
    const auto& b = s.basis();
    for (std::size_t a = 0; a < b.size(); ++a)
        for (std::size_t c = a + 1; c < b.size(); ++c)
            if (!s.contains(g.bracket(b[a], b[c]))) return false;
    return true;
}

std::vector<Vector> lex_complement(const Subspace& s) {
    const std::size_t n = s.parent_dim();
    std::vector<bool> pivot(n, false);
    for (const auto& v : s.basis())
        for (std::size_t k = 0; k < n; ++k)
            if (!is_zero(v[k])) {
                pivot[k] = true;
                break;
            }
    std::vector<Vector> out;
    for (std::size_t k = 0; k < n; ++k)
        if (!pivot[k]) out.push_back(unit_vector(n, k));
    return out;
}

Quotient quotient(const LieAlgebra& g, const Subspace& ideal) { return quotient(g, ideal, lex_complement(ideal)); }

Quotient quotient(const LieAlgebra& g, const Subspace& ideal, const std::vector<Vector>& complement) {
    const std::size_t n = g.dim();
    if (ideal.parent_dim() != n) throw InputError("quotient: subspace lives in a different space");
    if (complement.size() + ideal.dim() != n) throw InputError("quotient: complement has the wrong dimension");
    if (!is_ideal(g, ideal)) throw InputError("quotient: subspace is not an ideal");
    std::vector<Vector> cols = complement;
    cols.insert(cols.end(), ideal.basis().begin(), ideal.basis().end());
    const Matrix m = Matrix::from_columns(cols, n);
    if (is_zero(determinant(m))) throw InputError("quotient: complement is not transversal to the ideal");
    const std::size_t q = complement.size();
    Quotient out;
    out.projection = inverse(m).block(0, 0, q, n);
    out.section = Matrix::from_columns(complement, n);
    std::vector<std::string> names;
    for (const auto& w : complement) {
        std::size_t k = 0;
        std::size_t nz = 0;
        for (std::size_t t = 0; t < n; ++t)
            if (!is_zero(w[t])) {
                ++nz;
                k = t;
            }
        names.push_back(nz == 1 && w[k] == 1 ? g.names()[k] : "w" + std::to_string(names.size() + 1));
    }
    out.algebra = LieAlgebra(q, names);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = a + 1; b < q; ++b)
            out.algebra.set_bracket(a, b, out.projection * g.bracket(complement[a], complement[b]));
    if (g.jacobi_certified()) out.algebra.mark_jacobi_certified();
    return out;
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
    const std::size_t n = a.dim() + b.dim();
    std::vector<std::string> names = a.names();
    names.insert(names.end(), b.names().begin(), b.names().end());
    LieAlgebra out(n, names);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j)
            for (std::size_t k = 0; k < a.dim(); ++k)
                if (!is_zero(a.c(i, j, k))) out.set_structure(i, j, k, a.c(i, j, k));
    const std::size_t o = a.dim();
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = i + 1; j < b.dim(); ++j)
            for (std::size_t k = 0; k < b.dim(); ++k)
                if (!is_zero(b.c(i, j, k))) out.set_structure(o + i, o + j, o + k, b.c(i, j, k));
    if (a.jacobi_certified() && b.jacobi_certified()) out.mark_jacobi_certified();
    return out;
}

Fingerprint fingerprint(const LieAlgebra& g) {
    Fingerprint f;
    f.dim = g.dim();
    f.center_dim = center(g).dim();
    const auto lcs = derived_and_lcs(g);
    f.derived_dim = lcs.derived.dim();
    f.nilpotency_class = lcs.nilpotency_class;
    for (const auto& t : lcs.terms) f.lcs_profile.push_back(t.dim());
    return f;
}

std::string to_string(const Fingerprint& f) {
    std::ostringstream os;
    os << '(' << f.dim << ", " << f.center_dim << ", " << f.derived_dim << ", " << f.nilpotency_class << ", [";
    for (std::size_t i = 0; i < f.lcs_profile.size(); ++i) os << (i ? "," : "") << f.lcs_profile[i];
    os << "])";
    return os.str();
}

std::vector<std::string> basis_names(const std::vector<std::string>& names, const std::vector<Vector>& cols,
                                      const std::string& fallback) {
    std::vector<std::string> out;
    for (const auto& c : cols) {
        std::size_t nz = 0, k = 0;
        for (std::size_t t = 0; t < c.size(); ++t)
            if (!is_zero(c[t])) ++nz, k = t;
        out.push_back(nz == 1 && c[k] == 1 ? names[k] : fallback + std::to_string(out.size() + 1));
    }
    return out;
}

}  // namespace quadlie
