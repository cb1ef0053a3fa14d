#include "quadlie/tstar.hpp"

#include "quadlie/errors.hpp"
#include "quadlie/ratlin.hpp"

namespace quadlie {

// ---- cocycles ---------------------------------------------------------------

void CyclicCocycle::set_alternating(std::size_t i, std::size_t j, std::size_t k, const Rational& v) {
    if (i >= dim_ || j >= dim_ || k >= dim_) throw InputError("cocycle index out of range");
    if (i == j || j == k || i == k) {
        if (!quadlie::is_zero(v)) throw InputError("alternating entry with a repeated index must vanish");
        return;
    }
    set_raw(i, j, k, v);
    set_raw(j, k, i, v);
    set_raw(k, i, j, v);
    set_raw(j, i, k, -v);
    set_raw(i, k, j, -v);
    set_raw(k, j, i, -v);
}

bool CyclicCocycle::is_zero() const {
    for (const auto& x : t_)
        if (!quadlie::is_zero(x)) return false;
    return true;
}

Vector CyclicCocycle::apply(const Vector& x, const Vector& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw InputError("cocycle applied to vectors of the wrong length");
    Vector out = zero_vector(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (quadlie::is_zero(x[i])) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (quadlie::is_zero(y[j])) continue;
            const Rational s = x[i] * y[j];
            for (std::size_t k = 0; k < dim_; ++k) out[k] += s * (*this)(i, j, k);
        }
    }
    return out;
}

Rational CyclicCocycle::evaluate(const Vector& x, const Vector& y, const Vector& z) const { return dot(apply(x, y), z); }

CyclicCocycle change_basis(const CyclicCocycle& theta, const Matrix& p) {
    const std::size_t n = theta.dim();
    if (p.rows() != n || p.cols() != n) throw InputError("cocycle basis change has the wrong shape");
    // contract one slot at a time
    std::vector<Rational> a(n * n * n), b(n * n * n);
    auto at = [n](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Rational s;
                for (std::size_t c = 0; c < n; ++c)
                    if (!is_zero(p(c, k))) s += p(c, k) * theta(i, j, c);
                a[at(i, j, k)] = s;
            }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Rational s;
                for (std::size_t c = 0; c < n; ++c)
                    if (!is_zero(p(c, j))) s += p(c, j) * a[at(i, c, k)];
                b[at(i, j, k)] = s;
            }
    CyclicCocycle out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Rational s;
                for (std::size_t c = 0; c < n; ++c)
                    if (!is_zero(p(c, i))) s += p(c, i) * b[at(c, j, k)];
                out.set_raw(i, j, k, s);
            }
    return out;
}

namespace {

// (d theta~)(x_i, x_j, x_k, x_l) up to an overall sign:
// sum_{p<q} (-1)^{p+q} theta([x_p,x_q], x_r, x_s), r<s the remaining pair
Rational closedness_value(const LieAlgebra& a, const CyclicCocycle& theta, const std::array<std::size_t, 4>& x) {
    const std::size_t n = a.dim();
    Rational acc;
    for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = p + 1; q < 4; ++q) {
            std::size_t rest[2], m = 0;
            for (std::size_t t = 0; t < 4; ++t)
                if (t != p && t != q) rest[m++] = x[t];
            Rational s;
            for (std::size_t u = 0; u < n; ++u)
                if (!is_zero(a.c(x[p], x[q], u))) s += a.c(x[p], x[q], u) * theta(u, rest[0], rest[1]);
            if ((p + q) % 2 == 0)
                acc += s;
            else
                acc -= s;
        }
    return acc;
}

}  // namespace

std::optional<std::array<std::size_t, 4>> closedness_violation(const LieAlgebra& a, const CyclicCocycle& theta) {
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l)
                    if (!is_zero(closedness_value(a, theta, {i, j, k, l}))) return std::array<std::size_t, 4>{i, j, k, l};
    return std::nullopt;
}

Check check_cocycle(const LieAlgebra& a, const CyclicCocycle& theta) {
    const std::size_t n = a.dim();
    if (theta.dim() != n) throw InputError("cocycle dimension does not match the algebra");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (!is_zero(theta(i, j, k) + theta(j, i, k)))
                    return Check::fail("theta(x,y) is not antisymmetric", {i, j, k});
                if (theta(i, j, k) != theta(j, k, i)) return Check::fail("theta is not cyclic", {i, j, k});
            }
    // sum_cyc theta([x,y],z)(w) + theta(x,y)([z,w]) = 0
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t w = 0; w < n; ++w) {
                    Rational acc;
                    const std::size_t cyc[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
                    for (const auto& c : cyc)
                        for (std::size_t l = 0; l < n; ++l) {
                            if (!is_zero(a.c(c[0], c[1], l))) acc += a.c(c[0], c[1], l) * theta(l, c[2], w);
                            if (!is_zero(a.c(c[2], w, l))) acc += a.c(c[2], w, l) * theta(c[0], c[1], l);
                        }
                    if (!is_zero(acc)) return Check::fail("2-cocycle identity fails", {i, j, k, w});
                }
    if (const auto v = closedness_violation(a, theta))
        return Check::fail("scalar 3-cocycle identity fails", {(*v)[0], (*v)[1], (*v)[2], (*v)[3]});
    return Check::pass();
}

std::vector<CyclicCocycle> cocycle_space(const LieAlgebra& a) {
    const std::size_t n = a.dim();
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) triples.push_back({i, j, k});
    const std::size_t m = triples.size();
    if (m == 0) return {};
    // probe closedness on each basis 3-form; the map is linear
    std::vector<Vector> columns;
    for (const auto& t : triples) {
        CyclicCocycle c(n);
        c.set_alternating(t[0], t[1], t[2], 1);
        Vector col;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k)
                    for (std::size_t l = k + 1; l < n; ++l) col.push_back(closedness_value(a, c, {i, j, k, l}));
        columns.push_back(std::move(col));
    }
    std::vector<Vector> ker;
    if (columns.front().empty()) {
        for (std::size_t t = 0; t < m; ++t) ker.push_back(unit_vector(m, t));
    } else {
        ker = kernel(Matrix::from_columns(columns, columns.front().size()));
    }
    std::vector<CyclicCocycle> out;
    for (const auto& v : ker) {
        CyclicCocycle c(n);
        for (std::size_t t = 0; t < m; ++t)
            if (!is_zero(v[t])) c.set_alternating(triples[t][0], triples[t][1], triples[t][2], v[t]);
        out.push_back(std::move(c));
    }
    return out;
}

CyclicCocycle coboundary(const LieAlgebra& a, const Matrix& f) {
    const std::size_t n = a.dim();
    if (f.rows() != n || f.cols() != n || !f.is_antisymmetric()) throw InputError("2-form must be a skew n x n matrix");
    auto fb = [&](std::size_t i, std::size_t j, std::size_t z) {  // F([e_i, e_j], e_z)
        Rational s;
        for (std::size_t l = 0; l < n; ++l)
            if (!is_zero(a.c(i, j, l))) s += a.c(i, j, l) * f(l, z);
        return s;
    };
    CyclicCocycle out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) out.set_raw(i, j, k, -fb(i, j, k) + fb(i, k, j) - fb(j, k, i));
    return out;
}

// ---- construction -----------------------------------------------------------

Subspace TStarData::dual_block() const {
    const std::size_t n = base.dim();
    std::vector<Vector> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(unit_vector(2 * n, n + i));
    return Subspace(2 * n, v);
}

Subspace tstar_center_formula(const LieAlgebra& a, const CyclicCocycle& theta) {
    const std::size_t n = a.dim();
    std::vector<Vector> rows;
    // x in z(a)
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            Vector r = zero_vector(2 * n);
            for (std::size_t i = 0; i < n; ++i) r[i] = a.c(i, j, k);
            rows.push_back(std::move(r));
        }
    // theta(x, e_j)(e_m) + f([e_j, e_m]) = 0
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m) {
            Vector r = zero_vector(2 * n);
            for (std::size_t i = 0; i < n; ++i) r[i] = theta(i, j, m);
            for (std::size_t k = 0; k < n; ++k) r[n + k] = a.c(j, m, k);
            rows.push_back(std::move(r));
        }
    if (rows.empty()) return Subspace::full(2 * n);
    return Subspace(2 * n, kernel(Matrix::from_rows(rows, 2 * n)));
}

namespace {

// z(a) + {f : f.ad = 0}, theta ignored
Subspace uncoupled_center(const LieAlgebra& a) {
    const std::size_t n = a.dim();
    std::vector<Vector> v;
    const Subspace za = center(a);
    for (const auto& z : za.basis()) {
        Vector x = zero_vector(2 * n);
        for (std::size_t i = 0; i < n; ++i) x[i] = z[i];
        v.push_back(std::move(x));
    }
    std::vector<Vector> rows;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m) {
            Vector r = zero_vector(n);
            for (std::size_t k = 0; k < n; ++k) r[k] = a.c(j, m, k);
            if (!is_zero(r)) rows.push_back(std::move(r));
        }
    std::vector<Vector> ann;
    if (rows.empty()) {
        for (std::size_t k = 0; k < n; ++k) ann.push_back(unit_vector(n, k));
    } else {
        ann = kernel(Matrix::from_rows(rows, n));
    }
    for (const auto& f : ann) {
        Vector x = zero_vector(2 * n);
        for (std::size_t k = 0; k < n; ++k) x[n + k] = f[k];
        v.push_back(std::move(x));
    }
    return Subspace(2 * n, v);
}

std::vector<std::string> dual_names(const std::vector<std::string>& names) {
    std::vector<std::string> out = names;
    for (const auto& s : names) out.push_back(s + "*");
    return out;
}

// Name each new basis vector after the old one when it is a unit vector.

}  // namespace

TStarData build_tstar(const LieAlgebra& a, const CyclicCocycle& theta) {
    require_lie(a);
    if (const auto c = check_cocycle(a, theta); !c) throw InputError("not a cyclic cocycle: " + c.reason);
    const std::size_t n = a.dim();
    TStarData d{a, theta, LieAlgebra(2 * n, dual_names(a.names())), BilinearForm::hyperbolic(n)};
    LieAlgebra& g = d.g;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vector v = zero_vector(2 * n);
            for (std::size_t k = 0; k < n; ++k) {
                v[k] = a.c(i, j, k);
                v[n + k] = theta(i, j, k);
            }
            g.set_bracket(i, j, v);
        }
    // [x_i, f_j] = -f_j.ad(x_i) = -sum_k c(i,k,j) f_k
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vector v = zero_vector(2 * n);
            for (std::size_t k = 0; k < n; ++k) v[n + k] = -a.c(i, k, j);
            g.set_bracket(i, n + j, v);
        }

    if (const auto r = jacobi_check(g); !r.ok) throw StructuralError("T*-extension: " + r.message);
    if (const auto c = is_invariant_scalar_product(g, d.b); !c) throw StructuralError("T*-extension: " + c.reason);
    const Subspace dual = d.dual_block();
    if (!is_ideal(g, dual) || isotropy_class(d.b, dual) != Isotropy::lagrangian)
        throw StructuralError("T*-extension: dual block is not a lagrangian ideal");
    const Subspace z = center(g);
    if (!(z == tstar_center_formula(a, theta))) throw StructuralError("T*-extension: center formula disagrees");
    if (!(orthogonal(d.b, z) == derived_and_lcs(g).derived))
        throw StructuralError("T*-extension: orthogonal of the center is not the derived ideal");
    if (theta.is_zero() && !(z == uncoupled_center(a))) throw StructuralError("T*-extension: center differs from z(a) + ann[a,a]");
    return d;
}

// ---- derivations ------------------------------------------------------------

std::vector<Rational> compatibility_tensor(const CyclicCocycle& theta, const Matrix& d) {
    const std::size_t n = theta.dim();
    if (d.rows() != n || d.cols() != n) throw InputError("derivation matrix has the wrong shape");
    auto td = [&](std::size_t i, std::size_t j, std::size_t k) {  // theta(D e_i, e_j)(e_k)
        Rational s;
        for (std::size_t l = 0; l < n; ++l)
            if (!is_zero(d(l, i))) s += d(l, i) * theta(l, j, k);
        return s;
    };
    std::vector<Rational> out(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) out[(i * n + j) * n + k] = td(i, j, k) + td(j, k, i) + td(k, i, j);
    return out;
}

LiftedDerivation lift_derivation(const TStarData& data, const Matrix& d) {
    const LieAlgebra& a = data.base;
    const std::size_t n = a.dim();
    if (d.rows() != n || d.cols() != n) throw InputError("derivation matrix has the wrong shape");
    if (!is_derivation(a, d)) throw InputError("D is not a derivation of the base");
    if (is_zero(determinant(d))) throw InputError("D is not invertible");

    LiftedDerivation out;
    out.big_theta = compatibility_tensor(data.theta, d);

    // unknowns u(p,q), p<q, with F(p,q) = u, F(q,p) = -u
    std::vector<std::size_t> slot(n * n, 0);
    std::size_t m = 0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) slot[p * n + q] = m++;
    auto add = [&](Vector& row, std::size_t p, std::size_t q, const Rational& coef) {
        if (p == q || is_zero(coef)) return;
        if (p < q)
            row[slot[p * n + q]] += coef;
        else
            row[slot[q * n + p]] -= coef;
    };
    std::vector<Vector> rows;
    Vector rhs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vector r = zero_vector(m);
                for (std::size_t l = 0; l < n; ++l) {
                    add(r, l, k, -a.c(i, j, l));
                    add(r, l, j, a.c(i, k, l));
                    add(r, l, i, -a.c(j, k, l));
                }
                rows.push_back(std::move(r));
                rhs.push_back(out.big_theta[(i * n + j) * n + k]);
            }
    out.f = Matrix(n, n);
    if (!rows.empty() && m > 0) {
        const auto s = solve(Matrix::from_rows(rows, m), rhs);
        if (!s) {
            const Matrix am = Matrix::from_rows(rows, m);
            throw InputError("Theta is not a coboundary: dF = Theta is inconsistent (rank " + std::to_string(rank(am)) +
                             " of " + std::to_string(rows.size()) + " equations)");
        }
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                out.f(p, q) = s->particular[slot[p * n + q]];
                out.f(q, p) = -out.f(p, q);
            }
    } else {
        for (const auto& v : rhs)
            if (!is_zero(v)) throw InputError("Theta is not a coboundary");
    }

    out.h = Matrix(2 * n, 2 * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) out.h(n + k, j) = out.f(j, k);
    Matrix dbar(2 * n, 2 * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            dbar(r, c) = d(r, c);
            dbar(n + r, n + c) = -d(c, r);
        }
    dbar = dbar - out.h;

    out.dbar = certify_derivation(data.g, dbar, &data.b);
    if (!out.dbar.derivation) throw StructuralError("lifted Dbar is not a derivation");
    if (!out.dbar.skew) throw StructuralError("lifted Dbar is not skew-symmetric");
    if (!out.dbar.invertible) throw StructuralError("lifted Dbar is singular");
    out.omega = symplectic_from_derivation(data.g, data.b, dbar);
    return out;
}

Matrix coboundary_isomorphism(const LieAlgebra& a, const Matrix& phi) {
    const std::size_t n = a.dim();
    if (phi.rows() != n || phi.cols() != n || !phi.is_antisymmetric()) throw InputError("phi must be a skew n x n matrix");
    Matrix p = Matrix::identity(2 * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) p(n + k, j) = -phi(j, k);
    return p;
}

// ---- descent ----------------------------------------------------------------

Extraction extract_tstar(const LieAlgebra& g, const BilinearForm& b, const Subspace& ideal, const Matrix* dbar) {
    const std::size_t n = g.dim();
    if (b.dim() != n || ideal.parent_dim() != n) throw InputError("extract: sizes do not match");
    if (n % 2 != 0 || ideal.dim() * 2 != n) throw InputError("extract: ideal must have half the dimension");
    if (!is_ideal(g, ideal)) throw InputError("extract: subspace is not an ideal");
    if (!gram(b, ideal).is_zero()) throw InputError("extract: ideal is not completely isotropic");
    if (dbar) {
        if (dbar->rows() != n || dbar->cols() != n) throw InputError("extract: Dbar has the wrong shape");
        for (const auto& v : ideal.basis())
            if (!ideal.contains(*dbar * v)) throw InputError("extract: ideal is not Dbar-stable");
    }
    const std::size_t m = n / 2;
    const std::vector<Vector> w0 = lex_complement(ideal);
    const auto& r = ideal.basis();
    Matrix gm(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = 0; c < m; ++c) gm(a, c) = b(w0[a], r[c]);
    const Matrix ginv = inverse(gm);
    // iota_c = sum_b r_b G^{-1}(b,c), so B(w_a, iota_c) = delta
    std::vector<Vector> iota(m, zero_vector(n));
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t bb = 0; bb < m; ++bb)
            if (!is_zero(ginv(bb, c))) iota[c] = iota[c] + ginv(bb, c) * r[bb];
    // w'_a = w_a - 1/2 sum_b B(w_a, w_b) iota_b is isotropic
    std::vector<Vector> w(m);
    for (std::size_t a = 0; a < m; ++a) {
        w[a] = w0[a];
        for (std::size_t c = 0; c < m; ++c) {
            const Rational s = b(w0[a], w0[c]);
            if (!is_zero(s)) w[a] = w[a] - Rational(1, 2) * s * iota[c];
        }
    }
    std::vector<Vector> cols = w;
    cols.insert(cols.end(), iota.begin(), iota.end());
    Extraction out;
    out.p = Matrix::from_columns(cols, n);
    const Matrix pinv = inverse(out.p);

    std::vector<std::string> names = basis_names(g.names(), w0, "y");
    out.base = LieAlgebra(m, names);
    out.theta = CyclicCocycle(m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = a + 1; c < m; ++c) {
            const Vector v = pinv * g.bracket(w[a], w[c]);
            out.base.set_bracket(a, c, Vector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m)));
            for (std::size_t k = 0; k < m; ++k) {
                out.theta.set_raw(a, c, k, v[m + k]);
                out.theta.set_raw(c, a, k, -v[m + k]);
            }
        }
    if (g.jacobi_certified()) out.base.mark_jacobi_certified();

    const TStarData rebuilt = build_tstar(out.base, out.theta);
    if (auto err = isometry_defect(rebuilt.g, rebuilt.b, g, b, out.p); !err.empty())
        throw StructuralError("extract: rebuilt T*-extension is not isometric: " + err);

    if (dbar) {
        const Matrix conj = pinv * *dbar * out.p;
        Matrix d = conj.block(0, 0, m, m);
        if (!is_derivation(out.base, d)) throw StructuralError("extract: induced D is not a derivation");
        if (is_zero(determinant(d))) throw StructuralError("extract: induced D is singular");
        out.d = std::move(d);
    }
    return out;
}

std::optional<Subspace> find_isotropic_stable_ideal(const LieAlgebra& g, const BilinearForm& b, const Matrix& dbar) {
    const std::size_t n = g.dim();
    if (b.dim() != n || dbar.rows() != n || dbar.cols() != n) throw InputError("ideal search: sizes do not match");
    if (n % 2 != 0) return std::nullopt;
    if (!is_skew(b, dbar) || !is_derivation(g, dbar) || is_zero(determinant(dbar)))
        throw InputError("ideal search: Dbar must be an invertible skew derivation");

    Subspace ideal(n);
    while (ideal.dim() * 2 < n) {
        const Subspace perp = orthogonal(b, ideal);
        const auto& u = perp.basis();
        // C = {v in I^perp : [g, v] in I}; x in I iff B(x, I^perp) = 0
        std::vector<Vector> rows;
        for (std::size_t j = 0; j < n; ++j) {
            const Vector ej = unit_vector(n, j);
            std::vector<Vector> br;
            for (const auto& ut : u) br.push_back(g.bracket(ej, ut));
            for (const auto& us : u) {
                Vector r(u.size());
                for (std::size_t t = 0; t < u.size(); ++t) r[t] = b(br[t], us);
                if (!is_zero(r)) rows.push_back(std::move(r));
            }
        }
        std::vector<Vector> alphas;
        if (rows.empty()) {
            for (std::size_t t = 0; t < u.size(); ++t) alphas.push_back(unit_vector(u.size(), t));
        } else {
            alphas = kernel(Matrix::from_rows(rows, u.size()));
        }
        std::vector<Vector> cvec;
        for (const auto& al : alphas) {
            Vector v = zero_vector(n);
            for (std::size_t t = 0; t < u.size(); ++t)
                if (!is_zero(al[t])) v = v + al[t] * u[t];
            cvec.push_back(std::move(v));
        }
        // complement of I inside C
        std::vector<Vector> comp;
        std::vector<Vector> acc = ideal.basis();
        for (const auto& v : cvec) {
            if (in_span(acc, v)) continue;
            acc.push_back(v);
            comp.push_back(v);
        }
        if (comp.empty()) return std::nullopt;
        std::vector<Vector> kcols = comp;
        kcols.insert(kcols.end(), ideal.basis().begin(), ideal.basis().end());
        const Matrix k = Matrix::from_columns(kcols, n);
        const std::size_t q = comp.size();
        Matrix induced(q, q);
        for (std::size_t t = 0; t < q; ++t) {
            const auto s = solve(k, dbar * comp[t]);
            if (!s) throw StructuralError("ideal search: Dbar does not preserve C");
            for (std::size_t r = 0; r < q; ++r) induced(r, t) = s->particular[r];
        }
        const auto roots = rational_roots(char_poly(induced));
        if (roots.roots.empty()) return std::nullopt;
        const Rational lambda = roots.roots.front().first;
        const auto ev = eigenspace(induced, lambda);
        Vector v = zero_vector(n);
        for (std::size_t t = 0; t < q; ++t)
            if (!is_zero(ev.front()[t])) v = v + ev.front()[t] * comp[t];
        std::vector<Vector> grown = ideal.basis();
        grown.push_back(v);
        ideal = Subspace(n, grown);
    }
    if (!is_ideal(g, ideal) || !gram(b, ideal).is_zero())
        throw StructuralError("ideal search produced an invalid ideal");
    for (const auto& v : ideal.basis())
        if (!ideal.contains(dbar * v)) throw StructuralError("ideal search produced an unstable ideal");
    return ideal;
}

// ---- abelian summands -------------------------------------------------------

namespace {

std::size_t central_derived_dim(const LieAlgebra& a) {
    return intersect(derived_and_lcs(a).derived, center(a)).dim();
}

Reduction reduce_abelian_summand_at(const LieAlgebra& a, const CyclicCocycle& theta, std::size_t e);

}  // namespace

Reduction reduce_abelian_summand(const LieAlgebra& a, const CyclicCocycle& theta, std::size_t e) {
    const std::size_t n = a.dim();
    if (e >= n) throw InputError("reduce: index of e out of range");
    require_lie(a);
    if (const auto c = check_cocycle(a, theta); !c) throw InputError("not a cyclic cocycle: " + c.reason);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (!is_zero(a.c(e, j, k))) throw InputError("reduce: e is not central");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!is_zero(a.c(i, j, e))) throw InputError("reduce: e lies in [a,a], so Ke is not a direct summand");

    bool coupled = false;
    for (std::size_t i = 0; i < n && !coupled; ++i)
        for (std::size_t j = 0; j < n && !coupled; ++j) coupled = !is_zero(theta(i, j, e));

    if (!coupled) {
        Reduction out;
        // drop e: h and the restricted theta
        std::vector<std::size_t> keep;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i)
            if (i != e) keep.push_back(i), names.push_back(a.names()[i]);
        LieAlgebra h(n - 1, names);
        CyclicCocycle th(n - 1);
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < keep.size(); ++j)
                for (std::size_t k = 0; k < keep.size(); ++k) {
                    if (i < j && !is_zero(a.c(keep[i], keep[j], keep[k])))
                        h.set_structure(i, j, k, a.c(keep[i], keep[j], keep[k]));
                    th.set_raw(i, j, k, theta(keep[i], keep[j], keep[k]));
                }
        out.split = true;
        out.core = build_tstar(h, th);
        return out;
    }

    // The +1 relation needs theta(x, .)(e) = 0 for x in [a,a] ∩ z(a); otherwise x
    // stops being central in a1. Move e inside e + z(h) to arrange it when possible.
    const Subspace zd = intersect(derived_and_lcs(a).derived, center(a));
    std::vector<Vector> hspan;
    for (std::size_t i = 0; i < n; ++i)
        if (i != e) hspan.push_back(unit_vector(n, i));
    const std::vector<Vector> zh = intersect(center(a), Subspace(n, hspan)).basis();
    Vector shift = zero_vector(n);
    if (!zd.is_zero() && !zh.empty()) {
        Matrix lhs(zd.dim() * n, zh.size());
        Vector rhs(zd.dim() * n);
        for (std::size_t r = 0; r < zd.dim(); ++r)
            for (std::size_t y = 0; y < n; ++y) {
                const Vector ey = unit_vector(n, y);
                rhs[r * n + y] = -theta.evaluate(zd.basis()[r], ey, unit_vector(n, e));
                for (std::size_t m = 0; m < zh.size(); ++m)
                    lhs(r * n + y, m) = theta.evaluate(zd.basis()[r], ey, zh[m]);
            }
        if (const auto sol = solve(lhs, rhs))
            for (std::size_t m = 0; m < zh.size(); ++m) shift = shift + sol->particular[m] * zh[m];
    }
    if (!is_zero(shift)) {
        Matrix p = Matrix::identity(n);
        p.set_column(e, unit_vector(n, e) + shift);
        Reduction moved = reduce_abelian_summand_at(change_basis(a, p), change_basis(theta, p), e);
        moved.e_shift = shift;
        return moved;
    }
    return reduce_abelian_summand_at(a, theta, e);
}

namespace {

// coupled branch with e already chosen
Reduction reduce_abelian_summand_at(const LieAlgebra& a, const CyclicCocycle& theta, std::size_t e) {
    const std::size_t n = a.dim();
    Reduction out;
    const TStarData data = build_tstar(a, theta);
    if (const auto w = reducibility_witness(data.g, data.b))
        throw InputError("reduce: the T*-extension is reducible (nondegenerate ideal of dimension " +
                         std::to_string(w->dim()) + ")");
    std::vector<Vector> iv;
    for (std::size_t i = 0; i < n; ++i)
        iv.push_back(unit_vector(2 * n, i == e ? e : n + i));
    out.extraction = extract_tstar(data.g, data.b, Subspace(2 * n, iv));
    out.a1 = out.extraction.base;
    out.theta1 = out.extraction.theta;

    const std::size_t za = center(a).dim(), za1 = center(out.a1).dim();
    const std::size_t qa = central_derived_dim(a), qa1 = central_derived_dim(out.a1);
    if (za1 > za) throw StructuralError("reduce: dim z(a1) exceeds dim z(a)");
    if (qa1 != qa + 1)
        throw StructuralError("reduce: dim([a1,a1] ∩ z(a1)) = " + std::to_string(qa1) + ", expected " +
                              std::to_string(qa + 1));
    return out;
}

}  // namespace

Reduction reduce_abelian_summand(const LieAlgebra& a, const CyclicCocycle& theta) {
    require_lie(a);
    const std::size_t n = a.dim();
    const Subspace z = center(a);
    const Subspace d = derived_and_lcs(a).derived;
    if (d.contains(z)) throw InputError("reduce: z(a) is contained in [a,a], no admissible e");
    Vector e;
    for (const auto& v : z.basis())
        if (!d.contains(v)) {
            e = v;
            break;
        }
    std::vector<Vector> hb = d.basis();
    std::vector<Vector> de = hb;
    de.push_back(e);
    for (auto& v : lex_complement(Subspace(n, de))) hb.push_back(std::move(v));
    std::vector<Vector> cols = hb;
    cols.push_back(e);
    const Matrix p = Matrix::from_columns(cols, n);
    LieAlgebra a2 = change_basis(a, p);
    a2.set_names(basis_names(a.names(), cols, "y"));
    return reduce_abelian_summand(a2, change_basis(theta, p), n - 1);
}

Normalized normalize_base(const LieAlgebra& a, const CyclicCocycle& theta) {
    Normalized out{a, theta, 0};
    while (!derived_and_lcs(out.base).derived.contains(center(out.base))) {
        if (out.steps > a.dim()) throw StructuralError("normalize: induction quantity failed to decrease");
        const std::size_t before = center(out.base).dim() - central_derived_dim(out.base);
        Reduction r = reduce_abelian_summand(out.base, out.theta);
        if (r.split) throw InputError("normalize: an abelian summand splits off, the T*-extension is reducible");
        out.base = std::move(r.a1);
        out.theta = std::move(r.theta1);
        ++out.steps;
        const std::size_t after = center(out.base).dim() - central_derived_dim(out.base);
        if (after >= before) throw StructuralError("normalize: induction quantity failed to decrease");
    }
    return out;
}

}  // namespace quadlie
