#include "quadlie/dblext.hpp"

#include "quadlie/errors.hpp"
#include "quadlie/ratlin.hpp"

#include <algorithm>

namespace quadlie {

namespace {

bool taken(const std::vector<std::string>& names, const std::string& s) {
    return std::find(names.begin(), names.end(), s) != names.end() ||
           std::find(names.begin(), names.end(), s + "*") != names.end();
}

// "e" unless the core already uses it
std::string line_name(const std::vector<std::string>& core) {
    if (!taken(core, "e")) return "e";
    for (std::size_t i = 1;; ++i)
        if (!taken(core, "e" + std::to_string(i))) return "e" + std::to_string(i);
}

Vector flatten(const Matrix& m) {
    Vector v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
    return v;
}

}  // namespace

Check check_spec(const DoubleExtensionSpec& s) {
    const std::size_t n = s.g.dim(), m = s.ext.dim();
    if (const auto r = jacobi_check(s.g); !r.ok) return Check::fail("core is not a Lie algebra: " + r.message);
    if (s.b.dim() != n) return Check::fail("scalar product has the wrong size");
    if (const auto c = is_invariant_scalar_product(s.g, s.b); !c) return Check::fail("core form: " + c.reason, c.witness);
    if (const auto r = jacobi_check(s.ext); !r.ok) return Check::fail("extending algebra: " + r.message);
    if (s.psi.size() != m) return Check::fail("psi needs one matrix per basis vector of the extending algebra");
    for (std::size_t i = 0; i < m; ++i) {
        if (s.psi[i].rows() != n || s.psi[i].cols() != n) return Check::fail("psi matrix has the wrong shape", {i});
        if (!is_derivation(s.g, s.psi[i])) return Check::fail("psi(y) is not a derivation", {i});
        if (!is_skew(s.b, s.psi[i])) return Check::fail("psi(y) is not skew-symmetric", {i});
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Matrix lhs(n, n);
            for (std::size_t k = 0; k < m; ++k)
                if (!is_zero(s.ext.c(i, j, k))) lhs = lhs + s.ext.c(i, j, k) * s.psi[k];
            if (!(lhs == commutator(s.psi[i], s.psi[j]))) return Check::fail("psi is not a homomorphism", {i, j});
        }
    return Check::pass();
}

QuadraticAlgebra double_extend(const DoubleExtensionSpec& s) {
    if (const auto c = check_spec(s); !c) throw InputError("double extension: " + c.reason);
    const std::size_t n = s.g.dim(), m = s.ext.dim(), big = n + 2 * m;

    std::vector<std::string> ext_names = s.ext.names();
    for (const auto& x : ext_names)
        if (taken(s.g.names(), x)) {
            ext_names = numbered_names("y", m);
            break;
        }
    std::vector<std::string> names = ext_names;
    names.insert(names.end(), s.g.names().begin(), s.g.names().end());
    for (const auto& x : ext_names) names.push_back(x + "*");

    LieAlgebra g(big, names);
    const std::size_t f0 = m + n;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            Vector v = zero_vector(big);
            for (std::size_t k = 0; k < m; ++k) v[k] = s.ext.c(i, j, k);
            g.set_bracket(i, j, v);
        }
        for (std::size_t k = 0; k < n; ++k) {
            Vector v = zero_vector(big);
            for (std::size_t l = 0; l < n; ++l) v[m + l] = s.psi[i](l, k);
            g.set_bracket(i, m + k, v);
        }
        // coadjoint: (y_i . f_j)(y) = -f_j([y_i, y])
        for (std::size_t j = 0; j < m; ++j) {
            Vector v = zero_vector(big);
            for (std::size_t k = 0; k < m; ++k) v[f0 + k] = -s.ext.c(i, k, j);
            g.set_bracket(i, f0 + j, v);
        }
    }
    // phi(x, y)(y_i) = B(psi(y_i) x, y)
    std::vector<Matrix> psib;
    for (const auto& p : s.psi) psib.push_back(p.transpose() * s.b.matrix());
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
            Vector v = zero_vector(big);
            for (std::size_t r = 0; r < n; ++r) v[m + r] = s.g.c(k, l, r);
            for (std::size_t i = 0; i < m; ++i) v[f0 + i] = psib[i](k, l);
            g.set_bracket(m + k, m + l, v);
        }

    Matrix t(big, big);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) t(m + k, m + l) = s.b.matrix()(k, l);
    for (std::size_t i = 0; i < m; ++i) t(i, f0 + i) = t(f0 + i, i) = 1;

    QuadraticAlgebra out{std::move(g), BilinearForm::symmetric(t)};
    if (const auto r = jacobi_check(out.g); !r.ok) throw StructuralError("double extension: " + r.message);
    if (const auto c = is_invariant_scalar_product(out.g, out.b); !c)
        throw StructuralError("double extension: " + c.reason);
    return out;
}

QuadraticAlgebra double_extend_line(const LieAlgebra& g, const BilinearForm& b, const Matrix& delta) {
    return double_extend({g, b, LieAlgebra(1, {line_name(g.names())}), {delta}});
}

Matrix compatibility_residual(const SymplecticDextData& x) {
    return commutator(x.delta, x.d) - x.lambda * x.delta - x.g.ad(x.c);
}

std::vector<std::pair<Matrix, Vector>> admissible_pairs(const LieAlgebra& g, const BilinearForm& b, const Matrix& d,
                                                        const Rational& lambda) {
    const std::size_t n = g.dim();
    const auto skew = skew_derivation_space(g, b);
    std::vector<Vector> cols;
    for (const auto& s : skew) cols.push_back(flatten(commutator(s, d) - lambda * s));
    for (std::size_t k = 0; k < n; ++k) cols.push_back(flatten(Rational(-1) * g.ad(k)));
    std::vector<std::pair<Matrix, Vector>> out;
    if (cols.empty()) return out;
    for (const auto& v : kernel(Matrix::from_columns(cols, n * n))) {
        Matrix delta(n, n);
        for (std::size_t i = 0; i < skew.size(); ++i)
            if (!is_zero(v[i])) delta = delta + v[i] * skew[i];
        out.emplace_back(delta, Vector(v.begin() + static_cast<std::ptrdiff_t>(skew.size()), v.end()));
    }
    return out;
}

SymplecticQuadratic symplectic_double_extend(const SymplecticDextData& x) {
    const std::size_t n = x.g.dim();
    if (is_zero(x.lambda)) throw InputError("lambda must be nonzero");
    if (x.d.rows() != n || x.d.cols() != n || x.delta.rows() != n || x.delta.cols() != n || x.c.size() != n)
        throw InputError("symplectic double extension: shapes do not match the core");
    const DerivationMatrix dm = certify_derivation(x.g, x.d, &x.b);
    if (!dm.derivation || !dm.skew || !dm.invertible)
        throw InputError("symplectic double extension: D must be an invertible skew-symmetric derivation");
    if (!is_derivation(x.g, x.delta) || !is_skew(x.b, x.delta))
        throw InputError("symplectic double extension: delta must be a skew-symmetric derivation");
    if (const Matrix r = compatibility_residual(x); !r.is_zero())
        throw InputError("[delta, D] - lambda delta is not ad(c); residual " + format_matrix(r));

    QuadraticAlgebra q = double_extend_line(x.g, x.b, x.delta);
    const std::size_t big = n + 2;
    Matrix dt(big, big);
    const Vector bc = x.b.matrix().transpose() * x.c;  // B(c, e_j)
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) dt(1 + i, 1 + j) = x.d(i, j);
        dt(n + 1, 1 + j) = bc[j];
    }
    dt(n + 1, n + 1) = x.lambda;
    dt(0, 0) = -x.lambda;
    for (std::size_t i = 0; i < n; ++i) dt(1 + i, 0) = -x.c[i];

    DerivationMatrix dd = certify_derivation(q.g, dt, &q.b);
    if (!dd.derivation || !dd.skew || !dd.invertible)
        throw StructuralError("symplectic double extension: extended D is not an invertible skew derivation");
    BilinearForm omega = symplectic_from_derivation(q.g, q.b, dt);
    return {std::move(q.g), std::move(q.b), std::move(dd), std::move(omega)};
}

DescentAttempt symplectic_descend(const LieAlgebra& g, const BilinearForm& t, const Matrix& dtilde,
                                  const Vector* hint) {
    const std::size_t big = g.dim();
    DescentAttempt out;
    if (big == 0) {
        out.note = "zero algebra: nothing to descend";
        return out;
    }
    if (const auto c = is_invariant_scalar_product(g, t); !c) throw InputError("descent: " + c.reason);
    const DerivationMatrix dm = certify_derivation(g, dtilde, &t);
    if (!dm.derivation || !dm.skew || !dm.invertible)
        throw InputError("descent: D must be an invertible skew-symmetric derivation");

    const Subspace z = center(g);
    Vector zs;
    Rational lambda;
    if (hint) {
        if (hint->size() != big || is_zero(*hint) || !z.contains(*hint)) throw InputError("descent hint is not central");
        const Vector img = dtilde * *hint;
        std::size_t k = 0;
        while (is_zero((*hint)[k])) ++k;
        lambda = img[k] / (*hint)[k];
        if (img != lambda * *hint) throw InputError("descent hint is not an eigenvector of D");
        zs = *hint;
    } else {
        const auto& zb = z.basis();
        Matrix m(zb.size(), zb.size());
        for (std::size_t j = 0; j < zb.size(); ++j) m.set_column(j, *coordinates(zb, dtilde * zb[j]));
        const auto roots = rational_roots(char_poly(m));
        if (roots.roots.empty()) {
            out.note = "no central D-stable line with a rational eigenvalue (may exist after extending scalars)";
            return out;
        }
        lambda = roots.roots.front().first;
        std::vector<Vector> eig;
        for (const auto& v : eigenspace(m, lambda)) {
            Vector w = zero_vector(big);
            for (std::size_t j = 0; j < zb.size(); ++j) w = w + v[j] * zb[j];
            eig.push_back(w);
        }
        zs = Subspace(big, eig).basis().front();
    }

    const Vector tz = t.matrix() * zs;  // T(z, u_k) = tz[k]
    std::size_t k = 0;
    while (k < big && is_zero(tz[k])) ++k;
    if (k == big) throw StructuralError("descent: central eigenvector is in the radical of T");
    Vector e = unit_vector(big, k);
    e = (Rational(1) / tz[k]) * e;
    e = e - (t(e, e) / 2) * zs;

    const Subspace core = orthogonal(t, Subspace(big, {e, zs}));
    const std::size_t n = core.dim();
    std::vector<Vector> cols{e};
    cols.insert(cols.end(), core.basis().begin(), core.basis().end());
    cols.push_back(zs);
    const Matrix p = Matrix::from_columns(cols, big);
    const LieAlgebra adapted = change_basis(g, p);
    const Matrix dbig = inverse(p) * dtilde * p;

    SymplecticDextData data;
    data.g = LieAlgebra(n, basis_names(g.names(), core.basis(), "w"));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vector v = zero_vector(n);
            for (std::size_t l = 0; l < n; ++l) v[l] = adapted.c(1 + i, 1 + j, 1 + l);
            data.g.set_bracket(i, j, v);
        }
    Matrix bm(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) bm(i, j) = t(core.basis()[i], core.basis()[j]);
    data.b = BilinearForm::symmetric(bm);
    data.d = dbig.block(1, 1, n, n);
    data.delta = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) data.delta(l, j) = adapted.c(0, 1 + j, 1 + l);
    data.lambda = lambda;
    data.c = zero_vector(n);
    for (std::size_t i = 0; i < n; ++i) data.c[i] = -dbig(1 + i, 0);

    SymplecticQuadratic rebuilt = symplectic_double_extend(data);
    if (!rebuilt.g.same_structure(adapted) || !(rebuilt.b.matrix() == p.transpose() * t.matrix() * p) ||
        !(rebuilt.d.matrix == dbig))
        throw StructuralError("descent: rebuilt extension does not match the input");
    out.step = SymplecticDescent{std::move(data), p, std::move(rebuilt)};
    return out;
}

SymplecticTower symplectic_tower(const LieAlgebra& g, const BilinearForm& t, const Matrix& dtilde) {
    SymplecticTower out;
    out.base = g;
    out.base_b = t;
    out.base_d = dtilde;
    while (out.base.dim() > 2) {
        DescentAttempt a = symplectic_descend(out.base, out.base_b, out.base_d);
        if (!a.step) {
            out.note = a.note;
            return out;
        }
        out.base = a.step->data.g;
        out.base_b = a.step->data.b;
        out.base_d = a.step->data.d;
        out.steps.push_back(std::move(*a.step));
    }
    out.complete = out.base.dim() == 2 && out.base.is_abelian();
    return out;
}

TowerExample tower_example1(const LieAlgebra& g, std::size_t n) {
    require_lie(g);
    if (n <= 1) throw InputError("tower needs n > 1");
    const std::size_t m = g.dim(), dim = m * (n - 1);
    std::vector<std::string> names;
    Vector diag;
    for (std::size_t p = 1; p < n; ++p)
        for (std::size_t i = 0; i < m; ++i) {
            names.push_back(g.names()[i] + "_t" + std::to_string(p));
            diag.push_back(static_cast<long>(p));
        }
    LieAlgebra ln(dim, names);
    auto idx = [m](std::size_t i, std::size_t p) { return (p - 1) * m + i; };
    for (std::size_t p = 1; p < n; ++p)
        for (std::size_t q = 1; p + q < n; ++q)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    for (std::size_t k = 0; k < m; ++k)
                        if (!is_zero(g.c(i, j, k))) ln.set_structure(idx(i, p), idx(j, q), idx(k, p + q), g.c(i, j, k));
    require_lie(ln);
    if (dim > 0 && !derived_and_lcs(ln).nilpotent) throw StructuralError("tower algebra is not nilpotent");
    DerivationMatrix d = certify_derivation(ln, Matrix::diagonal(diag));
    if (!d.derivation || !d.invertible) throw StructuralError("tower derivation failed certification");
    TStarData ts = build_tstar(ln, CyclicCocycle::zero(dim));
    LiftedDerivation lift = lift_derivation(ts, d.matrix);
    return {std::move(ln), std::move(d), std::move(ts), std::move(lift)};
}

}  // namespace quadlie
