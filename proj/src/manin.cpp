#include "quadlie/manin.hpp"

#include "quadlie/errors.hpp"
#include "quadlie/ratlin.hpp"


namespace quadlie {

namespace {

Subspace image(const Matrix& m, const Subspace& s) {
    std::vector<Vector> out;
    for (const auto& b : s.basis()) out.push_back(m * b);
    return Subspace(m.rows(), out);
}

bool isotropic(const BilinearForm& b, const Subspace& s) {
    for (const auto& x : s.basis())
        for (const auto& y : s.basis())
            if (!is_zero(b(x, y))) return false;
    return true;
}

// Data of g = Ke + G + Ke* around a central isotropic e* in `u` and its partner e in `v`.
struct Split {
    ManinDecomposition core;
    Matrix delta;
    Matrix p, pinv;
    LieAlgebra adapted;
};

Split split_off(const LieAlgebra& g, const BilinearForm& b, const Subspace& u, const Subspace& v, const Vector& estar) {
    const std::size_t big = g.dim(), n = big - 2;
    Vector e;
    for (const auto& w : v.basis())
        if (const Rational s = b(estar, w); !is_zero(s)) {
            e = (Rational(1) / s) * w;
            break;
        }
    if (e.empty()) throw StructuralError("descent: no partner for e* in the complementary subalgebra");
    const Subspace grest = orthogonal(b, Subspace(big, {estar, e}));
    const Subspace ug = intersect(u, grest), vg = intersect(v, grest);
    if (ug.dim() + vg.dim() != n) throw StructuralError("descent: core does not split along U and V");

    const std::vector<Vector>& core_basis = grest.basis();
    std::vector<Vector> cols{e};
    cols.insert(cols.end(), core_basis.begin(), core_basis.end());
    cols.push_back(estar);

    Split s;
    s.p = Matrix::from_columns(cols, big);
    s.pinv = inverse(s.p);
    s.adapted = change_basis(g, s.p);
    LieAlgebra core(n, basis_names(g.names(), core_basis, "w"));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vector w = zero_vector(n);
            for (std::size_t l = 0; l < n; ++l) w[l] = s.adapted.c(1 + i, 1 + j, 1 + l);
            core.set_bracket(i, j, w);
        }
    Matrix bm(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) bm(i, j) = b(core_basis[i], core_basis[j]);
    s.delta = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) s.delta(l, j) = s.adapted.c(0, 1 + j, 1 + l);
    auto coords = [&](const Subspace& part) {
        std::vector<Vector> out;
        for (const auto& w : part.basis()) out.push_back(*coordinates(core_basis, w));
        return Subspace(n, out);
    };
    s.core = certify_manin(core, BilinearForm::symmetric(bm), coords(ug), coords(vg));
    return s;
}

// first RREF vector of the smallest rational eigenvalue of d on the d-stable subspace z
std::optional<std::pair<Rational, Vector>> central_eigenvector(const Matrix& d, const Subspace& z) {
    if (z.is_zero()) return std::nullopt;
    const auto& zb = z.basis();
    Matrix m(zb.size(), zb.size());
    for (std::size_t j = 0; j < zb.size(); ++j) {
        const auto co = coordinates(zb, d * zb[j]);
        if (!co) throw StructuralError("derivation does not preserve the central intersection");
        m.set_column(j, *co);
    }
    const auto roots = rational_roots(char_poly(m));
    if (roots.roots.empty()) return std::nullopt;
    const Rational lambda = roots.roots.front().first;
    std::vector<Vector> eig;
    for (const auto& c : eigenspace(m, lambda)) {
        Vector w = zero_vector(d.rows());
        for (std::size_t j = 0; j < zb.size(); ++j) w = w + c[j] * zb[j];
        eig.push_back(w);
    }
    return std::make_pair(lambda, Subspace(d.rows(), eig).basis().front());
}

}  // namespace

std::vector<std::string> manin_failures(const LieAlgebra& g, const BilinearForm& b, const Subspace& u,
                                        const Subspace& v) {
    std::vector<std::string> out;
    const std::size_t n = g.dim();
    if (b.dim() != n || u.parent_dim() != n || v.parent_dim() != n) return {"dimensions do not match"};
    if (const auto c = is_invariant_scalar_product(g, b); !c) out.push_back("B: " + c.reason);
    if (!is_subalgebra(g, u)) out.push_back("U is not a subalgebra");
    if (!is_subalgebra(g, v)) out.push_back("V is not a subalgebra");
    if (u.dim() + v.dim() != n || (u + v).dim() != n) out.push_back("U and V are not complementary");
    if (!isotropic(b, u)) out.push_back("U is not isotropic");
    if (!isotropic(b, v)) out.push_back("V is not isotropic");
    return out;
}

ManinDecomposition certify_manin(const LieAlgebra& g, const BilinearForm& b, const Subspace& u, const Subspace& v) {
    if (const auto f = manin_failures(g, b, u, v); !f.empty()) {
        std::string msg = "not a Manin decomposition:";
        for (const auto& s : f) msg += " " + s + ";";
        msg.pop_back();
        throw InputError(msg);
    }
    return {g, b, u, v};
}

ManinDecomposition manin_double_extend(const ManinDecomposition& m, const Matrix& delta) {
    const std::size_t n = m.g.dim();
    if (delta.rows() != n || delta.cols() != n) throw InputError("delta has the wrong shape");
    for (const auto& w : m.v.basis())
        if (!m.v.contains(delta * w)) throw InputError("delta does not preserve V; witness " + format_vector(w));
    QuadraticAlgebra q = double_extend_line(m.g, m.b, delta);
    const std::size_t big = n + 2;
    auto lift = [&](const Subspace& s, std::size_t extra) {
        std::vector<Vector> out{unit_vector(big, extra)};
        for (const auto& w : s.basis()) {
            Vector x = zero_vector(big);
            for (std::size_t i = 0; i < n; ++i) x[1 + i] = w[i];
            out.push_back(x);
        }
        return Subspace(big, out);
    };
    return certify_manin(q.g, q.b, lift(m.u, big - 1), lift(m.v, 0));
}

ManinDescent manin_descend(const ManinDecomposition& m, const Vector* hint) {
    if (const auto f = manin_failures(m.g, m.b, m.u, m.v); !f.empty()) throw InputError("descent: " + f.front());
    const Subspace z = center(m.g);
    const Subspace zu = intersect(z, m.u), zv = intersect(z, m.v);
    ManinDescent out;
    Split s;
    if (hint) {
        if (hint->size() != m.g.dim() || is_zero(*hint) || !z.contains(*hint))
            throw InputError("descent hint is not central");
        if (m.u.contains(*hint)) {
            s = split_off(m.g, m.b, m.u, m.v, *hint);
        } else if (m.v.contains(*hint)) {
            s = split_off(m.g, m.b, m.v, m.u, *hint);
            out.swapped = true;
        } else {
            throw InputError("descent hint lies in neither U nor V");
        }
    } else if (!zu.is_zero()) {
        s = split_off(m.g, m.b, m.u, m.v, zu.basis().front());
    } else if (!zv.is_zero()) {
        s = split_off(m.g, m.b, m.v, m.u, zv.basis().front());
        out.swapped = true;
    } else {
        throw InputError("descent needs a central vector in U or V; both intersections are zero "
                         "(never the case for a nonzero nilpotent Manin algebra)");
    }
    const ManinDecomposition re = manin_double_extend(s.core, s.delta);
    const Subspace& up = out.swapped ? m.v : m.u;
    const Subspace& vp = out.swapped ? m.u : m.v;
    if (!re.g.same_structure(s.adapted) || !(re.b.matrix() == s.p.transpose() * m.b.matrix() * s.p) ||
        !(re.u == image(s.pinv, up)) || !(re.v == image(s.pinv, vp)))
        throw StructuralError("descent: rebuilt Manin algebra does not match the input");
    out.core = std::move(s.core);
    out.delta = std::move(s.delta);
    out.p = std::move(s.p);
    return out;
}

NilmanReport nilman_check(const ManinDecomposition& m) {
    NilmanReport r;
    const Subspace z = center(m.g);
    r.center_u = intersect(z, m.u);
    r.center_v = intersect(z, m.v);
    r.nilpotent = derived_and_lcs(m.g).nilpotent;
    const std::string dims =
        "dim z∩U = " + std::to_string(r.center_u.dim()) + ", dim z∩V = " + std::to_string(r.center_v.dim());
    if (!r.nilpotent) {
        r.message = "not nilpotent (informational): " + dims;
    } else if (m.g.dim() > 0 && (r.center_u.is_zero() || r.center_v.is_zero())) {
        r.holds = false;
        r.message = "nilpotent Manin algebra with an empty central intersection, implementation bug: " + dims;
    } else {
        r.message = "nilpotent: " + dims;
    }
    return r;
}

SpecialSymplecticManin certify_special(const ManinDecomposition& m, const Matrix& d) {
    if (const auto f = manin_failures(m.g, m.b, m.u, m.v); !f.empty()) throw InputError("special Manin: " + f.front());
    DerivationMatrix dm = certify_derivation(m.g, d, &m.b);
    if (!dm.derivation || !dm.skew || !dm.invertible)
        throw InputError("special Manin: D must be an invertible skew-symmetric derivation");
    for (const auto& w : m.u.basis())
        if (!m.u.contains(d * w)) throw InputError("special Manin: D does not preserve U; witness " + format_vector(w));
    for (const auto& w : m.v.basis())
        if (!m.v.contains(d * w)) throw InputError("special Manin: D does not preserve V; witness " + format_vector(w));
    BilinearForm omega = symplectic_from_derivation(m.g, m.b, d);
    if (!isotropic(omega, m.u) || !isotropic(omega, m.v))
        throw StructuralError("special Manin: omega does not vanish on U or V");
    return {m, std::move(dm), std::move(omega)};
}

SpecialSymplecticManin eigen_split(const LieAlgebra& g, const BilinearForm& b, const Matrix& d) {
    const DerivationMatrix dm = certify_derivation(g, d, &b);
    if (!dm.derivation || !dm.skew || !dm.invertible)
        throw InputError("eigen_split: D must be an invertible skew-symmetric derivation");
    const auto rr = rational_roots(char_poly(d));
    if (!rr.splits) throw InputError("spectrum not rational: extend scalars or supply an ordering");
    const std::size_t n = g.dim();
    std::vector<std::pair<Rational, Subspace>> parts;
    for (const auto& [lambda, mult] : rr.roots) {
        (void)mult;
        if (is_zero(lambda)) throw InputError("eigen_split: D has eigenvalue 0");
        parts.emplace_back(lambda, Subspace(n, generalized_eigenspace(d, lambda)));
    }
    auto part = [&](const Rational& mu) -> const Subspace* {
        for (const auto& [l, s] : parts)
            if (l == mu) return &s;
        return nullptr;
    };
    for (const auto& [l1, s1] : parts)
        for (const auto& [l2, s2] : parts) {
            const Subspace* target = part(l1 + l2);
            for (const auto& x : s1.basis())
                for (const auto& y : s2.basis()) {
                    if (!is_zero(l1 + l2) && !is_zero(b(x, y)))
                        throw StructuralError("eigen_split: B pairs eigenspaces whose eigenvalues do not cancel");
                    const Vector xy = g.bracket(x, y);
                    if (!is_zero(xy) && (!target || !target->contains(xy)))
                        throw StructuralError("eigen_split: bracket leaves the eigenvalue grading");
                }
        }
    std::vector<Vector> u, v;
    for (const auto& [l, s] : parts) {
        auto& dst = l > 0 ? u : v;
        dst.insert(dst.end(), s.basis().begin(), s.basis().end());
    }
    return certify_special(certify_manin(g, b, Subspace(n, u), Subspace(n, v)), d);
}

SpecialSymplecticManin special_double_extend(const SpecialSymplecticManin& s, const Matrix& delta,
                                             const Rational& lambda, const Vector& c) {
    if (c.size() != s.m.g.dim() || !s.m.v.contains(c)) throw InputError("special double extension: c must lie in V");
    const SymplecticQuadratic sym = symplectic_double_extend({s.m.g, s.m.b, s.d.matrix, delta, lambda, c});
    const ManinDecomposition man = manin_double_extend(s.m, delta);
    if (!sym.g.same_structure(man.g)) throw StructuralError("special double extension: inconsistent brackets");
    return certify_special(man, sym.d.matrix);
}

SpecialDescentAttempt special_descend(const SpecialSymplecticManin& s) {
    SpecialDescentAttempt out;
    const ManinDecomposition& m = s.m;
    const Matrix& d = s.d.matrix;
    const Subspace z = center(m.g);
    bool swapped = false;
    auto hit = central_eigenvector(d, intersect(z, m.u));
    if (!hit) {
        hit = central_eigenvector(d, intersect(z, m.v));
        swapped = true;
    }
    if (!hit) {
        out.note = "no rational eigenvector of D in z(g)∩U or z(g)∩V (may exist after extending scalars)";
        return out;
    }
    const Subspace& up = swapped ? m.v : m.u;
    const Subspace& vp = swapped ? m.u : m.v;
    Split sp = split_off(m.g, m.b, up, vp, hit->second);
    const std::size_t n = sp.core.g.dim();
    const Matrix dbig = sp.pinv * d * sp.p;
    Vector c = zero_vector(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = -dbig(1 + i, 0);

    SpecialStep st;
    st.core = certify_special(sp.core, dbig.block(1, 1, n, n));
    st.delta = sp.delta;
    st.lambda = hit->first;
    st.c = c;
    st.p = sp.p;
    st.swapped = swapped;
    const SpecialSymplecticManin re = special_double_extend(st.core, st.delta, st.lambda, st.c);
    if (!re.m.g.same_structure(sp.adapted) || !(re.m.b.matrix() == sp.p.transpose() * m.b.matrix() * sp.p) ||
        !(re.d.matrix == dbig) || !(re.m.u == image(sp.pinv, up)) || !(re.m.v == image(sp.pinv, vp)))
        throw StructuralError("special descent: rebuilt algebra does not match the input");
    out.step = std::move(st);
    return out;
}

SpecialTower tower_decompose(const SpecialSymplecticManin& s) {
    SpecialTower t;
    SpecialSymplecticManin cur = s;
    while (cur.m.g.dim() > 2) {
        SpecialDescentAttempt a = special_descend(cur);
        if (!a.step) {
            t.failed_level = cur.m.g.dim();
            t.note = a.note;
            t.base = std::move(cur);
            return t;
        }
        cur = a.step->core;
        t.steps.push_back(std::move(*a.step));
    }
    t.complete = cur.m.g.dim() == 2;
    t.base = std::move(cur);
    return t;
}

SpecialSymplecticManin transform(const SpecialSymplecticManin& s, const Matrix& q) {
    const Matrix qi = inverse(q);
    const ManinDecomposition m{change_basis(s.m.g, q), BilinearForm::symmetric(q.transpose() * s.m.b.matrix() * q),
                               image(qi, s.m.u), image(qi, s.m.v)};
    return certify_special(m, qi * s.d.matrix * q);
}

SpecialSymplecticManin replay_tower(const SpecialTower& t) {
    SpecialSymplecticManin cur = t.base;
    for (auto it = t.steps.rbegin(); it != t.steps.rend(); ++it) {
        SpecialSymplecticManin ext = special_double_extend(cur, it->delta, it->lambda, it->c);
        cur = transform(ext, inverse(it->p));
        if (it->swapped) std::swap(cur.m.u, cur.m.v);
    }
    return cur;
}

}  // namespace quadlie
