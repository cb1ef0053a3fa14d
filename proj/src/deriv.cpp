#include "quadlie/deriv.hpp"

#include "quadlie/errors.hpp"
#include "quadlie/ratlin.hpp"

#include <random>

namespace quadlie {

namespace {

constexpr std::size_t kGridCap = 2000;

// Leibniz equations on the unknowns M(a,b) -> column a*n + b.
std::vector<Vector> leibniz_rows(const LieAlgebra& g) {
    const std::size_t n = g.dim();
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vector r = zero_vector(n * n);
                for (std::size_t l = 0; l < n; ++l) {
                    r[k * n + l] += g.c(i, j, l);
                    r[l * n + i] -= g.c(l, j, k);
                    r[l * n + j] -= g.c(i, l, k);
                }
                if (!is_zero(r)) rows.push_back(std::move(r));
            }
    return rows;
}

std::vector<Matrix> unflatten(const std::vector<Vector>& vs, std::size_t n) {
    std::vector<Matrix> out;
    for (const auto& v : vs) {
        Matrix m(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) m(a, b) = v[a * n + b];
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<Matrix> solve_space(std::vector<Vector> rows, std::size_t n) {
    if (n == 0) return {};
    if (rows.empty()) {
        std::vector<Vector> all;
        for (std::size_t t = 0; t < n * n; ++t) all.push_back(unit_vector(n * n, t));
        return unflatten(all, n);
    }
    return unflatten(kernel(Matrix::from_rows(rows, n * n)), n);
}

Matrix combine(const std::vector<Matrix>& space, const Vector& coeffs) {
    Matrix m(space.front().rows(), space.front().cols());
    for (std::size_t t = 0; t < space.size(); ++t)
        if (!is_zero(coeffs[t])) m = m + coeffs[t] * space[t];
    return m;
}

Vector to_vector(const std::vector<long>& p) {
    Vector v;
    for (long x : p) v.emplace_back(x);
    return v;
}

// 0, 1, -1, 2, -2, ...
long grid_value(std::size_t idx) {
    const long h = static_cast<long>((idx + 1) / 2);
    return idx % 2 == 1 ? h : -h;
}

}  // namespace

std::vector<Matrix> derivation_space(const LieAlgebra& g) { return solve_space(leibniz_rows(g), g.dim()); }

std::vector<Matrix> skew_derivation_space(const LieAlgebra& g, const BilinearForm& b) {
    const std::size_t n = g.dim();
    if (b.dim() != n) throw InputError("form dimension does not match the algebra");
    auto rows = leibniz_rows(g);
    const Matrix& bm = b.matrix();
    // (M^T B + B M)_ij = sum_k M(k,i) B(k,j) + B(i,k) M(k,j)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Vector r = zero_vector(n * n);
            for (std::size_t k = 0; k < n; ++k) {
                r[k * n + i] += bm(k, j);
                r[k * n + j] += bm(i, k);
            }
            if (!is_zero(r)) rows.push_back(std::move(r));
        }
    return solve_space(std::move(rows), n);
}

InvertibleSearch find_invertible(const std::vector<Matrix>& space, std::uint64_t seed, std::size_t trials) {
    InvertibleSearch out;
    if (space.empty()) {
        out.definitive = true;
        out.note = "none exists: the space is zero";
        return out;
    }
    const std::size_t k = space.size();
    const std::size_t n = space.front().rows();
    for (const auto& m : space)
        if (m.rows() != n || m.cols() != n) throw InputError("find_invertible: matrices must be square of one size");
    if (n == 0) {
        out.found = Matrix(0, 0);
        out.coefficients = zero_vector(k);
        return out;
    }

    // det is a polynomial of degree <= n in each coefficient, so the full grid
    // {-n..n}^k decides; we walk it in shells of growing |value| up to a cap
    const std::size_t width = 2 * n + 1;
    std::vector<std::vector<long>> points;
    bool complete = true;
    std::vector<std::size_t> idx(k, 0);
    for (std::size_t level = 0; level < width && complete; ++level) {
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
            std::size_t mx = 0;
            for (auto v : idx) mx = std::max(mx, v);
            if (mx == level) {
                if (points.size() == kGridCap) {
                    complete = false;
                    break;
                }
                std::vector<long> p(k);
                for (std::size_t t = 0; t < k; ++t) p[t] = grid_value(idx[t]);
                points.push_back(std::move(p));
            }
            std::size_t t = 0;
            while (t < k && idx[t] == level) idx[t++] = 0;
            if (t == k) break;
            ++idx[t];
        }
        if (!complete) break;
    }
    out.grid_points = points.size();
    if (const auto hit = kernels::first_nonsingular(space, points)) {
        out.coefficients = to_vector(points[*hit]);
        out.found = combine(space, out.coefficients);
        return out;
    }
    if (complete) {
        out.definitive = true;
        out.note = "none exists: determinant vanishes on the full grid";
        return out;
    }

    std::mt19937_64 rng(seed);
    const long bound = static_cast<long>(10 * n);
    std::uniform_int_distribution<long> dist(-bound, bound);
    for (std::size_t t = 0; t < trials; ++t) {
        Vector c(k);
        for (auto& x : c) x = dist(rng);
        ++out.random_trials;
        Matrix m = combine(space, c);
        if (!is_zero(determinant(m))) {
            out.coefficients = std::move(c);
            out.found = std::move(m);
            return out;
        }
    }

    if (k <= 4) {
        // per-variable degree <= n: {0..n}^k is an interpolation grid
        std::vector<std::vector<long>> full;
        std::vector<long> p(k, 0);
        while (true) {
            full.push_back(p);
            std::size_t t = 0;
            while (t < k && p[t] == static_cast<long>(n)) p[t++] = 0;
            if (t == k) break;
            ++p[t];
        }
        if (const auto hit = kernels::first_nonsingular(space, full)) {
            out.coefficients = to_vector(full[*hit]);
            out.found = combine(space, out.coefficients);
            return out;
        }
        out.definitive = true;
        out.note = "none exists: determinant is identically zero";
        return out;
    }
    out.note = "no invertible element found (not a proof)";
    return out;
}

Vector LeftSymmetricProduct::product(const Vector& x, const Vector& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw InputError("product of vectors of the wrong length");
    Vector out = zero_vector(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (is_zero(x[i])) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (is_zero(y[j])) continue;
            const Rational s = x[i] * y[j];
            for (std::size_t k = 0; k < dim_; ++k)
                if (!is_zero(p(i, j, k))) out[k] += s * p(i, j, k);
        }
    }
    return out;
}

LeftSymmetricProduct left_symmetric(const LieAlgebra& g, const Matrix& d) {
    const std::size_t n = g.dim();
    if (d.rows() != n || d.cols() != n) throw InputError("derivation matrix has the wrong shape");
    if (is_zero(determinant(d))) throw InputError("D is not invertible");
    if (!is_derivation(g, d)) throw InputError("D is not a derivation");
    const Matrix dinv = inverse(d);
    LeftSymmetricProduct ls(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vector v = dinv * g.bracket(unit_vector(n, i), d.column(j));
            for (std::size_t k = 0; k < n; ++k) ls.p(i, j, k) = v[k];
        }
    std::vector<Vector> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back(unit_vector(n, i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vector ij = ls.product(e[i], e[j]);
            if (ij - ls.product(e[j], e[i]) != g.bracket(i, j))
                throw StructuralError("x.y - y.x != [x,y] on (" + g.names()[i] + ", " + g.names()[j] + ")");
            if (d * ij != ls.product(d.column(i), e[j]) + ls.product(e[i], d.column(j)))
                throw StructuralError("D is not a derivation of the product on (" + g.names()[i] + ", " +
                                      g.names()[j] + ")");
            for (std::size_t k = 0; k < n; ++k) {
                const Vector lhs = ls.product(ij, e[k]) - ls.product(e[i], ls.product(e[j], e[k]));
                const Vector rhs = ls.product(ls.product(e[j], e[i]), e[k]) - ls.product(e[j], ls.product(e[i], e[k]));
                if (lhs != rhs)
                    throw StructuralError("left symmetry fails on (" + g.names()[i] + ", " + g.names()[j] + ", " +
                                          g.names()[k] + ")");
            }
        }
    return ls;
}

ConnectionReport metric_connection_check(const LieAlgebra& g, const BilinearForm& b, const Matrix& d) {
    const std::size_t n = g.dim();
    if (b.dim() != n) throw InputError("form dimension does not match the algebra");
    const LeftSymmetricProduct ls = left_symmetric(g, d);
    const Matrix metric = d.transpose() * b.matrix() * d;  // <x,y> = B(Dx, Dy)
    auto inner = [&](const Vector& x, const Vector& y) { return dot(x, metric * y); };
    ConnectionReport rep;
    const auto& nm = g.names();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Vector ei = unit_vector(n, i);
            const Vector ej = unit_vector(n, j);
            const Vector ij = ls.product(ei, ej);
            if (rep.torsion_free && ij - ls.product(ej, ei) != g.bracket(i, j)) {
                rep.torsion_free = false;
                rep.failures.push_back("torsion on (" + nm[i] + ", " + nm[j] + ")");
            }
            for (std::size_t k = 0; k < n && rep.metric_compatible; ++k) {
                const Vector ek = unit_vector(n, k);
                if (!is_zero(inner(ij, ek) + inner(ej, ls.product(ei, ek)))) {
                    rep.metric_compatible = false;
                    rep.failures.push_back("metric compatibility on (" + nm[i] + ", " + nm[j] + ", " + nm[k] + ")");
                }
            }
        }
    return rep;
}

namespace {
Check yang_baxter(const LieAlgebra& g, const Matrix& r, bool modified) {
    if (const auto w = kernels::yang_baxter_violation(g, r, modified)) {
        const auto& nm = g.names();
        return Check::fail(std::string(modified ? "modified " : "") + "Yang-Baxter fails on (" + nm[(*w)[0]] + ", " +
                               nm[(*w)[1]] + ")",
                           {(*w)[0], (*w)[1]});
    }
    return Check::pass();
}
}  // namespace

Check cybe_check(const LieAlgebra& g, const Matrix& r) { return yang_baxter(g, r, false); }
Check mcybe_check(const LieAlgebra& g, const Matrix& r) { return yang_baxter(g, r, true); }

}  // namespace quadlie
