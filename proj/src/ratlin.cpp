#include "quadlie/ratlin.hpp"

#include "quadlie/errors.hpp"

#include <algorithm>
#include <set>

namespace quadlie {

// ---- elimination ------------------------------------------------------------

RrefResult rref(const Matrix& m) {
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        while (p < a.rows() && sgn(a(p, col)) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != row)
            for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(p, c), a(row, c));
        const Rational inv = 1 / a(row, col);
        for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || sgn(a(r, col)) == 0) continue;
            const Rational f = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> kernel(const Matrix& m) {
    const auto [r, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector v = zero_vector(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Solution> solve(const Matrix& a, const Vector& b) {
    if (a.rows() != b.size()) throw InputError("solve: right-hand side length does not match row count");
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    const auto [red, pivots] = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    Solution s;
    s.particular = zero_vector(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) s.particular[pivots[i]] = red(i, a.cols());
    s.kernel = kernel(a);
    return s;
}

Rational determinant(const Matrix& m) {
    if (!m.is_square()) throw InputError("determinant of a non-square matrix");
    Matrix a = m;
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && sgn(a(p, col)) == 0) ++p;
        if (p == n) return 0;
        if (p != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(a(p, c), a(col, c));
            det = -det;
        }
        det *= a(col, col);
        const Rational inv = 1 / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(a(r, col)) == 0) continue;
            const Rational f = a(r, col) * inv;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
        }
    }
    return det;
}

Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw InputError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    const auto [red, pivots] = rref(aug);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) throw InputError("matrix is singular");
    return red.block(0, n, n, n);
}

// ---- spans ------------------------------------------------------------------

std::vector<Vector> rref_basis(const std::vector<Vector>& vectors, std::size_t dim) {
    if (vectors.empty()) return {};
    const auto [red, pivots] = rref(Matrix::from_rows(vectors, dim));
    std::vector<Vector> out;
    for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(red.row(i));
    return out;
}

bool in_span(const std::vector<Vector>& basis, const Vector& v) {
    if (is_zero(v)) return true;
    if (basis.empty()) return false;
    std::vector<Vector> ext = basis;
    ext.push_back(v);
    return rank(Matrix::from_rows(ext, v.size())) == rank(Matrix::from_rows(basis, v.size()));
}

bool spans_equal(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim) {
    return rref_basis(a, dim) == rref_basis(b, dim);
}

std::vector<Vector> intersect_spans(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim) {
    if (a.empty() || b.empty()) return {};
    // Solve sum x_i a_i - sum y_j b_j = 0.
    Matrix m(dim, a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t r = 0; r < dim; ++r) m(r, i) = a[i][r];
    for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t r = 0; r < dim; ++r) m(r, a.size() + j) = -b[j][r];
    std::vector<Vector> out;
    for (const auto& k : kernel(m)) {
        Vector v = zero_vector(dim);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (sgn(k[i]) != 0) v = v + k[i] * a[i];
        out.push_back(std::move(v));
    }
    return rref_basis(out, dim);
}

std::optional<Vector> coordinates(const std::vector<Vector>& basis, const Vector& v) {
    if (basis.empty()) {
        if (is_zero(v)) return Vector{};
        return std::nullopt;
    }
    const auto sol = solve(Matrix::from_columns(basis, v.size()), v);
    if (!sol) return std::nullopt;
    return sol->particular;
}

// ---- polynomials ------------------------------------------------------------

Polynomial::Polynomial(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Polynomial::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Matrix Polynomial::evaluate(const Matrix& m) const {
    if (!m.is_square()) throw InputError("polynomial evaluated at a non-square matrix");
    Matrix acc(m.rows(), m.cols());
    const Matrix id = Matrix::identity(m.rows());
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * m + (*it) * id;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    std::vector<Rational> c = coeffs_;
    const Rational lead = c.back();
    for (auto& x : c) x /= lead;
    return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw InputError("polynomial division by zero");
    Polynomial q, r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
        const Polynomial term = Polynomial::monomial(r.leading() / b.leading(), shift);
        q = q + term;
        r = r - term * b;
    }
    return {q, r};
}

Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Polynomial char_poly(const Matrix& m) {
    if (!m.is_square()) throw InputError("char_poly of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix h = m;
    // Similarity reduction to upper Hessenberg form.
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t i = j + 1;
        while (i < n && sgn(h(i, j)) == 0) ++i;
        if (i == n) continue;
        if (i != j + 1) {
            for (std::size_t c = 0; c < n; ++c) std::swap(h(i, c), h(j + 1, c));
            for (std::size_t r = 0; r < n; ++r) std::swap(h(r, i), h(r, j + 1));
        }
        for (std::size_t k = j + 2; k < n; ++k) {
            if (sgn(h(k, j)) == 0) continue;
            const Rational u = h(k, j) / h(j + 1, j);
            for (std::size_t c = 0; c < n; ++c) h(k, c) -= u * h(j + 1, c);
            for (std::size_t r = 0; r < n; ++r) h(r, j + 1) += u * h(r, k);
        }
    }
    // p_m = (t - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{k=i+1..m} h_{k,k-1}) p_{i-1}   (1-based)
    std::vector<Polynomial> p(n + 1);
    p[0] = Polynomial({Rational(1)});
    const Polynomial t = Polynomial::monomial(1, 1);
    for (std::size_t mm = 1; mm <= n; ++mm) {
        p[mm] = (t - Polynomial({h(mm - 1, mm - 1)})) * p[mm - 1];
        Rational prod = 1;
        for (std::size_t i = mm - 1; i >= 1; --i) {
            prod *= h(i, i - 1);
            if (sgn(prod) == 0) break;
            p[mm] = p[mm] - Polynomial({prod * h(i - 1, mm - 1)}) * p[i - 1];
        }
    }
    return p[n];
}

Polynomial minimal_polynomial(const Matrix& m) {
    if (!m.is_square()) throw InputError("minimal_polynomial of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Polynomial(std::vector<Rational>{Rational(1)});
    const std::size_t nn = n * n;
    auto flatten = [&](const Matrix& a) {
        Vector v(nn);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) v[r * n + c] = a(r, c);
        return v;
    };
    std::vector<Vector> powers{flatten(Matrix::identity(n))};
    Matrix current = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        current = current * m;
        const Vector target = flatten(current);
        if (auto coeffs = coordinates(powers, target)) {
            std::vector<Rational> c(k + 1);
            for (std::size_t i = 0; i < k; ++i) c[i] = -(*coeffs)[i];
            c[k] = 1;
            return Polynomial(std::move(c));
        }
        powers.push_back(target);
    }
    // Unreachable by Cayley-Hamilton.
    throw StructuralError("minimal polynomial search exceeded the matrix size");
}

namespace {

std::vector<mpz_class> prime_factors(mpz_class n) {
    std::vector<mpz_class> out;
    if (n < 0) n = -n;
    for (unsigned long p = 2; p <= 1000000UL && n > 1; ++p) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.emplace_back(p);
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
        }
        if (mpz_class(p) * p > n) break;
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
            throw InputError("rational_roots: coefficient too hard to factor by trial division");
        out.push_back(n);
    }
    return out;
}

std::vector<mpz_class> divisors(const mpz_class& n) {
    mpz_class m = abs(n);
    std::vector<mpz_class> divs{1};
    for (const auto& p : prime_factors(m)) {
        std::size_t e = 0;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            m /= p;
            ++e;
        }
        const std::size_t base = divs.size();
        mpz_class pk = 1;
        for (std::size_t k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

}  // namespace

RationalRoots rational_roots(const Polynomial& p) {
    if (p.is_zero()) throw InputError("rational_roots of the zero polynomial");
    RationalRoots out;
    const auto degree = static_cast<std::size_t>(p.degree());
    std::size_t zero_mult = 0;
    while (sgn(p.coefficients()[zero_mult]) == 0) ++zero_mult;
    Polynomial rest(std::vector<Rational>(p.coefficients().begin() + static_cast<std::ptrdiff_t>(zero_mult),
                                          p.coefficients().end()));
    std::size_t found = zero_mult;
    if (zero_mult) out.roots.emplace_back(Rational(0), zero_mult);

    if (rest.degree() > 0) {
        // Candidates come from the squarefree part, which has the same roots.
        const Polynomial sqf = divmod(rest, gcd(rest, rest.derivative())).first;
        mpz_class lcm_den = 1;
        for (const auto& c : sqf.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
        std::vector<mpz_class> ints;
        for (const auto& c : sqf.coefficients()) ints.push_back(mpz_class(c * lcm_den));
        std::set<Rational> candidates;
        const auto num_divs = divisors(ints.front());
        const auto den_divs = divisors(ints.back());
        for (const auto& a : num_divs)
            for (const auto& b : den_divs) {
                Rational r(a, b);
                r.canonicalize();
                candidates.insert(r);
                candidates.insert(-r);
            }
        for (const auto& r : candidates) {
            if (sgn(sqf.evaluate(r)) != 0) continue;
            const Polynomial lin({-r, Rational(1)});
            std::size_t mult = 0;
            while (true) {
                auto [q, rem] = divmod(rest, lin);
                if (!rem.is_zero()) break;
                rest = std::move(q);
                ++mult;
            }
            out.roots.emplace_back(r, mult);
            found += mult;
        }
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.splits = found == degree;
    return out;
}

std::vector<Vector> generalized_eigenspace(const Matrix& m, const Rational& lambda) {
    if (!m.is_square()) throw InputError("generalized_eigenspace of a non-square matrix");
    const std::size_t n = m.rows();
    const Matrix shifted = m - lambda * Matrix::identity(n);
    Matrix power = Matrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) power = power * shifted;
    return kernel(power);
}

std::vector<Vector> eigenspace(const Matrix& m, const Rational& lambda) {
    if (!m.is_square()) throw InputError("eigenspace of a non-square matrix");
    return kernel(m - lambda * Matrix::identity(m.rows()));
}

bool minpoly_squarefree(const Matrix& m) {
    const Polynomial p = minimal_polynomial(m);
    return gcd(p, p.derivative()).degree() == 0;
}

}  // namespace quadlie
