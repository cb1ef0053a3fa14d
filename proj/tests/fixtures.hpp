#pragma once

// Small algebras written out by hand, independent of the library constructors.

#include "quadlie/lie_algebra.hpp"
#include "quadlie/matrix.hpp"

#include <random>

namespace fx {

using namespace quadlie;

inline Vector vec(std::initializer_list<long> xs) {
    Vector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<Vector> rs;
    std::size_t cols = 0;
    for (auto r : rows) {
        rs.push_back(vec(r));
        cols = r.size();
    }
    return Matrix::from_rows(rs, cols);
}

// [x1,x2] = x3
inline LieAlgebra L2() {
    LieAlgebra g(3);
    g.set_structure(0, 1, 2, 1);
    return g;
}

// [x1,x2] = x3, [x1,x3] = x4
inline LieAlgebra L3() {
    LieAlgebra g(4);
    g.set_structure(0, 1, 2, 1);
    g.set_structure(0, 2, 3, 1);
    return g;
}

// L2 plus a central x4
inline LieAlgebra L2A1() {
    LieAlgebra g(4);
    g.set_structure(0, 1, 2, 1);
    return g;
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo = -3, long hi = 3) {
    std::uniform_int_distribution<long> d(lo, hi);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

// Lie bracket of T*_0(a) computed straight from [x+f, y+g] = [x,y] + f.ad(y) - g.ad(x)
// on coordinate vectors of length 2n.
inline Vector tstar0_bracket(const LieAlgebra& a, const Vector& u, const Vector& v) {
    const std::size_t n = a.dim();
    Vector out(2 * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Rational& c = a.c(i, j, k);
                if (c == 0) continue;
                out[k] += u[i] * v[j] * c;
                // (f.ad(y))(x_i) = f([y, x_i]), so c(i,j,k) enters with a minus
                out[n + i] -= u[n + k] * v[j] * c;
                out[n + i] += v[n + k] * u[j] * c;
            }
    return out;
}

// T*_0(a) assembled from the oracle bracket, basis x1..xn f1..fn
inline LieAlgebra oracle_tstar0(const LieAlgebra& a) {
    const std::size_t n = a.dim();
    LieAlgebra g(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i)
        for (std::size_t j = i + 1; j < 2 * n; ++j)
            g.set_bracket(i, j, tstar0_bracket(a, unit_vector(2 * n, i), unit_vector(2 * n, j)));
    return g;
}

inline Matrix hyperbolic(std::size_t n) {
    Matrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) m(i, n + i) = m(n + i, i) = 1;
    return m;
}

}  // namespace fx
