#include "quadlie/kernels.hpp"

#include "quadlie/errors.hpp"
#include "quadlie/ratlin.hpp"

#include <atomic>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace quadlie::kernels {
namespace {

constexpr std::size_t kParallelDim = 10;
constexpr std::size_t kParallelPoints = 64;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_square(const LieAlgebra& g, const Matrix& m, const char* what) {
    if (m.rows() != g.dim() || m.cols() != g.dim()) throw InputError(std::string(what) + ": matrix shape mismatch");
}

// [[e_i,e_j],e_k] component m, summed cyclically.
bool jacobi_triple_ok(const LieAlgebra& g, std::size_t i, std::size_t j, std::size_t k) {
    const std::size_t n = g.dim();
    Rational acc;
    for (std::size_t m = 0; m < n; ++m) {
        acc = 0;
        for (std::size_t l = 0; l < n; ++l) {
            if (!is_zero(g.c(i, j, l))) acc += g.c(i, j, l) * g.c(l, k, m);
            if (!is_zero(g.c(j, k, l))) acc += g.c(j, k, l) * g.c(l, i, m);
            if (!is_zero(g.c(k, i, l))) acc += g.c(k, i, l) * g.c(l, j, m);
        }
        if (!is_zero(acc)) return false;
    }
    return true;
}

bool invariance_triple_ok(const LieAlgebra& g, const Matrix& b, std::size_t i, std::size_t j, std::size_t k) {
    Rational lhs, rhs;
    for (std::size_t l = 0; l < g.dim(); ++l) {
        if (!is_zero(g.c(i, j, l))) lhs += g.c(i, j, l) * b(l, k);
        if (!is_zero(g.c(j, k, l))) rhs += g.c(j, k, l) * b(i, l);
    }
    return lhs == rhs;
}

bool cocycle_triple_ok(const LieAlgebra& g, const Matrix& w, std::size_t i, std::size_t j, std::size_t k) {
    Rational acc;
    for (std::size_t l = 0; l < g.dim(); ++l) {
        if (!is_zero(g.c(i, j, l))) acc += g.c(i, j, l) * w(l, k);
        if (!is_zero(g.c(j, k, l))) acc += g.c(j, k, l) * w(l, i);
        if (!is_zero(g.c(k, i, l))) acc += g.c(k, i, l) * w(l, j);
    }
    return is_zero(acc);
}

bool leibniz_pair_ok(const LieAlgebra& g, const Matrix& m, std::size_t i, std::size_t j) {
    const std::size_t n = g.dim();
    Rational acc;
    for (std::size_t k = 0; k < n; ++k) {
        acc = 0;
        for (std::size_t l = 0; l < n; ++l) {
            if (!is_zero(g.c(i, j, l))) acc += m(k, l) * g.c(i, j, l);
            if (!is_zero(m(l, i))) acc -= m(l, i) * g.c(l, j, k);
            if (!is_zero(m(l, j))) acc -= m(l, j) * g.c(i, l, k);
        }
        if (!is_zero(acc)) return false;
    }
    return true;
}

bool yang_baxter_pair_ok(const LieAlgebra& g, const Matrix& r, bool modified, std::size_t i, std::size_t j) {
    const Vector ri = r.column(i);
    const Vector rj = r.column(j);
    Vector v = g.bracket(ri, rj);
    const Vector t = g.bracket(ri, unit_vector(g.dim(), j)) + g.bracket(unit_vector(g.dim(), i), rj);
    v = v - r * t;
    if (modified) v = v + g.bracket(i, j);
    return is_zero(v);
}

// Scan over the outer index; each row records its first bad inner position,
// then the smallest row wins. Same answer serial or threaded.
template <class RowScan>
std::size_t first_bad_row(std::size_t rows, bool threaded, std::vector<std::size_t>& inner, RowScan scan) {
    inner.assign(rows, kNone);
    std::atomic<std::size_t> best{kNone};
#pragma omp parallel for schedule(dynamic) if (threaded)
    for (long r = 0; r < static_cast<long>(rows); ++r) {
        const auto ur = static_cast<std::size_t>(r);
        if (ur > best.load(std::memory_order_relaxed)) continue;
        inner[ur] = scan(ur);
        if (inner[ur] != kNone) {
            std::size_t cur = best.load();
            while (ur < cur && !best.compare_exchange_weak(cur, ur)) {
            }
        }
    }
    return best.load();
}

std::optional<Triple> jacobi_impl(const LieAlgebra& g, bool threaded) {
    const std::size_t n = g.dim();
    std::vector<std::size_t> inner;
    const std::size_t i = first_bad_row(n, threaded, inner, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (!jacobi_triple_ok(g, i, j, k)) return j * n + k;
        return kNone;
    });
    if (i == kNone) return std::nullopt;
    return Triple{i, inner[i] / n, inner[i] % n};
}

std::optional<Triple> invariance_impl(const LieAlgebra& g, const Matrix& b, bool threaded) {
    require_square(g, b, "invariance check");
    const std::size_t n = g.dim();
    std::vector<std::size_t> inner;
    const std::size_t i = first_bad_row(n, threaded, inner, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!invariance_triple_ok(g, b, i, j, k)) return j * n + k;
        return kNone;
    });
    if (i == kNone) return std::nullopt;
    return Triple{i, inner[i] / n, inner[i] % n};
}

std::optional<Triple> cocycle_impl(const LieAlgebra& g, const Matrix& w, bool threaded) {
    require_square(g, w, "cocycle check");
    const std::size_t n = g.dim();
    std::vector<std::size_t> inner;
    const std::size_t i = first_bad_row(n, threaded, inner, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (!cocycle_triple_ok(g, w, i, j, k)) return j * n + k;
        return kNone;
    });
    if (i == kNone) return std::nullopt;
    return Triple{i, inner[i] / n, inner[i] % n};
}

std::optional<Pair> leibniz_impl(const LieAlgebra& g, const Matrix& m, bool threaded) {
    require_square(g, m, "derivation check");
    const std::size_t n = g.dim();
    std::vector<std::size_t> inner;
    const std::size_t i = first_bad_row(n, threaded, inner, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j)
            if (!leibniz_pair_ok(g, m, i, j)) return j;
        return kNone;
    });
    if (i == kNone) return std::nullopt;
    return Pair{i, inner[i]};
}

std::optional<Pair> yang_baxter_impl(const LieAlgebra& g, const Matrix& r, bool modified, bool threaded) {
    require_square(g, r, "Yang-Baxter check");
    const std::size_t n = g.dim();
    std::vector<std::size_t> inner;
    // the expression is antisymmetric in (x, y): pairs i < j cover everything
    const std::size_t i = first_bad_row(n, threaded, inner, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j)
            if (!yang_baxter_pair_ok(g, r, modified, i, j)) return j;
        return kNone;
    });
    if (i == kNone) return std::nullopt;
    return Pair{i, inner[i]};
}

bool nonsingular_at(const std::vector<Matrix>& basis, const std::vector<long>& p) {
    Matrix m(basis.front().rows(), basis.front().cols());
    for (std::size_t t = 0; t < basis.size(); ++t)
        if (p[t] != 0) m = m + Rational(p[t]) * basis[t];
    return !is_zero(determinant(m));
}

std::optional<std::size_t> nonsingular_impl(const std::vector<Matrix>& basis,
                                            const std::vector<std::vector<long>>& points, bool threaded) {
    if (basis.empty()) return std::nullopt;
    for (const auto& p : points)
        if (p.size() != basis.size()) throw InputError("grid point has the wrong number of coordinates");
    std::vector<std::size_t> inner;
    const std::size_t idx = first_bad_row(points.size(), threaded, inner, [&](std::size_t r) {
        return nonsingular_at(basis, points[r]) ? std::size_t{0} : kNone;
    });
    if (idx == kNone) return std::nullopt;
    return idx;
}

}  // namespace

namespace serial {
std::optional<Triple> jacobi_violation(const LieAlgebra& g) { return jacobi_impl(g, false); }
std::optional<Triple> invariance_violation(const LieAlgebra& g, const Matrix& b) { return invariance_impl(g, b, false); }
std::optional<Triple> cocycle_violation(const LieAlgebra& g, const Matrix& w) { return cocycle_impl(g, w, false); }
std::optional<Pair> leibniz_violation(const LieAlgebra& g, const Matrix& m) { return leibniz_impl(g, m, false); }
std::optional<Pair> yang_baxter_violation(const LieAlgebra& g, const Matrix& r, bool modified) {
    return yang_baxter_impl(g, r, modified, false);
}
std::optional<std::size_t> first_nonsingular(const std::vector<Matrix>& basis,
                                             const std::vector<std::vector<long>>& points) {
    return nonsingular_impl(basis, points, false);
}
}  // namespace serial

namespace parallel {
std::optional<Triple> jacobi_violation(const LieAlgebra& g) { return jacobi_impl(g, g.dim() >= kParallelDim); }
std::optional<Triple> invariance_violation(const LieAlgebra& g, const Matrix& b) {
    return invariance_impl(g, b, g.dim() >= kParallelDim);
}
std::optional<Triple> cocycle_violation(const LieAlgebra& g, const Matrix& w) {
    return cocycle_impl(g, w, g.dim() >= kParallelDim);
}
std::optional<Pair> leibniz_violation(const LieAlgebra& g, const Matrix& m) {
    return leibniz_impl(g, m, g.dim() >= kParallelDim);
}
std::optional<Pair> yang_baxter_violation(const LieAlgebra& g, const Matrix& r, bool modified) {
    return yang_baxter_impl(g, r, modified, g.dim() >= kParallelDim);
}
std::optional<std::size_t> first_nonsingular(const std::vector<Matrix>& basis,
                                             const std::vector<std::vector<long>>& points) {
    return nonsingular_impl(basis, points, points.size() >= kParallelPoints);
}
}  // namespace parallel

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace quadlie::kernels
