#pragma once

// Exhaustive certification loops over basis pairs/triples.
//
// Every check comes in two flavours with identical results: `serial` is the
// plain reference loop, `parallel` distributes the outer index with OpenMP
// and reduces to the lexicographically first violation, so the witness does
// not depend on thread scheduling. The unqualified functions dispatch to the
// parallel version.

#include "quadlie/lie_algebra.hpp"
#include "quadlie/matrix.hpp"

#include <array>
#include <optional>
#include <vector>

namespace quadlie::kernels {

using Pair = std::array<std::size_t, 2>;
using Triple = std::array<std::size_t, 3>;

namespace serial {
/// First i<j<k with [[e_i,e_j],e_k] + cyclic != 0.
std::optional<Triple> jacobi_violation(const LieAlgebra& g);
/// First (i,j,k) with B([e_i,e_j],e_k) != B(e_i,[e_j,e_k]).
std::optional<Triple> invariance_violation(const LieAlgebra& g, const Matrix& b);
/// First i<j<k with w([e_i,e_j],e_k) + w([e_j,e_k],e_i) + w([e_k,e_i],e_j) != 0.
std::optional<Triple> cocycle_violation(const LieAlgebra& g, const Matrix& w);
/// First i<j with m[e_i,e_j] != [m e_i,e_j] + [e_i,m e_j].
std::optional<Pair> leibniz_violation(const LieAlgebra& g, const Matrix& m);
/// First i<j where [Rx,Ry] - R[Rx,y] - R[x,Ry] (+ [x,y] if modified) != 0.
std::optional<Pair> yang_baxter_violation(const LieAlgebra& g, const Matrix& r, bool modified);
/// Index of the first integer point whose combination sum_i p_i * basis_i is nonsingular.
std::optional<std::size_t> first_nonsingular(const std::vector<Matrix>& basis,
                                             const std::vector<std::vector<long>>& points);
}  // namespace serial

namespace parallel {
std::optional<Triple> jacobi_violation(const LieAlgebra& g);
std::optional<Triple> invariance_violation(const LieAlgebra& g, const Matrix& b);
std::optional<Triple> cocycle_violation(const LieAlgebra& g, const Matrix& w);
std::optional<Pair> leibniz_violation(const LieAlgebra& g, const Matrix& m);
std::optional<Pair> yang_baxter_violation(const LieAlgebra& g, const Matrix& r, bool modified);
std::optional<std::size_t> first_nonsingular(const std::vector<Matrix>& basis,
                                             const std::vector<std::vector<long>>& points);
}  // namespace parallel

inline std::optional<Triple> jacobi_violation(const LieAlgebra& g) { return parallel::jacobi_violation(g); }
inline std::optional<Triple> invariance_violation(const LieAlgebra& g, const Matrix& b) {
    return parallel::invariance_violation(g, b);
}
inline std::optional<Triple> cocycle_violation(const LieAlgebra& g, const Matrix& w) {
    return parallel::cocycle_violation(g, w);
}
inline std::optional<Pair> leibniz_violation(const LieAlgebra& g, const Matrix& m) {
    return parallel::leibniz_violation(g, m);
}
inline std::optional<Pair> yang_baxter_violation(const LieAlgebra& g, const Matrix& r, bool modified) {
    return parallel::yang_baxter_violation(g, r, modified);
}
inline std::optional<std::size_t> first_nonsingular(const std::vector<Matrix>& basis,
                                                    const std::vector<std::vector<long>>& points) {
    return parallel::first_nonsingular(basis, points);
}

/// Number of OpenMP threads available (1 without OpenMP).
int thread_count();

}  // namespace quadlie::kernels
