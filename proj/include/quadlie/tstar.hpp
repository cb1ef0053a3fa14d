#pragma once

#include "quadlie/deriv.hpp"
#include "quadlie/forms.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace quadlie {

/// t(i,j,k) = theta(e_i, e_j)(e_k). A cyclic cocycle is fully alternating.
class CyclicCocycle {
public:
    CyclicCocycle() = default;
    explicit CyclicCocycle(std::size_t dim) : dim_(dim), t_(dim * dim * dim, Rational(0)) {}

    static CyclicCocycle zero(std::size_t dim) { return CyclicCocycle(dim); }

    std::size_t dim() const noexcept { return dim_; }
    const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const { return t_[(i * dim_ + j) * dim_ + k]; }
    /// Raw write of one entry (no symmetrization).
    void set_raw(std::size_t i, std::size_t j, std::size_t k, const Rational& v) { t_[(i * dim_ + j) * dim_ + k] = v; }
    /// Writes v at (i,j,k) and the signed value on the whole S3 orbit.
    void set_alternating(std::size_t i, std::size_t j, std::size_t k, const Rational& v);

    bool is_zero() const;
    /// theta(x, y) as coordinates on the dual basis.
    Vector apply(const Vector& x, const Vector& y) const;
    Rational evaluate(const Vector& x, const Vector& y, const Vector& z) const;

    friend bool operator==(const CyclicCocycle&, const CyclicCocycle&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Rational> t_;
};

/// Antisymmetry, cyclicity, the coadjoint 2-cocycle identity and dθ̃ = 0.
Check check_cocycle(const LieAlgebra& a, const CyclicCocycle& theta);

/// Basis of the closed alternating 3-forms on a, i.e. of all cyclic cocycles.
std::vector<CyclicCocycle> cocycle_space(const LieAlgebra& a);

/// Scalar differential of a 2-form:
/// dF(x,y,z) = -F([x,y],z) + F([x,z],y) - F([y,z],x).
CyclicCocycle coboundary(const LieAlgebra& a, const Matrix& f);
/// Scalar differential of a 3-form, evaluated on all i<j<k<l; empty when closed.
std::optional<std::array<std::size_t, 4>> closedness_violation(const LieAlgebra& a, const CyclicCocycle& theta);

/// a + a* with basis x_1..x_n, f_1..f_n (f_i dual to x_i).
struct TStarData {
    LieAlgebra base;
    CyclicCocycle theta;
    LieAlgebra g;
    BilinearForm b;

    std::size_t base_dim() const noexcept { return base.dim(); }
    /// The a* block as a subspace of g.
    Subspace dual_block() const;
};

/// Builds and certifies T*_theta(a). Throws InputError when theta is not a
/// cyclic cocycle, StructuralError when a certification fails.
TStarData build_tstar(const LieAlgebra& a, const CyclicCocycle& theta);

/// Center of T*_theta(a) from the base data: x + f with x in z(a) and
/// theta(x, y) + f.ad(y) = 0 for all y.
Subspace tstar_center_formula(const LieAlgebra& a, const CyclicCocycle& theta);

struct LiftedDerivation {
    DerivationMatrix dbar;
    std::vector<Rational> big_theta;  // Theta(i,j,k), n^3 entries
    Matrix f;                         // skew, dF = Theta
    Matrix h;                         // B(Hx, y) = F(x, y); 2n x 2n, maps a -> a*
    BilinearForm omega;               // B(Dbar ., .)
};

/// Theta(x,y,z) = theta(Dx,y)z + theta(Dy,z)x + theta(Dz,x)y
std::vector<Rational> compatibility_tensor(const CyclicCocycle& theta, const Matrix& d);

/// Lifts an invertible derivation D of the base to Dbar(x+f) = Dx - Hx - f.D.
LiftedDerivation lift_derivation(const TStarData& data, const Matrix& d);

/// x + f -> x + f - phi(x, .): isometric isomorphism T*_0(a) -> T*_{dphi}(a).
Matrix coboundary_isomorphism(const LieAlgebra& a, const Matrix& phi);

struct Extraction {
    LieAlgebra base;
    CyclicCocycle theta;
    Matrix p;                    // columns: images in g of x_1..x_m, f_1..f_m
    std::optional<Matrix> d;     // induced derivation of the base, when Dbar was given
};

/// Recovers (a, theta) from a lagrangian ideal; certifies the isometry.
Extraction extract_tstar(const LieAlgebra& g, const BilinearForm& b, const Subspace& ideal,
                         const Matrix* dbar = nullptr);

/// Grows a Dbar-stable completely isotropic ideal of half dimension by
/// rational eigenvectors. Empty when the search gets stuck (not a proof).
std::optional<Subspace> find_isotropic_stable_ideal(const LieAlgebra& g, const BilinearForm& b, const Matrix& dbar);

struct Reduction {
    bool split = false;
    // split branch: T*_theta(a) = T*_{theta|h}(h) + hyperbolic plane
    std::optional<TStarData> core;
    // reduction branch
    LieAlgebra a1;
    CyclicCocycle theta1;
    Extraction extraction;
    Vector e_shift;  // e was replaced by e + e_shift, a vector of z(h); zero when kept
};

/// a = h + Ke with e = basis vector `e`, central and outside [a,a]. When some x in
/// [a,a] ∩ z(a) has theta(x, .)(e) != 0, e is first moved inside e + z(h) to cancel it.
Reduction reduce_abelian_summand(const LieAlgebra& a, const CyclicCocycle& theta, std::size_t e);
/// Picks e itself (first central basis direction outside [a,a]).
Reduction reduce_abelian_summand(const LieAlgebra& a, const CyclicCocycle& theta);

struct Normalized {
    LieAlgebra base;
    CyclicCocycle theta;
    std::size_t steps = 0;
};

/// Repeats the reduction until z(b) is contained in [b,b].
Normalized normalize_base(const LieAlgebra& a, const CyclicCocycle& theta);

/// theta transported to a new basis of a (columns of p).
CyclicCocycle change_basis(const CyclicCocycle& theta, const Matrix& p);

}  // namespace quadlie
