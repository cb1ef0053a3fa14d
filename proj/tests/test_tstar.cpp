#include "doctest.h"
#include "fixtures.hpp"

#include "quadlie/errors.hpp"
#include "quadlie/ratlin.hpp"
#include "quadlie/tstar.hpp"

using namespace quadlie;
using fx::mat;
using fx::vec;

namespace {

Matrix random_skew(std::mt19937_64& rng, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = static_cast<long>(rng() % 7) - 3;
            m(j, i) = -m(i, j);
        }
    return m;
}

// only phi(x2,x4) and phi(x3,x4) reach dphi on L3; pin one of them
Matrix l3_phi(std::mt19937_64& rng) {
    Matrix m = random_skew(rng, 4);
    m(1, 3) = 1;
    m(3, 1) = -1;
    return m;
}

// theta(x,y)(z) evaluated straight from the T* bracket: the a*-part of [x,y] paired with z
Rational theta_from_bracket(const TStarData& t, std::size_t i, std::size_t j, std::size_t k) {
    const std::size_t n = t.base_dim();
    return t.g.c(i, j, n + k);
}

LieAlgebra l2_plus(std::size_t extra) {
    LieAlgebra a(3 + extra);
    a.set_structure(0, 1, 2, 1);
    return a;
}

// [x1,x2] = x2 plus two central directions
LieAlgebra affine_plus_2() {
    LieAlgebra a(4);
    a.set_structure(0, 1, 1, 1);
    return a;
}

}  // namespace

TEST_CASE("check_cocycle") {
    CHECK(check_cocycle(fx::L3(), CyclicCocycle::zero(4)));
    CyclicCocycle bad(3);
    bad.set_raw(0, 1, 2, 1);
    bad.set_raw(1, 0, 2, -1);
    const auto c = check_cocycle(LieAlgebra::abelian(3), bad);
    CHECK_FALSE(c.ok);
    CHECK(c.reason == "theta is not cyclic");

    std::mt19937_64 rng(1);
    for (int t = 0; t < 5; ++t) {
        const CyclicCocycle th = coboundary(fx::L3(), random_skew(rng, 4));
        CHECK(check_cocycle(fx::L3(), th));
    }
    // every 3-form on a nilpotent 4-dim algebra is closed, but not on aff + Q^2
    CyclicCocycle closed(4);
    closed.set_alternating(2, 3, 0, 1);
    CHECK(check_cocycle(l2_plus(1), closed));
    CyclicCocycle open(4);
    open.set_alternating(1, 2, 3, 1);  // x2* ^ x3* ^ x4*
    const auto oc = check_cocycle(affine_plus_2(), open);
    CHECK_FALSE(oc.ok);
}

TEST_CASE("cocycle space") {
    CHECK(cocycle_space(LieAlgebra::abelian(3)).size() == 1);
    CHECK(cocycle_space(LieAlgebra::abelian(4)).size() == 4);
    CHECK(cocycle_space(l2_plus(1)).size() == 4);
    const auto z = cocycle_space(affine_plus_2());
    for (const auto& c : z) CHECK(check_cocycle(affine_plus_2(), c));
    CHECK(z.size() == 3);
}

TEST_CASE("build_tstar examples") {
    auto t = build_tstar(LieAlgebra::abelian(1), CyclicCocycle::zero(1));
    CHECK(t.g.is_abelian());
    CHECK(t.b.matrix() == fx::hyperbolic(1));

    t = build_tstar(fx::L2(), CyclicCocycle::zero(3));
    CHECK(t.g.dim() == 6);
    CHECK(t.g.bracket(0, 5) == Vector{0, 0, 0, 0, -1, 0});  // [x1, f3] = -f2
    CHECK(t.g.bracket(1, 5) == Vector{0, 0, 0, 1, 0, 0});   // [x2, f3] = f1
    CHECK(center(t.g).dim() == 3);
    CHECK(t.g.same_structure(fx::oracle_tstar0(fx::L2())));
    CHECK(t.g.names()[3] == "x1*");

    t = build_tstar(fx::L3(), CyclicCocycle::zero(4));
    CHECK(t.g.dim() == 8);
    CHECK(center(t.g).dim() == 3);
    CHECK(t.g.same_structure(fx::oracle_tstar0(fx::L3())));

    CHECK_THROWS_AS(build_tstar(LieAlgebra::abelian(4), CyclicCocycle(3)), InputError);
}

TEST_CASE("property: T* invariants") {
    std::mt19937_64 rng(2);
    for (const auto& a : {fx::L2(), fx::L3(), fx::L2A1(), LieAlgebra::abelian(3)}) {
        for (int t = 0; t < 3; ++t) {
            const auto space = cocycle_space(a);
            CyclicCocycle th(a.dim());
            for (const auto& c : space) {
                const Rational s = static_cast<long>(rng() % 5) - 2;
                for (std::size_t i = 0; i < a.dim(); ++i)
                    for (std::size_t j = 0; j < a.dim(); ++j)
                        for (std::size_t k = 0; k < a.dim(); ++k) th.set_raw(i, j, k, th(i, j, k) + s * c(i, j, k));
            }
            const auto d = build_tstar(a, th);
            CHECK(d.g.dim() == 2 * a.dim());
            CHECK(isotropy_class(d.b, d.dual_block()) == Isotropy::lagrangian);
            CHECK(is_ideal(d.g, d.dual_block()));
            for (std::size_t i = 0; i < a.dim(); ++i)
                for (std::size_t j = 0; j < a.dim(); ++j)
                    for (std::size_t k = 0; k < a.dim(); ++k) CHECK(theta_from_bracket(d, i, j, k) == th(i, j, k));
        }
    }
}

TEST_CASE("center with a nonzero theta") {
    // abelian Q^3 with theta = e1^e2^e3: the true center is a* only
    LieAlgebra a = LieAlgebra::abelian(3);
    CyclicCocycle th(3);
    th.set_alternating(0, 1, 2, 1);
    const auto t = build_tstar(a, th);
    const Subspace z = center(t.g);
    CHECK(z.dim() == 3);
    CHECK(z == t.dual_block());
    CHECK(tstar_center_formula(a, th) == z);
    // z(a) + ann([a,a]) would be all of g
    CHECK_FALSE(z == Subspace::full(6));
}

TEST_CASE("lift_derivation") {
    auto t = build_tstar(fx::L2(), CyclicCocycle::zero(3));
    auto l = lift_derivation(t, Matrix::diagonal(vec({1, 1, 2})));
    CHECK(l.dbar.matrix == Matrix::diagonal(vec({1, 1, 2, -1, -1, -2})));
    CHECK(l.f.is_zero());
    CHECK(is_symplectic(t.g, l.omega));

    t = build_tstar(LieAlgebra::abelian(1), CyclicCocycle::zero(1));
    l = lift_derivation(t, Matrix::identity(1));
    CHECK(l.dbar.matrix == Matrix::diagonal(vec({1, -1})));

    std::mt19937_64 rng(4);
    const CyclicCocycle th = coboundary(fx::L3(), l3_phi(rng));
    REQUIRE_FALSE(th.is_zero());
    t = build_tstar(fx::L3(), th);
    l = lift_derivation(t, Matrix::diagonal(vec({1, 2, 3, 4})));
    CHECK_FALSE(l.h.is_zero());
    CHECK(l.dbar.derivation);
    CHECK(l.dbar.skew);
    CHECK(l.dbar.invertible);
    // Theta - dF = 0
    const CyclicCocycle df = coboundary(fx::L3(), l.f);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) CHECK(l.big_theta[(i * 4 + j) * 4 + k] == df(i, j, k));

    CHECK_THROWS_AS(lift_derivation(t, Matrix::identity(4)), InputError);
}

TEST_CASE("lift_derivation refuses a non-coboundary Theta") {
    // abelian Q^3, theta = e1^e2^e3, D = identity: Theta = 3 theta, and d vanishes on abelian algebras
    CyclicCocycle th(3);
    th.set_alternating(0, 1, 2, 1);
    const auto t = build_tstar(LieAlgebra::abelian(3), th);
    CHECK_THROWS_AS(lift_derivation(t, Matrix::identity(3)), InputError);
    // D = diag(1, 1, -2) kills Theta
    const auto l = lift_derivation(t, Matrix::diagonal(vec({1, 1, -2})));
    CHECK(l.dbar.skew);
}

TEST_CASE("coboundary isomorphism") {
    std::mt19937_64 rng(9);
    for (const auto& a : {fx::L2(), fx::L3(), fx::L2A1()}) {
        const Matrix phi = random_skew(rng, a.dim());
        const auto t0 = build_tstar(a, CyclicCocycle::zero(a.dim()));
        const auto t1 = build_tstar(a, coboundary(a, phi));
        const Matrix p = coboundary_isomorphism(a, phi);
        CHECK(isometry_defect(t0.g, t0.b, t1.g, t1.b, p) == "");
    }
}

TEST_CASE("extract_tstar examples") {
    auto t = build_tstar(fx::L2(), CyclicCocycle::zero(3));
    auto e = extract_tstar(t.g, t.b, t.dual_block());
    CHECK(e.base.same_structure(fx::L2()));
    CHECK(e.theta.is_zero());
    CHECK(e.p == Matrix::identity(6));

    const auto h = build_tstar(LieAlgebra::abelian(1), CyclicCocycle::zero(1));
    e = extract_tstar(h.g, h.b, Subspace(2, {vec({0, 1})}));
    CHECK(e.base.dim() == 1);
    CHECK(e.theta.is_zero());

    std::mt19937_64 rng(6);
    const CyclicCocycle th = coboundary(fx::L3(), l3_phi(rng));
    REQUIRE_FALSE(th.is_zero());
    t = build_tstar(fx::L3(), th);
    const Matrix d = Matrix::diagonal(vec({1, 2, 3, 4}));
    const auto lift = lift_derivation(t, d);
    e = extract_tstar(t.g, t.b, t.dual_block(), &lift.dbar.matrix);
    CHECK(e.base.same_structure(fx::L3()));
    CHECK(e.theta == th);
    REQUIRE(e.d);
    CHECK(*e.d == d);
}

TEST_CASE("extract_tstar adjusts a non-isotropic complement") {
    // abelian Q^2, B = diag(1,-1), I = span{(1,1)}: the complement e2 has B(e2,e2) = -1
    const LieAlgebra g = LieAlgebra::abelian(2);
    const BilinearForm b = BilinearForm::symmetric(Matrix::diagonal(vec({1, -1})));
    const auto e = extract_tstar(g, b, Subspace(2, {vec({1, 1})}));
    CHECK(e.base.dim() == 1);
    CHECK(e.p.transpose() * b.matrix() * e.p == fx::hyperbolic(1));

    CHECK_THROWS_AS(extract_tstar(g, b, Subspace(2, {vec({1, 0})})), InputError);
}

TEST_CASE("find_isotropic_stable_ideal") {
    const auto t = build_tstar(fx::L2(), CyclicCocycle::zero(3));
    const Matrix dbar = Matrix::diagonal(vec({1, 1, 2, -1, -1, -2}));
    const auto i = find_isotropic_stable_ideal(t.g, t.b, dbar);
    REQUIRE(i);
    CHECK(i->dim() == 3);
    CHECK(isotropy_class(t.b, *i) == Isotropy::lagrangian);
    CHECK(is_ideal(t.g, *i));
    const auto e = extract_tstar(t.g, t.b, *i, &dbar);
    CHECK(e.base.dim() == 3);

    const auto h = build_tstar(LieAlgebra::abelian(1), CyclicCocycle::zero(1));
    const auto line = find_isotropic_stable_ideal(h.g, h.b, Matrix::diagonal(vec({1, -1})));
    REQUIRE(line);
    CHECK(*line == Subspace(2, {vec({0, 1})}));

    // B = diag(1,-2), D e1 = e2, D e2 = 2 e1: char poly t^2 - 2
    const BilinearForm b = BilinearForm::symmetric(Matrix::diagonal(vec({1, -2})));
    const Matrix d = mat({{0, 2}, {1, 0}});
    REQUIRE(is_skew(b, d));
    CHECK_FALSE(find_isotropic_stable_ideal(LieAlgebra::abelian(2), b, d));
}

TEST_CASE("property: stable ideals on T*-extensions with twisted theta") {
    std::mt19937_64 rng(12);
    for (const auto& a : {fx::L2(), fx::L3(), fx::L2A1()}) {
        const CyclicCocycle th = coboundary(a, random_skew(rng, a.dim()));
        const auto t = build_tstar(a, th);
        const Matrix d = a.dim() == 4 && a.c(0, 2, 3) != 0 ? Matrix::diagonal(vec({1, 2, 3, 4}))
                         : a.dim() == 4                   ? Matrix::diagonal(vec({1, 1, 2, 1}))
                                                          : Matrix::diagonal(vec({1, 1, 2}));
        const auto lift = lift_derivation(t, d);
        const auto i = find_isotropic_stable_ideal(t.g, t.b, lift.dbar.matrix);
        REQUIRE(i);
        const auto e = extract_tstar(t.g, t.b, *i, &lift.dbar.matrix);
        CHECK(fingerprint(e.base).dim == a.dim());
        REQUIRE(e.d);
        CHECK(is_derivation(e.base, *e.d));
    }
}

TEST_CASE("reduce_abelian_summand: coupled L2 + Qe is reducible") {
    CyclicCocycle th(4);
    th.set_alternating(0, 1, 3, 1);  // theta(x1,x2)(e) = 1
    const LieAlgebra a = l2_plus(1);
    REQUIRE(check_cocycle(a, th));
    const auto t = build_tstar(a, th);
    const auto w = reducibility_witness(t.g, t.b);
    REQUIRE(w);
    CHECK(w->dim() == 1);
    CHECK_THROWS_WITH_AS(reduce_abelian_summand(a, th, 3), doctest::Contains("reducible"), InputError);
}

TEST_CASE("reduce_abelian_summand: split branch and bad input") {
    const LieAlgebra a = l2_plus(1);
    const auto r = reduce_abelian_summand(a, CyclicCocycle::zero(4), 3);
    CHECK(r.split);
    REQUIRE(r.core);
    CHECK(r.core->base.same_structure(fx::L2()));

    CHECK_THROWS_AS(reduce_abelian_summand(a, CyclicCocycle::zero(4), 2), InputError);  // x3 in [a,a]
    CHECK_THROWS_AS(reduce_abelian_summand(a, CyclicCocycle::zero(4), 0), InputError);  // x1 not central
    CHECK_THROWS_AS(reduce_abelian_summand(fx::L2(), CyclicCocycle::zero(3)), InputError);
}

TEST_CASE("reduce_abelian_summand: abelian Q^3 with the volume form") {
    CyclicCocycle th(3);
    th.set_alternating(0, 1, 2, 1);
    const LieAlgebra a = LieAlgebra::abelian(3);
    const auto r = reduce_abelian_summand(a, th, 2);
    CHECK_FALSE(r.split);
    CHECK(r.a1.dim() == 3);
    CHECK(fingerprint(r.a1) == fingerprint(fx::L2()));
    CHECK(derived_and_lcs(r.a1).derived.contains(center(r.a1)));
}

TEST_CASE("reduce_abelian_summand: e shifted along the center") {
    // L2 + Qx4 + Qe; theta(x3, x1)(e) != 0 for the unshifted e
    const LieAlgebra a = l2_plus(2);
    CyclicCocycle th(5);
    th.set_alternating(0, 1, 2, -1);
    th.set_alternating(0, 1, 3, -1);
    th.set_alternating(0, 3, 4, 2);
    th.set_alternating(1, 2, 3, 1);
    th.set_alternating(1, 2, 4, -2);
    th.set_alternating(1, 3, 4, 1);
    REQUIRE(check_cocycle(a, th));
    const auto r = reduce_abelian_summand(a, th, 4);
    CHECK_FALSE(r.split);
    CHECK(r.e_shift == vec({0, 0, 0, 2, 0}));
    CHECK(center(r.a1).dim() <= center(a).dim());
    CHECK(intersect(derived_and_lcs(r.a1).derived, center(r.a1)).dim() == 2);
}

TEST_CASE("reduce_abelian_summand: irreducible input where no choice of e works") {
    const LieAlgebra a = l2_plus(2);
    CyclicCocycle th(5);
    th.set_alternating(0, 1, 2, -2);
    th.set_alternating(0, 1, 3, -1);
    th.set_alternating(0, 1, 4, 1);
    th.set_alternating(0, 2, 4, 1);
    th.set_alternating(0, 3, 4, 1);
    th.set_alternating(1, 2, 3, 2);
    th.set_alternating(1, 2, 4, -2);
    th.set_alternating(1, 3, 4, -1);
    REQUIRE(check_cocycle(a, th));
    const auto t = build_tstar(a, th);
    CHECK_FALSE(reducibility_witness(t.g, t.b));
    CHECK(centroid_is_local(t.g, t.b));
    CHECK_THROWS_WITH_AS(reduce_abelian_summand(a, th, 4), doctest::Contains("expected 2"), StructuralError);
}

TEST_CASE("normalize_base") {
    auto n = normalize_base(fx::L2(), CyclicCocycle::zero(3));
    CHECK(n.steps == 0);
    CHECK(n.base.same_structure(fx::L2()));

    CyclicCocycle th(3);
    th.set_alternating(0, 1, 2, 1);
    n = normalize_base(LieAlgebra::abelian(3), th);
    CHECK(n.steps == 1);
    CHECK(fingerprint(n.base) == fingerprint(fx::L2()));

    // L2 + Qe4 + Qe5 with x1*^x2*^e4* + x2*^e4*^e5*
    const LieAlgebra a = l2_plus(2);
    CyclicCocycle t2(5);
    t2.set_alternating(0, 1, 3, 1);
    t2.set_alternating(1, 3, 4, 1);
    REQUIRE(check_cocycle(a, t2));
    REQUIRE_FALSE(reducibility_witness(build_tstar(a, t2).g, build_tstar(a, t2).b));
    n = normalize_base(a, t2);
    CHECK(n.steps == 1);
    CHECK(derived_and_lcs(n.base).derived.contains(center(n.base)));
    CHECK(check_cocycle(n.base, n.theta));

    // abelian Q^5 with e1^e2^e3 + e3^e4^e5: l = 5 drops in two steps
    CyclicCocycle t5(5);
    t5.set_alternating(0, 1, 2, 1);
    t5.set_alternating(2, 3, 4, 1);
    n = normalize_base(LieAlgebra::abelian(5), t5);
    CHECK(n.steps == 2);
    CHECK(to_string(fingerprint(n.base)) == "(5, 2, 2, 2, [5,2,0])");
    CHECK(check_cocycle(n.base, n.theta));
    const auto tn = build_tstar(n.base, n.theta);
    CHECK(center(tn.g).dim() == center(build_tstar(LieAlgebra::abelian(5), t5).g).dim());
}
