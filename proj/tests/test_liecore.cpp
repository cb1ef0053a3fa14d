#include "doctest.h"
#include "fixtures.hpp"

#include "quadlie/errors.hpp"
#include "quadlie/liecore.hpp"
#include "quadlie/ratlin.hpp"

using namespace quadlie;
using fx::vec;

namespace {

// brute force: v central iff [v, e_j] = 0 for every j, checked on a basis of candidates
bool is_central(const LieAlgebra& g, const Vector& v) {
    for (std::size_t j = 0; j < g.dim(); ++j)
        if (!is_zero(g.bracket(v, unit_vector(g.dim(), j)))) return false;
    return true;
}

}  // namespace

TEST_CASE("jacobi_check") {
    CHECK(jacobi_check(fx::L2()).ok);
    CHECK(jacobi_check(LieAlgebra::abelian(3)).ok);

    LieAlgebra g(3);
    g.set_bracket(0, 1, vec({0, 1, 0}));
    g.set_bracket(0, 2, vec({0, 0, 1}));
    CHECK(jacobi_check(g).ok);
    g.set_bracket(1, 2, vec({1, 0, 0}));  // breaks the only triple
    const auto r = jacobi_check(g);
    CHECK_FALSE(r.ok);
    REQUIRE(r.witness);
    CHECK(*r.witness == kernels::Triple{0, 1, 2});
    CHECK_THROWS_AS(require_lie(g), InputError);
}

TEST_CASE("center") {
    const auto z = center(fx::L2());
    CHECK(z.dim() == 1);
    CHECK(z.contains(vec({0, 0, 1})));
    CHECK(center(LieAlgebra::abelian(4)).dim() == 4);

    const LieAlgebra t = fx::oracle_tstar0(fx::L3());
    const auto zt = center(t);
    CHECK(zt.dim() == 3);
    for (const auto& v : zt.basis()) CHECK(is_central(t, v));
}

TEST_CASE("derived series and nilpotency") {
    auto s = derived_and_lcs(fx::L3());
    CHECK(s.derived == Subspace(4, {vec({0, 0, 1, 0}), vec({0, 0, 0, 1})}));
    CHECK(s.nilpotent);
    CHECK(s.nilpotency_class == 3);

    s = derived_and_lcs(LieAlgebra::abelian(3));
    CHECK(s.derived.dim() == 0);
    CHECK(s.nilpotency_class == 1);

    s = derived_and_lcs(fx::L2());
    CHECK(s.derived == Subspace(3, {vec({0, 0, 1})}));
    CHECK(s.nilpotency_class == 2);

    // [x1, x2] = x2 is solvable, not nilpotent
    LieAlgebra aff(2);
    aff.set_structure(0, 1, 1, 1);
    s = derived_and_lcs(aff);
    CHECK_FALSE(s.nilpotent);
    CHECK(s.nilpotency_class == 0);
}

TEST_CASE("is_ideal") {
    const LieAlgebra l2 = fx::L2();
    CHECK(is_ideal(l2, center(l2)));
    CHECK_FALSE(is_ideal(l2, Subspace(3, {vec({1, 0, 0})})));
    const LieAlgebra l3 = fx::L3();
    CHECK(is_ideal(l3, derived_and_lcs(l3).derived));
}

TEST_CASE("quotient") {
    const LieAlgebra l2 = fx::L2();
    auto q = quotient(l2, center(l2));
    CHECK(q.algebra.dim() == 2);
    CHECK(q.algebra.is_abelian());

    q = quotient(l2, Subspace::full(3));
    CHECK(q.algebra.dim() == 0);

    const LieAlgebra l3 = fx::L3();
    q = quotient(l3, Subspace(4, {vec({0, 0, 0, 1})}));
    CHECK(q.algebra.same_structure(fx::L2()));
    CHECK(jacobi_check(q.algebra).ok);

    CHECK_THROWS_AS(quotient(l2, Subspace(3, {vec({1, 0, 0})})), InputError);
}

TEST_CASE("property: quotient fingerprint does not depend on the complement") {
    std::mt19937_64 rng(5);
    const LieAlgebra t = fx::oracle_tstar0(fx::L3());
    const Subspace ideals[] = {center(t), derived_and_lcs(t).derived, derived_and_lcs(t).terms[2]};
    for (const auto& ideal : ideals) {
        const auto q1 = quotient(t, ideal);
        // shift the lexicographic complement by random ideal elements
        std::vector<Vector> comp = lex_complement(ideal);
        for (auto& w : comp)
            for (const auto& b : ideal.basis()) w = w + Rational(static_cast<long>(rng() % 5) - 2) * b;
        const auto q2 = quotient(t, ideal, comp);
        CHECK(fingerprint(q1.algebra) == fingerprint(q2.algebra));
        // projection is a homomorphism
        for (std::size_t i = 0; i < t.dim(); ++i)
            for (std::size_t j = 0; j < t.dim(); ++j) {
                const Vector lhs = q2.projection * t.bracket(i, j);
                const Vector rhs = q2.algebra.bracket(q2.projection.column(i), q2.projection.column(j));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("direct sum") {
    const LieAlgebra s = direct_sum(fx::L2(), LieAlgebra::abelian(1));
    CHECK(s.dim() == 4);
    CHECK(center(s).dim() == 2);
    CHECK(direct_sum(LieAlgebra(0), fx::L2()).same_structure(fx::L2()));
    CHECK(direct_sum(LieAlgebra::abelian(1), LieAlgebra::abelian(1)).same_structure(LieAlgebra::abelian(2)));
}

TEST_CASE("fingerprints") {
    auto f = fingerprint(fx::oracle_tstar0(fx::L2()));
    CHECK(f == Fingerprint{6, 3, 3, 2, {6, 3, 0}});
    f = fingerprint(LieAlgebra::abelian(8));
    CHECK(f == Fingerprint{8, 8, 0, 1, {8, 0}});
    f = fingerprint(fx::oracle_tstar0(fx::L2A1()));
    CHECK(f.dim == 8);
    CHECK(f.center_dim == 5);
    CHECK(f.derived_dim == 3);
    CHECK(f.nilpotency_class == 2);
    CHECK(to_string(fingerprint(fx::L2())) == "(3, 1, 1, 2, [3,1,0])");
}

TEST_CASE("property: nilpotent algebras have nonzero center") {
    for (const auto& g : {fx::L2(), fx::L3(), fx::L2A1(), fx::oracle_tstar0(fx::L2()), fx::oracle_tstar0(fx::L3())}) {
        REQUIRE(derived_and_lcs(g).nilpotent);
        CHECK(center(g).dim() > 0);
    }
}

TEST_CASE("serial and parallel kernels agree") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        LieAlgebra g(11);
        std::uniform_int_distribution<long> d(-1, 1);
        for (std::size_t i = 0; i < 11; ++i)
            for (std::size_t j = i + 1; j < 11; ++j)
                if (rng() % 6 == 0) g.set_structure(i, j, rng() % 11, d(rng));
        CHECK(kernels::serial::jacobi_violation(g) == kernels::parallel::jacobi_violation(g));
        const Matrix m = fx::random_matrix(rng, 11, 11, -1, 1);
        CHECK(kernels::serial::leibniz_violation(g, m) == kernels::parallel::leibniz_violation(g, m));
        CHECK(kernels::serial::invariance_violation(g, m) == kernels::parallel::invariance_violation(g, m));
        CHECK(kernels::serial::cocycle_violation(g, m) == kernels::parallel::cocycle_violation(g, m));
        CHECK(kernels::serial::yang_baxter_violation(g, m, false) ==
              kernels::parallel::yang_baxter_violation(g, m, false));
    }
}
