#pragma once

#include "quadlie/dblext.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quadlie {

struct ManinDecomposition {
    LieAlgebra g;
    BilinearForm b;
    Subspace u, v;
};

/// All failed invariants, in a fixed order; empty when (g, B, U, V) is a Manin algebra.
std::vector<std::string> manin_failures(const LieAlgebra& g, const BilinearForm& b, const Subspace& u,
                                        const Subspace& v);
/// Throws InputError listing every failure.
ManinDecomposition certify_manin(const LieAlgebra& g, const BilinearForm& b, const Subspace& u, const Subspace& v);

/// U' = U + Ke*, V' = V + Ke on the line extension (e, g, e*). Needs delta(V) in V.
ManinDecomposition manin_double_extend(const ManinDecomposition& m, const Matrix& delta);

struct ManinDescent {
    ManinDecomposition core;
    Matrix delta;
    Matrix p;              // columns in the big algebra: e, core basis, e*
    bool swapped = false;  // e* was taken in V, so the core's U sits in the old V
};

/// Splits off a central line inside U (or V). Throws InputError when the
/// center meets neither. `hint`, when given, is used as e*.
ManinDescent manin_descend(const ManinDecomposition& m, const Vector* hint = nullptr);

struct NilmanReport {
    bool nilpotent = false;
    Subspace center_u, center_v;
    bool holds = true;  // false only for a nonzero nilpotent algebra with an empty intersection
    std::string message;
};

NilmanReport nilman_check(const ManinDecomposition& m);

struct SpecialSymplecticManin {
    ManinDecomposition m;
    DerivationMatrix d;
    BilinearForm omega;
};

/// Checks D invertible skew, D(U) in U, D(V) in V and omega(U,U) = omega(V,V) = 0.
SpecialSymplecticManin certify_special(const ManinDecomposition& m, const Matrix& d);

/// U = positive generalized eigenspaces of D, V = negative ones. Rational spectra only.
SpecialSymplecticManin eigen_split(const LieAlgebra& g, const BilinearForm& b, const Matrix& d);

SpecialSymplecticManin special_double_extend(const SpecialSymplecticManin& s, const Matrix& delta,
                                             const Rational& lambda, const Vector& c);

struct SpecialStep {
    SpecialSymplecticManin core;
    Matrix delta;
    Rational lambda;
    Vector c;
    Matrix p;
    bool swapped = false;
};

struct SpecialDescentAttempt {
    std::optional<SpecialStep> step;
    std::string note;
};

SpecialDescentAttempt special_descend(const SpecialSymplecticManin& s);

struct SpecialTower {
    std::vector<SpecialStep> steps;  // steps[0] descends from the input
    SpecialSymplecticManin base;
    bool complete = false;           // reached dimension 2
    std::size_t failed_level = 0;    // dimension where the search got stuck
    std::string note;
};

SpecialTower tower_decompose(const SpecialSymplecticManin& s);

/// Rebuilds the top of the tower from its base, mapping each level back to the
/// basis it was descended from.
SpecialSymplecticManin replay_tower(const SpecialTower& t);

/// The whole structure in the basis given by the columns of q.
SpecialSymplecticManin transform(const SpecialSymplecticManin& s, const Matrix& q);

}  // namespace quadlie
