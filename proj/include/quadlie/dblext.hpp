#pragma once

#include "quadlie/tstar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quadlie {

struct QuadraticAlgebra {
    LieAlgebra g;
    BilinearForm b;
};

/// (g, B) with an invertible skew derivation D and omega = B(D., .).
struct SymplecticQuadratic {
    LieAlgebra g;
    BilinearForm b;
    DerivationMatrix d;
    BilinearForm omega;
};

/// psi[i] = psi(y_i) for the basis y_1..y_m of the extending algebra.
struct DoubleExtensionSpec {
    LieAlgebra g;
    BilinearForm b;
    LieAlgebra ext;
    std::vector<Matrix> psi;
};

/// Every invariant of the extension data, first failure named.
Check check_spec(const DoubleExtensionSpec& spec);

/// Basis y_1..y_m, g, y_1*..y_m*. T pairs y_i with y_i* and restricts to B on g.
QuadraticAlgebra double_extend(const DoubleExtensionSpec& spec);
/// Basis (e, g, e*).
QuadraticAlgebra double_extend_line(const LieAlgebra& g, const BilinearForm& b, const Matrix& delta);

struct SymplecticDextData {
    LieAlgebra g;
    BilinearForm b;
    Matrix d;
    Matrix delta;
    Rational lambda;
    Vector c;
};

/// [delta, D] - lambda delta - ad(c); zero for admissible data.
Matrix compatibility_residual(const SymplecticDextData& data);

/// Basis of the pairs (delta, c) with delta a skew derivation and
/// [delta, D] - lambda delta = ad(c).
std::vector<std::pair<Matrix, Vector>> admissible_pairs(const LieAlgebra& g, const BilinearForm& b, const Matrix& d,
                                                        const Rational& lambda);

/// Dtilde = D + B(c,.)e* on g, Dtilde e* = lambda e*, Dtilde e = -lambda e - c.
SymplecticQuadratic symplectic_double_extend(const SymplecticDextData& data);

struct SymplecticDescent {
    SymplecticDextData data;
    Matrix p;  // columns in the big algebra: e, basis of the core, e*
    SymplecticQuadratic rebuilt;
};

struct DescentAttempt {
    std::optional<SymplecticDescent> step;
    std::string note;
};

/// Splits off a central Dtilde-stable line. `hint`, when given, is used as e*.
DescentAttempt symplectic_descend(const LieAlgebra& g, const BilinearForm& t, const Matrix& dtilde,
                                  const Vector* hint = nullptr);

struct SymplecticTower {
    std::vector<SymplecticDescent> steps;
    LieAlgebra base;  // where the descent stopped
    BilinearForm base_b;
    Matrix base_d;
    bool complete = false;  // base is the 2-dim abelian algebra
    std::string note;
};

/// Descends until dimension 2 (or until no rational central eigenline is left).
SymplecticTower symplectic_tower(const LieAlgebra& g, const BilinearForm& t, const Matrix& dtilde);

struct TowerExample {
    LieAlgebra ln;
    DerivationMatrix d;
    TStarData tstar;
    LiftedDerivation lift;
};

/// g (x) tK[t]/t^n with D(x (x) t^p) = p x (x) t^p, and its trivial T*-extension.
TowerExample tower_example1(const LieAlgebra& g, std::size_t n);

}  // namespace quadlie
