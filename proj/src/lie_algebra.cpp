#include "quadlie/lie_algebra.hpp"

#include "quadlie/errors.hpp"
#include "quadlie/ratlin.hpp"

namespace quadlie {

LieAlgebra::LieAlgebra(std::size_t dim) : LieAlgebra(dim, numbered_names("x", dim)) {}

LieAlgebra::LieAlgebra(std::size_t dim, std::vector<std::string> names)
    : dim_(dim), names_(std::move(names)), c_(dim * dim * dim, Rational(0)) {
    if (names_.size() != dim_) throw InputError("basis name count does not match dimension");
}

LieAlgebra::LieAlgebra(const LieAlgebra& other)
    : dim_(other.dim_), names_(other.names_), c_(other.c_), jacobi_ok_(other.jacobi_certified()) {}

LieAlgebra::LieAlgebra(LieAlgebra&& other) noexcept
    : dim_(other.dim_), names_(std::move(other.names_)), c_(std::move(other.c_)), jacobi_ok_(other.jacobi_certified()) {}

LieAlgebra& LieAlgebra::operator=(const LieAlgebra& other) {
    if (this != &other) {
        dim_ = other.dim_;
        names_ = other.names_;
        c_ = other.c_;
        jacobi_ok_.store(other.jacobi_certified());
    }
    return *this;
}

LieAlgebra& LieAlgebra::operator=(LieAlgebra&& other) noexcept {
    dim_ = other.dim_;
    names_ = std::move(other.names_);
    c_ = std::move(other.c_);
    jacobi_ok_.store(other.jacobi_certified());
    return *this;
}

LieAlgebra LieAlgebra::abelian(std::size_t dim, const std::string& prefix) {
    return LieAlgebra(dim, numbered_names(prefix, dim));
}

void LieAlgebra::set_names(std::vector<std::string> names) {
    if (names.size() != dim_) throw InputError("basis name count does not match dimension");
    names_ = std::move(names);
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, const Vector& v) {
    if (i >= dim_ || j >= dim_ || v.size() != dim_) throw InputError("set_bracket: index or length out of range");
    if (i == j) {
        if (!quadlie::is_zero(v)) throw InputError("set_bracket: [e_i, e_i] must vanish");
        return;
    }
    for (std::size_t k = 0; k < dim_; ++k) {
        c_[(i * dim_ + j) * dim_ + k] = v[k];
        c_[(j * dim_ + i) * dim_ + k] = -v[k];
    }
    jacobi_ok_ = false;
}

void LieAlgebra::set_structure(std::size_t i, std::size_t j, std::size_t k, const Rational& value) {
    if (i >= dim_ || j >= dim_ || k >= dim_) throw InputError("set_structure: index out of range");
    if (i == j) {
        if (sgn(value) != 0) throw InputError("set_structure: [e_i, e_i] must vanish");
        return;
    }
    c_[(i * dim_ + j) * dim_ + k] = value;
    c_[(j * dim_ + i) * dim_ + k] = -value;
    jacobi_ok_ = false;
}

Vector LieAlgebra::bracket(std::size_t i, std::size_t j) const {
    const auto first = c_.begin() + static_cast<std::ptrdiff_t>((i * dim_ + j) * dim_);
    return Vector(first, first + static_cast<std::ptrdiff_t>(dim_));
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw InputError("bracket: vector length mismatch");
    Vector out = zero_vector(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (i == j || sgn(y[j]) == 0) continue;
            const Rational s = x[i] * y[j];
            for (std::size_t k = 0; k < dim_; ++k) {
                const Rational& v = c(i, j, k);
                if (sgn(v) != 0) out[k] += s * v;
            }
        }
    }
    return out;
}

Matrix LieAlgebra::ad(const Vector& x) const {
    Matrix m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) m.set_column(j, bracket(x, unit_vector(dim_, j)));
    return m;
}

Matrix LieAlgebra::ad(std::size_t i) const {
    Matrix m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) m(k, j) = c(i, j, k);
    return m;
}

bool LieAlgebra::is_abelian() const {
    for (const auto& x : c_)
        if (sgn(x) != 0) return false;
    return true;
}

std::vector<std::string> numbered_names(const std::string& prefix, std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
    return out;
}

LieAlgebra change_basis(const LieAlgebra& g, const Matrix& p) {
    const std::size_t n = g.dim();
    if (p.rows() != n || p.cols() != n) throw InputError("change_basis: matrix shape mismatch");
    const Matrix pinv = inverse(p);
    LieAlgebra out(n, g.names());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            out.set_bracket(i, j, pinv * g.bracket(p.column(i), p.column(j)));
    if (g.jacobi_certified()) out.mark_jacobi_certified();
    return out;
}

std::string homomorphism_defect(const LieAlgebra& from, const LieAlgebra& to, const Matrix& p) {
    if (p.rows() != to.dim() || p.cols() != from.dim()) return "map has the wrong shape";
    for (std::size_t i = 0; i < from.dim(); ++i)
        for (std::size_t j = i + 1; j < from.dim(); ++j) {
            const Vector lhs = p * from.bracket(i, j);
            const Vector rhs = to.bracket(p.column(i), p.column(j));
            if (lhs != rhs)
                return "bracket not preserved on (" + from.names()[i] + ", " + from.names()[j] + ")";
        }
    return {};
}

}  // namespace quadlie
