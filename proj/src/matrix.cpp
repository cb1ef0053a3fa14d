#include "quadlie/matrix.hpp"

#include "quadlie/errors.hpp"

namespace quadlie {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw InputError("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
    return m;
}

Matrix Matrix::diagonal(const Vector& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

void Matrix::set_column(std::size_t c, const Vector& v) {
    if (v.size() != rows_) throw InputError("column length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (sgn(x) != 0) return false;
    return true;
}

bool Matrix::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r + 1; c < cols_; ++c)
            if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
}

bool Matrix::is_antisymmetric() const {
    if (!is_square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            if ((*this)(r, c) != -(*this)(c, r)) return false;
    return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw InputError("block out of range");
    Matrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix shape mismatch in +");
    Matrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix shape mismatch in -");
    Matrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw InputError("matrix shape mismatch in *");
    Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& x = a(r, k);
            if (sgn(x) == 0) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += x * b(k, c);
        }
    return out;
}

Matrix operator*(const Rational& s, const Matrix& m) {
    Matrix out = m;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) *= s;
    return out;
}

Vector operator*(const Matrix& m, const Vector& v) {
    if (m.cols() != v.size()) throw InputError("matrix-vector shape mismatch");
    Vector out(m.rows(), Rational(0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (sgn(v[c]) != 0) out[r] += m(r, c) * v[c];
    return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
    return out;
}

std::string format_matrix(const Matrix& m) {
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) out += ", ";
        out += "[";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out += ", ";
            out += format_rational(m(r, c));
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace quadlie
