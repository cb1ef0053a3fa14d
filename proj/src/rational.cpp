#include "quadlie/rational.hpp"

#include "quadlie/errors.hpp"

#include <cctype>

namespace quadlie {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw InputError("invalid rational literal '" + std::string(text) + "'");
    mpz_class d(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Rational r(mpz_class(std::string(num), 10), d);
    r.canonicalize();
    if (text.front() == '-') r = -r;
    return r;
}

std::string format_rational(const Rational& r) { return r.get_str(10); }

bool is_zero(const Vector& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v(n, Rational(0));
    v.at(i) = 1;
    return v;
}

Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InputError("vector size mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InputError("vector size mismatch");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vector operator*(const Rational& s, const Vector& v) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

Rational dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InputError("vector size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string format_vector(const Vector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_rational(v[i]);
    }
    return out + ")";
}

}  // namespace quadlie
