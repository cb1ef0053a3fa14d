#include "quadlie/io.hpp"

#include "quadlie/errors.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace quadlie {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
    throw InputError("field '" + field + "': " + what);
}

const Json& member(const Json& obj, const char* key, const std::string& field) {
    if (!obj.is_object()) bad(field, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) bad(field.empty() ? key : field + "." + key, "missing");
    return *it;
}

std::string sub(const std::string& field, const char* key) { return field.empty() ? key : field + "." + key; }
std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

std::size_t index_from_json(const Json& j, std::size_t n, const std::string& field) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        bad(field, "expected a nonnegative integer index");
    const auto v = j.get<std::uint64_t>();
    if (v >= n) bad(field, "index " + std::to_string(v) + " out of range for dimension " + std::to_string(n));
    return static_cast<std::size_t>(v);
}

// line/column of a byte offset, 1-based
std::pair<std::size_t, std::size_t> locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

BilinearForm form_from_json(const Json& j, std::size_t n, FormKind kind, const std::string& field) {
    Matrix m = matrix_from_json(j, n, field);
    try {
        return BilinearForm(std::move(m), kind);
    } catch (const InputError& e) {
        bad(field, e.what());
    }
}

Json subspace_to_json(const Subspace& s) {
    Json out = Json::array();
    for (const auto& v : s.basis()) out.push_back(to_json(v));
    return out;
}

Subspace subspace_from_json(const Json& j, std::size_t n, const std::string& field) {
    if (!j.is_array()) bad(field, "expected a list of coordinate vectors");
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < j.size(); ++i) vs.push_back(vector_from_json(j[i], n, at(field, i)));
    Subspace s(n, vs);
    if (s.dim() != vs.size()) bad(field, "basis vectors are linearly dependent");
    return s;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        const auto [line, col] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
        throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Rational& r) { return format_rational(r); }

Json to_json(const Vector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

Json to_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
    return out;
}

Json to_json(const CyclicCocycle& theta) {
    const std::size_t n = theta.dim();
    Json entries = Json::array();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (!is_zero(theta(i, j, k)))
                    entries.push_back({{"i", i}, {"j", j}, {"k", k}, {"v", format_rational(theta(i, j, k))}});
    return {{"dim", n}, {"entries", entries}};
}

Json to_json(const AlgebraDoc& doc) {
    const LieAlgebra& g = doc.g;
    const std::size_t n = g.dim();
    Json brackets = Json::array();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!is_zero(g.c(i, j, k)))
                    brackets.push_back({{"i", i}, {"j", j}, {"k", k}, {"v", format_rational(g.c(i, j, k))}});
    Json out = {{"format_version", kFormatVersion}, {"dim", n}, {"basis_names", g.names()}, {"brackets", brackets}};
    if (doc.form_b) out["form_B"] = to_json(doc.form_b->matrix());
    if (doc.form_omega) out["form_omega"] = to_json(doc.form_omega->matrix());
    if (!doc.derivations.empty()) {
        Json ds = Json::array();
        for (const auto& d : doc.derivations) ds.push_back(to_json(d));
        out["derivations"] = ds;
    }
    if (doc.theta) out["cocycle_theta"] = to_json(*doc.theta);
    if (doc.manin_u && doc.manin_v)
        out["manin"] = {{"U_basis", subspace_to_json(*doc.manin_u)}, {"V_basis", subspace_to_json(*doc.manin_v)}};
    return out;
}

Rational rational_from_json(const Json& j, const std::string& field) {
    if (j.is_number_integer()) return Rational(std::to_string(j.get<std::int64_t>()));
    if (j.is_number_unsigned()) return Rational(std::to_string(j.get<std::uint64_t>()));
    if (!j.is_string()) bad(field, "expected a rational string like \"3/4\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
        bad(field, e.what());
    }
}

Vector vector_from_json(const Json& j, std::size_t n, const std::string& field) {
    if (!j.is_array()) bad(field, "expected a list of rationals");
    if (j.size() != n) bad(field, "expected length " + std::to_string(n) + ", got " + std::to_string(j.size()));
    Vector v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(rational_from_json(j[i], at(field, i)));
    return v;
}

Matrix matrix_from_json(const Json& j, std::size_t n, const std::string& field) {
    if (!j.is_array()) bad(field, "expected a list of rows");
    if (j.size() != n) bad(field, "expected " + std::to_string(n) + " rows, got " + std::to_string(j.size()));
    std::vector<Vector> rows;
    for (std::size_t r = 0; r < n; ++r) rows.push_back(vector_from_json(j[r], n, at(field, r)));
    return Matrix::from_rows(rows, n);
}

CyclicCocycle cocycle_from_json(const Json& j, std::size_t n, const std::string& field) {
    const Json& dim = member(j, "dim", field);
    if (!dim.is_number_integer() || dim.get<std::int64_t>() != static_cast<std::int64_t>(n))
        bad(sub(field, "dim"), "expected " + std::to_string(n));
    const Json& entries = member(j, "entries", field);
    if (!entries.is_array()) bad(sub(field, "entries"), "expected a list");
    CyclicCocycle theta(n);
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < entries.size(); ++e) {
        const std::string f = at(sub(field, "entries"), e);
        const Json& x = entries[e];
        const std::size_t i = index_from_json(member(x, "i", f), n, f + ".i");
        const std::size_t jj = index_from_json(member(x, "j", f), n, f + ".j");
        const std::size_t k = index_from_json(member(x, "k", f), n, f + ".k");
        if (!(i < jj && jj < k)) bad(f, "indices must satisfy i < j < k");
        if (!seen.insert({i, jj, k}).second) bad(f, "duplicate entry");
        theta.set_alternating(i, jj, k, rational_from_json(member(x, "v", f), f + ".v"));
    }
    return theta;
}

AlgebraDoc algebra_from_json(const Json& j) {
    if (!j.is_object()) bad("", "expected a JSON object");
    const Json& ver = member(j, "format_version", "");
    if (!ver.is_number_integer() || ver.get<std::int64_t>() != kFormatVersion)
        bad("format_version", "unsupported, expected " + std::to_string(kFormatVersion));
    const Json& dj = member(j, "dim", "");
    if (!dj.is_number_integer() || dj.get<std::int64_t>() < 0) bad("dim", "expected a nonnegative integer");
    const auto n = static_cast<std::size_t>(dj.get<std::int64_t>());

    const Json& names = member(j, "basis_names", "");
    if (!names.is_array() || names.size() != n) bad("basis_names", "expected " + std::to_string(n) + " strings");
    std::vector<std::string> nv;
    std::set<std::string> unique;
    for (std::size_t i = 0; i < n; ++i) {
        if (!names[i].is_string()) bad(at("basis_names", i), "expected a string");
        nv.push_back(names[i].get<std::string>());
        if (nv.back().empty()) bad(at("basis_names", i), "empty name");
        if (!unique.insert(nv.back()).second) bad(at("basis_names", i), "duplicate name '" + nv.back() + "'");
    }

    AlgebraDoc doc;
    doc.g = LieAlgebra(n, nv);
    const Json& br = member(j, "brackets", "");
    if (!br.is_array()) bad("brackets", "expected a list");
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < br.size(); ++e) {
        const std::string f = at("brackets", e);
        const Json& x = br[e];
        const std::size_t i = index_from_json(member(x, "i", f), n, f + ".i");
        const std::size_t jj = index_from_json(member(x, "j", f), n, f + ".j");
        const std::size_t k = index_from_json(member(x, "k", f), n, f + ".k");
        if (i >= jj) bad(f, "indices must satisfy i < j");
        if (!seen.insert({i, jj, k}).second) bad(f, "duplicate entry");
        doc.g.set_structure(i, jj, k, rational_from_json(member(x, "v", f), f + ".v"));
    }

    if (auto it = j.find("form_B"); it != j.end())
        doc.form_b = form_from_json(*it, n, FormKind::symmetric, "form_B");
    if (auto it = j.find("form_omega"); it != j.end())
        doc.form_omega = form_from_json(*it, n, FormKind::skew, "form_omega");
    if (auto it = j.find("derivations"); it != j.end()) {
        if (!it->is_array()) bad("derivations", "expected a list of matrices");
        for (std::size_t i = 0; i < it->size(); ++i)
            doc.derivations.push_back(matrix_from_json((*it)[i], n, at("derivations", i)));
    }
    if (auto it = j.find("cocycle_theta"); it != j.end()) doc.theta = cocycle_from_json(*it, n, "cocycle_theta");
    if (auto it = j.find("manin"); it != j.end()) {
        doc.manin_u = subspace_from_json(member(*it, "U_basis", "manin"), n, "manin.U_basis");
        doc.manin_v = subspace_from_json(member(*it, "V_basis", "manin"), n, "manin.V_basis");
    }
    static const std::set<std::string> known = {"format_version", "dim",         "basis_names",   "brackets",
                                                "form_B",         "form_omega",  "derivations",   "cocycle_theta",
                                                "manin"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) bad(key, "unknown field");
    return doc;
}

AlgebraDoc load_algebra(const std::string& path) {
    const Json j = read_json_file(path);
    try {
        if (j.is_object() && j.contains("algebra")) return algebra_from_json(j["algebra"]);
        return algebra_from_json(j);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace quadlie
