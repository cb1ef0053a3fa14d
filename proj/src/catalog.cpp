#include "quadlie/catalog.hpp"

#include "quadlie/errors.hpp"
#include "quadlie/ratlin.hpp"

#include <map>

namespace quadlie {

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{"A1", "A2", "A3", "A4", "L2", "L2+A1", "L3"};
    return names;
}

LieAlgebra catalog_base(const std::string& name) {
    if (name.size() == 2 && name[0] == 'A' && name[1] >= '1' && name[1] <= '4')
        return LieAlgebra::abelian(static_cast<std::size_t>(name[1] - '0'));
    if (name == "L2" || name == "L2+A1") {
        LieAlgebra a(name == "L2" ? 3 : 4, numbered_names("x", name == "L2" ? 3 : 4));
        a.set_structure(0, 1, 2, 1);
        return a;
    }
    if (name == "L3") {
        LieAlgebra a(4, numbered_names("x", 4));
        a.set_structure(0, 1, 2, 1);
        a.set_structure(0, 2, 3, 1);
        return a;
    }
    throw InputError("unknown catalog entry '" + name + "'");
}

namespace {

Vector weights(const std::string& name, std::size_t n) {
    if (name == "L2") return {1, 1, 2};
    if (name == "L2+A1") return {1, 1, 2, 1};
    if (name == "L3") return {1, 2, 3, 4};
    return Vector(n, Rational(1));
}

}  // namespace

CatalogEntry build_entry(const std::string& name) {
    CatalogEntry e;
    e.name = name;
    e.base = catalog_base(name);
    require_lie(e.base);
    e.base_derivation = Matrix::diagonal(weights(name, e.base.dim()));
    e.extension = build_tstar(e.base, CyclicCocycle::zero(e.base.dim()));
    const LiftedDerivation lift = lift_derivation(e.extension, e.base_derivation);
    e.dbar = lift.dbar;
    e.omega = lift.omega;
    if (!e.dbar.derivation || !e.dbar.skew || !e.dbar.invertible)
        throw StructuralError("catalog " + name + ": lifted derivation failed certification");
    if (const auto c = is_symplectic(e.extension.g, e.omega); !c)
        throw StructuralError("catalog " + name + ": " + c.reason);
    e.fingerprint = fingerprint(e.extension.g);
    return e;
}

std::vector<DimensionRow> distinguish_all() {
    std::map<std::size_t, DimensionRow> rows;
    for (const auto& n : catalog_names()) {
        const CatalogEntry e = build_entry(n);
        DimensionRow& r = rows[e.extension.g.dim()];
        r.dim = e.extension.g.dim();
        r.names.push_back(n);
        r.fingerprints.push_back(e.fingerprint);
    }
    std::vector<DimensionRow> out;
    for (auto& [d, r] : rows) {
        for (std::size_t i = 0; i < r.fingerprints.size(); ++i)
            for (std::size_t j = i + 1; j < r.fingerprints.size(); ++j)
                if (r.fingerprints[i] == r.fingerprints[j]) r.distinct = false;
        out.push_back(std::move(r));
    }
    return out;
}

bool ChainReport::ok() const {
    for (const auto& [name, pass] : steps)
        if (!pass) return false;
    return true;
}

ChainReport certify_chain(const CatalogEntry& e) {
    ChainReport r;
    const LieAlgebra& g = e.extension.g;
    const BilinearForm& b = e.extension.b;
    auto step = [&](const std::string& what, auto&& f) {
        bool ok = false;
        try {
            ok = f();
        } catch (const std::exception&) {
            ok = false;
        }
        r.steps.emplace_back(what, ok);
    };
    step("omega from D", [&] { return symplectic_from_derivation(g, b, e.dbar.matrix) == e.omega; });
    step("D from omega", [&] { return derivation_from_pair(g, b, e.omega).matrix == e.dbar.matrix; });
    step("CYBE for D^-1", [&] { return cybe_check(g, inverse(e.dbar.matrix)).ok; });
    step("eigen split", [&] {
        const auto s = eigen_split(g, b, e.dbar.matrix);
        return nilman_check(s.m).holds && nilman_check(s.m).nilpotent;
    });
    step("special Manin tower", [&] {
        const auto s = eigen_split(g, b, e.dbar.matrix);
        return tower_decompose(s).complete;
    });
    step("symplectic tower", [&] { return symplectic_tower(g, b, e.dbar.matrix).complete; });
    return r;
}

}  // namespace quadlie
