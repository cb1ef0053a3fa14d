#include "cli.hpp"

#include "quadlie/catalog.hpp"
#include "quadlie/errors.hpp"
#include "quadlie/ratlin.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace quadlie::cli {

namespace {

struct Options {
    std::uint64_t seed = 1;
    std::size_t trials = 200;
    bool require_quadratic = false;
    bool require_symplectic = false;
    std::string out;
};

Json check_json(const Check& c) {
    Json j = {{"pass", c.ok}};
    if (!c.ok) j["reason"] = c.reason;
    if (!c.witness.empty()) j["witness"] = c.witness;
    return j;
}

Json fingerprint_json(const Fingerprint& f) {
    return {{"dim", f.dim},
            {"center_dim", f.center_dim},
            {"derived_dim", f.derived_dim},
            {"nilpotency_class", f.nilpotency_class},
            {"lcs_profile", f.lcs_profile}};
}

// Invertible skew derivation carried by the document, if any: from omega, else derivations[0].
std::optional<Matrix> carried_derivation(const AlgebraDoc& doc) {
    if (!doc.form_b) return std::nullopt;
    if (doc.form_omega) {
        try {
            return derivation_from_pair(doc.g, *doc.form_b, *doc.form_omega).matrix;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (doc.derivations.empty()) return std::nullopt;
    const DerivationMatrix d = certify_derivation(doc.g, doc.derivations[0], &*doc.form_b);
    if (d.derivation && d.skew && d.invertible) return d.matrix;
    return std::nullopt;
}

Matrix resolve_derivation(const AlgebraDoc& doc, const Options& opt) {
    if (!doc.form_b) throw InputError("form_B is required");
    if (doc.form_omega) return derivation_from_pair(doc.g, *doc.form_b, *doc.form_omega).matrix;
    if (!doc.derivations.empty()) {
        const DerivationMatrix d = certify_derivation(doc.g, doc.derivations[0], &*doc.form_b);
        if (!(d.derivation && d.skew && d.invertible))
            throw StructuralError("derivations[0] is not an invertible skew derivation");
        return d.matrix;
    }
    const InvertibleSearch s = find_invertible(skew_derivation_space(doc.g, *doc.form_b), opt.seed, opt.trials);
    if (!s.found) throw SearchAbsence("no invertible skew derivation found: " + s.note, s.definitive);
    return *s.found;
}

AlgebraDoc symplectic_doc(const LieAlgebra& g, const BilinearForm& b, const Matrix& d, const BilinearForm& omega) {
    AlgebraDoc doc;
    doc.g = g;
    doc.form_b = b;
    doc.form_omega = omega;
    doc.derivations = {d};
    return doc;
}

AlgebraDoc special_doc(const SpecialSymplecticManin& s) {
    AlgebraDoc doc = symplectic_doc(s.m.g, s.m.b, s.d.matrix, s.omega);
    doc.manin_u = s.m.u;
    doc.manin_v = s.m.v;
    return doc;
}

// a + a* with theta = 0 splits as U = a, V = a*.
void attach_tstar_blocks(AlgebraDoc& doc, const TStarData& t) {
    const std::size_t n = t.base_dim();
    std::vector<Vector> u;
    for (std::size_t i = 0; i < n; ++i) u.push_back(unit_vector(2 * n, i));
    doc.manin_u = Subspace(2 * n, u);
    doc.manin_v = t.dual_block();
}

AlgebraDoc load_or_catalog(const std::string& spec) {
    if (std::filesystem::exists(spec)) return load_algebra(spec);
    const auto& names = catalog_names();
    if (std::find(names.begin(), names.end(), spec) != names.end()) {
        AlgebraDoc doc;
        doc.g = catalog_base(spec);
        return doc;
    }
    throw InputError("cannot open " + spec);
}

Vector parse_vector_list(const std::string& text, std::size_t n, const std::string& what) {
    Vector v;
    if (!text.empty()) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
    }
    if (v.empty()) return zero_vector(n);
    if (v.size() != n) throw InputError(what + ": expected " + std::to_string(n) + " comma-separated rationals");
    return v;
}

const Matrix& derivation_at(const AlgebraDoc& doc, std::size_t k) {
    if (k >= doc.derivations.size())
        throw InputError("derivations[" + std::to_string(k) + "] is not present in the file");
    return doc.derivations[k];
}

class Session {
public:
    Session(const Options& opt, std::ostream& out, std::ostream& err) : opt_(opt), out_(out), err_(err) {}

    int emit(Json bundle, bool pass) {
        bundle["format_version"] = kFormatVersion;
        const std::string text = canonical_dump(bundle);
        if (opt_.out.empty()) {
            out_ << text;
        } else {
            std::ofstream f(opt_.out, std::ios::binary);
            if (!f) throw InputError("cannot write " + opt_.out);
            f << text;
        }
        if (!pass) err_ << "certification failed\n";
        return pass ? ok : certification_failure;
    }

    int algebra_bundle(const std::string& kind, const AlgebraDoc& doc, Json extra = Json::object()) {
        Json cert = certify(doc);
        const bool pass = cert["pass"].get<bool>();
        extra["kind"] = kind;
        extra["algebra"] = to_json(doc);
        extra["certificate"] = std::move(cert);
        return emit(std::move(extra), pass);
    }

    const Options& opt() const { return opt_; }
    std::ostream& err() { return err_; }

private:
    Options opt_;
    std::ostream& out_;
    std::ostream& err_;
};

int cmd_check(Session& s, const std::string& path) {
    const AlgebraDoc doc = load_algebra(path);
    if (s.opt().require_quadratic && !doc.form_b) throw InputError(path + ": form_B missing (--require-quadratic)");
    if (s.opt().require_symplectic && !doc.form_omega && doc.derivations.empty())
        throw InputError(path + ": neither form_omega nor derivations present (--require-symplectic)");
    if (s.opt().require_symplectic && !doc.form_b) throw InputError(path + ": form_B missing (--require-symplectic)");
    Json cert = certify(doc);
    const bool pass = cert["pass"].get<bool>();
    if (s.opt().require_symplectic && pass && !cert.contains("cybe")) {
        s.err() << "no invertible skew derivation is carried\n";
        cert["pass"] = false;
        return s.emit({{"kind", "certificate"}, {"certificate", cert}}, false);
    }
    return s.emit({{"kind", "certificate"}, {"certificate", cert}}, pass);
}

int cmd_tstar(Session& s, const std::string& base_path, const std::string& theta_spec) {
    AlgebraDoc base = load_or_catalog(base_path);
    require_lie(base.g);
    const std::size_t n = base.g.dim();
    CyclicCocycle theta = CyclicCocycle::zero(n);
    if (theta_spec == "base") {
        if (!base.theta) throw InputError(base_path + ": no cocycle_theta to use");
        theta = *base.theta;
    } else if (theta_spec != "zero") {
        const Json j = read_json_file(theta_spec);
        theta = j.contains("cocycle_theta") ? cocycle_from_json(j["cocycle_theta"], n, "cocycle_theta")
                                            : cocycle_from_json(j, n, "");
    }
    base.theta = theta.is_zero() ? std::nullopt : std::optional<CyclicCocycle>(theta);
    const TStarData t = build_tstar(base.g, theta);
    AlgebraDoc doc;
    doc.g = t.g;
    doc.form_b = t.b;
    if (!base.derivations.empty()) {
        const LiftedDerivation lift = lift_derivation(t, base.derivations[0]);
        doc = symplectic_doc(t.g, t.b, lift.dbar.matrix, lift.omega);
    }
    if (theta.is_zero()) attach_tstar_blocks(doc, t);
    base.form_b.reset();
    base.form_omega.reset();
    base.manin_u.reset();
    base.manin_v.reset();
    if (base.derivations.size() > 1) base.derivations.resize(1);
    return s.algebra_bundle("tstar", doc, {{"base", to_json(base)}});
}

int cmd_dext(Session& s, const std::string& path, std::size_t k) {
    const AlgebraDoc in = load_algebra(path);
    if (!in.form_b) throw InputError(path + ": form_B is required");
    require_lie(in.g);
    const Matrix& delta = derivation_at(in, k);
    AlgebraDoc doc;
    if (in.manin_u && in.manin_v) {
        const ManinDecomposition m = manin_double_extend(certify_manin(in.g, *in.form_b, *in.manin_u, *in.manin_v), delta);
        doc.g = m.g;
        doc.form_b = m.b;
        doc.manin_u = m.u;
        doc.manin_v = m.v;
    } else {
        const QuadraticAlgebra q = double_extend_line(in.g, *in.form_b, delta);
        doc.g = q.g;
        doc.form_b = q.b;
    }
    return s.algebra_bundle("dext", doc, {{"core", to_json(in)}, {"delta", to_json(delta)}});
}

int cmd_sdext(Session& s, const std::string& path, const std::string& lambda_text, const std::string& c_text,
              std::optional<std::size_t> k) {
    const AlgebraDoc in = load_algebra(path);
    require_lie(in.g);
    const Matrix d = resolve_derivation(in, s.opt());
    const std::size_t n = in.g.dim();
    const Rational lambda = parse_rational(lambda_text);
    const Vector c = parse_vector_list(c_text, n, "--c");
    const Matrix delta = k ? derivation_at(in, *k) : Matrix(n, n);
    AlgebraDoc doc;
    if (in.manin_u && in.manin_v) {
        const SpecialSymplecticManin sm =
            certify_special(certify_manin(in.g, *in.form_b, *in.manin_u, *in.manin_v), d);
        doc = special_doc(special_double_extend(sm, delta, lambda, c));
    } else {
        const SymplecticQuadratic q = symplectic_double_extend({in.g, *in.form_b, d, delta, lambda, c});
        doc = symplectic_doc(q.g, q.b, q.d.matrix, q.omega);
    }
    return s.algebra_bundle("sdext", doc,
                            {{"core", to_json(in)},
                             {"delta", to_json(delta)},
                             {"lambda", to_json(lambda)},
                             {"c", to_json(c)}});
}

int cmd_tower(Session& s, const std::string& g_path, std::size_t n) {
    const AlgebraDoc in = load_or_catalog(g_path);
    const TowerExample ex = tower_example1(in.g, n);
    AlgebraDoc doc = symplectic_doc(ex.tstar.g, ex.tstar.b, ex.lift.dbar.matrix, ex.lift.omega);
    attach_tstar_blocks(doc, ex.tstar);
    AlgebraDoc base;
    base.g = ex.ln;
    base.derivations = {ex.d.matrix};
    return s.algebra_bundle("tower", doc, {{"base", to_json(base)}, {"n", n}});
}

int cmd_manin_split(Session& s, const std::string& path) {
    const AlgebraDoc in = load_algebra(path);
    require_lie(in.g);
    const Matrix d = resolve_derivation(in, s.opt());
    return s.algebra_bundle("manin-split", special_doc(eigen_split(in.g, *in.form_b, d)));
}

int cmd_descend(Session& s, const std::string& path) {
    const AlgebraDoc in = load_algebra(path);
    require_lie(in.g);
    const Matrix d = resolve_derivation(in, s.opt());
    const SymplecticTower tower = symplectic_tower(in.g, *in.form_b, d);
    Json steps = Json::array();
    for (const auto& st : tower.steps) {
        steps.push_back({{"dim", st.p.rows()},
                         {"lambda", to_json(st.data.lambda)},
                         {"c", to_json(st.data.c)},
                         {"delta", to_json(st.data.delta)},
                         {"p", to_json(st.p)},
                         {"core", to_json(symplectic_doc(st.data.g, st.data.b, st.data.d,
                                                          symplectic_from_derivation(st.data.g, st.data.b, st.data.d)))}});
    }
    const AlgebraDoc base = symplectic_doc(tower.base, tower.base_b, tower.base_d,
                                           symplectic_from_derivation(tower.base, tower.base_b, tower.base_d));
    AlgebraDoc top = in;
    if (!top.form_omega) top.form_omega = symplectic_from_derivation(in.g, *in.form_b, d);
    Json cert = certify(top);
    const bool pass = cert["pass"].get<bool>();
    Json bundle = {{"kind", "descend"},
                   {"algebra", to_json(top)},
                   {"certificate", cert},
                   {"steps", steps},
                   {"base", to_json(base)},
                   {"complete", tower.complete}};
    if (!tower.complete) bundle["note"] = tower.note;
    const int rc = s.emit(std::move(bundle), pass);
    if (rc == ok && !tower.complete) {
        s.err() << "descent stopped at dimension " << tower.base.dim() << ": " << tower.note << "\n";
        return search_absence;
    }
    return rc;
}

bool same_special(const SpecialSymplecticManin& a, const SpecialSymplecticManin& b) {
    return a.m.g.same_structure(b.m.g) && a.m.b == b.m.b && a.d.matrix == b.d.matrix && a.m.u == b.m.u &&
           a.m.v == b.m.v;
}

int cmd_tower_decompose(Session& s, const std::string& path) {
    const AlgebraDoc in = load_algebra(path);
    require_lie(in.g);
    const Matrix d = resolve_derivation(in, s.opt());
    const SpecialSymplecticManin top = (in.manin_u && in.manin_v)
                                           ? certify_special(certify_manin(in.g, *in.form_b, *in.manin_u, *in.manin_v), d)
                                           : eigen_split(in.g, *in.form_b, d);
    const SpecialTower tower = tower_decompose(top);
    Json steps = Json::array();
    std::size_t dim = top.m.g.dim();
    for (const auto& st : tower.steps) {
        steps.push_back({{"dim", dim},
                         {"lambda", to_json(st.lambda)},
                         {"c", to_json(st.c)},
                         {"delta", to_json(st.delta)},
                         {"p", to_json(st.p)},
                         {"swapped", st.swapped},
                         {"core", to_json(special_doc(st.core))}});
        dim = st.core.m.g.dim();
    }
    bool replay = false;
    if (tower.complete) replay = same_special(replay_tower(tower), top);
    Json cert = certify(special_doc(top));
    cert["replay_exact"] = replay;
    const bool pass = cert["pass"].get<bool>() && (replay || !tower.complete);
    cert["pass"] = pass;
    Json bundle = {{"kind", "tower-decompose"},
                   {"algebra", to_json(special_doc(top))},
                   {"certificate", cert},
                   {"steps", steps},
                   {"base", to_json(special_doc(tower.base))},
                   {"complete", tower.complete}};
    if (!tower.complete) bundle["note"] = tower.note;
    const int rc = s.emit(std::move(bundle), pass);
    if (rc == ok && !tower.complete) {
        s.err() << "decomposition stopped at dimension " << tower.failed_level << ": " << tower.note << "\n";
        return search_absence;
    }
    return rc;
}

int cmd_catalog(Session& s, const std::string& action, const std::string& name) {
    if (action == "list") {
        Json entries = Json::array();
        for (const auto& n : catalog_names()) {
            const CatalogEntry e = build_entry(n);
            entries.push_back({{"name", n}, {"base_dim", e.base.dim()}, {"fingerprint", fingerprint_json(e.fingerprint)}});
        }
        return s.emit({{"kind", "catalog-list"}, {"entries", entries}}, true);
    }
    if (action != "build") throw InputError("catalog: expected 'list' or 'build <name>'");
    if (name.empty()) throw InputError("catalog build: missing entry name");
    const CatalogEntry e = build_entry(name);
    AlgebraDoc doc = symplectic_doc(e.extension.g, e.extension.b, e.dbar.matrix, e.omega);
    attach_tstar_blocks(doc, e.extension);
    AlgebraDoc base;
    base.g = e.base;
    base.derivations = {e.base_derivation};
    return s.algebra_bundle("catalog", doc,
                            {{"name", name}, {"base", to_json(base)}, {"fingerprint", fingerprint_json(e.fingerprint)}});
}

}  // namespace

Json certify(const AlgebraDoc& doc) {
    const LieAlgebra& g = doc.g;
    bool pass = true;
    Json cert;
    cert["dim"] = g.dim();

    const JacobiReport jr = jacobi_check(g);
    Json jac = {{"pass", jr.ok}};
    if (!jr.ok) {
        jac["reason"] = jr.message;
        if (jr.witness) jac["witness"] = *jr.witness;
    }
    cert["jacobi"] = jac;
    pass = pass && jr.ok;
    if (!jr.ok) {
        cert["pass"] = false;
        return cert;  // nothing else is meaningful
    }

    const LowerCentralSeries lcs = derived_and_lcs(g);
    Json profile = Json::array();
    for (const auto& t : lcs.terms) profile.push_back(t.dim());
    cert["nilpotency"] = {{"nilpotent", lcs.nilpotent}, {"class", lcs.nilpotency_class}, {"lcs_dims", profile}};

    if (doc.form_b) {
        const Check c = is_invariant_scalar_product(g, *doc.form_b);
        cert["form_B"] = check_json(c);
        pass = pass && c.ok;
    }
    if (doc.form_omega) {
        const Check c = is_symplectic(g, *doc.form_omega);
        cert["form_omega"] = check_json(c);
        pass = pass && c.ok;
    }
    Json ders = Json::array();
    for (const auto& m : doc.derivations) {
        const DerivationMatrix d = certify_derivation(g, m, doc.form_b ? &*doc.form_b : nullptr);
        Json j = {{"derivation", d.derivation}, {"invertible", d.invertible}, {"semisimple", d.semisimple}};
        if (doc.form_b) j["skew"] = d.skew;
        j["pass"] = d.derivation && (!doc.form_b || d.skew);
        pass = pass && j["pass"].get<bool>();
        ders.push_back(j);
    }
    if (!ders.empty()) cert["derivations"] = ders;

    bool form_ok = doc.form_b && cert["form_B"]["pass"].get<bool>();
    if (doc.form_omega && form_ok) {
        Json j;
        try {
            const DerivationMatrix d = derivation_from_pair(g, *doc.form_b, *doc.form_omega);
            j = {{"pass", true}};
            if (!doc.derivations.empty()) {
                j["matches_derivations_0"] = d.matrix == doc.derivations[0];
                j["pass"] = d.matrix == doc.derivations[0];
            }
        } catch (const std::exception& e) {
            j = {{"pass", false}, {"reason", e.what()}};
        }
        cert["omega_derivation"] = j;
        pass = pass && j["pass"].get<bool>();
    }

    const std::optional<Matrix> d = form_ok ? carried_derivation(doc) : std::nullopt;
    if (d) {
        const Check c = cybe_check(g, inverse(*d));
        cert["cybe"] = check_json(c);
        pass = pass && c.ok;
        // an invertible derivation forces nilpotency
        pass = pass && lcs.nilpotent;
    }

    if (doc.theta) {
        const Check c = check_cocycle(g, *doc.theta);
        cert["cocycle_theta"] = check_json(c);
        pass = pass && c.ok;
    }

    if (doc.manin_u && doc.manin_v) {
        Json j;
        if (!form_ok) {
            j = {{"pass", false}, {"failures", {"form_B missing or not an invariant scalar product"}}};
        } else {
            const auto f = manin_failures(g, *doc.form_b, *doc.manin_u, *doc.manin_v);
            j = {{"pass", f.empty()}};
            if (!f.empty()) j["failures"] = f;
            if (f.empty() && d) {
                try {
                    certify_special({g, *doc.form_b, *doc.manin_u, *doc.manin_v}, *d);
                    j["special"] = true;
                } catch (const std::exception& e) {
                    j["special"] = false;
                    j["reason"] = e.what();
                    j["pass"] = false;
                }
            }
        }
        cert["manin"] = j;
        pass = pass && j["pass"].get<bool>();
    }
    cert["pass"] = pass;
    return cert;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    if (const char* env = std::getenv("QUADLIE_SEED")) {
        try {
            opt.seed = std::stoull(env);
        } catch (const std::exception&) {
            err << "QUADLIE_SEED is not an unsigned integer\n";
            return input_error;
        }
    }

    CLI::App app{"Exact constructions and certificates for quadratic symplectic Lie algebras", "quadlie"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--seed", opt.seed, "seed for randomized searches (default QUADLIE_SEED or 1)");
    app.add_option("--trials", opt.trials, "random trials for derivation searches");
    app.add_flag("--require-quadratic", opt.require_quadratic, "check: fail unless form_B is present");
    app.add_flag("--require-symplectic", opt.require_symplectic, "check: fail unless a symplectic structure is present");
    app.add_option("--out", opt.out, "write the result here instead of stdout");

    std::string file, theta = "zero", lambda = "1", cvec, action, name;
    std::size_t k = 0, n = 0;
    std::optional<std::size_t> delta_index;

    auto* check = app.add_subcommand("check", "certify an algebra file or bundle");
    check->add_option("file", file)->required();
    auto* tstar = app.add_subcommand("tstar", "T*-extension of a base algebra");
    tstar->add_option("--base", file, "algebra file or catalog base name")->required();
    tstar->add_option("--theta", theta, "zero, base (the base file's cocycle) or a cocycle file");
    auto* dext = app.add_subcommand("dext", "double extension by one skew derivation");
    dext->add_option("--file", file)->required();
    dext->add_option("--delta", k, "index into the file's derivations");
    auto* sdext = app.add_subcommand("sdext", "symplectic double extension");
    sdext->add_option("--file", file)->required();
    sdext->add_option("--lambda", lambda);
    sdext->add_option("--c", cvec, "comma-separated coordinates of c (default 0)");
    sdext->add_option("--delta", delta_index, "index into the file's derivations (default 0 map)");
    auto* tower = app.add_subcommand("tower", "g (x) tK[t]/t^n and its trivial T*-extension");
    tower->add_option("--g", file, "algebra file or catalog base name")->required();
    tower->add_option("--n", n)->required();
    auto* split = app.add_subcommand("manin-split", "eigenvalue sign split of a symplectic derivation");
    split->add_option("--file", file)->required();
    auto* descend = app.add_subcommand("descend", "symplectic descent down to the abelian plane");
    descend->add_option("--file", file)->required();
    auto* decompose = app.add_subcommand("tower-decompose", "special Manin tower with exact replay");
    decompose->add_option("--file", file)->required();
    auto* catalog = app.add_subcommand("catalog", "list or build catalog entries");
    catalog->add_option("action", action, "list | build")->required();
    catalog->add_option("name", name);

    std::vector<const char*> argv{"quadlie"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return input_error;
    }

    Session s(opt, out, err);
    try {
        if (*check) return cmd_check(s, file);
        if (*tstar) return cmd_tstar(s, file, theta);
        if (*dext) return cmd_dext(s, file, k);
        if (*sdext) return cmd_sdext(s, file, lambda, cvec, delta_index);
        if (*tower) return cmd_tower(s, file, n);
        if (*split) return cmd_manin_split(s, file);
        if (*descend) return cmd_descend(s, file);
        if (*decompose) return cmd_tower_decompose(s, file);
        if (*catalog) return cmd_catalog(s, action, name);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const StructuralError& e) {
        err << "certification failed: " << e.what() << "\n";
        return certification_failure;
    } catch (const SearchAbsence& e) {
        err << (e.definitive() ? "none exists: " : "search came back empty: ") << e.what() << "\n";
        return e.definitive() ? certification_failure : search_absence;
    }
    return input_error;
}

}  // namespace quadlie::cli
