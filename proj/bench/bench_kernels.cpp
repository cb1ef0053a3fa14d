// Serial vs OpenMP certification kernels on T*_0(L3 + ... + L3).

#include "quadlie/catalog.hpp"
#include "quadlie/kernels.hpp"
#include "quadlie/ratlin.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace quadlie;

namespace {

template <class F>
double best_ms(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (ms < best) best = ms;
    }
    return best;
}

template <class S, class P>
bool row(const std::string& name, int reps, S serial, P parallel) {
    decltype(serial()) a, b;
    const double s = best_ms(reps, [&] { a = serial(); });
    const double p = best_ms(reps, [&] { b = parallel(); });
    const bool same = a == b;
    std::printf("%-22s %10.2f %10.2f %8.2fx  %s\n", name.c_str(), s, p, p > 0 ? s / p : 0.0, same ? "same" : "DIFFERENT");
    return same;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP certification kernels"};
    std::size_t copies = 4;
    int reps = 3;
    app.add_option("--copies", copies, "number of L3 summands in the base")->check(CLI::Range(1, 12));
    app.add_option("--reps", reps, "best of this many runs")->check(CLI::Range(1, 100));
    CLI11_PARSE(app, argc, argv);

    const CatalogEntry l3 = build_entry("L3");
    LieAlgebra a = l3.base;
    Matrix d = l3.base_derivation;
    for (std::size_t i = 1; i < copies; ++i) {
        a = direct_sum(a, l3.base);
        d = direct_sum(d, l3.base_derivation);
    }
    const TStarData t = build_tstar(a, CyclicCocycle::zero(a.dim()));
    const LiftedDerivation lift = lift_derivation(t, d);
    const Matrix& dbar = lift.dbar.matrix;
    const Matrix r = inverse(dbar);
    const std::size_t n = t.g.dim();

    // all points but the last hit a zero coordinate, so the whole list is scanned
    std::vector<Matrix> diag;
    for (std::size_t i = 0; i < n; ++i) {
        Vector v(n);
        v[i] = 1;
        diag.push_back(Matrix::diagonal(v));
    }
    std::vector<std::vector<long>> points;
    for (std::size_t k = 0; k < 24; ++k) {
        std::vector<long> p(n, 1);
        if (k + 1 < 24) p[k % n] = 0;
        points.push_back(std::move(p));
    }

    std::printf("dim %zu, %d thread(s), best of %d (ms)\n", n, kernels::thread_count(), reps);
    std::printf("%-22s %10s %10s %9s  %s\n", "kernel", "serial", "openmp", "speedup", "witness");
    namespace ks = kernels::serial;
    namespace kp = kernels::parallel;
    bool ok = true;
    ok &= row("jacobi", reps, [&] { return ks::jacobi_violation(t.g); }, [&] { return kp::jacobi_violation(t.g); });
    ok &= row("invariance", reps, [&] { return ks::invariance_violation(t.g, t.b.matrix()); },
              [&] { return kp::invariance_violation(t.g, t.b.matrix()); });
    ok &= row("omega cocycle", reps, [&] { return ks::cocycle_violation(t.g, lift.omega.matrix()); },
              [&] { return kp::cocycle_violation(t.g, lift.omega.matrix()); });
    ok &= row("leibniz", reps, [&] { return ks::leibniz_violation(t.g, dbar); },
              [&] { return kp::leibniz_violation(t.g, dbar); });
    ok &= row("cybe", reps, [&] { return ks::yang_baxter_violation(t.g, r, false); },
              [&] { return kp::yang_baxter_violation(t.g, r, false); });
    ok &= row("first nonsingular", reps, [&] { return ks::first_nonsingular(diag, points); },
              [&] { return kp::first_nonsingular(diag, points); });
    return ok ? 0 : 1;
}
