#include "varjet/selftest.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "varjet/covariant.hpp"
#include "varjet/frontend.hpp"
#include "varjet/integral_forms.hpp"
#include "varjet/numeric.hpp"
#include "varjet/random_gen.hpp"

namespace varjet {

namespace {

EvolutionaryField random_field(const JetContextPtr& ctx, Rng& rng, Parity par) {
    RandomPolyOptions opt;
    opt.max_order = 1;
    opt.max_terms = 2;
    opt.max_factors = 2;
    std::vector<GradedPoly> comps;
    for (int a = 1; a <= ctx->sig().nfiber(); ++a)
        comps.push_back(random_homogeneous_poly(*ctx, rng, ctx->sig().fiber_parity(a) + par, opt));
    return {ctx, std::move(comps), par};
}

IntegralForm random_integral_form(const JetContextPtr& ctx, Rng& rng) {
    RandomPolyOptions opt;
    opt.allow_gamma = true;
    opt.max_order = 2;
    opt.max_terms = 2;
    IntegralForm out(ctx);
    int ncomp = rng.uniform(1, 2);
    for (int k = 0; k < ncomp; ++k) {
        std::vector<int> tuple;
        int len = rng.uniform(0, 2);
        for (int j = 0; j < len; ++j) tuple.push_back(rng.uniform(1, ctx->sig().nparams()));
        out.add_component(tuple, random_poly(*ctx, rng, opt));
    }
    return out;
}

GradedPoly random_fiber_poly(const JetContextPtr& ctx, Rng& rng) {
    GradedPoly out = ctx->zero();
    int terms = rng.uniform(1, 3);
    for (int t = 0; t < terms; ++t) {
        GradedPoly mono = ctx->constant(rng.coeff());
        int nf = rng.uniform(0, 2);
        for (int k = 0; k < nf; ++k)
            mono = mono * ctx->x_poly(rng.uniform(1, ctx->sig().nfiber()), {});
        out += mono;
    }
    return out;
}

std::string count_detail(int failures, int total) {
    return std::to_string(total - failures) + "/" + std::to_string(total) + " instances";
}

// 1. dbar o dbar = 0 on randomized Lagrangians.
CriterionResult crit_dbar_squared(Rng& rng) {
    int failures = 0;
    const int total = 200;
    for (int k = 0; k < total; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 3, 2, 4));
        RandomPolyOptions opt;
        opt.max_order = 3;
        Lagrangian L = random_lagrangian(ctx, rng, opt);
        if (!dbar(dbar(L)).body.is_zero()) ++failures;
    }
    return {1, "variational differential squares to zero", failures == 0, count_detail(failures, total)};
}

// 2. The Euler operator annihilates total divergences (odd parameters included).
CriterionResult crit_euler_divergence(Rng& rng) {
    int failures = 0;
    const int total = 100;
    for (int k = 0; k < total; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 2, 3));
        IntegralForm f(ctx);
        RandomPolyOptions opt;
        opt.max_order = 2;
        for (int i = 1; i <= ctx->sig().nparams(); ++i)
            f.add_component({i}, random_poly(*ctx, rng, opt));
        Lagrangian L{ctx, integral_D(f).component({})};
        for (const auto& Fa : euler(L))
            if (!Fa.is_zero()) {
                ++failures;
                break;
            }
    }
    return {2, "Euler operator annihilates divergences", failures == 0, count_detail(failures, total)};
}

// 3. D^2 = 0, delta^2 = 0, D delta + delta D = 0 in both sectors.
CriterionResult crit_bicomplex(Rng& rng) {
    int failures = 0;
    const int nforms = 100, nint = 50;
    for (int k = 0; k < nforms; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 2, 2));
        JetForm w = random_jet_form(ctx, rng, rng.uniform(0, 2), rng.uniform(0, 1));
        bool ok = horizontal_D(horizontal_D(w)).is_zero() &&
                  vertical_delta(vertical_delta(w)).is_zero() &&
                  (horizontal_D(vertical_delta(w)).body + vertical_delta(horizontal_D(w)).body)
                      .is_zero();
        if (!ok) ++failures;
    }
    for (int k = 0; k < nint; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 2, 2));
        IntegralForm f = random_integral_form(ctx, rng);
        IntegralForm anti = integral_D(integral_delta(f)) + integral_delta(integral_D(f));
        bool ok = integral_D(integral_D(f)).is_zero() &&
                  integral_delta(integral_delta(f)).is_zero() && anti.is_zero();
        if (!ok) ++failures;
    }
    return {3, "bicomplex identities (both sectors)", failures == 0,
            count_detail(failures, nforms + nint)};
}

// 4. Integration-by-parts witness: canonical(w) - w = D(tau) exactly.
CriterionResult crit_rho_witness(Rng& rng) {
    int failures = 0;
    const int neven = 50, nsuper = 50;
    for (int k = 0; k < neven; ++k) {
        Signature sig = random_signature(rng, 2, 0, 3);
        sig.s = 0;
        auto ctx = JetContext::create(sig);
        JetForm w = random_jet_form(ctx, rng, 1, sig.r);
        if (w.is_zero()) {
            GradedPoly fb = ctx->gamma_poly(1, {1});
            for (int i = 1; i <= sig.r; ++i) fb = fb * ctx->dt_poly(i);
            w = {ctx, fb};
        }
        auto res = rho(w);
        bool ok =(res.canonical.body - w.body - horizontal_D(res.witness).body).is_zero();
        for (const auto& [f, c] : res.canonical.body.terms())
            for (const auto& [g, e] : f) {
                const Generator& gen = res.canonical.body.registry()->gen(g);
                if (gen.kind == GenKind::Gamma && !gen.multi.empty()) ok = false;
            }
        if (!ok) ++failures;
    }
    for (int k = 0; k < nsuper; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 2, 3));
        RandomPolyOptions opt;
        opt.max_order = 2;
        auto coords = enumerate_coords(ctx->sig(), 2);
        GradedPoly body = ctx->zero();
        int terms = rng.uniform(1, 3);
        for (int t = 0; t < terms; ++t) {
            const JetCoord& c = rng.pick(coords);
            body += random_poly(*ctx, rng, opt) * ctx->gamma_poly(c.fiber, c.multi);
        }
        IntegralForm w(ctx);
        w.add_component({}, body);
        auto res = rho_integral(w);
        IntegralForm diff = res.canonical - w - integral_D(res.witness);
        if (!diff.is_zero()) ++failures;
    }
    return {4, "canonicalization witness in both sectors", failures == 0,
            count_detail(failures, neven + nsuper)};
}

// 5. The relation between the variational differential and the bicomplex maps.
CriterionResult crit_relation_theorem(Rng& rng) {
    int failures = 0;
    const int total = 50;
    for (int k = 0; k < total; ++k) {
        Signature sig = random_signature(rng, 2, 0, 3);
        sig.s = 0;
        auto ctx = JetContext::create(sig);
        RandomPolyOptions opt;
        opt.max_order = 2;
        // The relation holds for parity-even Lagrangians over an even base.
        GradedPoly body = random_homogeneous_poly(*ctx, rng, kEven, opt);
        if (body.is_zero()) body = ctx->x_poly(1, {});
        if (!relation_theorem_holds({ctx, body})) ++failures;
    }
    return {5, "variational differential factors through the bicomplex", failures == 0,
            count_detail(failures, total)};
}

// 6. Evolutionary-field identities.
CriterionResult crit_evolutionary(Rng& rng) {
    int failures = 0;
    const int total = 50;
    for (int k = 0; k < total; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 1, 2));
        const Signature& sig = ctx->sig();
        Parity yp = rng.chance(0.5) ? kOdd : kEven;
        Parity zp = rng.chance(0.5) ? kOdd : kEven;
        EvolutionaryField Y = random_field(ctx, rng, yp);
        EvolutionaryField Z = random_field(ctx, rng, zp);
        ProlongedField PY(Y), PZ(Z);
        RandomPolyOptions opt;
        opt.max_order = 2;
        GradedPoly p = random_poly(*ctx, rng, opt);
        bool ok = true;

        // Prolongations graded-commute with total derivatives.
        for (int i = 1; i <= sig.nparams(); ++i) {
            GradedPoly lhs = apply_field(PY, total_derivative(*ctx, p, i));
            int s = koszul_sign(yp, sig.param_parity(i));
            if (lhs != total_derivative(*ctx, apply_field(PY, p), i).scaled(Rational(s))) ok = false;
        }
        // Commutator of prolongations is the prolongation of the bracket.
        GradedPoly comm = apply_field(PY, apply_field(PZ, p)) -
                          apply_field(PZ, apply_field(PY, p)).scaled(Rational(koszul_sign(yp, zp)));
        if (comm != apply_field(ProlongedField(jacobi(Y, Z)), p)) ok = false;

        // Interior product graded-commutes with D; the Cartan Lie derivative
        // acts on horizontal forms as the field on the coefficient.
        JetForm w = random_jet_form(ctx, rng, rng.uniform(1, 2), rng.uniform(0, 1));
        GradedPoly c1 = yp.odd()
                            ? horizontal_D(interior(PY, w)).body - interior(PY, horizontal_D(w)).body
                            : horizontal_D(interior(PY, w)).body + interior(PY, horizontal_D(w)).body;
        if (!c1.is_zero()) ok = false;
        GradedPoly L = random_poly(*ctx, rng, opt);
        GradedPoly h = L, hr = apply_field(PY, L);
        for (int i = 1; i <= sig.r; ++i) {
            h = h * ctx->dt_poly(i);
            hr = hr * ctx->dt_poly(i);
        }
        if (lie_on_forms(PY, {ctx, h}).body != hr) ok = false;

        if (!ok) ++failures;
    }
    return {6, "evolutionary field identities", failures == 0, count_detail(failures, total)};
}

// 7. Lagrangians of constant forms: differential correspondence and covariance.
CriterionResult crit_form_correspondence(Rng& rng) {
    int failures = 0;
    const int total = 50;
    for (int k = 0; k < total; ++k) {
        int r = rng.uniform(1, 2);
        int m = rng.uniform(r, r + 2);
        Signature sig{r, 0, {}};
        for (int a = 0; a < m; ++a) sig.fiber.emplace_back("x", kEven);
        auto ctx = JetContext::create(sig);
        ConstantForm w(ctx, r);
        for (int c = 0; c < 2; ++c) {
            std::vector<int> tuple;
            for (int j = 0; j < r; ++j) tuple.push_back(rng.uniform(1, m));
            w.add_component(tuple, random_fiber_poly(ctx, rng));
        }
        Lagrangian Lw = lagrangian_of_form(w, ctx);
        bool ok = dbar(Lw).body == lagrangian_of_form(w.exterior_d(), ctx->promote()).body;
        if (!check_covariance_basis(Lw, Rational(1), 1).passed) ok = false;
        if (!ok) ++failures;
    }
    return {7, "form-Lagrangian correspondence and weight-1 covariance", failures == 0,
            count_detail(failures, total)};
}

// 8. Composing a closed Lagrangian with a substitution stays closed.
CriterionResult crit_composition(Rng& rng) {
    int failures = 0;
    const int total = 30;
    for (int k = 0; k < total; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 1, 1, 2));
        Lagrangian L = dbar(random_lagrangian(ctx, rng));
        Signature ssig = L.ctx->sig();
        ssig.fiber = {{"u", kEven}, {"u", kOdd}};
        auto src = JetContext::create(ssig);
        RandomPolyOptions opt;
        opt.max_order = 1;
        opt.max_terms = 2;
        opt.max_factors = 2;
        std::vector<GradedPoly> F;
        for (int mu = 1; mu <= L.ctx->sig().nfiber(); ++mu)
            F.push_back(random_homogeneous_poly(*src, rng, L.ctx->sig().fiber_parity(mu), opt));
        if (!dbar(compose(L, src, F)).body.is_zero()) ++failures;
    }
    return {8, "closedness survives composition", failures == 0, count_detail(failures, total)};
}

// 9. Total curvature of the unit sphere through both densities.
CriterionResult crit_sphere_integrals() {
    auto gb = sphere_gauss_bonnet_integral(400);
    auto gm = sphere_gauss_map_integral(400);
    double rel_gb = std::abs(gb.value - 8 * M_PI) / (8 * M_PI);
    double rel_gm = std::abs(gm.value - 4 * M_PI) / (4 * M_PI);
    std::ostringstream os;
    os << std::setprecision(4) << "scalar-curvature integral " << gb.value << " (target 8*pi, rel "
       << rel_gb << "); normal-map integral " << gm.value << " (target 4*pi, rel " << rel_gm << ")";
    return {9, "sphere total curvature at 400x400", rel_gb < 1e-3 && rel_gm < 1e-3, os.str()};
}

// 10. The projector-form composition agrees with the curvature density pointwise.
CriterionResult crit_grassmann(Rng& rng) {
    int failures = 0;
    const int total = 100;
    double worst = 0;
    for (int k = 0; k < total; ++k) {
        int m = 3 + k % 3;
        Jet2 j;
        auto rv = [&] {
            std::vector<double> v(static_cast<std::size_t>(m));
            for (auto& x : v) x = rng.real(-1, 1);
            return v;
        };
        j.x = rv();
        j.x1 = rv();
        j.x2 = rv();
        j.x11 = rv();
        j.x12 = rv();
        j.x22 = rv();
        try {
            double dev = std::abs(grassmann_composed_density(j) - gauss_bonnet_density(j));
            worst = std::max(worst, dev);
            if (dev > 1e-9) ++failures;
        } catch (const NumericDomainError&) {
            --k;  // degenerate frame: redraw
        }
    }
    std::ostringstream os;
    os << count_detail(failures, total) << ", worst deviation " << std::setprecision(3) << worst;
    return {10, "projector-form composition matches the curvature density", failures == 0, os.str()};
}

// 11. Weight-1 transformation of the curvature density under reparametrization.
CriterionResult crit_reparametrization(Rng& rng) {
    int failures = 0;
    const int total = 20;
    double worst = 0;
    Chart2 sp = sphere_chart();
    for (int k = 0; k < total; ++k) {
        double c0 = rng.real(0.5, 1.5), c1 = rng.real(0.2, 2.0);
        double a11 = rng.real(0.3, 0.6), a22 = rng.real(0.5, 0.8);
        double a12 = rng.real(-0.1, 0.1), a21 = rng.real(-0.1, 0.1);
        double q1 = rng.real(-0.05, 0.05), q2 = rng.real(-0.05, 0.05);
        double p1 = rng.real(-0.05, 0.05), p2 = rng.real(-0.05, 0.05);
        Diffeo2 f = [=](double u, double v) {
            Map2Jet m{};
            m.y[0] = c0 + a11 * u + a12 * v + q1 * u * v + q2 * u * u;
            m.y[1] = c1 + a21 * u + a22 * v + p1 * u * v + p2 * v * v;
            m.d[0][0] = a11 + q1 * v + 2 * q2 * u;
            m.d[0][1] = a12 + q1 * u;
            m.d[1][0] = a21 + p1 * v;
            m.d[1][1] = a22 + p1 * u + 2 * p2 * v;
            m.dd[0][0][0] = 2 * q2;
            m.dd[0][0][1] = m.dd[0][1][0] = q1;
            m.dd[1][0][1] = m.dd[1][1][0] = p1;
            m.dd[1][1][1] = 2 * p2;
            return m;
        };
        try {
            double dev = reparametrization_check([](const Jet2& j) { return gauss_bonnet_density(j); },
                                                 sp, f, {0, 1, 0, 1}, 1.0, 10);
            worst = std::max(worst, dev);
            if (dev > 1e-8) ++failures;
        } catch (const NumericDomainError&) {
            --k;  // orientation flip or degenerate point: redraw
        }
    }
    std::ostringstream os;
    os << count_detail(failures, total) << ", worst deviation " << std::setprecision(3) << worst;
    return {11, "weight-1 reparametrization of the curvature density", failures == 0, os.str()};
}

// 12. Printer/parser round-trip, byte-exact.
CriterionResult crit_parser_roundtrip(Rng& rng) {
    int failures = 0;
    const int total = 500;
    for (int k = 0; k < total; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 3, 2, 3));
        RandomPolyOptions opt;
        opt.allow_dt = rng.chance(0.5);
        opt.allow_gamma = rng.chance(0.5);
        opt.max_terms = 4;
        GradedPoly p = random_poly(*ctx, rng, opt);
        std::string s1 = print_poly(p);
        GradedPoly q = parse_poly(s1, ctx);
        if (q != p || print_poly(q) != s1) ++failures;
    }
    return {12, "printer/parser round-trip", failures == 0, count_detail(failures, total)};
}

}  // namespace

std::vector<CriterionResult> run_selftest(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CriterionResult> out;
    auto timed = [&](CriterionResult r, std::chrono::steady_clock::time_point t0) {
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    };
    auto now = [] { return std::chrono::steady_clock::now(); };

    auto t0 = now();
    timed(crit_dbar_squared(rng), t0);
    t0 = now();
    timed(crit_euler_divergence(rng), t0);
    t0 = now();
    timed(crit_bicomplex(rng), t0);
    t0 = now();
    timed(crit_rho_witness(rng), t0);
    t0 = now();
    timed(crit_relation_theorem(rng), t0);
    t0 = now();
    timed(crit_evolutionary(rng), t0);
    t0 = now();
    timed(crit_form_correspondence(rng), t0);
    t0 = now();
    timed(crit_composition(rng), t0);
    t0 = now();
    {
        CriterionResult r = crit_sphere_integrals();
        double secs = std::chrono::duration<double>(now() - t0).count();
        if (secs > 30.0) {
            r.passed = false;
            r.detail += " (over the 30 s budget)";
        }
        r.seconds = secs;
        out.push_back(std::move(r));
    }
    t0 = now();
    timed(crit_grassmann(rng), t0);
    t0 = now();
    timed(crit_reparametrization(rng), t0);
    t0 = now();
    timed(crit_parser_roundtrip(rng), t0);
    return out;
}

int report_selftest(std::uint64_t seed, std::ostream& os) {
    int failures = 0;
    for (const auto& r : run_selftest(seed)) {
        if (!r.passed) ++failures;
        os << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.name
           << " — " << r.detail << "  [" << std::fixed << std::setprecision(2) << r.seconds
           << " s]\n"
           << std::defaultfloat;
    }
    return failures;
}

}  // namespace varjet
