#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "varjet/integral_forms.hpp"
#include "varjet/random_gen.hpp"

using namespace varjet;

TEST_CASE("bidegree bookkeeping") {
    auto ctx = JetContext::create({2, 0, {{"x", kEven}}});
    JetForm w{ctx, ctx->gamma_poly(1, {1}) * ctx->dt_poly(1) * ctx->x_poly(1, {})};
    auto d = form_bidegree(w);
    REQUIRE(d.has_value());
    CHECK(d->p == 1);
    CHECK(d->q == 1);
    CHECK(bidegree_component(w, {1, 1}).body == w.body);
    CHECK(bidegree_component(w, {0, 1}).is_zero());
}

TEST_CASE("horizontal and vertical differentials square and anticommute to zero") {
    Rng rng(41);
    for (int k = 0; k < 30; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 2, 2));
        JetForm w = random_jet_form(ctx, rng, rng.uniform(0, 2), rng.uniform(0, 1));
        CHECK(horizontal_D(horizontal_D(w)).is_zero());
        CHECK(vertical_delta(vertical_delta(w)).is_zero());
        CHECK((horizontal_D(vertical_delta(w)).body + vertical_delta(horizontal_D(w)).body)
                  .is_zero());
    }
}

TEST_CASE("vertical differential replaces jets by contact forms") {
    auto ctx = JetContext::create({1, 0, {{"x", kEven}}});
    GradedPoly x = ctx->x_poly(1, {});
    CHECK(vertical_delta_poly(*ctx, x * x) == (ctx->gamma_poly(1, {}) * x).scaled(Rational(2)));
    CHECK(vertical_delta_poly(*ctx, ctx->t_poly(1)).is_zero());
}

TEST_CASE("integration by parts: canonical form and exact witness") {
    auto ctx = JetContext::create({1, 0, {{"x", kEven}}});
    // w = G^1_(1) x^1 dt^1 integrates by parts to -G^1 x^1_1 dt^1.
    JetForm w{ctx, ctx->gamma_poly(1, {1}) * ctx->x_poly(1, {}) * ctx->dt_poly(1)};
    auto res = rho(w);
    CHECK(res.canonical.body == -(ctx->gamma_poly(1, {}) * ctx->x_poly(1, {1}) * ctx->dt_poly(1)));
    CHECK((res.canonical.body - w.body - horizontal_D(res.witness).body).is_zero());
}

TEST_CASE("random witness identity, order-0 canonical contact factors") {
    Rng rng(43);
    for (int k = 0; k < 25; ++k) {
        Signature sig = random_signature(rng, 2, 0, 3);
        sig.s = 0;
        auto ctx = JetContext::create(sig);
        JetForm w = random_jet_form(ctx, rng, 1, sig.r);
        if (w.is_zero()) continue;
        auto res = rho(w);
        CHECK((res.canonical.body - w.body - horizontal_D(res.witness).body).is_zero());
        for (const auto& [f, c] : res.canonical.body.terms())
            for (const auto& [g, e] : f)
                if (ctx->registry()->gen(g).kind == GenKind::Gamma)
                    CHECK(ctx->registry()->gen(g).multi.empty());
    }
}

TEST_CASE("canonicalized first variation pairs contact forms with Euler components") {
    auto ctx = JetContext::create({1, 0, {{"x", kEven}, {"y", kEven}}});
    Lagrangian L{ctx, ctx->x_poly(1, {}) * ctx->x_poly(2, {1})};
    auto res = rho(vertical_delta(horizontal_lagrangian_form(L)));
    auto F = euler(L);
    GradedPoly want =
        (ctx->gamma_poly(1, {}) * F[0] + ctx->gamma_poly(2, {}) * F[1]) * ctx->dt_poly(1);
    CHECK(res.canonical.body == want);
}

TEST_CASE("degree-shift map lands in the promoted mixed bidegree") {
    auto ctx = JetContext::create({1, 0, {{"x", kEven}}});
    JetForm w{ctx, ctx->gamma_poly(1, {}) * ctx->dt_poly(1) * ctx->x_poly(1, {1})};
    JetForm kw = kappa(w);
    CHECK(kw.ctx->sig().r == 2);
    auto d = form_bidegree(kw);
    REQUIRE(d.has_value());
    CHECK(d->p == 0);
    CHECK(d->q == 2);
}

TEST_CASE("the variational differential factors through the bicomplex maps") {
    Rng rng(47);
    for (int k = 0; k < 20; ++k) {
        Signature sig = random_signature(rng, 2, 0, 3);
        sig.s = 0;
        auto ctx = JetContext::create(sig);
        RandomPolyOptions opt;
        opt.max_order = 2;
        GradedPoly body = random_homogeneous_poly(*ctx, rng, kEven, opt);
        if (body.is_zero()) body = ctx->x_poly(1, {});
        CHECK(relation_theorem_holds({ctx, body}));
    }
}

TEST_CASE("volume sector: contraction against the full symbol") {
    auto ctx = JetContext::create({1, 1, {{"x", kEven}}});
    for (int a = 1; a <= 2; ++a) {
        IntegralForm f(ctx);
        f.add_component({a}, ctx->constant(1));
        IntegralForm want(ctx);
        want.add_component({}, ctx->constant(ctx->sig().param_parity(a).odd() ? -1 : 1));
        CHECK(dx_action(a, f) == want);
    }
}

TEST_CASE("volume sector bicomplex identities") {
    Rng rng(53);
    for (int k = 0; k < 20; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 2, 2));
        RandomPolyOptions opt;
        opt.allow_gamma = true;
        opt.max_order = 2;
        opt.max_terms = 2;
        IntegralForm f(ctx);
        for (int c = 0, n = rng.uniform(1, 2); c < n; ++c) {
            std::vector<int> tuple;
            for (int j = 0, len = rng.uniform(0, 2); j < len; ++j)
                tuple.push_back(rng.uniform(1, ctx->sig().nparams()));
            f.add_component(tuple, random_poly(*ctx, rng, opt));
        }
        CHECK(integral_D(integral_D(f)).is_zero());
        CHECK(integral_delta(integral_delta(f)).is_zero());
        CHECK((integral_D(integral_delta(f)) + integral_delta(integral_D(f))).is_zero());
    }
}

TEST_CASE("volume-sector canonicalization reproduces the Euler components") {
    Rng rng(59);
    for (int k = 0; k < 15; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 2, 3));
        Lagrangian L = random_lagrangian(ctx, rng);
        IntegralForm dl = integral_delta(volume_lagrangian_form(L));
        auto res = rho_integral(dl);
        CHECK((res.canonical - dl - integral_D(res.witness)).is_zero());
        auto F = euler(L);
        GradedPoly want = ctx->zero();
        for (int a = 1; a <= ctx->sig().nfiber(); ++a)
            want += ctx->gamma_poly(a, {}) * F[static_cast<std::size_t>(a - 1)];
        CHECK(res.canonical.component({}) == want);
    }
}
