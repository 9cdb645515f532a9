#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "varjet/evolutionary.hpp"
#include "varjet/random_gen.hpp"

using namespace varjet;

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

}  // namespace

TEST_CASE("prolongation coefficients are iterated total derivatives") {
    auto ctx = JetContext::create({1, 0, {{"x", kEven}}});
    GradedPoly x = ctx->x_poly(1, {});
    EvolutionaryField Y(ctx, {x * x}, kEven);
    ProlongedField P(Y);
    CHECK(P.coeff(1, {}) == x * x);
    CHECK(P.coeff(1, {1}) == (x * ctx->x_poly(1, {1})).scaled(Rational(2)));
    GradedPoly want2 = (ctx->x_poly(1, {1}) * ctx->x_poly(1, {1})).scaled(Rational(2)) +
                       (x * ctx->x_poly(1, {1, 1})).scaled(Rational(2));
    CHECK(P.coeff(1, {1, 1}) == want2);
}

TEST_CASE("component parities are validated") {
    auto ctx = JetContext::create({1, 0, {{"x", kEven}, {"th", kOdd}}});
    CHECK_THROWS_AS(EvolutionaryField(ctx, {ctx->x_poly(2, {}), ctx->x_poly(1, {})}, kEven),
                    ParityError);
    CHECK_NOTHROW(EvolutionaryField(ctx, {ctx->x_poly(2, {}), ctx->x_poly(1, {})}, kOdd));
}

TEST_CASE("prolongations graded-commute with total derivatives") {
    Rng rng(61);
    for (int k = 0; k < 20; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 1, 2));
        const Signature& sig = ctx->sig();
        Parity yp = rng.chance(0.5) ? kOdd : kEven;
        ProlongedField P(random_field(ctx, rng, yp));
        RandomPolyOptions opt;
        opt.max_order = 2;
        GradedPoly p = random_poly(*ctx, rng, opt);
        for (int i = 1; i <= sig.nparams(); ++i) {
            GradedPoly lhs = apply_field(P, total_derivative(*ctx, p, i));
            int s = koszul_sign(yp, sig.param_parity(i));
            CHECK(lhs == total_derivative(*ctx, apply_field(P, p), i).scaled(Rational(s)));
        }
    }
}

TEST_CASE("commutator of prolongations is the prolonged bracket") {
    Rng rng(67);
    for (int k = 0; k < 20; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 1, 2));
        Parity yp = rng.chance(0.5) ? kOdd : kEven;
        Parity zp = rng.chance(0.5) ? kOdd : kEven;
        EvolutionaryField Y = random_field(ctx, rng, yp);
        EvolutionaryField Z = random_field(ctx, rng, zp);
        ProlongedField PY(Y), PZ(Z);
        RandomPolyOptions opt;
        opt.max_order = 2;
        GradedPoly p = random_poly(*ctx, rng, opt);
        GradedPoly comm = apply_field(PY, apply_field(PZ, p)) -
                          apply_field(PZ, apply_field(PY, p)).scaled(Rational(koszul_sign(yp, zp)));
        CHECK(comm == apply_field(ProlongedField(jacobi(Y, Z)), p));
    }
}

TEST_CASE("interior product graded-commutes with the horizontal differential") {
    Rng rng(71);
    for (int k = 0; k < 20; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 1, 2));
        Parity yp = rng.chance(0.5) ? kOdd : kEven;
        ProlongedField P(random_field(ctx, rng, yp));
        JetForm w = random_jet_form(ctx, rng, rng.uniform(1, 2), rng.uniform(0, 1));
        GradedPoly lhs = horizontal_D(interior(P, w)).body;
        GradedPoly rhs = interior(P, horizontal_D(w)).body;
        CHECK((yp.odd() ? lhs - rhs : lhs + rhs).is_zero());
    }
}

TEST_CASE("Cartan Lie derivative acts on horizontal forms through the coefficient") {
    Rng rng(73);
    for (int k = 0; k < 15; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 1, 2));
        Parity yp = rng.chance(0.5) ? kOdd : kEven;
        ProlongedField P(random_field(ctx, rng, yp));
        RandomPolyOptions opt;
        opt.max_order = 2;
        GradedPoly L = random_poly(*ctx, rng, opt);
        GradedPoly h = L, hr = apply_field(P, L);
        for (int i = 1; i <= ctx->sig().r; ++i) {
            h = h * ctx->dt_poly(i);
            hr = hr * ctx->dt_poly(i);
        }
        CHECK(lie_on_forms(P, {ctx, h}).body == hr);
    }
}

TEST_CASE("Lie derivative graded-commutes with the horizontal differential") {
    Rng rng(79);
    for (int k = 0; k < 15; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 1, 2));
        Parity yp = rng.chance(0.5) ? kOdd : kEven;
        ProlongedField P(random_field(ctx, rng, yp));
        JetForm w = random_jet_form(ctx, rng, rng.uniform(1, 2), rng.uniform(0, 1));
        GradedPoly lhs = lie_on_forms(P, horizontal_D(w)).body;
        GradedPoly rhs = horizontal_D(lie_on_forms(P, w)).body;
        CHECK(lhs == (yp.odd() ? -rhs : rhs));
    }
}

TEST_CASE("first variation pairs the field with the Euler components up to divergence") {
    Rng rng(83);
    for (int k = 0; k < 15; ++k) {
        auto ctx = JetContext::create(random_signature(rng, 2, 1, 2));
        Parity yp = rng.chance(0.5) ? kOdd : kEven;
        EvolutionaryField Y = random_field(ctx, rng, yp);
        ProlongedField P(Y);
        RandomPolyOptions opt;
        opt.max_order = 2;
        GradedPoly L = random_poly(*ctx, rng, opt);
        auto F = euler({ctx, L});
        GradedPoly diff = apply_field(P, L);
        for (int a = 1; a <= ctx->sig().nfiber(); ++a)
            diff -= Y.comp(a) * F[static_cast<std::size_t>(a - 1)];
        for (const auto& Fa : euler({ctx, diff})) CHECK(Fa.is_zero());
    }
}
