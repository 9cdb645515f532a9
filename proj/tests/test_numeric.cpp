#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "varjet/numeric.hpp"
#include "varjet/random_gen.hpp"

using namespace varjet;

namespace {

/// Analytic graph chart (u, v, h(u, v)) with trig-polynomial height.
Chart2 graph_chart(double a, double b, double c, double d, double e) {
    return [=](double u, double v) {
        double s = std::sin(b * u + c * v), co = std::cos(b * u + c * v);
        Jet2 j;
        j.x = {u, v, a * s + d * u * v + e * u * u};
        j.x1 = {1, 0, a * b * co + d * v + 2 * e * u};
        j.x2 = {0, 1, a * c * co + d * u};
        j.x11 = {0, 0, -a * b * b * s + 2 * e};
        j.x12 = {0, 0, -a * b * c * s + d};
        j.x22 = {0, 0, -a * c * c * s};
        return j;
    };
}

double det3(const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Intrinsic sectional curvature of a chart from its metric alone (Brioschi
/// expansion), with 4th-order central differences for the metric derivatives.
double brioschi_curvature(const Chart2& chart, double u, double v) {
    auto metric = [&](double uu, double vv) { return first_fundamental_form(chart(uu, vv)); };
    const double h = 1e-2;
    auto d1 = [&](auto f, int axis) {
        auto at = [&](double s) { return axis == 0 ? f(u + s, v) : f(u, v + s); };
        return (8 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12 * h);
    };
    auto comp = [&](int k) { return [&, k](double uu, double vv) { return metric(uu, vv)[static_cast<std::size_t>(k)]; }; };
    double E = metric(u, v)[0], F = metric(u, v)[1], G = metric(u, v)[3];
    double Eu = d1(comp(0), 0), Ev = d1(comp(0), 1);
    double Fu = d1(comp(1), 0), Fv = d1(comp(1), 1);
    double Gu = d1(comp(3), 0), Gv = d1(comp(3), 1);
    auto dEv = [&](double uu, double vv) {
        auto f = comp(0);
        return (8 * (f(uu, vv + h) - f(uu, vv - h)) - (f(uu, vv + 2 * h) - f(uu, vv - 2 * h))) /
               (12 * h);
    };
    auto dGu = [&](double uu, double vv) {
        auto f = comp(3);
        return (8 * (f(uu + h, vv) - f(uu - h, vv)) - (f(uu + 2 * h, vv) - f(uu - 2 * h, vv))) /
               (12 * h);
    };
    auto dFu = [&](double uu, double vv) {
        auto f = comp(1);
        return (8 * (f(uu + h, vv) - f(uu - h, vv)) - (f(uu + 2 * h, vv) - f(uu - 2 * h, vv))) /
               (12 * h);
    };
    double Evv = (8 * (dEv(u, v + h) - dEv(u, v - h)) - (dEv(u, v + 2 * h) - dEv(u, v - 2 * h))) /
                 (12 * h);
    double Guu = (8 * (dGu(u + h, v) - dGu(u - h, v)) - (dGu(u + 2 * h, v) - dGu(u - 2 * h, v))) /
                 (12 * h);
    double Fuv = (8 * (dFu(u, v + h) - dFu(u, v - h)) - (dFu(u, v + 2 * h) - dFu(u, v - 2 * h))) /
                 (12 * h);
    double m1[3][3] = {{-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev},
                       {Fv - 0.5 * Gu, E, F},
                       {0.5 * Gv, F, G}};
    double m2[3][3] = {{0, 0.5 * Ev, 0.5 * Gu}, {0.5 * Ev, E, F}, {0.5 * Gu, F, G}};
    double det = E * G - F * F;
    return (det3(m1) - det3(m2)) / (det * det);
}

/// Order-2 chain rule for the composition f o g (g's jet at the base point,
/// f's jet at g's value).
Map2Jet compose_maps(const Map2Jet& f, const Map2Jet& g) {
    Map2Jet h{};
    for (int j = 0; j < 2; ++j) {
        h.y[j] = f.y[j];
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) h.d[j][i] += f.d[j][k] * g.d[k][i];
        for (int i = 0; i < 2; ++i)
            for (int l = 0; l < 2; ++l) {
                for (int k = 0; k < 2; ++k) {
                    h.dd[j][i][l] += f.d[j][k] * g.dd[k][i][l];
                    for (int m = 0; m < 2; ++m)
                        h.dd[j][i][l] += f.dd[j][k][m] * g.d[k][i] * g.d[m][l];
                }
            }
    }
    return h;
}

Diffeo2 quadratic_map(double c0, double c1, double a11, double a12, double a21, double a22,
                      double q1, double q2, double p1, double p2) {
    return [=](double u, double v) {
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
}

}  // namespace

TEST_CASE("polynomial evaluation at numeric jets") {
    auto ctx = JetContext::create({1, 0, {{"x", kEven}}});
    GradedPoly p = (ctx->x_poly(1, {}) * ctx->x_poly(1, {1})).scaled(Rational(3, 2)) +
                   ctx->t_poly(1);
    NumericJet j;
    j.t = {2.0};
    j.set(1, {}, 0.5);
    j.set(1, {1}, 4.0);
    CHECK(eval_poly(p, j) == doctest::Approx(1.5 * 0.5 * 4.0 + 2.0));
    NumericJet missing;
    missing.t = {0.0};
    CHECK_THROWS_AS(eval_poly(p, missing), NumericDomainError);
}

TEST_CASE("sphere chart densities: curvature one, area element sin(theta)") {
    Chart2 sp = sphere_chart();
    Jet2 eq = sp(M_PI / 2, 1.0);
    CHECK(gauss_bonnet_density(eq) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(gauss_map_density(eq) == doctest::Approx(1.0).epsilon(1e-12));
    Jet2 j = sp(1.1, 2.0);
    CHECK(gauss_bonnet_density(j) == doctest::Approx(2 * std::sin(1.1)).epsilon(1e-12));
    CHECK(gauss_map_density(j) == doctest::Approx(std::sin(1.1)).epsilon(1e-12));
}

TEST_CASE("flat jets have zero curvature density") {
    Jet2 plane;
    plane.x = {0, 0, 0};
    plane.x1 = {1, 0, 0};
    plane.x2 = {0, 1, 0};
    plane.x11 = plane.x12 = plane.x22 = {0, 0, 0};
    CHECK(gauss_bonnet_density(plane) == doctest::Approx(0.0));
    Jet2 degenerate = plane;
    degenerate.x2 = {2, 0, 0};  // dependent frame
    CHECK_THROWS_AS(first_fundamental_form(degenerate), NumericDomainError);
}

TEST_CASE("curvature density matches the intrinsic metric expansion") {
    Rng rng(7);
    for (int k = 0; k < 10; ++k) {
        Chart2 ch = graph_chart(rng.real(0.2, 0.5), rng.real(0.5, 1.2), rng.real(0.5, 1.2),
                                rng.real(-0.3, 0.3), rng.real(-0.3, 0.3));
        double u = rng.real(-0.8, 0.8), v = rng.real(-0.8, 0.8);
        Jet2 j = ch(u, v);
        auto g = first_fundamental_form(j);
        double K = brioschi_curvature(ch, u, v);
        double want = 2 * K * std::sqrt(g[0] * g[3] - g[1] * g[2]);
        CHECK(std::abs(gauss_bonnet_density(j) - want) < 1e-8);
    }
}

TEST_CASE("sphere integrals at moderate resolution") {
    auto gb = sphere_gauss_bonnet_integral(200);
    CHECK(gb.value == doctest::Approx(8 * M_PI).epsilon(1e-3));
    CHECK(gb.richardson_error < 1e-3);
    auto gm = sphere_gauss_map_integral(200);
    CHECK(gm.value == doctest::Approx(4 * M_PI).epsilon(1e-3));
}

TEST_CASE("parallel quadrature reproduces the serial reference") {
    Chart2 sp = sphere_chart();
    auto f = [&](double a, double b) { return gauss_bonnet_density(sp(a, b)); };
    Rect r{0.5, 2.0, 0.0, 3.0};
    CHECK(integrate_serial(f, r, 128, 128) ==
          doctest::Approx(integrate_parallel(f, r, 128, 128)).epsilon(1e-12));
}

TEST_CASE("midpoint rule converges at second order") {
    auto f = [](double u, double v) { return std::sin(2 * u + v); };
    Rect r{0, 1, 0, 1};
    double exact = (-std::sin(3.0) + std::sin(1.0) + std::sin(2.0)) / 2;
    double e1 = std::abs(integrate_serial(f, r, 50, 50) - exact);
    double e2 = std::abs(integrate_serial(f, r, 100, 100) - exact);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("projector two-form on an orthonormal frame") {
    std::vector<double> e1{1, 0, 0, 0}, e2{0, 1, 0, 0}, v{0, 0, 2, 1}, w{0, 0, 3, -1};
    CHECK(grassmann_form_value(e1, e2, v, w) == doctest::Approx(5.0));  // plain dot product
    std::vector<double> mixed{1, 0, 1, 0};
    // Components along the frame are projected out.
    CHECK(grassmann_form_value(e1, e2, mixed, v) == doctest::Approx(2.0));
}

TEST_CASE("composed projector form equals the curvature density pointwise") {
    Rng rng(11);
    for (int k = 0; k < 30; ++k) {
        int m = 3 + k % 3;
        Jet2 j;
        auto rv = [&] {
            std::vector<double> out(static_cast<std::size_t>(m));
            for (auto& x : out) x = rng.real(-1, 1);
            return out;
        };
        j.x = rv();
        j.x1 = rv();
        j.x2 = rv();
        j.x11 = rv();
        j.x12 = rv();
        j.x22 = rv();
        try {
            CHECK(grassmann_composed_density(j) ==
                  doctest::Approx(gauss_bonnet_density(j)).epsilon(1e-11));
        } catch (const NumericDomainError&) {
            --k;
        }
    }
}

TEST_CASE("jet transport composes to second order") {
    Chart2 sp = sphere_chart();
    Diffeo2 f = quadratic_map(0.8, 0.4, 0.5, 0.1, -0.05, 0.7, 0.03, -0.02, 0.04, 0.01);
    Diffeo2 g = quadratic_map(0.1, 0.2, 0.6, -0.05, 0.1, 0.5, -0.02, 0.03, 0.01, -0.04);
    double u = 0.3, v = 0.6;
    Map2Jet gj = g(u, v);
    Map2Jet fj = f(gj.y[0], gj.y[1]);
    Map2Jet hj = compose_maps(fj, gj);
    Jet2 upstream = sp(fj.y[0], fj.y[1]);
    Jet2 two_step = transport_jet(transport_jet(upstream, fj), gj);
    Jet2 one_step = transport_jet(upstream, hj);
    for (int a = 0; a < 3; ++a) {
        CHECK(two_step.x11[static_cast<std::size_t>(a)] ==
              doctest::Approx(one_step.x11[static_cast<std::size_t>(a)]).epsilon(1e-10));
        CHECK(two_step.x12[static_cast<std::size_t>(a)] ==
              doctest::Approx(one_step.x12[static_cast<std::size_t>(a)]).epsilon(1e-10));
        CHECK(two_step.x22[static_cast<std::size_t>(a)] ==
              doctest::Approx(one_step.x22[static_cast<std::size_t>(a)]).epsilon(1e-10));
    }
}

TEST_CASE("curvature density transforms with the Jacobian determinant") {
    Chart2 sp = sphere_chart();
    Diffeo2 f = quadratic_map(0.7, 0.2, 0.5, 0.1, 0.2, 0.8, 0.05, 0.0, 0.0, 0.0);
    double dev = reparametrization_check([](const Jet2& j) { return gauss_bonnet_density(j); }, sp,
                                         f, {0, 1, 0, 1}, 1.0, 12);
    CHECK(dev < 1e-12);
}

TEST_CASE("orientation-reversing maps are rejected") {
    Chart2 sp = sphere_chart();
    Diffeo2 flip = quadratic_map(1.2, 0.2, -0.5, 0.0, 0.0, 0.8, 0.0, 0.0, 0.0, 0.0);
    CHECK_THROWS_AS(reparametrization_check([](const Jet2& j) { return gauss_bonnet_density(j); },
                                            sp, flip, {0, 1, 0, 1}, 1.0, 4),
                    NumericDomainError);
}

TEST_CASE("polynomial paths evaluate their exact derivatives") {
    PolyPath p{{{1.0, 2.0, 3.0}}};  // 1 + 2t + 3t^2
    CHECK(p.value(1, 0, 0.5) == doctest::Approx(1 + 1 + 0.75));
    CHECK(p.value(1, 1, 0.5) == doctest::Approx(2 + 3));
    CHECK(p.value(1, 2, 0.5) == doctest::Approx(6.0));
    NumericJet j = p.jet(0.5, 2);
    CHECK(j.at(1, {1, 1}) == doctest::Approx(6.0));
}

TEST_CASE("discretized first variation matches the Euler pairing") {
    auto ctx = JetContext::create({1, 0, {{"x", kEven}, {"x", kEven}}});
    GradedPoly Lb = ctx->x_poly(1, {1}) * ctx->x_poly(1, {1}) +
                    ctx->x_poly(1, {}) * ctx->x_poly(2, {1});
    Lagrangian L{ctx, Lb};
    PolyPath path{{{0.3, 1.1, -0.2}, {0.1, 0.4, 0.7}}};
    PolyPath bump{{{0, 0, 1, -2, 1}, {0, 0, 2, -4, 2}}};  // vanishing at both ends
    CHECK(discrete_variation_check(L, path, bump, 1e-4, 2000) < 1e-4);
}
