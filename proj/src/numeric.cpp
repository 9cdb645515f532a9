#include "varjet/numeric.hpp"

#include <cmath>

namespace varjet {

double NumericJet::at(int a, const std::vector<int>& multi) const {
    auto it = entries.find({a, multi});
    if (it == entries.end()) throw NumericDomainError("missing jet entry");
    return it->second;
}

double eval_poly(const GradedPoly& p, const NumericJet& j) {
    double total = 0;
    for (const auto& [f, c] : p.terms()) {
        double term = to_double(c);
        for (const auto& [g, e] : f) {
            const Generator& gen = p.registry()->gen(g);
            double v = 0;
            switch (gen.kind) {
                case GenKind::Param:
                    if (gen.a < 1 || gen.a > static_cast<int>(j.t.size()))
                        throw NumericDomainError("missing parameter value");
                    v = j.t[static_cast<std::size_t>(gen.a - 1)];
                    break;
                case GenKind::Jet:
                    v = j.at(gen.a, gen.multi);
                    break;
                default:
                    throw NumericDomainError("only coordinate polynomials evaluate numerically");
            }
            for (int k = 0; k < e; ++k) term *= v;
        }
        total += term;
    }
    return total;
}

NumericJet Jet2::to_numeric(double t1, double t2) const {
    NumericJet j;
    j.t = {t1, t2};
    for (int a = 1; a <= dim(); ++a) {
        std::size_t i = static_cast<std::size_t>(a - 1);
        j.set(a, {}, x[i]);
        j.set(a, {1}, x1[i]);
        j.set(a, {2}, x2[i]);
        j.set(a, {1, 1}, x11[i]);
        j.set(a, {1, 2}, x12[i]);
        j.set(a, {2, 2}, x22[i]);
    }
    return j;
}

Chart2 sphere_chart() {
    return [](double th, double ph) {
        double st = std::sin(th), ct = std::cos(th);
        double sp = std::sin(ph), cp = std::cos(ph);
        Jet2 j;
        j.x = {st * cp, st * sp, ct};
        j.x1 = {ct * cp, ct * sp, -st};
        j.x2 = {-st * sp, st * cp, 0};
        j.x11 = {-st * cp, -st * sp, -ct};
        j.x12 = {-ct * sp, ct * cp, 0};
        j.x22 = {-st * cp, -st * sp, 0};
        return j;
    };
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

constexpr double kDetEps = 1e-12;

}  // namespace

std::array<double, 4> first_fundamental_form(const Jet2& j) {
    std::array<double, 4> g{dot(j.x1, j.x1), dot(j.x1, j.x2), dot(j.x1, j.x2), dot(j.x2, j.x2)};
    if (g[0] * g[3] - g[1] * g[2] <= kDetEps) throw NumericDomainError("degenerate metric");
    return g;
}

double gauss_bonnet_density(const Jet2& j) {
    auto g = first_fundamental_form(j);
    double det = g[0] * g[3] - g[1] * g[2];
    double gi[2][2] = {{g[3] / det, -g[1] / det}, {-g[2] / det, g[0] / det}};
    const std::vector<double>* xi[2] = {&j.x1, &j.x2};
    int m = j.dim();
    double val = 0;
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            double p = (a == b) ? 1.0 : 0.0;
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k)
                    p -= (*xi[i])[static_cast<std::size_t>(a)] * gi[i][k] *
                         (*xi[k])[static_cast<std::size_t>(b)];
            val += (j.x11[static_cast<std::size_t>(a)] * j.x22[static_cast<std::size_t>(b)] -
                    j.x12[static_cast<std::size_t>(a)] * j.x12[static_cast<std::size_t>(b)]) *
                   p;
        }
    }
    // Scalar curvature of a surface is twice its sectional curvature.
    return 2.0 * val / std::sqrt(det);
}

double grassmann_composed_density(const Jet2& j) {
    return 2.0 * (grassmann_form_value(j.x1, j.x2, j.x11, j.x22) -
                  grassmann_form_value(j.x1, j.x2, j.x12, j.x12));
}

double gauss_map_density(const Jet2& j) {
    if (j.dim() != 3) throw NumericDomainError("normal-map density needs a surface in R^3");
    auto cross = [](const std::vector<double>& a, const std::vector<double>& b) {
        return std::vector<double>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                   a[0] * b[1] - a[1] * b[0]};
    };
    std::vector<double> N = cross(j.x1, j.x2);
    double len = std::sqrt(dot(N, N));
    if (len * len <= kDetEps) throw NumericDomainError("degenerate tangent frame");
    auto dN1 = cross(j.x11, j.x2), t1 = cross(j.x1, j.x12);
    auto dN2 = cross(j.x12, j.x2), t2 = cross(j.x1, j.x22);
    for (int i = 0; i < 3; ++i) {
        dN1[static_cast<std::size_t>(i)] += t1[static_cast<std::size_t>(i)];
        dN2[static_cast<std::size_t>(i)] += t2[static_cast<std::size_t>(i)];
    }
    std::vector<double> n(3), n1(3), n2(3);
    double l1 = dot(N, dN1) / len, l2 = dot(N, dN2) / len;
    for (std::size_t i = 0; i < 3; ++i) {
        n[i] = N[i] / len;
        n1[i] = dN1[i] / len - N[i] * l1 / (len * len);
        n2[i] = dN2[i] / len - N[i] * l2 / (len * len);
    }
    return n[0] * (n1[1] * n2[2] - n1[2] * n2[1]) - n[1] * (n1[0] * n2[2] - n1[2] * n2[0]) +
           n[2] * (n1[0] * n2[1] - n1[1] * n2[0]);
}

double grassmann_form_value(const std::vector<double>& u1, const std::vector<double>& u2,
                            const std::vector<double>& v, const std::vector<double>& w) {
    double g11 = dot(u1, u1), g12 = dot(u1, u2), g22 = dot(u2, u2);
    double det = g11 * g22 - g12 * g12;
    if (det <= kDetEps) throw NumericDomainError("dependent frame");
    double gi[2][2] = {{g22 / det, -g12 / det}, {-g12 / det, g11 / det}};
    const std::vector<double>* u[2] = {&u1, &u2};
    std::size_t m = u1.size();
    double val = 0;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            double p = (a == b) ? 1.0 : 0.0;
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k) p -= (*u[i])[a] * gi[i][k] * (*u[k])[b];
            val += v[a] * w[b] * p;
        }
    }
    return val / std::sqrt(det);
}

double integrate_serial(const std::function<double(double, double)>& f, const Rect& r,
                        int n1, int n2) {
    double h1 = (r.b1 - r.a1) / n1, h2 = (r.b2 - r.a2) / n2;
    double sum = 0;
    for (int i = 0; i < n1; ++i) {
        double u = r.a1 + (i + 0.5) * h1;
        for (int k = 0; k < n2; ++k) {
            double v = r.a2 + (k + 0.5) * h2;
            double s = f(u, v);
            if (!std::isfinite(s)) throw NumericDomainError("non-finite quadrature sample");
            sum += s;
        }
    }
    return sum * h1 * h2;
}

double integrate_parallel(const std::function<double(double, double)>& f, const Rect& r,
                          int n1, int n2) {
    double h1 = (r.b1 - r.a1) / n1, h2 = (r.b2 - r.a2) / n2;
    double sum = 0;
    bool bad = false;
#pragma omp parallel for reduction(+ : sum) reduction(|| : bad) schedule(static)
    for (int i = 0; i < n1; ++i) {
        double u = r.a1 + (i + 0.5) * h1;
        double row = 0;
        for (int k = 0; k < n2; ++k) {
            double v = r.a2 + (k + 0.5) * h2;
            double s = f(u, v);
            if (!std::isfinite(s)) bad = true;
            row += s;
        }
        sum += row;
    }
    if (bad) throw NumericDomainError("non-finite quadrature sample");
    return sum * h1 * h2;
}

QuadratureResult integrate(const std::function<double(double, double)>& f, const Rect& r,
                           int n1, int n2) {
    QuadratureResult out;
    out.value = integrate_parallel(f, r, n1, n2);
    double coarse = integrate_parallel(f, r, std::max(1, n1 / 2), std::max(1, n2 / 2));
    out.richardson_error = std::abs(out.value - coarse) / 3.0;
    return out;
}

QuadratureResult sphere_gauss_bonnet_integral(int resolution, double delta) {
    Chart2 chart = sphere_chart();
    Rect r{delta, M_PI - delta, 0, 2 * M_PI};
    return integrate([&](double th, double ph) { return gauss_bonnet_density(chart(th, ph)); }, r,
                     resolution, resolution);
}

QuadratureResult sphere_gauss_map_integral(int resolution, double delta) {
    Chart2 chart = sphere_chart();
    Rect r{delta, M_PI - delta, 0, 2 * M_PI};
    return integrate([&](double th, double ph) { return gauss_map_density(chart(th, ph)); }, r,
                     resolution, resolution);
}

Jet2 transport_jet(const Jet2& upstream, const Map2Jet& f) {
    int m = upstream.dim();
    const std::vector<double>* xi[2] = {&upstream.x1, &upstream.x2};
    const std::vector<double>* xij[2][2] = {{&upstream.x11, &upstream.x12},
                                            {&upstream.x12, &upstream.x22}};
    Jet2 out;
    out.x = upstream.x;
    auto first = [&](int i) {
        std::vector<double> y(static_cast<std::size_t>(m), 0.0);
        for (int jdx = 0; jdx < 2; ++jdx)
            for (int a = 0; a < m; ++a)
                y[static_cast<std::size_t>(a)] += (*xi[jdx])[static_cast<std::size_t>(a)] * f.d[jdx][i];
        return y;
    };
    auto second = [&](int i, int k) {
        std::vector<double> y(static_cast<std::size_t>(m), 0.0);
        for (int jdx = 0; jdx < 2; ++jdx) {
            for (int l = 0; l < 2; ++l)
                for (int a = 0; a < m; ++a)
                    y[static_cast<std::size_t>(a)] +=
                        (*xij[jdx][l])[static_cast<std::size_t>(a)] * f.d[jdx][i] * f.d[l][k];
            for (int a = 0; a < m; ++a)
                y[static_cast<std::size_t>(a)] += (*xi[jdx])[static_cast<std::size_t>(a)] * f.dd[jdx][i][k];
        }
        return y;
    };
    out.x1 = first(0);
    out.x2 = first(1);
    out.x11 = second(0, 0);
    out.x12 = second(0, 1);
    out.x22 = second(1, 1);
    return out;
}

double reparametrization_check(const std::function<double(const Jet2&)>& density,
                               const Chart2& chart, const Diffeo2& diffeo, const Rect& domain,
                               double weight, int grid) {
    double worst = 0;
    for (int i = 0; i < grid; ++i) {
        double u = domain.a1 + (i + 0.5) * (domain.b1 - domain.a1) / grid;
        for (int k = 0; k < grid; ++k) {
            double v = domain.a2 + (k + 0.5) * (domain.b2 - domain.a2) / grid;
            Map2Jet f = diffeo(u, v);
            double jac = f.jacobian();
            if (jac <= 0) throw NumericDomainError("orientation-reversing reparametrization");
            Jet2 upstream = chart(f.y[0], f.y[1]);
            Jet2 moved = transport_jet(upstream, f);
            double dev = std::abs(density(moved) - std::pow(jac, weight) * density(upstream));
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

double PolyPath::value(int a, int deriv, double t) const {
    const auto& c = coeff[static_cast<std::size_t>(a - 1)];
    double s = 0;
    for (std::size_t k = static_cast<std::size_t>(deriv); k < c.size(); ++k) {
        double f = 1;
        for (int d = 0; d < deriv; ++d) f *= static_cast<double>(k - static_cast<std::size_t>(d));
        s += c[k] * f * std::pow(t, static_cast<double>(k) - deriv);
    }
    return s;
}

NumericJet PolyPath::jet(double t, int order) const {
    NumericJet j;
    j.t = {t};
    for (int a = 1; a <= dim(); ++a) {
        std::vector<int> multi;
        for (int k = 0; k <= order; ++k) {
            j.set(a, multi, value(a, k, t));
            multi.push_back(1);
        }
    }
    return j;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

double discrete_variation_check(const Lagrangian& L, const PolyPath& path, const PolyPath& y,
                                double eps, int quadrature_points) {
    if (L.ctx->sig().r != 1 || L.ctx->sig().s != 0)
        throw NumericDomainError("variation check runs on one-parameter even Lagrangians");
    auto F = euler(L);
    int order = L.order();
    for (const auto& Fa : F) order = std::max(order, jet_order(Fa));

    PolyPath moved = path;
    for (std::size_t a = 0; a < moved.coeff.size(); ++a) {
        moved.coeff[a].resize(std::max(moved.coeff[a].size(), y.coeff[a].size()), 0.0);
        for (std::size_t k = 0; k < y.coeff[a].size(); ++k) moved.coeff[a][k] += eps * y.coeff[a][k];
    }

    auto action = [&](const PolyPath& p) {
        return simpson([&](double t) { return eval_poly(L.body, p.jet(t, order)); }, 0, 1,
                       quadrature_points);
    };
    double finite = (action(moved) - action(path)) / eps;
    double pairing = simpson(
        [&](double t) {
            NumericJet j = path.jet(t, order);
            double s = 0;
            for (int a = 1; a <= path.dim(); ++a)
                s += y.value(a, 0, t) * eval_poly(F[static_cast<std::size_t>(a - 1)], j);
            return s;
        },
        0, 1, quadrature_points);
    return std::abs(finite - pairing);
}

}  // namespace varjet
