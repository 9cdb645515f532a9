#pragma once

#include <array>
#include <functional>
#include <map>
#include <vector>

#include "varjet/variational.hpp"

namespace varjet {

/// Float64 jet of a map R^r -> R^m (even parameters only): parameter values
/// plus coordinate entries keyed by (fiber index, canonical multi-index).
struct NumericJet {
    std::vector<double> t;  // parameter values, index 0 holds t^1
    std::map<std::pair<int, std::vector<int>>, double> entries;

    void set(int a, const std::vector<int>& multi, double v) { entries[{a, multi}] = v; }
    double at(int a, const std::vector<int>& multi) const;
};

/// Evaluates a differential polynomial at a numeric jet (exact rational
/// coefficients, float64 arithmetic). Form factors are rejected.
double eval_poly(const GradedPoly& p, const NumericJet& j);

/// Order-2 jet of a two-parameter chart into R^m.
struct Jet2 {
    std::vector<double> x, x1, x2, x11, x12, x22;

    int dim() const { return static_cast<int>(x.size()); }
    NumericJet to_numeric(double t1, double t2) const;
};

using Chart2 = std::function<Jet2(double, double)>;

/// Standard angles chart of the unit sphere in R^3: (theta, phi).
Chart2 sphere_chart();

/// First fundamental form of a 2-jet; throws NumericDomainError when
/// det g <= 1e-12.
std::array<double, 4> first_fundamental_form(const Jet2& j);

/// Scalar-curvature density (x11.a x22.b - x12.a x12.b) P^{ab} / sqrt(det g)
/// with the normal projector P^{ab} = delta^{ab} - x_i g^{ij} x_j.
double gauss_bonnet_density(const Jet2& j);

/// Curvature density via the unit normal of a surface in R^3:
/// det[n, d1 n, d2 n]; equals K sqrt(det g).
double gauss_map_density(const Jet2& j);

/// The same density through the projector two-form on frames: the pairing of
/// the form with the second-derivative variations, counted once per index
/// order (scalar = 2 x sectional curvature). Pointwise equal to
/// gauss_bonnet_density on non-degenerate jets.
double grassmann_composed_density(const Jet2& j);

/// Value of the projector two-form at the frame (u1, u2) on the variation pair
/// (v, w): sum P^{ab} v^a w^b / sqrt(det g(u1, u2)).
double grassmann_form_value(const std::vector<double>& u1, const std::vector<double>& u2,
                            const std::vector<double>& v, const std::vector<double>& w);

struct Rect {
    double a1, b1, a2, b2;
};

/// Tensor-product midpoint quadrature, serial reference implementation.
double integrate_serial(const std::function<double(double, double)>& f, const Rect& r,
                        int n1, int n2);

/// Same rule evaluated over parallel tiles.
double integrate_parallel(const std::function<double(double, double)>& f, const Rect& r,
                          int n1, int n2);

struct QuadratureResult {
    double value = 0;
    double richardson_error = 0;  // |I(n) - I(n/2)| / 3, second-order rule
};

QuadratureResult integrate(const std::function<double(double, double)>& f, const Rect& r,
                           int n1, int n2);

/// Total curvature of the unit sphere at the given resolution (caps of height
/// delta excluded; the integrand is bounded, so the omission is O(delta^2)).
QuadratureResult sphere_gauss_bonnet_integral(int resolution, double delta = 1e-3);
QuadratureResult sphere_gauss_map_integral(int resolution, double delta = 1e-3);

/// Order-2 jet of a map between two-parameter domains.
struct Map2Jet {
    double y[2];
    double d[2][2];      // d[j][i] = d y^j / d u^i
    double dd[2][2][2];  // dd[j][i][k] = d^2 y^j / d u^i d u^k
    double jacobian() const { return d[0][0] * d[1][1] - d[0][1] * d[1][0]; }
};

using Diffeo2 = std::function<Map2Jet(double, double)>;

/// Chain-rule transport of an order-2 chart jet under a reparametrization:
/// y_i = x_j f^j_i, y_ik = x_jl f^j_i f^l_k + x_j f^j_{ik}.
Jet2 transport_jet(const Jet2& upstream, const Map2Jet& f);

/// Max over a grid of |density(transported jet) - (det J)^w density(original)|.
double reparametrization_check(const std::function<double(const Jet2&)>& density,
                               const Chart2& chart, const Diffeo2& diffeo, const Rect& domain,
                               double weight, int grid);

/// One-parameter paths with polynomial components (exact derivatives).
struct PolyPath {
    std::vector<std::vector<double>> coeff;  // coeff[a][k] * t^k

    int dim() const { return static_cast<int>(coeff.size()); }
    double value(int a, int deriv, double t) const;
    NumericJet jet(double t, int order) const;
};

/// |(S[path + eps Y] - S[path]) / eps - integral of Y^a F_a(L)| over [0, 1].
double discrete_variation_check(const Lagrangian& L, const PolyPath& path, const PolyPath& y,
                                double eps, int quadrature_points);

}  // namespace varjet
