#pragma once

#include <map>
#include <string>
#include <vector>

#include "varjet/evolutionary.hpp"

namespace varjet {

/// Infinitesimal reparametrization K = K^i(t) d/dt^i with polynomial
/// components in the parameters only.
struct ParameterField {
    JetContextPtr ctx;
    std::vector<GradedPoly> comps;  // K^1 .. K^{r+s}, polynomials in t
    Parity parity;

    ParameterField(JetContextPtr c, std::vector<GradedPoly> k, Parity p);

    const GradedPoly& comp(int i) const { return comps[static_cast<std::size_t>(i - 1)]; }
};

/// Weight-w covariance residual
///   sum_i K^i D_i L - P_W L + w sum_i (-1)^{i~(K~+1)} dK^i/dt^i L,
/// where W^a = sum_i K^i x^a_i. Zero iff the infinitesimal covariance identity
/// holds for this K.
GradedPoly check_covariance(const Lagrangian& L, const Rational& w, const ParameterField& K);

struct CovarianceReport {
    bool passed = true;
    std::vector<std::pair<std::string, GradedPoly>> residuals;  // only failures kept
    int checked = 0;
};

/// Sweeps check_covariance over the monomial fields t^J d/dt^i with
/// 1 <= |J| <= N+1 (enough to test all identities up to jet order N).
CovarianceReport check_covariance_basis(const Lagrangian& L, const Rational& w, int N);

/// Independent expansion of the first covariance identity chain for an even
/// signature and t-independent L:
///   sum_sigma mult_j(j sigma) x^a_{i sigma} dL/dx^a_{j sigma} - w delta^j_i L.
/// Used as an oracle against check_covariance with K = t^j d/dt^i.
GradedPoly scaling_identity_residual(const Lagrangian& L, const Rational& w, int i, int j);

/// Degree-k form on the fiber with polynomial coefficients in the order-0
/// coordinates; purely even fiber (antisymmetric slots, strictly increasing
/// canonical tuples).
class ConstantForm {
public:
    ConstantForm(JetContextPtr ctx, int degree);

    int degree() const { return degree_; }
    const JetContextPtr& context() const { return ctx_; }
    const std::map<std::vector<int>, GradedPoly>& components() const { return comps_; }

    /// Adds coeff * dx^{indices} (antisymmetrized; repeated index drops out).
    void add_component(const std::vector<int>& indices, const GradedPoly& coeff);

    /// Exterior derivative: d(B dx^{c}) = dB/dx^b * dx^{c} dx^b, the fresh slot
    /// appended last. This orientation makes the variational differential of
    /// the induced Lagrangian equal the Lagrangian of the derivative exactly.
    ConstantForm exterior_d() const;

private:
    JetContextPtr ctx_;
    int degree_;
    std::map<std::vector<int>, GradedPoly> comps_;
};

/// L_w = w_{a1...ar} x^{a1}_1 ... x^{ar}_r over the target context (which may
/// be the form's own context or a promoted one with the same fiber).
Lagrangian lagrangian_of_form(const ConstantForm& w, const JetContextPtr& target);

/// Substitutes y^mu_sigma -> D_sigma F^mu into a Lagrangian over the target
/// coordinates; F components live over the source context of equal signature.
Lagrangian compose(const Lagrangian& L, const JetContextPtr& source,
                   const std::vector<GradedPoly>& F);

struct LieEulerResult {
    GradedPoly lie;         // P_X L
    GradedPoly contraction; // X^a F_a(L)
    bool divergence_certified = false;  // euler(lie - contraction) == 0
};

/// The two Lagrangians built from a fiber vector field X^a(x): their
/// difference is a total divergence, certified through the Euler operator.
LieEulerResult lie_vs_euler(const Lagrangian& L, const EvolutionaryField& X);

}  // namespace varjet
