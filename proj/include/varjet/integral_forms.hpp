#pragma once

#include <map>

#include "varjet/jet_forms.hpp"

namespace varjet {

/// Canonicalization of a volume-symbol index tuple. A slot carries the parity
/// opposite to its base parameter: even-parameter slots anticommute (repeats
/// vanish), odd-parameter slots commute (repeats allowed).
CanonicalMulti canonicalize_vol(const Signature& sig, std::vector<int> indices);

/// Form in the volume-symbol sector: sum of B_c * Vol[c] with coefficients in
/// {t, x_sigma, Gamma_sigma} and canonical index tuples c (the full volume
/// symbol is the empty tuple).
class IntegralForm {
public:
    IntegralForm() = default;
    explicit IntegralForm(JetContextPtr ctx) : ctx_(std::move(ctx)) {}

    const JetContextPtr& context() const { return ctx_; }
    const std::map<std::vector<int>, GradedPoly>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    /// Adds coeff * Vol[indices] (tuple canonicalized, Koszul sign absorbed).
    void add_component(const std::vector<int>& indices, const GradedPoly& coeff);

    const GradedPoly& component(const std::vector<int>& canonical_indices) const;

    IntegralForm& operator+=(const IntegralForm& rhs);
    IntegralForm& operator-=(const IntegralForm& rhs);
    friend IntegralForm operator+(IntegralForm a, const IntegralForm& b) { return a += b; }
    friend IntegralForm operator-(IntegralForm a, const IntegralForm& b) { return a -= b; }
    IntegralForm scaled(const Rational& c) const;
    friend bool operator==(const IntegralForm& a, const IntegralForm& b) {
        return a.comps_ == b.comps_;
    }
    friend bool operator!=(const IntegralForm& a, const IntegralForm& b) { return !(a == b); }

private:
    JetContextPtr ctx_;
    std::map<std::vector<int>, GradedPoly> comps_;
};

/// Left multiplication by the parameter differential dt^a: contracts one
/// matching slot of each volume symbol, with the Fock-module signs, after
/// passing the coefficient (dt^a has parity a~+1).
IntegralForm dx_action(int a, const IntegralForm& w);

/// Creation operator d/d(dt^a): prepends a slot (canonicalized), passing the
/// coefficient with the slot parity a~+1.
IntegralForm dx_creation(int a, const IntegralForm& w);

/// Horizontal differential in this sector: sum over a of dt^a D_a, acting as a
/// divergence (slot count drops by one).
IntegralForm integral_D(const IntegralForm& w);

/// Vertical differential, componentwise x^a_sigma -> Gamma^a_sigma.
IntegralForm integral_delta(const IntegralForm& w);

/// Number of Gamma factors when homogeneous.
std::optional<int> integral_gamma_degree(const IntegralForm& w);

struct RhoIntegralResult {
    IntegralForm canonical;
    IntegralForm witness;
};

/// Integration-by-parts normal form of a Gamma-linear form supported on the
/// full volume symbol: canonical has only order-0 Gamma factors and
/// canonical - w = integral_D(witness) exactly.
RhoIntegralResult rho_integral(const IntegralForm& w);

/// L * Vol as an integral form.
IntegralForm volume_lagrangian_form(const Lagrangian& L);

}  // namespace varjet
