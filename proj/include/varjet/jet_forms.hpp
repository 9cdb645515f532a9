#pragma once

#include <optional>

#include "varjet/variational.hpp"

namespace varjet {

/// Naive-form sector: polynomial in {t, x_sigma, dt, Gamma_sigma}. Bidegree
/// (p, q) counts Gamma and dt factors with multiplicity.
struct JetForm {
    JetContextPtr ctx;
    GradedPoly body;

    bool is_zero() const { return body.is_zero(); }

    friend bool operator==(const JetForm& a, const JetForm& b) { return a.body == b.body; }
};

struct Bidegree {
    int p = 0;
    int q = 0;
    friend bool operator==(Bidegree a, Bidegree b) { return a.p == b.p && a.q == b.q; }
};

/// Bidegree of a single canonical monomial.
Bidegree monomial_bidegree(const RegistryPtr& reg, const FactorList& factors);

/// Bidegree when all monomials agree; nullopt otherwise (zero counts as (0,0)).
std::optional<Bidegree> form_bidegree(const JetForm& w);

/// Component of the given bidegree.
JetForm bidegree_component(const JetForm& w, Bidegree d);

/// Horizontal differential D = dt^i D_i; (p,q) -> (p,q+1), D^2 = 0.
JetForm horizontal_D(const JetForm& w);

/// Vertical differential: x^a_sigma -> Gamma^a_sigma, annihilates t, dt, Gamma.
JetForm vertical_delta(const JetForm& w);
GradedPoly vertical_delta_poly(const JetContext& ctx, const GradedPoly& p);

/// Integration-by-parts normal form of a (1, r)-form over an even base:
/// canonical has only order-0 Cartan factors and canonical - w = D(witness).
struct RhoResult {
    JetForm canonical;
    JetForm witness;
};
RhoResult rho(const JetForm& w);

/// Bicomplex-relating map of bidegree (-1,+1): re-expresses the order-r Cartan
/// forms through order-(r+1) ones plus dt^{r+1} x_{r+1,sigma} and keeps the
/// mixed-degree component. Returns a form over the promoted context.
JetForm kappa(const JetForm& w);

/// chi = kappa o rho(.).canonical on (1, r)-forms.
JetForm chi(const JetForm& w);

/// L dt^1...dt^r as a form.
JetForm horizontal_lagrangian_form(const Lagrangian& L);

/// Exact check of dbar L Dt_{(r+1)} = chi(delta [L Dt_{(r)}]) for an even-base L.
bool relation_theorem_holds(const Lagrangian& L);

}  // namespace varjet
