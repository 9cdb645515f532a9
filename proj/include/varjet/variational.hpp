#pragma once

#include <vector>

#include "varjet/jet_space.hpp"

namespace varjet {

/// Differential polynomial tagged with its signature.
struct Lagrangian {
    JetContextPtr ctx;
    GradedPoly body;

    int order() const { return jet_order(body); }
};

/// Total derivative D_i: graded derivation of the parity of parameter i with
/// D_i(t^j) = delta_i^j, D_i(x^a_sigma) = x^a_{i sigma} (canonical sign),
/// D_i(Gamma^a_sigma) = (-1)^i Gamma^a_{i sigma}, D_i(dt^j) = 0.
GradedPoly total_derivative(const JetContext& ctx, const GradedPoly& p, int i);

/// D_sigma = D_{a1} o ... o D_{ak} applied in ascending canonical index order.
GradedPoly total_derivative_multi(const JetContext& ctx, const GradedPoly& p,
                                  const std::vector<int>& multi);

/// Variational derivative components
///   F_a(L) = sum_sigma (-1)^{|sigma| + a~ sigma~} D_sigma(dL/dx^a_sigma)
/// over canonical multi-indices (independent-coordinate partials). Index 0 of
/// the result holds F_1.
std::vector<GradedPoly> euler(const Lagrangian& L);

/// Variational differential: dbar L = x^a_{r+1} F_a(L) over signature (r+1|s).
Lagrangian dbar(const Lagrangian& L);

/// True when every monomial of L is linear (degree exactly 1) in the set of
/// coordinates x^a_sigma whose multi-index contains the last even parameter.
bool linear_in_last_index(const Lagrangian& L);

}  // namespace varjet
