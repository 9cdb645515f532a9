#pragma once

#include <map>
#include <mutex>

#include "varjet/jet_forms.hpp"

namespace varjet {

/// Vertical field Y^a d/dx^a with differential-polynomial components. The
/// component parity must be a~ + field parity (checked on construction).
struct EvolutionaryField {
    JetContextPtr ctx;
    std::vector<GradedPoly> comps;  // index 0 holds Y^1
    Parity parity;

    EvolutionaryField(JetContextPtr c, std::vector<GradedPoly> y, Parity p);

    const GradedPoly& comp(int a) const { return comps[static_cast<std::size_t>(a - 1)]; }
};

/// Prolongation coefficients Y^a_sigma = D_sigma Y^a, generated lazily and
/// memoized; shareable between threads.
class ProlongedField {
public:
    explicit ProlongedField(EvolutionaryField field) : field_(std::move(field)) {}

    const EvolutionaryField& field() const { return field_; }
    const JetContextPtr& context() const { return field_.ctx; }
    Parity parity() const { return field_.parity; }

    /// Y^a_sigma for a canonical multi-index.
    const GradedPoly& coeff(int a, const std::vector<int>& multi) const;

private:
    const GradedPoly& coeff_locked(int a, const std::vector<int>& multi) const;

    EvolutionaryField field_;
    mutable std::map<std::pair<int, std::vector<int>>, GradedPoly> memo_;
    mutable std::mutex mu_;
};

/// P_Y p = sum_sigma Y^a_sigma d p / d x^a_sigma as a left graded derivation of
/// the field's parity; t, dt and Gamma are annihilated.
GradedPoly apply_field(const ProlongedField& py, const GradedPoly& p);

/// Graded commutator bracket: [Y,Z]^a = P_Y Z^a - (-1)^{Y~Z~} P_Z Y^a.
EvolutionaryField jacobi(const EvolutionaryField& y, const EvolutionaryField& z);

/// Interior product: Gamma^a_sigma -> Y^a_sigma, a derivation of parity Y~+1;
/// lowers Gamma-degree by one and vanishes on horizontal forms.
JetForm interior(const ProlongedField& py, const JetForm& w);

/// Cartan formula L_Y = delta iota + (-1)^{Y~} iota delta.
JetForm lie_on_forms(const ProlongedField& py, const JetForm& w);

}  // namespace varjet
