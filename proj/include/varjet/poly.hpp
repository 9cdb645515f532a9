#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "varjet/rational.hpp"
#include "varjet/registry.hpp"

namespace varjet {

/// Sorted (generator, exponent) list; exponents positive, odd generators at most 1.
using FactorList = std::vector<std::pair<GenId, int>>;

struct GradedMonomial {
    Rational coeff;
    FactorList factors;
};

/// Graded-commutative polynomial with exact rational coefficients, kept in
/// canonical form: factor lists sorted by the global generator order, no zero
/// coefficients stored, equality is structural.
class GradedPoly {
public:
    GradedPoly() = default;
    explicit GradedPoly(RegistryPtr reg) : reg_(std::move(reg)) {}
    GradedPoly(RegistryPtr reg, const Rational& c) : reg_(std::move(reg)) {
        if (c != 0) terms_.emplace(FactorList{}, c);
    }

    const RegistryPtr& registry() const { return reg_; }
    const std::map<FactorList, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Single canonical monomial from an unordered factor list.
    static GradedPoly monomial(const RegistryPtr& reg, Rational coeff,
                               const std::vector<std::pair<GenId, int>>& factors);
    static GradedPoly generator(const RegistryPtr& reg, GenId id) {
        return monomial(reg, Rational(1), {{id, 1}});
    }

    void add_term(const FactorList& f, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(f, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const GradedPoly& a, const GradedPoly& b) { return !(a == b); }

    GradedPoly operator-() const;
    GradedPoly& operator+=(const GradedPoly& rhs);
    GradedPoly& operator-=(const GradedPoly& rhs);
    friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
    friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
    GradedPoly& operator*=(const GradedPoly& rhs) { return *this = *this * rhs; }

    GradedPoly scaled(const Rational& c) const;

    /// Parity of a canonical monomial (sum of factor parities mod 2).
    Parity monomial_parity(const FactorList& f) const;
    /// Parity if every monomial agrees; nullopt for inhomogeneous or zero-is-even.
    std::optional<Parity> homogeneous_parity() const;

private:
    RegistryPtr reg_;
    std::map<FactorList, Rational> terms_;

    friend GradedMonomial canonicalize(const Registry& reg, std::vector<std::pair<GenId, int>> factors,
                                       Rational coeff);
};

/// Koszul-sorts an unordered factor list; the coefficient picks up (-1)^{uv} per
/// adjacent transposition of odd factors, and the result is zero when an odd
/// generator appears twice.
GradedMonomial canonicalize(const Registry& reg, std::vector<std::pair<GenId, int>> factors,
                            Rational coeff);

void require_same_registry(const GradedPoly& a, const GradedPoly& b);

/// Left partial derivative with respect to a generator.
GradedPoly partial(const GradedPoly& p, GenId g);

/// Generic left graded derivation of parity `p`: sends generator g to image(g)
/// (zero image = annihilated) and extends by the graded Leibniz rule.
GradedPoly derive(const GradedPoly& poly, Parity p,
                  const std::function<const GradedPoly*(GenId)>& image);

/// Graded-algebra homomorphism: every generator is replaced through `image`
/// (nullptr = keep the generator, resolved in the target registry via `transfer`).
/// For same-registry substitution pass the identity transfer.
GradedPoly map_poly(const GradedPoly& poly, const RegistryPtr& target,
                    const std::function<const GradedPoly*(GenId)>& image,
                    const std::function<GenId(GenId)>& transfer);

/// Same-registry substitution; checks that image parities match generator parities.
GradedPoly substitute(const GradedPoly& poly, const std::map<GenId, GradedPoly>& images);

}  // namespace varjet
