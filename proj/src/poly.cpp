#include "varjet/poly.hpp"

#include <algorithm>

namespace varjet {

GradedMonomial canonicalize(const Registry& reg, std::vector<std::pair<GenId, int>> factors,
                            Rational coeff) {
    std::erase_if(factors, [](const auto& f) { return f.second == 0; });

    // Per-factor parity: odd generators carry exponent 1 (checked below), so the
    // parity of a factor (g, e) is parity(g) * (e mod 2).
    auto factor_parity = [&](const std::pair<GenId, int>& f) {
        return Parity(reg.parity(f.first).value & (f.second & 1));
    };

    int sign = 1;
    // Insertion sort tracking Koszul signs of adjacent transpositions.
    for (std::size_t i = 1; i < factors.size(); ++i) {
        auto cur = factors[i];
        std::size_t j = i;
        while (j > 0 && reg.less(cur.first, factors[j - 1].first)) {
            sign *= koszul_sign(factor_parity(cur), factor_parity(factors[j - 1]));
            factors[j] = factors[j - 1];
            --j;
        }
        factors[j] = cur;
    }

    // Merge equal generators; odd squares vanish.
    FactorList merged;
    for (const auto& f : factors) {
        if (!merged.empty() && merged.back().first == f.first)
            merged.back().second += f.second;
        else
            merged.push_back(f);
    }
    for (const auto& f : merged) {
        if (reg.parity(f.first).odd() && f.second > 1) return {Rational(0), {}};
    }
    if (coeff == 0) return {Rational(0), {}};
    return {sign < 0 ? Rational(-coeff) : coeff, std::move(merged)};
}

GradedPoly GradedPoly::monomial(const RegistryPtr& reg, Rational coeff,
                                const std::vector<std::pair<GenId, int>>& factors) {
    GradedPoly out(reg);
    auto m = canonicalize(*reg, factors, std::move(coeff));
    out.add_term(m.factors, m.coeff);
    return out;
}

void require_same_registry(const GradedPoly& a, const GradedPoly& b) {
    if (a.registry() && b.registry() && a.registry() != b.registry())
        throw RegistryError("operands belong to different registries");
}

GradedPoly GradedPoly::operator-() const {
    GradedPoly out(reg_);
    for (const auto& [f, c] : terms_) out.terms_.emplace(f, -c);
    return out;
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& rhs) {
    require_same_registry(*this, rhs);
    if (!reg_) reg_ = rhs.reg_;
    for (const auto& [f, c] : rhs.terms_) add_term(f, c);
    return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& rhs) {
    require_same_registry(*this, rhs);
    if (!reg_) reg_ = rhs.reg_;
    for (const auto& [f, c] : rhs.terms_) add_term(f, -c);
    return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    require_same_registry(a, b);
    const RegistryPtr& reg = a.registry() ? a.registry() : b.registry();
    GradedPoly out(reg);
    for (const auto& [fa, ca] : a.terms()) {
        for (const auto& [fb, cb] : b.terms()) {
            std::vector<std::pair<GenId, int>> concat;
            concat.reserve(fa.size() + fb.size());
            concat.insert(concat.end(), fa.begin(), fa.end());
            concat.insert(concat.end(), fb.begin(), fb.end());
            auto m = canonicalize(*reg, std::move(concat), ca * cb);
            out.add_term(m.factors, m.coeff);
        }
    }
    return out;
}

GradedPoly GradedPoly::scaled(const Rational& c) const {
    GradedPoly out(reg_);
    if (c == 0) return out;
    for (const auto& [f, k] : terms_) out.terms_.emplace(f, k * c);
    return out;
}

Parity GradedPoly::monomial_parity(const FactorList& f) const {
    Parity p;
    for (const auto& [g, e] : f) p = p + Parity(reg_->parity(g).value & (e & 1));
    return p;
}

std::optional<Parity> GradedPoly::homogeneous_parity() const {
    std::optional<Parity> p;
    for (const auto& [f, c] : terms_) {
        Parity q = monomial_parity(f);
        if (!p)
            p = q;
        else if (*p != q)
            return std::nullopt;
    }
    return p ? p : std::optional<Parity>(kEven);
}

GradedPoly derive(const GradedPoly& poly, Parity p,
                  const std::function<const GradedPoly*(GenId)>& image) {
    const RegistryPtr& reg = poly.registry();
    GradedPoly out(reg);
    for (const auto& [factors, coeff] : poly.terms()) {
        Parity prefix;  // parity of factors to the left of the one being derived
        for (std::size_t k = 0; k < factors.size(); ++k) {
            auto [g, e] = factors[k];
            const GradedPoly* img = image(g);
            Parity fp = Parity(reg->parity(g).value & (e & 1));
            if (img && !img->is_zero()) {
                // prefix * img * g^{e-1} * suffix, times e and the Koszul factor
                // for moving the derivation past the prefix.
                Rational c = coeff * e;
                if (koszul_sign(p, prefix) < 0) c = -c;
                GradedPoly term(reg, c);
                {
                    FactorList pre(factors.begin(), factors.begin() + static_cast<long>(k));
                    if (!pre.empty()) term = term * GradedPoly::monomial(reg, Rational(1), pre);
                }
                term = term * (*img);
                {
                    std::vector<std::pair<GenId, int>> rest;
                    if (e > 1) rest.emplace_back(g, e - 1);
                    rest.insert(rest.end(), factors.begin() + static_cast<long>(k) + 1, factors.end());
                    if (!rest.empty()) term = term * GradedPoly::monomial(reg, Rational(1), rest);
                }
                out += term;
            }
            prefix = prefix + fp;
        }
    }
    return out;
}

GradedPoly partial(const GradedPoly& p, GenId g) {
    const RegistryPtr& reg = p.registry();
    reg->gen(g);  // registry error on unknown id
    GradedPoly one(reg, Rational(1));
    return derive(p, reg->parity(g), [&](GenId h) { return h == g ? &one : nullptr; });
}

GradedPoly map_poly(const GradedPoly& poly, const RegistryPtr& target,
                    const std::function<const GradedPoly*(GenId)>& image,
                    const std::function<GenId(GenId)>& transfer) {
    GradedPoly out(target);
    for (const auto& [factors, coeff] : poly.terms()) {
        GradedPoly term(target, coeff);
        for (const auto& [g, e] : factors) {
            const GradedPoly* img = image(g);
            if (img) {
                for (int k = 0; k < e; ++k) term = term * (*img);
            } else {
                term = term * GradedPoly::monomial(target, Rational(1), {{transfer(g), e}});
            }
        }
        out += term;
    }
    return out;
}

GradedPoly substitute(const GradedPoly& poly, const std::map<GenId, GradedPoly>& images) {
    const RegistryPtr& reg = poly.registry();
    for (const auto& [g, img] : images) {
        if (img.registry() && img.registry() != reg)
            throw RegistryError("substitution image belongs to a different registry");
        if (!img.is_zero()) {
            auto p = img.homogeneous_parity();
            if (!p || *p != reg->parity(g))
                throw ParityError("substitution image parity differs from generator " + reg->gen(g).name);
        }
    }
    return map_poly(
        poly, reg,
        [&](GenId g) -> const GradedPoly* {
            auto it = images.find(g);
            return it == images.end() ? nullptr : &it->second;
        },
        [](GenId g) { return g; });
}

}  // namespace varjet
