#include "varjet/integral_forms.hpp"

namespace varjet {

CanonicalMulti canonicalize_vol(const Signature& sig, std::vector<int> indices) {
    auto slot_parity = [&](int i) { return sig.param_parity(i) + kOdd; };
    CanonicalMulti out;
    int sign = 1;
    for (std::size_t i = 1; i < indices.size(); ++i) {
        int cur = indices[i];
        std::size_t j = i;
        while (j > 0 && cur < indices[j - 1]) {
            sign *= koszul_sign(slot_parity(cur), slot_parity(indices[j - 1]));
            indices[j] = indices[j - 1];
            --j;
        }
        indices[j] = cur;
    }
    for (std::size_t i = 1; i < indices.size(); ++i) {
        if (indices[i] == indices[i - 1] && slot_parity(indices[i]).odd()) {
            out.zero = true;
            return out;
        }
    }
    out.indices = std::move(indices);
    out.sign = sign;
    return out;
}

void IntegralForm::add_component(const std::vector<int>& indices, const GradedPoly& coeff) {
    if (coeff.is_zero()) return;
    auto cm = canonicalize_vol(ctx_->sig(), indices);
    if (cm.zero) return;
    GradedPoly add = cm.sign < 0 ? coeff.scaled(Rational(-1)) : coeff;
    auto [it, inserted] = comps_.emplace(cm.indices, add);
    if (!inserted) {
        it->second += add;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

const GradedPoly& IntegralForm::component(const std::vector<int>& canonical_indices) const {
    static const GradedPoly kZero;
    auto it = comps_.find(canonical_indices);
    if (it == comps_.end()) {
        // Return a zero over the right registry for downstream arithmetic.
        thread_local GradedPoly zero;
        zero = ctx_ ? ctx_->zero() : kZero;
        return zero;
    }
    return it->second;
}

IntegralForm& IntegralForm::operator+=(const IntegralForm& rhs) {
    if (!ctx_) ctx_ = rhs.ctx_;
    if (rhs.ctx_ && ctx_ != rhs.ctx_) throw RegistryError("integral forms over different contexts");
    for (const auto& [c, p] : rhs.comps_) add_component(c, p);
    return *this;
}

IntegralForm& IntegralForm::operator-=(const IntegralForm& rhs) {
    return *this += rhs.scaled(Rational(-1));
}

IntegralForm IntegralForm::scaled(const Rational& c) const {
    IntegralForm out(ctx_);
    if (c == 0) return out;
    for (const auto& [idx, p] : comps_) out.comps_.emplace(idx, p.scaled(c));
    return out;
}

IntegralForm dx_action(int a, const IntegralForm& w) {
    const JetContext& ctx = *w.context();
    Parity pa = ctx.sig().param_parity(a);
    Parity slot = pa + kOdd;
    IntegralForm out(w.context());
    for (const auto& [c, B] : w.components()) {
        for (std::size_t pos = 0; pos < c.size(); ++pos) {
            if (c[pos] != a) continue;
            // Kronecker contraction sign: (-1)^{a~} to contract the leading
            // slot, times the slot swaps needed to bring position pos forward.
            int prefix = static_cast<int>(pos);
            for (std::size_t j = 0; j < pos; ++j) prefix += ctx.sig().param_parity(c[j]).value;
            int sign = (pa.value + (pa.value + 1) * prefix) % 2 == 0 ? 1 : -1;
            std::vector<int> rest;
            rest.reserve(c.size() - 1);
            for (std::size_t j = 0; j < c.size(); ++j)
                if (j != pos) rest.push_back(c[j]);
            // Pass the coefficient: dt^a has parity a~+1.
            GradedPoly passed = ctx.zero();
            for (const auto& [f, k] : B.terms()) {
                int s = sign * koszul_sign(slot, B.monomial_parity(f));
                passed.add_term(f, s < 0 ? -k : k);
            }
            out.add_component(rest, passed);
        }
    }
    return out;
}

IntegralForm dx_creation(int a, const IntegralForm& w) {
    const JetContext& ctx = *w.context();
    Parity slot = ctx.sig().param_parity(a) + kOdd;
    IntegralForm out(w.context());
    for (const auto& [c, B] : w.components()) {
        std::vector<int> bigger;
        bigger.reserve(c.size() + 1);
        bigger.push_back(a);
        bigger.insert(bigger.end(), c.begin(), c.end());
        GradedPoly passed = ctx.zero();
        for (const auto& [f, k] : B.terms()) {
            int s = koszul_sign(slot, B.monomial_parity(f));
            passed.add_term(f, s < 0 ? -k : k);
        }
        out.add_component(bigger, passed);
    }
    return out;
}

IntegralForm integral_D(const IntegralForm& w) {
    const JetContext& ctx = *w.context();
    IntegralForm out(w.context());
    for (int i = 1; i <= ctx.sig().nparams(); ++i) {
        IntegralForm derived(w.context());
        for (const auto& [c, B] : w.components())
            derived.add_component(c, total_derivative(ctx, B, i));
        out += dx_action(i, derived);
    }
    return out;
}

IntegralForm integral_delta(const IntegralForm& w) {
    IntegralForm out(w.context());
    for (const auto& [c, B] : w.components())
        out.add_component(c, vertical_delta_poly(*w.context(), B));
    return out;
}

std::optional<int> integral_gamma_degree(const IntegralForm& w) {
    std::optional<int> deg;
    for (const auto& [c, B] : w.components()) {
        for (const auto& [f, k] : B.terms()) {
            int d = 0;
            for (const auto& [g, e] : f)
                if (B.registry()->gen(g).kind == GenKind::Gamma) d += e;
            if (!deg)
                deg = d;
            else if (*deg != d)
                return std::nullopt;
        }
    }
    return deg;
}

namespace {

const Generator* single_gamma_factor(const RegistryPtr& reg, const FactorList& f) {
    const Generator* found = nullptr;
    for (const auto& [g, e] : f) {
        const Generator& gen = reg->gen(g);
        if (gen.kind != GenKind::Gamma) continue;
        if (found || e != 1) throw DegreeError("form is not linear in Cartan factors");
        found = &gen;
    }
    return found;
}

}  // namespace

RhoIntegralResult rho_integral(const IntegralForm& w) {
    const JetContextPtr& ctx = w.context();
    const RegistryPtr& reg = ctx->registry();
    for (const auto& [c, B] : w.components())
        if (!c.empty()) throw DegreeError("normal form expects a full-volume form");

    GradedPoly work = w.component({});
    IntegralForm witness(ctx);
    for (;;) {
        const FactorList* pick = nullptr;
        const Generator* pick_gamma = nullptr;
        for (const auto& [f, c] : work.terms()) {
            const Generator* g = single_gamma_factor(reg, f);
            if (g && !g->multi.empty() &&
                (!pick_gamma || g->multi.size() > pick_gamma->multi.size())) {
                pick = &f;
                pick_gamma = g;
            }
        }
        if (!pick) break;

        const FactorList target = *pick;
        const Rational coeff = work.terms().at(target);
        int last = pick_gamma->multi.back();
        std::vector<int> head(pick_gamma->multi.begin(), pick_gamma->multi.end() - 1);

        GenId old_gamma = ctx->gamma(pick_gamma->a, pick_gamma->multi);
        GenId new_gamma = ctx->gamma(pick_gamma->a, head);
        std::vector<std::pair<GenId, int>> tf;
        for (const auto& [g, e] : target)
            tf.emplace_back(g == old_gamma ? new_gamma : g, e);
        IntegralForm tau(ctx);
        tau.add_component({last}, GradedPoly::monomial(reg, Rational(1), tf));
        IntegralForm dtau = integral_D(tau);
        const GradedPoly& dtau0 = dtau.component({});
        auto it = dtau0.terms().find(target);
        if (it == dtau0.terms().end() || it->second == 0)
            throw Error("integration-by-parts step lost its leading term");
        Rational ratio = coeff / it->second;
        work -= dtau0.scaled(ratio);
        witness -= tau.scaled(ratio);
    }
    IntegralForm canonical(ctx);
    canonical.add_component({}, work);
    return {canonical, witness};
}

IntegralForm volume_lagrangian_form(const Lagrangian& L) {
    IntegralForm out(L.ctx);
    out.add_component({}, L.body);
    return out;
}

}  // namespace varjet
