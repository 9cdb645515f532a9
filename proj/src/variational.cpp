#include "varjet/variational.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace varjet {

GradedPoly total_derivative(const JetContext& ctx, const GradedPoly& p, int i) {
    if (i < 1 || i > ctx.sig().nparams()) throw RegistryError("parameter index out of range");
    Parity pi = ctx.sig().param_parity(i);
    std::map<GenId, GradedPoly> cache;
    auto image = [&](GenId g) -> const GradedPoly* {
        auto it = cache.find(g);
        if (it == cache.end()) {
            const Generator& gen = p.registry()->gen(g);
            GradedPoly img(p.registry());
            switch (gen.kind) {
                case GenKind::Param:
                    if (gen.a == i) img = ctx.constant(Rational(1));
                    break;
                case GenKind::Jet:
                    img = ctx.prepend_index_x(gen.a, gen.multi, i);
                    break;
                case GenKind::Gamma:
                    img = ctx.prepend_index_gamma(gen.a, gen.multi, i);
                    if (pi.odd()) img = -img;
                    break;
                case GenKind::Dt:
                case GenKind::Symbol:
                    break;  // annihilated
            }
            it = cache.emplace(g, std::move(img)).first;
        }
        return &it->second;
    };
    return derive(p, pi, image);
}

GradedPoly total_derivative_multi(const JetContext& ctx, const GradedPoly& p,
                                  const std::vector<int>& multi) {
    // Ascending canonical order: apply the innermost factor (last index) first.
    GradedPoly out = p;
    for (auto it = multi.rbegin(); it != multi.rend(); ++it)
        out = total_derivative(ctx, out, *it);
    return out;
}

std::vector<GradedPoly> euler(const Lagrangian& L) {
    const JetContext& ctx = *L.ctx;
    const Signature& sig = ctx.sig();
    // Only multi-indices that actually occur in L contribute.
    std::set<std::pair<int, std::vector<int>>> coords;
    for (const auto& [factors, c] : L.body.terms())
        for (const auto& [g, e] : factors) {
            const Generator& gen = L.body.registry()->gen(g);
            if (gen.kind == GenKind::Jet) coords.insert({gen.a, gen.multi});
        }
    std::vector<GradedPoly> F(static_cast<std::size_t>(sig.nfiber()), ctx.zero());
    for (const auto& [a, multi] : coords) {
        GradedPoly d = partial(L.body, ctx.x(a, multi));
        if (d.is_zero()) continue;
        Parity sigma_parity;
        for (int i : multi) sigma_parity = sigma_parity + sig.param_parity(i);
        int sign = (static_cast<int>(multi.size()) % 2 == 0) ? 1 : -1;
        sign *= koszul_sign(sig.fiber_parity(a), sigma_parity);
        F[static_cast<std::size_t>(a - 1)] +=
            total_derivative_multi(ctx, d, multi).scaled(Rational(sign));
    }
    return F;
}

Lagrangian dbar(const Lagrangian& L) {
    auto F = euler(L);
    auto dst = L.ctx->promote();
    int fresh = L.ctx->sig().r + 1;
    GradedPoly body = dst->zero();
    for (int a = 1; a <= L.ctx->sig().nfiber(); ++a) {
        const GradedPoly& Fa = F[static_cast<std::size_t>(a - 1)];
        if (Fa.is_zero()) continue;
        body += dst->x_poly(a, {fresh}) * promote_poly(*L.ctx, *dst, Fa);
    }
    return {dst, body};
}

bool linear_in_last_index(const Lagrangian& L) {
    int last = L.ctx->sig().r;
    const auto& reg = L.body.registry();
    for (const auto& [factors, c] : L.body.terms()) {
        int degree = 0;
        for (const auto& [g, e] : factors) {
            const Generator& gen = reg->gen(g);
            if (gen.kind == GenKind::Jet &&
                std::find(gen.multi.begin(), gen.multi.end(), last) != gen.multi.end())
                degree += e;
        }
        if (degree != 1) return false;
    }
    return true;
}

}  // namespace varjet
