#include "varjet/jet_forms.hpp"

#include <map>

namespace varjet {

Bidegree monomial_bidegree(const RegistryPtr& reg, const FactorList& factors) {
    Bidegree d;
    for (const auto& [g, e] : factors) {
        const Generator& gen = reg->gen(g);
        if (gen.kind == GenKind::Gamma) d.p += e;
        if (gen.kind == GenKind::Dt) d.q += e;
    }
    return d;
}

std::optional<Bidegree> form_bidegree(const JetForm& w) {
    std::optional<Bidegree> d;
    for (const auto& [f, c] : w.body.terms()) {
        Bidegree m = monomial_bidegree(w.body.registry(), f);
        if (!d)
            d = m;
        else if (!(*d == m))
            return std::nullopt;
    }
    return d ? d : std::optional<Bidegree>(Bidegree{0, 0});
}

JetForm bidegree_component(const JetForm& w, Bidegree d) {
    GradedPoly out(w.body.registry());
    for (const auto& [f, c] : w.body.terms())
        if (monomial_bidegree(w.body.registry(), f) == d) out.add_term(f, c);
    return {w.ctx, out};
}

JetForm horizontal_D(const JetForm& w) {
    const JetContext& ctx = *w.ctx;
    GradedPoly out = ctx.zero();
    for (int i = 1; i <= ctx.sig().nparams(); ++i) {
        GradedPoly di = total_derivative(ctx, w.body, i);
        if (!di.is_zero()) out += ctx.dt_poly(i) * di;
    }
    return {w.ctx, out};
}

GradedPoly vertical_delta_poly(const JetContext& ctx, const GradedPoly& p) {
    std::map<GenId, GradedPoly> cache;
    auto image = [&](GenId g) -> const GradedPoly* {
        auto it = cache.find(g);
        if (it == cache.end()) {
            const Generator& gen = p.registry()->gen(g);
            GradedPoly img(p.registry());
            if (gen.kind == GenKind::Jet) img = ctx.gamma_poly(gen.a, gen.multi);
            it = cache.emplace(g, std::move(img)).first;
        }
        return &it->second;
    };
    return derive(p, kOdd, image);
}

JetForm vertical_delta(const JetForm& w) {
    return {w.ctx, vertical_delta_poly(*w.ctx, w.body)};
}

namespace {

// The (unique) Gamma factor of a monomial linear in Gamma.
const Generator* single_gamma(const RegistryPtr& reg, const FactorList& f) {
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

RhoResult rho(const JetForm& w) {
    const JetContext& ctx = *w.ctx;
    const RegistryPtr& reg = w.body.registry();
    if (ctx.sig().s != 0)
        throw DegreeError("rho on the naive-form sector is defined over an even base");
    int r = ctx.sig().r;
    for (const auto& [f, c] : w.body.terms()) {
        Bidegree d = monomial_bidegree(reg, f);
        if (d.p != 1 || d.q != r) throw DegreeError("rho expects a form of bidegree (1, r)");
    }

    GradedPoly work = w.body;
    GradedPoly witness = ctx.zero();
    for (;;) {
        // Highest-order Cartan factor still present.
        const FactorList* pick = nullptr;
        const Generator* pick_gamma = nullptr;
        for (const auto& [f, c] : work.terms()) {
            const Generator* g = single_gamma(reg, f);
            if (g && !g->multi.empty() && (!pick_gamma || g->multi.size() > pick_gamma->multi.size())) {
                pick = &f;
                pick_gamma = g;
            }
        }
        if (!pick) break;

        const FactorList target = *pick;
        const Rational coeff = work.terms().at(target);
        int last = pick_gamma->multi.back();
        std::vector<int> head(pick_gamma->multi.begin(), pick_gamma->multi.end() - 1);

        // tau: same monomial with Gamma_sigma -> Gamma_{sigma'} and dt^{last} removed.
        GenId old_gamma = ctx.gamma(pick_gamma->a, pick_gamma->multi);
        GenId new_gamma = ctx.gamma(pick_gamma->a, head);
        GenId drop_dt = ctx.dt(last);
        std::vector<std::pair<GenId, int>> tf;
        bool dropped = false;
        for (const auto& [g, e] : target) {
            if (g == old_gamma) {
                tf.emplace_back(new_gamma, 1);
            } else if (g == drop_dt && !dropped) {
                dropped = true;
                if (e > 1) tf.emplace_back(g, e - 1);
            } else {
                tf.emplace_back(g, e);
            }
        }
        if (!dropped) throw DegreeError("rho expects top horizontal degree");
        GradedPoly tau = GradedPoly::monomial(reg, Rational(1), tf);
        GradedPoly dtau = horizontal_D({w.ctx, tau}).body;
        auto it = dtau.terms().find(target);
        if (it == dtau.terms().end() || it->second == 0)
            throw Error("rho peeling step lost its leading term");
        Rational ratio = coeff / it->second;
        work -= dtau.scaled(ratio);
        witness -= tau.scaled(ratio);
    }
    return {{w.ctx, work}, {w.ctx, witness}};
}

JetForm kappa(const JetForm& w) {
    const JetContext& src = *w.ctx;
    auto dst = src.promote();
    int fresh = src.sig().r + 1;
    const RegistryPtr& sreg = src.registry();

    std::map<GenId, GradedPoly> images;
    auto image = [&](GenId g) -> const GradedPoly* {
        const Generator& gen = sreg->gen(g);
        if (gen.kind != GenKind::Gamma) return nullptr;
        auto it = images.find(g);
        if (it == images.end()) {
            std::vector<int> multi;
            multi.reserve(gen.multi.size());
            for (int i : gen.multi) multi.push_back(src.promote_param(i));
            // Gamma_{(r)} = Gamma_{(r+1)} + dt^{r+1} x_{r+1, sigma}
            GradedPoly img = dst->gamma_poly(gen.a, multi) +
                             dst->dt_poly(fresh) * dst->prepend_index_x(gen.a, multi, fresh);
            it = images.emplace(g, std::move(img)).first;
        }
        return &it->second;
    };
    auto transfer = [&](GenId g) -> GenId {
        const Generator& gen = sreg->gen(g);
        std::vector<int> multi;
        multi.reserve(gen.multi.size());
        for (int i : gen.multi) multi.push_back(src.promote_param(i));
        switch (gen.kind) {
            case GenKind::Param: return dst->t(src.promote_param(gen.a));
            case GenKind::Dt: return dst->dt(src.promote_param(gen.a));
            case GenKind::Jet: return dst->x(gen.a, multi);
            default: throw RegistryError("unexpected generator kind in kappa transfer");
        }
    };

    GradedPoly out = dst->zero();
    for (const auto& [f, c] : w.body.terms()) {
        Bidegree d = monomial_bidegree(sreg, f);
        if (d.p == 0) continue;  // kappa vanishes on horizontal forms
        GradedPoly mono(sreg);
        mono.add_term(f, c);
        JetForm mapped{dst, map_poly(mono, dst->registry(), image, transfer)};
        out += bidegree_component(mapped, {d.p - 1, d.q + 1}).body;
    }
    return {dst, out};
}

JetForm chi(const JetForm& w) { return kappa(rho(w).canonical); }

JetForm horizontal_lagrangian_form(const Lagrangian& L) {
    GradedPoly body = L.body;
    for (int i = 1; i <= L.ctx->sig().r; ++i) body = body * L.ctx->dt_poly(i);
    return {L.ctx, body};
}

bool relation_theorem_holds(const Lagrangian& L) {
    JetForm lform = horizontal_lagrangian_form(L);
    // The promoted top form places the fresh differential in front of the
    // previous block, i.e. dt^{r+1} dt^1 ... dt^r = (-1)^r dt^1 ... dt^{r+1}.
    Lagrangian dL = dbar(L);
    GradedPoly lhs = dL.body * dL.ctx->dt_poly(dL.ctx->sig().r);
    for (int i = 1; i < dL.ctx->sig().r; ++i) lhs = lhs * dL.ctx->dt_poly(i);
    JetForm rhs = chi(vertical_delta(lform));
    return lhs == rhs.body;
}

}  // namespace varjet
