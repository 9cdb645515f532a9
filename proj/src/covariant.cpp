#include "varjet/covariant.hpp"

#include <algorithm>
#include <set>

namespace varjet {

ParameterField::ParameterField(JetContextPtr c, std::vector<GradedPoly> k, Parity p)
    : ctx(std::move(c)), comps(std::move(k)), parity(p) {
    if (static_cast<int>(comps.size()) != ctx->sig().nparams())
        throw RegistryError("parameter field needs one component per parameter");
    for (int i = 1; i <= ctx->sig().nparams(); ++i) {
        const GradedPoly& ki = comps[static_cast<std::size_t>(i - 1)];
        if (ki.is_zero()) continue;
        for (const auto& [f, coeff] : ki.terms())
            for (const auto& [g, e] : f)
                if (ki.registry()->gen(g).kind != GenKind::Param)
                    throw RegistryError("parameter field components must be polynomials in t");
        auto hp = ki.homogeneous_parity();
        if (!hp || *hp != ctx->sig().param_parity(i) + parity)
            throw ParityError("component parity must be parameter parity plus field parity");
    }
}

GradedPoly check_covariance(const Lagrangian& L, const Rational& w, const ParameterField& K) {
    const JetContext& ctx = *L.ctx;
    const Signature& sig = ctx.sig();

    std::vector<GradedPoly> wcomps;
    for (int a = 1; a <= sig.nfiber(); ++a) {
        GradedPoly wa = ctx.zero();
        for (int i = 1; i <= sig.nparams(); ++i) wa += K.comp(i) * ctx.x_poly(a, {i});
        wcomps.push_back(std::move(wa));
    }
    ProlongedField pw(EvolutionaryField(L.ctx, std::move(wcomps), K.parity));

    GradedPoly residual = ctx.zero();
    for (int i = 1; i <= sig.nparams(); ++i)
        residual += K.comp(i) * total_derivative(ctx, L.body, i);
    residual -= apply_field(pw, L.body);
    for (int i = 1; i <= sig.nparams(); ++i) {
        int s = sig.param_parity(i).odd() && (K.parity + kOdd).odd() ? -1 : 1;
        residual += (partial(K.comp(i), ctx.t(i)) * L.body).scaled(w * s);
    }
    return residual;
}

CovarianceReport check_covariance_basis(const Lagrangian& L, const Rational& w, int N) {
    const JetContext& ctx = *L.ctx;
    const Signature& sig = ctx.sig();
    CovarianceReport report;
    auto multis = enumerate_multis(sig, N + 1);
    for (const auto& J : multis) {
        if (J.empty()) continue;
        Parity jp;
        std::vector<std::pair<GenId, int>> tf;
        for (int idx : J) {
            jp = jp + sig.param_parity(idx);
            tf.emplace_back(ctx.t(idx), 1);
        }
        GradedPoly tJ = GradedPoly::monomial(ctx.registry(), Rational(1), tf);
        if (tJ.is_zero()) continue;
        for (int i = 1; i <= sig.nparams(); ++i) {
            std::vector<GradedPoly> comps(static_cast<std::size_t>(sig.nparams()), ctx.zero());
            comps[static_cast<std::size_t>(i - 1)] = tJ;
            ParameterField K(L.ctx, std::move(comps), jp + sig.param_parity(i));
            GradedPoly res = check_covariance(L, w, K);
            ++report.checked;
            if (!res.is_zero()) {
                report.passed = false;
                std::string name = "t^(";
                for (std::size_t k = 0; k < J.size(); ++k)
                    name += (k ? " " : "") + std::to_string(J[k]);
                name += ") d/dt[" + std::to_string(i) + "]";
                report.residuals.emplace_back(std::move(name), std::move(res));
            }
        }
    }
    return report;
}

GradedPoly scaling_identity_residual(const Lagrangian& L, const Rational& w, int i, int j) {
    const JetContext& ctx = *L.ctx;
    if (ctx.sig().s != 0) throw DegreeError("scaling identity expansion is an even-base oracle");
    GradedPoly residual = ctx.zero();
    std::set<std::pair<int, std::vector<int>>> seen;
    for (const auto& [f, c] : L.body.terms()) {
        for (const auto& [g, e] : f) {
            const Generator& gen = L.body.registry()->gen(g);
            if (gen.kind != GenKind::Jet) continue;
            if (!seen.insert({gen.a, gen.multi}).second) continue;
            int mult = static_cast<int>(std::count(gen.multi.begin(), gen.multi.end(), j));
            if (mult == 0) continue;
            std::vector<int> replaced = gen.multi;
            *std::find(replaced.begin(), replaced.end(), j) = i;
            std::sort(replaced.begin(), replaced.end());
            residual += (ctx.x_poly(gen.a, replaced) * partial(L.body, g)).scaled(Rational(mult));
        }
    }
    if (i == j) residual -= L.body.scaled(w);
    return residual;
}

ConstantForm::ConstantForm(JetContextPtr ctx, int degree) : ctx_(std::move(ctx)), degree_(degree) {
    if (degree_ < 0) throw DegreeError("negative form degree");
    for (int a = 1; a <= ctx_->sig().nfiber(); ++a)
        if (ctx_->sig().fiber_parity(a).odd())
            throw DegreeError("constant forms are implemented over an even fiber");
}

void ConstantForm::add_component(const std::vector<int>& indices, const GradedPoly& coeff) {
    if (static_cast<int>(indices.size()) != degree_) throw DegreeError("component arity mismatch");
    if (coeff.is_zero()) return;
    for (const auto& [f, c] : coeff.terms())
        for (const auto& [g, e] : f) {
            const Generator& gen = coeff.registry()->gen(g);
            if (gen.kind != GenKind::Jet || !gen.multi.empty())
                throw RegistryError("form coefficients must be polynomials in the order-0 coordinates");
        }
    // Antisymmetric slots: insertion sort with a sign per swap.
    std::vector<int> idx = indices;
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        int cur = idx[i];
        std::size_t j = i;
        while (j > 0 && cur < idx[j - 1]) {
            sign = -sign;
            idx[j] = idx[j - 1];
            --j;
        }
        idx[j] = cur;
    }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return;
    GradedPoly add = sign < 0 ? -coeff : coeff;
    auto [it, inserted] = comps_.emplace(std::move(idx), add);
    if (!inserted) {
        it->second += add;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

ConstantForm ConstantForm::exterior_d() const {
    ConstantForm out(ctx_, degree_ + 1);
    for (const auto& [c, B] : comps_) {
        for (int b = 1; b <= ctx_->sig().nfiber(); ++b) {
            GradedPoly pb = partial(B, ctx_->x(b, {}));
            if (pb.is_zero()) continue;
            std::vector<int> bigger = c;
            bigger.push_back(b);
            out.add_component(bigger, pb);
        }
    }
    return out;
}

namespace {

GradedPoly transfer_fiber_poly(const GradedPoly& p, const JetContext& src, const JetContext& dst) {
    if (src.registry() == dst.registry()) return p;
    return map_poly(
        p, dst.registry(), [](GenId) { return nullptr; },
        [&](GenId g) {
            const Generator& gen = src.registry()->gen(g);
            if (gen.kind == GenKind::Jet) return dst.x(gen.a, gen.multi);
            if (gen.kind == GenKind::Symbol) return dst.registry()->intern(gen);
            throw RegistryError("unexpected generator in form coefficient");
        });
}

}  // namespace

Lagrangian lagrangian_of_form(const ConstantForm& w, const JetContextPtr& target) {
    const Signature& sig = target->sig();
    if (sig.s != 0 || sig.r != w.degree()) throw DegreeError("form degree must match the even base dimension");
    if (sig.fiber != w.context()->sig().fiber) throw RegistryError("fiber layout mismatch");
    GradedPoly body = target->zero();
    for (const auto& [c, B] : w.components()) {
        GradedPoly coeff = transfer_fiber_poly(B, *w.context(), *target);
        std::vector<int> perm = c;
        do {
            int inv = 0;
            for (std::size_t i = 0; i < perm.size(); ++i)
                for (std::size_t j = i + 1; j < perm.size(); ++j)
                    if (perm[i] > perm[j]) ++inv;
            GradedPoly mono = coeff.scaled(Rational(inv % 2 ? -1 : 1));
            for (std::size_t k = 0; k < perm.size(); ++k)
                mono = mono * target->x_poly(perm[k], {static_cast<int>(k) + 1});
            body += mono;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return {target, body};
}

Lagrangian compose(const Lagrangian& L, const JetContextPtr& source,
                   const std::vector<GradedPoly>& F) {
    const Signature& tsig = L.ctx->sig();
    const Signature& ssig = source->sig();
    if (tsig.r != ssig.r || tsig.s != ssig.s)
        throw RegistryError("composition requires equal parameter signatures");
    if (static_cast<int>(F.size()) != tsig.nfiber())
        throw RegistryError("one substitution component per target coordinate");
    for (int mu = 1; mu <= tsig.nfiber(); ++mu) {
        const GradedPoly& f = F[static_cast<std::size_t>(mu - 1)];
        if (f.is_zero()) continue;
        auto hp = f.homogeneous_parity();
        if (!hp || *hp != tsig.fiber_parity(mu))
            throw ParityError("substitution component parity mismatch");
    }

    std::map<GenId, GradedPoly> memo;
    auto image = [&](GenId g) -> const GradedPoly* {
        const Generator& gen = L.body.registry()->gen(g);
        if (gen.kind != GenKind::Jet) return nullptr;
        auto it = memo.find(g);
        if (it == memo.end()) {
            GradedPoly img = total_derivative_multi(*source, F[static_cast<std::size_t>(gen.a - 1)],
                                                    gen.multi);
            it = memo.emplace(g, std::move(img)).first;
        }
        return &it->second;
    };
    auto transfer = [&](GenId g) -> GenId {
        const Generator& gen = L.body.registry()->gen(g);
        if (gen.kind == GenKind::Param) return source->t(gen.a);
        if (gen.kind == GenKind::Symbol) return source->registry()->intern(gen);
        throw RegistryError("composition applies to Lagrangians (no form factors)");
    };
    return {source, map_poly(L.body, source->registry(), image, transfer)};
}

LieEulerResult lie_vs_euler(const Lagrangian& L, const EvolutionaryField& X) {
    LieEulerResult out;
    ProlongedField px(X);
    out.lie = apply_field(px, L.body);
    auto F = euler(L);
    out.contraction = L.ctx->zero();
    for (int a = 1; a <= L.ctx->sig().nfiber(); ++a)
        out.contraction += X.comp(a) * F[static_cast<std::size_t>(a - 1)];
    GradedPoly diff = out.lie - out.contraction;
    out.divergence_certified = true;
    for (const auto& Fa : euler({L.ctx, diff}))
        if (!Fa.is_zero()) out.divergence_certified = false;
    return out;
}

}  // namespace varjet
