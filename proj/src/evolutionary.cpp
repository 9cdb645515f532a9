#include "varjet/evolutionary.hpp"

namespace varjet {

EvolutionaryField::EvolutionaryField(JetContextPtr c, std::vector<GradedPoly> y, Parity p)
    : ctx(std::move(c)), comps(std::move(y)), parity(p) {
    if (static_cast<int>(comps.size()) != ctx->sig().nfiber())
        throw RegistryError("field needs one component per fiber coordinate");
    for (int a = 1; a <= ctx->sig().nfiber(); ++a) {
        const GradedPoly& ya = comps[static_cast<std::size_t>(a - 1)];
        if (ya.is_zero()) continue;
        auto hp = ya.homogeneous_parity();
        if (!hp || *hp != ctx->sig().fiber_parity(a) + parity)
            throw ParityError("component parity must be fiber parity plus field parity");
    }
}

const GradedPoly& ProlongedField::coeff(int a, const std::vector<int>& multi) const {
    if (multi.empty()) return field_.comp(a);
    std::lock_guard<std::mutex> lock(mu_);
    return coeff_locked(a, multi);
}

const GradedPoly& ProlongedField::coeff_locked(int a, const std::vector<int>& multi) const {
    auto key = std::make_pair(a, multi);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    // Y^a_{i sigma} = (-1)^{i~ Y~} D_i(Y^a_sigma), peeling the first canonical
    // index. The Koszul factor makes the prolongation graded-commute with the
    // total derivatives (it is invisible for even fields or even parameters).
    std::vector<int> rest(multi.begin() + 1, multi.end());
    const GradedPoly& base = rest.empty() ? field_.comp(a) : coeff_locked(a, rest);
    GradedPoly val = total_derivative(*field_.ctx, base, multi.front());
    int s = koszul_sign(field_.parity, field_.ctx->sig().param_parity(multi.front()));
    if (s < 0) val = -val;
    return memo_.emplace(std::move(key), std::move(val)).first->second;
}

GradedPoly apply_field(const ProlongedField& py, const GradedPoly& p) {
    const RegistryPtr& reg = p.registry();
    return derive(p, py.parity(), [&](GenId g) -> const GradedPoly* {
        const Generator& gen = reg->gen(g);
        if (gen.kind != GenKind::Jet) return nullptr;
        return &py.coeff(gen.a, gen.multi);
    });
}

EvolutionaryField jacobi(const EvolutionaryField& y, const EvolutionaryField& z) {
    ProlongedField py(y), pz(z);
    int sign = koszul_sign(y.parity, z.parity);
    std::vector<GradedPoly> comps;
    for (int a = 1; a <= y.ctx->sig().nfiber(); ++a) {
        GradedPoly c = apply_field(py, z.comp(a)) - apply_field(pz, y.comp(a)).scaled(Rational(sign));
        comps.push_back(std::move(c));
    }
    return {y.ctx, std::move(comps), y.parity + z.parity};
}

JetForm interior(const ProlongedField& py, const JetForm& w) {
    const RegistryPtr& reg = w.body.registry();
    GradedPoly out = derive(w.body, py.parity() + kOdd, [&](GenId g) -> const GradedPoly* {
        const Generator& gen = reg->gen(g);
        if (gen.kind != GenKind::Gamma) return nullptr;
        return &py.coeff(gen.a, gen.multi);
    });
    return {w.ctx, out};
}

JetForm lie_on_forms(const ProlongedField& py, const JetForm& w) {
    // Anticommutator Cartan formula: acts componentwise on horizontal forms
    // for fields of either parity.
    JetForm a = vertical_delta(interior(py, w));
    JetForm b = interior(py, vertical_delta(w));
    return {w.ctx, a.body + b.body};
}

}  // namespace varjet
