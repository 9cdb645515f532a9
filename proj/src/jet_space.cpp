#include "varjet/jet_space.hpp"

#include <algorithm>

namespace varjet {

CanonicalMulti canonicalize_multi(const Signature& sig, std::vector<int> indices) {
    CanonicalMulti out;
    int sign = 1;
    for (std::size_t i = 1; i < indices.size(); ++i) {
        int cur = indices[i];
        std::size_t j = i;
        while (j > 0 && cur < indices[j - 1]) {
            sign *= koszul_sign(sig.param_parity(cur), sig.param_parity(indices[j - 1]));
            indices[j] = indices[j - 1];
            --j;
        }
        indices[j] = cur;
    }
    for (std::size_t i = 1; i < indices.size(); ++i) {
        if (indices[i] == indices[i - 1] && sig.param_parity(indices[i]).odd()) {
            out.zero = true;
            return out;
        }
    }
    out.indices = std::move(indices);
    out.sign = sign;
    return out;
}

namespace {

void collect_multis(const Signature& sig, int order, int min_index, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (order == 0) {
        out.push_back(cur);
        return;
    }
    for (int i = min_index; i <= sig.nparams(); ++i) {
        if (sig.param_parity(i).odd() && !cur.empty() && cur.back() == i) continue;
        cur.push_back(i);
        // Odd indices may not repeat; even ones may.
        collect_multis(sig, order - 1, sig.param_parity(i).odd() ? i + 1 : i, cur, out);
        cur.pop_back();
    }
}

std::string multi_suffix(const std::vector<int>& multi) {
    std::string s;
    for (int i : multi) s += " " + std::to_string(i);
    return s;
}

}  // namespace

std::vector<std::vector<int>> enumerate_multis(const Signature& sig, int max_order) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    for (int k = 0; k <= max_order; ++k) collect_multis(sig, k, 1, cur, out);
    return out;
}

std::vector<JetCoord> enumerate_coords(const Signature& sig, int max_order) {
    std::vector<JetCoord> out;
    auto multis = enumerate_multis(sig, max_order);
    for (int a = 1; a <= sig.nfiber(); ++a)
        for (const auto& m : multis) out.push_back({a, m});
    return out;
}

JetContext::JetContext(Signature sig) : sig_(std::move(sig)), reg_(std::make_shared<Registry>()) {}

GenId JetContext::t(int i) const {
    if (i < 1 || i > sig_.nparams()) throw RegistryError("parameter index out of range");
    return reg_->intern({GenKind::Param, i, {}, sig_.param_parity(i), "t[" + std::to_string(i) + "]"});
}

GenId JetContext::dt(int i) const {
    if (i < 1 || i > sig_.nparams()) throw RegistryError("parameter index out of range");
    return reg_->intern(
        {GenKind::Dt, i, {}, sig_.param_parity(i) + kOdd, "dt[" + std::to_string(i) + "]"});
}

GenId JetContext::x(int a, const std::vector<int>& multi) const {
    if (a < 1 || a > sig_.nfiber()) throw RegistryError("fiber index out of range");
    Parity p = sig_.fiber_parity(a);
    for (int i : multi) p = p + sig_.param_parity(i);
    // Component label: position among fiber coordinates sharing this name.
    int comp = 0;
    for (int b = 1; b <= a; ++b)
        if (sig_.fiber_name(b) == sig_.fiber_name(a)) ++comp;
    std::string name = sig_.fiber_name(a) + "[" + std::to_string(comp) + ";" + multi_suffix(multi) + "]";
    return reg_->intern({GenKind::Jet, a, multi, p, std::move(name)});
}

GenId JetContext::gamma(int a, const std::vector<int>& multi) const {
    if (a < 1 || a > sig_.nfiber()) throw RegistryError("fiber index out of range");
    Parity p = sig_.fiber_parity(a) + kOdd;
    for (int i : multi) p = p + sig_.param_parity(i);
    std::string name = "G[" + std::to_string(a) + ";" + multi_suffix(multi) + "]";
    return reg_->intern({GenKind::Gamma, a, multi, p, std::move(name)});
}

GradedPoly JetContext::prepend_index_x(int a, const std::vector<int>& multi, int i) const {
    std::vector<int> idx;
    idx.reserve(multi.size() + 1);
    idx.push_back(i);
    idx.insert(idx.end(), multi.begin(), multi.end());
    auto cm = canonicalize_multi(sig_, std::move(idx));
    if (cm.zero) return zero();
    return gen_poly(x(a, cm.indices)).scaled(Rational(cm.sign));
}

GradedPoly JetContext::prepend_index_gamma(int a, const std::vector<int>& multi, int i) const {
    std::vector<int> idx;
    idx.reserve(multi.size() + 1);
    idx.push_back(i);
    idx.insert(idx.end(), multi.begin(), multi.end());
    auto cm = canonicalize_multi(sig_, std::move(idx));
    if (cm.zero) return zero();
    return gen_poly(gamma(a, cm.indices)).scaled(Rational(cm.sign));
}

std::shared_ptr<JetContext> JetContext::promote() const {
    std::lock_guard<std::mutex> lock(promote_mu_);
    if (!promoted_) {
        Signature next = sig_;
        next.r += 1;
        promoted_ = JetContext::create(std::move(next));
    }
    return promoted_;
}

GradedPoly promote_poly(const JetContext& src, const JetContext& dst, const GradedPoly& p) {
    auto remap = [&](const std::vector<int>& multi) {
        std::vector<int> out;
        out.reserve(multi.size());
        for (int i : multi) out.push_back(src.promote_param(i));
        return out;  // monotone remap: stays canonical, no sign
    };
    auto transfer = [&](GenId g) -> GenId {
        const Generator& gen = src.registry()->gen(g);
        switch (gen.kind) {
            case GenKind::Param: return dst.t(src.promote_param(gen.a));
            case GenKind::Dt: return dst.dt(src.promote_param(gen.a));
            case GenKind::Jet: return dst.x(gen.a, remap(gen.multi));
            case GenKind::Gamma: return dst.gamma(gen.a, remap(gen.multi));
            case GenKind::Symbol: return dst.registry()->intern(gen);
        }
        throw RegistryError("unknown generator kind");
    };
    return map_poly(p, dst.registry(), [](GenId) { return nullptr; }, transfer);
}

int jet_order(const GradedPoly& p) {
    int order = 0;
    for (const auto& [factors, c] : p.terms())
        for (const auto& [g, e] : factors) {
            const Generator& gen = p.registry()->gen(g);
            if (gen.kind == GenKind::Jet || gen.kind == GenKind::Gamma)
                order = std::max(order, static_cast<int>(gen.multi.size()));
        }
    return order;
}

}  // namespace varjet
