#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "varjet/jet_forms.hpp"

namespace varjet {

/// Deterministic generator for random expressions; one seed fixes the whole run.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    int uniform(int lo, int hi) {  // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(eng_);
    }

    bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_) < p; }

    Rational coeff() {
        int num = uniform(-5, 5);
        if (num == 0) num = 1;
        return Rational(num, uniform(1, 4));
    }

    double real(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

struct RandomPolyOptions {
    int max_terms = 3;
    int max_factors = 3;
    int max_order = 2;
    bool allow_params = true;   // t^i factors
    bool allow_dt = false;      // dt^i factors
    bool allow_gamma = false;   // Cartan factors
};

/// Random differential polynomial over the context's coordinates. May be zero
/// (odd squares collapse); callers that need a nonzero value should retry.
inline GradedPoly random_poly(const JetContext& ctx, Rng& rng, const RandomPolyOptions& opt) {
    auto coords = enumerate_coords(ctx.sig(), opt.max_order);
    GradedPoly out = ctx.zero();
    int terms = rng.uniform(1, opt.max_terms);
    for (int t = 0; t < terms; ++t) {
        GradedPoly mono = ctx.constant(rng.coeff());
        int nf = rng.uniform(1, opt.max_factors);
        for (int k = 0; k < nf; ++k) {
            int which = rng.uniform(0, 9);
            if (opt.allow_params && which < 2) {
                mono = mono * ctx.t_poly(rng.uniform(1, ctx.sig().nparams()));
            } else if (opt.allow_dt && which == 2) {
                mono = mono * ctx.dt_poly(rng.uniform(1, ctx.sig().nparams()));
            } else if (opt.allow_gamma && which == 3) {
                const JetCoord& c = rng.pick(coords);
                mono = mono * ctx.gamma_poly(c.fiber, c.multi);
            } else {
                const JetCoord& c = rng.pick(coords);
                mono = mono * ctx.x_poly(c.fiber, c.multi);
            }
        }
        out += mono;
    }
    return out;
}

/// Parity-homogeneous random polynomial: keeps only the monomials of the wanted
/// parity, retrying until the result is nonzero (zero after the retries).
inline GradedPoly random_homogeneous_poly(const JetContext& ctx, Rng& rng, Parity want,
                                          const RandomPolyOptions& opt) {
    for (int attempt = 0; attempt < 40; ++attempt) {
        GradedPoly cand = random_poly(ctx, rng, opt);
        GradedPoly filtered(ctx.registry());
        for (const auto& [f, c] : cand.terms())
            if (cand.monomial_parity(f) == want) filtered.add_term(f, c);
        if (!filtered.is_zero()) return filtered;
    }
    return GradedPoly(ctx.registry());
}

inline Lagrangian random_lagrangian(const JetContextPtr& ctx, Rng& rng, RandomPolyOptions opt = {}) {
    opt.allow_dt = false;
    opt.allow_gamma = false;
    for (int attempt = 0; attempt < 32; ++attempt) {
        GradedPoly p = random_poly(*ctx, rng, opt);
        if (!p.is_zero()) return {ctx, p};
    }
    return {ctx, ctx->x_poly(1, {})};
}

/// Random form of a fixed bidegree (p, q): coefficient polynomial times p Cartan
/// factors and q parameter differentials.
inline JetForm random_jet_form(const JetContextPtr& ctx, Rng& rng, int p, int q,
                               RandomPolyOptions opt = {}) {
    auto coords = enumerate_coords(ctx->sig(), opt.max_order);
    opt.allow_dt = false;
    opt.allow_gamma = false;
    GradedPoly out = ctx->zero();
    int terms = rng.uniform(1, opt.max_terms);
    for (int t = 0; t < terms; ++t) {
        GradedPoly mono = random_poly(*ctx, rng, opt);
        for (int k = 0; k < p; ++k) {
            const JetCoord& c = rng.pick(coords);
            mono = mono * ctx->gamma_poly(c.fiber, c.multi);
        }
        // q distinct even differentials (repeats of the same even dt vanish)
        std::vector<int> dts;
        for (int i = 1; i <= ctx->sig().nparams(); ++i) dts.push_back(i);
        for (int k = 0; k < q && !dts.empty(); ++k) {
            int at = rng.uniform(0, static_cast<int>(dts.size()) - 1);
            mono = mono * ctx->dt_poly(dts[static_cast<std::size_t>(at)]);
            dts.erase(dts.begin() + at);
        }
        out += mono;
    }
    return {ctx, out};
}

/// Random signatures for property sweeps.
inline Signature random_signature(Rng& rng, int max_r, int max_s, int max_fiber,
                                  bool mixed_fiber = true) {
    Signature sig;
    sig.r = rng.uniform(1, max_r);
    sig.s = rng.uniform(0, max_s);
    int nf = rng.uniform(1, max_fiber);
    for (int a = 1; a <= nf; ++a) {
        Parity p = (mixed_fiber && rng.chance(0.4)) ? kOdd : kEven;
        sig.fiber.emplace_back("x", p);
    }
    return sig;
}

}  // namespace varjet
