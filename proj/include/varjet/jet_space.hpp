#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "varjet/poly.hpp"

namespace varjet {

/// Parameter/fiber layout for jets of maps R^{r|s} -> M. Parameter indices are
/// 1-based: 1..r even (t^i), r+1..r+s odd (tau^j). Fiber coordinates are listed
/// with their parities; index `a` is 1-based into that list.
struct Signature {
    int r = 1;
    int s = 0;
    std::vector<std::pair<std::string, Parity>> fiber;

    int nparams() const { return r + s; }
    Parity param_parity(int i) const { return i <= r ? kEven : kOdd; }
    int nfiber() const { return static_cast<int>(fiber.size()); }
    Parity fiber_parity(int a) const { return fiber[static_cast<std::size_t>(a - 1)].second; }
    const std::string& fiber_name(int a) const { return fiber[static_cast<std::size_t>(a - 1)].first; }
};

/// Result of canonicalizing a multi-index: sorted ascending, accumulated Koszul
/// sign, or zero when an odd index repeats.
struct CanonicalMulti {
    std::vector<int> indices;
    int sign = 1;
    bool zero = false;
};

CanonicalMulti canonicalize_multi(const Signature& sig, std::vector<int> indices);

struct JetCoord {
    int fiber = 1;
    std::vector<int> multi;  // canonical

    int order() const { return static_cast<int>(multi.size()); }
};

/// All canonical jet coordinates of order <= max_order, in deterministic order
/// (fiber index, then order, then index-lexicographic).
std::vector<JetCoord> enumerate_coords(const Signature& sig, int max_order);

/// Multi-index parts of enumerate_coords for one fiber-independent listing.
std::vector<std::vector<int>> enumerate_multis(const Signature& sig, int max_order);

/// Coordinate bookkeeping over one registry: interns t/dt/x/Gamma generators on
/// demand (ids are stable, canonical forms do not depend on registration order).
class JetContext : public std::enable_shared_from_this<JetContext> {
public:
    static std::shared_ptr<JetContext> create(Signature sig) {
        return std::shared_ptr<JetContext>(new JetContext(std::move(sig)));
    }

    const Signature& sig() const { return sig_; }
    const RegistryPtr& registry() const { return reg_; }

    GenId t(int i) const;
    GenId dt(int i) const;
    GenId x(int a, const std::vector<int>& canonical_multi) const;
    GenId gamma(int a, const std::vector<int>& canonical_multi) const;

    GradedPoly zero() const { return GradedPoly(reg_); }
    GradedPoly constant(const Rational& c) const { return GradedPoly(reg_, c); }
    GradedPoly gen_poly(GenId id) const { return GradedPoly::generator(reg_, id); }
    GradedPoly t_poly(int i) const { return gen_poly(t(i)); }
    GradedPoly dt_poly(int i) const { return gen_poly(dt(i)); }
    GradedPoly x_poly(int a, const std::vector<int>& multi) const { return gen_poly(x(a, multi)); }
    GradedPoly gamma_poly(int a, const std::vector<int>& multi) const { return gen_poly(gamma(a, multi)); }

    /// x^a_{i sigma} with the Koszul sign of sorting i into place; zero when the
    /// odd index repeats. Returned as a +-1-coefficient polynomial.
    GradedPoly prepend_index_x(int a, const std::vector<int>& multi, int i) const;
    GradedPoly prepend_index_gamma(int a, const std::vector<int>& multi, int i) const;

    /// Context over signature (r+1|s), same fiber; memoized so independently
    /// produced results stay comparable. The fresh even parameter gets index r+1
    /// and the odd parameters shift up by one.
    std::shared_ptr<JetContext> promote() const;

    /// Maps an old parameter index into the promoted context.
    int promote_param(int i) const { return i <= sig_.r ? i : i + 1; }

private:
    explicit JetContext(Signature sig);

    Signature sig_;
    RegistryPtr reg_;
    mutable std::shared_ptr<JetContext> promoted_;
    mutable std::mutex promote_mu_;
};

using JetContextPtr = std::shared_ptr<JetContext>;

/// Re-expresses a polynomial over the promoted context (odd parameter indices
/// shift by one; t, dt, x, Gamma generators map structurally).
GradedPoly promote_poly(const JetContext& src, const JetContext& dst, const GradedPoly& p);

/// Largest |sigma| among jet generators appearing in p.
int jet_order(const GradedPoly& p);

}  // namespace varjet
