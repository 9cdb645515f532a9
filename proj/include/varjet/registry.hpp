#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "varjet/errors.hpp"
#include "varjet/parity.hpp"

namespace varjet {

using GenId = int;

enum class GenKind : int {
    Symbol = 0,  // free named generator (standalone algebra use)
    Param = 1,   // base parameter t^i
    Jet = 2,     // jet coordinate x^a_sigma
    Dt = 3,      // parameter differential dt^i
    Gamma = 4,   // Cartan form G^a_sigma
};

struct Generator {
    GenKind kind = GenKind::Symbol;
    int a = 0;                // fiber index (Jet/Gamma), parameter index (Param/Dt), sequence (Symbol)
    std::vector<int> multi;   // canonical multi-index (Jet/Gamma), empty otherwise
    Parity parity;
    std::string name;

    // Structural identity and the global generator order: (kind rank, payload lex).
    auto key() const { return std::tie(kind, a, multi, name); }
    auto order_key() const { return std::make_tuple(static_cast<int>(kind), a, multi.size(), multi, name); }
};

/// Append-only generator table shared by all expressions over one coordinate setup.
/// Generators get stable ids; the canonical order of monomial factors is the
/// structural order of the generators, independent of registration order.
class Registry {
public:
    GenId intern(Generator g) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(g.kind, g.a, g.multi, g.name);
        auto it = lookup_.find(key);
        if (it != lookup_.end()) return it->second;
        if (frozen_) throw RegistryError("registry is frozen; cannot register generator " + g.name);
        GenId id = static_cast<GenId>(gens_.size());
        gens_.push_back(std::move(g));
        lookup_.emplace(std::move(key), id);
        return id;
    }

    const Generator& gen(GenId id) const {
        if (id < 0 || id >= static_cast<GenId>(gens_.size()))
            throw RegistryError("unregistered generator id " + std::to_string(id));
        return gens_[static_cast<std::size_t>(id)];
    }

    Parity parity(GenId id) const { return gen(id).parity; }

    bool less(GenId lhs, GenId rhs) const {
        if (lhs == rhs) return false;
        return gen(lhs).order_key() < gen(rhs).order_key();
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return gens_.size();
    }

    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }

private:
    using Key = std::tuple<GenKind, int, std::vector<int>, std::string>;
    std::deque<Generator> gens_;  // deque: references stay valid across appends
    std::map<Key, GenId> lookup_;
    bool frozen_ = false;
    mutable std::mutex mu_;
};

using RegistryPtr = std::shared_ptr<Registry>;

}  // namespace varjet
