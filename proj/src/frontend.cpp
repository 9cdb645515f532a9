#include "varjet/frontend.hpp"

#include <cctype>

namespace varjet {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

const char* const kReservedHeads[] = {"t", "dt", "G", "Vol"};

/// Intermediate parse value: a scalar polynomial plus volume-symbol components
/// (coefficient to the left of its Vol).
struct FormValue {
    GradedPoly scalar;
    std::map<std::vector<int>, GradedPoly> comps;

    bool pure_scalar() const { return comps.empty(); }
};

class Parser {
public:
    Parser(const std::string& text, JetContextPtr ctx, bool allow_vol)
        : text_(text), ctx_(std::move(ctx)), allow_vol_(allow_vol) {}

    FormValue run() {
        FormValue v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    BigInt integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an integer");
        return BigInt(text_.substr(start, pos_ - start));
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail("expected an identifier");
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    std::vector<int> index_list(char terminator) {
        std::vector<int> out;
        while (peek() != terminator) {
            BigInt i = integer();
            out.push_back(i.convert_to<int>());
        }
        ++pos_;  // consume the terminator
        return out;
    }

    FormValue scalar_value(GradedPoly p) { return {std::move(p), {}}; }

    FormValue expr() {
        bool neg = accept('-');
        FormValue acc = term();
        if (neg) acc = negate(std::move(acc));
        for (;;) {
            if (accept('+'))
                acc = add(std::move(acc), term(), false);
            else if (accept('-'))
                acc = add(std::move(acc), term(), true);
            else
                return acc;
        }
    }

    FormValue term() {
        FormValue acc = factor();
        while (accept('*')) acc = multiply(std::move(acc), factor());
        return acc;
    }

    FormValue factor() {
        FormValue base = atom();
        if (!accept('^')) return base;
        std::size_t at = pos_;
        BigInt e = integer();
        if (e < 0 || e > 64) throw ParseError("exponent out of range", at);
        int k = e.convert_to<int>();
        if (!base.pure_scalar()) {
            if (k != 1) throw ParseError("volume symbols cannot be raised to a power", at);
            return base;
        }
        if (k >= 2) {
            auto hp = base.scalar.homogeneous_parity();
            if (hp && hp->odd()) throw ParseError("odd factor raised to a power >= 2", at);
        }
        GradedPoly out = ctx_->constant(1);
        for (int i = 0; i < k; ++i) out = out * base.scalar;
        return scalar_value(std::move(out));
    }

    FormValue atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            FormValue v = expr();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt num = integer();
            if (accept('/')) {
                std::size_t at = pos_;
                BigInt den = integer();
                if (den == 0) throw ParseError("zero denominator", at);
                return scalar_value(ctx_->constant(Rational(num, den)));
            }
            return scalar_value(ctx_->constant(Rational(num)));
        }
        if (is_ident_start(c)) return coordinate();
        fail("expected a term");
    }

    int bracket_int(int lo, int hi, const char* what) {
        std::size_t at = pos_;
        BigInt v = integer();
        if (v < lo || v > hi) throw ParseError(std::string(what) + " out of range", at);
        return v.convert_to<int>();
    }

    FormValue coordinate() {
        std::size_t at = pos_;
        std::string name = ident();
        const Signature& sig = ctx_->sig();
        if (name == "t" || name == "dt") {
            expect('[');
            int i = bracket_int(1, sig.nparams(), "parameter index");
            expect(']');
            return scalar_value(name == "t" ? ctx_->t_poly(i) : ctx_->dt_poly(i));
        }
        if (name == "G") {
            expect('[');
            int a = bracket_int(1, sig.nfiber(), "fiber index");
            expect(';');
            auto cm = canonical_indices(index_list(']'));
            if (cm.zero) return scalar_value(ctx_->zero());
            return scalar_value(ctx_->gamma_poly(a, cm.indices).scaled(Rational(cm.sign)));
        }
        if (name == "Vol") {
            if (!allow_vol_) throw ParseError("volume symbols are not allowed here", at);
            expect('[');
            auto cm = canonicalize_vol(sig, validated_indices(index_list(']')));
            FormValue v = scalar_value(ctx_->zero());
            if (!cm.zero) v.comps.emplace(cm.indices, ctx_->constant(Rational(cm.sign)));
            return v;
        }
        // Fiber coordinate: component c among the coordinates sharing this name.
        std::vector<int> matches;
        for (int a = 1; a <= sig.nfiber(); ++a)
            if (sig.fiber_name(a) == name) matches.push_back(a);
        if (matches.empty()) throw ParseError("unknown coordinate '" + name + "'", at);
        expect('[');
        int c = bracket_int(1, static_cast<int>(matches.size()), "component");
        expect(';');
        auto cm = canonical_indices(index_list(']'));
        if (cm.zero) return scalar_value(ctx_->zero());
        int a = matches[static_cast<std::size_t>(c - 1)];
        return scalar_value(ctx_->x_poly(a, cm.indices).scaled(Rational(cm.sign)));
    }

    std::vector<int> validated_indices(std::vector<int> idx) {
        for (int i : idx)
            if (i < 1 || i > ctx_->sig().nparams()) fail("derivative index out of range");
        return idx;
    }

    CanonicalMulti canonical_indices(std::vector<int> idx) {
        return canonicalize_multi(ctx_->sig(), validated_indices(std::move(idx)));
    }

    FormValue negate(FormValue v) {
        v.scalar = -v.scalar;
        for (auto& [tup, p] : v.comps) p = -p;
        return v;
    }

    FormValue add(FormValue a, FormValue b, bool subtract) {
        if (subtract) b = negate(std::move(b));
        a.scalar += b.scalar;
        for (auto& [tup, p] : b.comps) {
            auto [it, inserted] = a.comps.emplace(tup, p);
            if (!inserted) {
                it->second += p;
                if (it->second.is_zero()) a.comps.erase(it);
            }
        }
        return a;
    }

    FormValue multiply(FormValue a, FormValue b) {
        if (!a.pure_scalar() && !b.pure_scalar())
            fail("at most one volume symbol per term");
        if (!a.pure_scalar()) {
            // Coefficients belong to the left of the volume symbol; only a
            // constant may follow it.
            auto it = b.scalar.terms().begin();
            if (b.scalar.terms().size() > 1 || (it != b.scalar.terms().end() && !it->first.empty()))
                fail("write coefficients to the left of Vol");
            Rational c = it == b.scalar.terms().end() ? Rational(0) : it->second;
            FormValue out = scalar_value(a.scalar.scaled(c));
            if (c != 0)
                for (auto& [tup, p] : a.comps) out.comps.emplace(tup, p.scaled(c));
            return out;
        }
        FormValue out = scalar_value(a.scalar * b.scalar);
        for (auto& [tup, p] : b.comps) {
            GradedPoly prod = a.scalar * p;
            if (!prod.is_zero()) out.comps.emplace(tup, std::move(prod));
        }
        return out;
    }

    const std::string& text_;
    JetContextPtr ctx_;
    bool allow_vol_;
    std::size_t pos_ = 0;
};

std::string vol_name(const std::vector<int>& tuple) {
    std::string s = "Vol[";
    for (std::size_t i = 0; i < tuple.size(); ++i) s += (i ? " " : "") + std::to_string(tuple[i]);
    return s + "]";
}

/// Renders one term without a leading sign; empty result means a bare "1".
std::string term_body(const Registry& reg, const FactorList& f, const Rational& abs_coeff,
                      const std::string& tail) {
    std::string s;
    if (abs_coeff != 1 || (f.empty() && tail.empty())) s = to_string(abs_coeff);
    for (const auto& [g, e] : f) {
        if (!s.empty()) s += "*";
        s += reg.gen(g).name;
        if (e > 1) s += "^" + std::to_string(e);
    }
    if (!tail.empty()) {
        if (!s.empty()) s += "*";
        s += tail;
    }
    return s;
}

void append_poly_terms(std::string& out, const GradedPoly& p, const std::string& tail) {
    const Registry& reg = *p.registry();
    for (const auto& [f, c] : p.terms()) {
        bool neg = c < 0;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += term_body(reg, f, neg ? Rational(-c) : c, tail);
    }
}

nlohmann::json factor_json(const Registry& reg, GenId g, int e) {
    const Generator& gen = reg.gen(g);
    nlohmann::json j;
    j["name"] = gen.name;
    j["exp"] = e;
    j["odd"] = gen.parity.odd();
    switch (gen.kind) {
        case GenKind::Param:
            j["kind"] = "param";
            j["index"] = gen.a;
            break;
        case GenKind::Dt:
            j["kind"] = "dt";
            j["index"] = gen.a;
            break;
        case GenKind::Jet:
            j["kind"] = "jet";
            j["fiber"] = gen.a;
            j["multi"] = gen.multi;
            break;
        case GenKind::Gamma:
            j["kind"] = "cartan";
            j["fiber"] = gen.a;
            j["multi"] = gen.multi;
            break;
        case GenKind::Symbol:
            j["kind"] = "symbol";
            break;
    }
    return j;
}

nlohmann::json terms_json(const GradedPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    const Registry& reg = *p.registry();
    for (const auto& [f, c] : p.terms()) {
        nlohmann::json t;
        t["num"] = numerator(c).str();
        t["den"] = denominator(c).str();
        nlohmann::json factors = nlohmann::json::array();
        for (const auto& [g, e] : f) factors.push_back(factor_json(reg, g, e));
        t["factors"] = std::move(factors);
        terms.push_back(std::move(t));
    }
    return terms;
}

}  // namespace

std::pair<int, int> parse_signature_spec(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("signature must look like r:s", 0);
    try {
        int r = std::stoi(text.substr(0, colon));
        int s = std::stoi(text.substr(colon + 1));
        if (r < 0 || s < 0 || r + s < 1 || r > 16 || s > 16)
            throw ParseError("signature dimensions out of range", 0);
        return {r, s};
    } catch (const std::logic_error&) {
        throw ParseError("signature must look like r:s", 0);
    }
}

std::vector<std::pair<std::string, Parity>> parse_fiber_spec(const std::string& text) {
    std::vector<std::pair<std::string, Parity>> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string item = text.substr(start, comma == std::string::npos ? comma : comma - start);
        std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw ParseError("fiber entry must look like name:even or name:odd", start);
        std::string name = item.substr(0, colon);
        std::string par = item.substr(colon + 1);
        if (name.empty() || !is_ident_start(name[0]))
            throw ParseError("fiber name must be an identifier", start);
        for (char c : name)
            if (!is_ident_char(c)) throw ParseError("fiber name must be an identifier", start);
        for (const char* head : kReservedHeads)
            if (name == head) throw ParseError("fiber name '" + name + "' is reserved", start);
        Parity p;
        if (par == "even")
            p = kEven;
        else if (par == "odd")
            p = kOdd;
        else
            throw ParseError("fiber parity must be 'even' or 'odd'", start);
        out.emplace_back(std::move(name), p);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw ParseError("at least one fiber coordinate is required", 0);
    return out;
}

JetContextPtr make_context(const std::string& sig_spec, const std::string& fiber_spec) {
    auto [r, s] = parse_signature_spec(sig_spec);
    return JetContext::create({r, s, parse_fiber_spec(fiber_spec)});
}

GradedPoly parse_poly(const std::string& text, const JetContextPtr& ctx) {
    return Parser(text, ctx, false).run().scalar;
}

IntegralForm parse_integral_form(const std::string& text, const JetContextPtr& ctx) {
    FormValue v = Parser(text, ctx, true).run();
    if (!v.scalar.is_zero())
        throw ParseError("every term of an integral form needs a volume symbol", 0);
    IntegralForm out(ctx);
    for (const auto& [tup, p] : v.comps) out.add_component(tup, p);
    return out;
}

std::string print_poly(const GradedPoly& p) {
    std::string out;
    append_poly_terms(out, p, "");
    return out.empty() ? "0" : out;
}

std::string print_integral_form(const IntegralForm& w) {
    std::string out;
    for (const auto& [tup, p] : w.components()) append_poly_terms(out, p, vol_name(tup));
    return out.empty() ? "0" : out;
}

nlohmann::json poly_to_json(const GradedPoly& p) {
    nlohmann::json j;
    j["schema"] = 1;
    j["terms"] = terms_json(p);
    return j;
}

nlohmann::json integral_form_to_json(const IntegralForm& w) {
    nlohmann::json j;
    j["schema"] = 1;
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& [tup, p] : w.components()) {
        nlohmann::json c;
        c["vol"] = tup;
        c["terms"] = terms_json(p);
        comps.push_back(std::move(c));
    }
    j["components"] = std::move(comps);
    return j;
}

}  // namespace varjet
