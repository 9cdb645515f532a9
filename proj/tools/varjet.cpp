#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "varjet/covariant.hpp"
#include "varjet/frontend.hpp"
#include "varjet/integral_forms.hpp"
#include "varjet/numeric.hpp"
#include "varjet/selftest.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitProperty = 4;

struct Session {
    std::string sig = "1:0";
    std::string fiber = "x:even";
    bool json = false;

    varjet::JetContextPtr context() const { return varjet::make_context(sig, fiber); }
};

void add_session_options(CLI::App* cmd, Session& s) {
    cmd->add_option("--sig", s.sig, "signature r:s (even:odd parameter counts)");
    cmd->add_option("--fiber", s.fiber, "fiber coordinates, e.g. x:even,y:even,th:odd");
    cmd->add_flag("--json", s.json, "emit JSON instead of text");
}

std::string component_label(const varjet::Signature& sig, int a) {
    int comp = 0;
    for (int b = 1; b <= a; ++b)
        if (sig.fiber_name(b) == sig.fiber_name(a)) ++comp;
    return sig.fiber_name(a) + "[" + std::to_string(comp) + "]";
}

int cmd_euler(const Session& s, const std::string& expr) {
    auto ctx = s.context();
    varjet::Lagrangian L{ctx, varjet::parse_poly(expr, ctx)};
    auto F = varjet::euler(L);
    if (s.json) {
        nlohmann::json j;
        j["schema"] = 1;
        for (int a = 1; a <= ctx->sig().nfiber(); ++a)
            j["euler"].push_back(varjet::poly_to_json(F[static_cast<std::size_t>(a - 1)]));
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    for (int a = 1; a <= ctx->sig().nfiber(); ++a)
        std::cout << "F_" << component_label(ctx->sig(), a) << " = "
                  << varjet::print_poly(F[static_cast<std::size_t>(a - 1)]) << "\n";
    return 0;
}

int cmd_dbar(const Session& s, const std::string& expr) {
    auto ctx = s.context();
    varjet::Lagrangian d = varjet::dbar({ctx, varjet::parse_poly(expr, ctx)});
    const varjet::Signature& ps = d.ctx->sig();
    if (s.json) {
        nlohmann::json j = varjet::poly_to_json(d.body);
        j["signature"] = std::to_string(ps.r) + ":" + std::to_string(ps.s);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "signature " << ps.r << ":" << ps.s << "\n"
              << varjet::print_poly(d.body) << "\n";
    return 0;
}

int cmd_check_closed(const Session& s, const std::string& expr) {
    auto ctx = s.context();
    varjet::Lagrangian L{ctx, varjet::parse_poly(expr, ctx)};
    for (const auto& Fa : varjet::euler(L))
        if (!Fa.is_zero()) {
            std::cout << "not closed\n";
            return kExitProperty;
        }
    std::cout << "closed\n";
    return 0;
}

int cmd_canonicalize(const Session& s, const std::string& expr) {
    auto ctx = s.context();
    if (expr.find("Vol") != std::string::npos) {
        varjet::IntegralForm w = varjet::parse_integral_form(expr, ctx);
        auto res = varjet::rho_integral(w);
        std::cout << "canonical: " << varjet::print_integral_form(res.canonical) << "\n"
                  << "witness:   " << varjet::print_integral_form(res.witness) << "\n";
        return 0;
    }
    varjet::JetForm w{ctx, varjet::parse_poly(expr, ctx)};
    auto res = varjet::rho(w);
    std::cout << "canonical: " << varjet::print_poly(res.canonical.body) << "\n"
              << "witness:   " << varjet::print_poly(res.witness.body) << "\n";
    return 0;
}

int cmd_relate(const Session& s, const std::string& expr) {
    auto ctx = s.context();
    varjet::Lagrangian L{ctx, varjet::parse_poly(expr, ctx)};
    if (varjet::relation_theorem_holds(L)) {
        std::cout << "holds\n";
        return 0;
    }
    std::cout << "violated\n";
    return kExitProperty;
}

int cmd_covariance(const Session& s, const std::string& expr, const std::string& weight, int order) {
    auto ctx = s.context();
    varjet::Lagrangian L{ctx, varjet::parse_poly(expr, ctx)};
    varjet::Rational w(weight);
    auto report = varjet::check_covariance_basis(L, w, order);
    std::cout << (report.passed ? "covariant" : "not covariant") << " (weight " << weight << ", "
              << report.checked << " basis fields)\n";
    for (const auto& [name, res] : report.residuals)
        std::cout << "  residual along " << name << ": " << varjet::print_poly(res) << "\n";
    return report.passed ? 0 : kExitProperty;
}

int cmd_compose(const Session& s, const std::string& expr, const std::string& source_fiber,
                const std::vector<std::string>& maps) {
    auto ctx = s.context();
    varjet::Lagrangian L{ctx, varjet::parse_poly(expr, ctx)};
    auto src = varjet::make_context(s.sig, source_fiber);
    std::vector<varjet::GradedPoly> F;
    for (const auto& m : maps) F.push_back(varjet::parse_poly(m, src));
    varjet::Lagrangian out = varjet::compose(L, src, F);
    if (s.json) {
        std::cout << varjet::poly_to_json(out.body).dump(2) << "\n";
        return 0;
    }
    std::cout << varjet::print_poly(out.body) << "\n";
    return 0;
}

int cmd_gauss_bonnet(int resolution, double delta, bool json) {
    auto gb = varjet::sphere_gauss_bonnet_integral(resolution, delta);
    auto gm = varjet::sphere_gauss_map_integral(resolution, delta);
    double chi = gb.value / (4 * M_PI);
    if (json) {
        nlohmann::json j;
        j["schema"] = 1;
        j["scalar_curvature_integral"] = gb.value;
        j["scalar_curvature_error_estimate"] = gb.richardson_error;
        j["normal_map_integral"] = gm.value;
        j["normal_map_error_estimate"] = gm.richardson_error;
        j["euler_characteristic"] = chi;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "scalar-curvature integral: " << gb.value << "  (8*pi = " << 8 * M_PI
              << ", error estimate " << gb.richardson_error << ")\n"
              << "normal-map integral:       " << gm.value << "  (4*pi = " << 4 * M_PI
              << ", error estimate " << gm.richardson_error << ")\n"
              << "Euler characteristic:      " << chi << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"calculus of variations on jets of super-paths"};
    app.require_subcommand(1);

    Session s;
    std::string expr, weight = "1", source_fiber = "u:even";
    std::vector<std::string> maps;
    int order = 1, resolution = 400;
    double delta = 1e-3;
    std::uint64_t seed = 2024;
    bool gb_json = false;

    auto* euler_cmd = app.add_subcommand("euler", "variational derivatives of a Lagrangian");
    add_session_options(euler_cmd, s);
    euler_cmd->add_option("expr", expr, "Lagrangian expression")->required();

    auto* dbar_cmd = app.add_subcommand("dbar", "variational differential of a Lagrangian");
    add_session_options(dbar_cmd, s);
    dbar_cmd->add_option("expr", expr, "Lagrangian expression")->required();

    auto* closed_cmd = app.add_subcommand("check-closed", "is the Lagrangian a total divergence?");
    add_session_options(closed_cmd, s);
    closed_cmd->add_option("expr", expr, "Lagrangian expression")->required();

    auto* canon_cmd =
        app.add_subcommand("canonicalize", "integration-by-parts normal form with witness");
    add_session_options(canon_cmd, s);
    canon_cmd->add_option("expr", expr, "form expression (Vol[...] selects the volume sector)")
        ->required();

    auto* relate_cmd =
        app.add_subcommand("relate", "check the bicomplex factorization of the differential");
    add_session_options(relate_cmd, s);
    relate_cmd->add_option("expr", expr, "Lagrangian expression")->required();

    auto* cov_cmd = app.add_subcommand("covariance", "reparametrization covariance sweep");
    add_session_options(cov_cmd, s);
    cov_cmd->add_option("expr", expr, "Lagrangian expression")->required();
    cov_cmd->add_option("--weight", weight, "density weight (rational)");
    cov_cmd->add_option("--order", order, "jet order of the basis sweep");

    auto* comp_cmd = app.add_subcommand("compose", "substitute a jet map into a Lagrangian");
    add_session_options(comp_cmd, s);
    comp_cmd->add_option("expr", expr, "Lagrangian expression")->required();
    comp_cmd->add_option("--source-fiber", source_fiber, "source fiber coordinates");
    comp_cmd->add_option("--map", maps, "one component expression per target coordinate")
        ->required();

    auto* gb_cmd = app.add_subcommand("gauss-bonnet", "total curvature of the unit sphere");
    gb_cmd->add_option("--resolution", resolution, "grid resolution per axis");
    gb_cmd->add_option("--delta", delta, "polar cap exclusion");
    gb_cmd->add_flag("--json", gb_json, "emit JSON");

    auto* self_cmd = app.add_subcommand("selftest", "run the full property suite");
    self_cmd->add_option("--seed", seed, "seed for every randomized sweep");

    CLI11_PARSE(app, argc, argv);

    try {
        if (euler_cmd->parsed()) return cmd_euler(s, expr);
        if (dbar_cmd->parsed()) return cmd_dbar(s, expr);
        if (closed_cmd->parsed()) return cmd_check_closed(s, expr);
        if (canon_cmd->parsed()) return cmd_canonicalize(s, expr);
        if (relate_cmd->parsed()) return cmd_relate(s, expr);
        if (cov_cmd->parsed()) return cmd_covariance(s, expr, weight, order);
        if (comp_cmd->parsed()) return cmd_compose(s, expr, source_fiber, maps);
        if (gb_cmd->parsed()) return cmd_gauss_bonnet(resolution, delta, gb_json);
        if (self_cmd->parsed())
            return varjet::report_selftest(seed, std::cout) == 0 ? 0 : kExitProperty;
    } catch (const varjet::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const varjet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return 0;
}
