// Command-line front end: scalar evaluations as JSON, curve data as CSV,
// verification suites with CI-friendly exit codes.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 numeric failure.

#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdisc/asymptotics.hpp"
#include "pdisc/density.hpp"
#include "pdisc/gaussian.hpp"
#include "pdisc/orbifold.hpp"
#include "pdisc/quadrature.hpp"
#include "pdisc/verify.hpp"

using json = nlohmann::ordered_json;

namespace {

std::string fmt_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

pdisc::Method parse_method(const std::string& m) {
    if (m == "auto") return pdisc::Method::Auto;
    if (m == "series") return pdisc::Method::DirectSeries;
    if (m == "partial-fraction") return pdisc::Method::PartialFraction;
    throw std::domain_error("unknown method: " + m);
}

json density_json(const pdisc::DensityValue& d) {
    json j;
    j["value"] = d.linear();
    j["sign"] = d.value.sign;
    j["log_abs"] = d.value.is_zero() ? 0.0 : d.value.log_abs;
    j["method_used"] = pdisc::method_name(d.method_used);
    j["terms_used"] = d.terms_used;
    j["tail_bound"] = d.tail_bound;
    return j;
}

int emit(const json& j) {
    std::cout << j.dump(2) << "\n";
    return j.contains("exit_code") ? j["exit_code"].get<int>() : 0;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::stoi(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bergman density of the punctured disc (Poincare metric)"};
    app.require_subcommand(1);

    // density
    auto* cmd_density = app.add_subcommand("density", "diagonal density B_p(z)");
    int d_p = 2;
    std::optional<double> d_u, d_absz;
    std::string d_method = "auto";
    double d_rel_tol = 1e-12;
    cmd_density->add_option("--p", d_p, "weight power (>= 2)")->required();
    cmd_density->add_option("--u", d_u, "u = -log|z|^2 (> 0)");
    cmd_density->add_option("--abs-z", d_absz, "|z| in (0,1)");
    cmd_density->add_option("--method", d_method, "auto|series|partial-fraction");
    cmd_density->add_option("--rel-tol", d_rel_tol, "relative tolerance");

    // grid
    auto* cmd_grid = app.add_subcommand("grid", "CSV curve data of f_p(x)");
    std::string g_plist;
    double g_xmin = 0.05, g_xmax = 0.99;
    int g_points = 400;
    bool g_scaled = false;
    cmd_grid->add_option("--p-list", g_plist, "comma-separated powers")->required();
    cmd_grid->add_option("--x-min", g_xmin, "grid start in (0,1)")->required();
    cmd_grid->add_option("--x-max", g_xmax, "grid end in (0,1)")->required();
    cmd_grid->add_option("--points", g_points, "points per curve")->required();
    cmd_grid->add_flag("--scaled", g_scaled, "emit (2 pi/p)^{3/2} f_p");

    // sup
    auto* cmd_sup = app.add_subcommand("sup", "supremum scan of B_p");
    int s_p = 2;
    double s_rel_tol = 1e-12;
    cmd_sup->add_option("--p", s_p, "weight power (>= 2)")->required();
    cmd_sup->add_option("--rel-tol", s_rel_tol, "relative tolerance");

    // offdiag
    auto* cmd_off = app.add_subcommand("offdiag", "off-diagonal kernel");
    int o_p = 2;
    double o_ux = 1.0, o_uy = 1.0, o_dtheta = 0.0, o_rel_tol = 1e-12;
    cmd_off->add_option("--p", o_p)->required();
    cmd_off->add_option("--ux", o_ux, "u at x")->required();
    cmd_off->add_option("--uy", o_uy, "u at y")->required();
    cmd_off->add_option("--dtheta", o_dtheta, "theta_x - theta_y");
    cmd_off->add_option("--rel-tol", o_rel_tol);

    // orbifold
    auto* cmd_orb = app.add_subcommand("orbifold", "orbifold local model");
    int b_p = 1, b_order = 1;
    double b_absz = 0.0;
    std::string b_angles;
    cmd_orb->add_option("--p", b_p)->required();
    cmd_orb->add_option("--order", b_order, "stabilizer order (cyclic)")->required();
    cmd_orb->add_option("--abs-z", b_absz, "|z| in normal coordinates");
    cmd_orb->add_option("--angles", b_angles,
                        "comma-separated action angles (overrides cyclic)");

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run verification suites");
    std::string v_suite;
    bool v_fast = false;
    cmd_verify->add_option("--suite", v_suite, "all|kernel|gaussian|appendix|quadrature|asymptotics|orbifold")->required();
    cmd_verify->add_flag("--fast", v_fast, "cap p-ladders for CI");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_density) {
            if (d_u.has_value() == d_absz.has_value())
                throw std::domain_error("density: exactly one of --u, --abs-z");
            const pdisc::PuncturedPoint pt =
                d_u ? pdisc::PuncturedPoint(*d_u)
                    : pdisc::PuncturedPoint::from_abs_z(*d_absz);
            pdisc::SeriesConfig cfg;
            cfg.method = parse_method(d_method);
            cfg.rel_tol = d_rel_tol;
            const auto d = pdisc::density(pt, d_p, cfg);
            json j;
            j["command"] = "density";
            j["params"] = {{"p", d_p}, {"u", pt.u()}, {"rel_tol", cfg.rel_tol},
                           {"method", d_method}};
            j.update(density_json(d));
            j["checks"] = json::array();
            j["exit_code"] = 0;
            return emit(j);
        }

        if (*cmd_grid) {
            if (!(g_xmin > 0.0) || !(g_xmax < 1.0) || !(g_xmin < g_xmax) ||
                g_points < 2)
                throw std::domain_error("grid: need 0 < x-min < x-max < 1, points >= 2");
            const std::vector<int> ps = parse_int_list(g_plist);
            std::cout << "x,p,value\n";
            for (int p : ps) {
                if (p < 1) throw std::domain_error("grid: powers must be >= 1");
                for (int i = 0; i < g_points; ++i) {
                    const double x =
                        g_xmin + (g_xmax - g_xmin) * double(i) / (g_points - 1);
                    const pdisc::RescaledPoint rx(x);
                    const double v = g_scaled
                                         ? pdisc::scaled_fp(rx, p)
                                         : pdisc::f_p(rx, p).linear();
                    std::cout << fmt_double(x) << "," << p << ","
                              << fmt_double(v) << "\n";
                }
            }
            return 0;
        }

        if (*cmd_sup) {
            pdisc::SeriesConfig cfg;
            cfg.rel_tol = s_rel_tol;
            const auto r = pdisc::sup_scan(s_p, cfg);
            json j;
            j["command"] = "sup";
            j["params"] = {{"p", s_p}, {"rel_tol", s_rel_tol}};
            j["sup"] = r.sup;
            j["argmax_u"] = r.argmax_u;
            j["scaled_sup"] = r.scaled_sup;
            j["residual"] = r.residual;
            j["evaluations"] = r.evaluations;
            json rows = json::array();
            for (const auto& [u, v] : r.samples) rows.push_back({{"u", u}, {"value", v}});
            j["rows"] = rows;
            j["checks"] = json::array();
            j["exit_code"] = 0;
            return emit(j);
        }

        if (*cmd_off) {
            const pdisc::PuncturedPoint x(o_ux, o_dtheta);
            const pdisc::PuncturedPoint y(o_uy, 0.0);
            pdisc::SeriesConfig cfg;
            cfg.rel_tol = o_rel_tol;
            const auto beta = pdisc::kernel_offdiag(x, y, o_p, cfg);
            const auto w = pdisc::kernel_weighted_modulus(x, y, o_p, cfg);
            json j;
            j["command"] = "offdiag";
            j["params"] = {{"p", o_p}, {"ux", o_ux}, {"uy", o_uy},
                           {"dtheta", o_dtheta}, {"rel_tol", o_rel_tol}};
            j["beta_modulus"] = beta.modulus.to_linear();
            j["beta_log_abs"] = beta.modulus.is_zero() ? 0.0 : beta.modulus.log_abs;
            j["phase"] = beta.phase;
            j["weighted_modulus"] = w.to_linear();
            j["weighted_log_abs"] = w.is_zero() ? 0.0 : w.log_abs;
            j["terms_used"] = beta.terms_used;
            j["tail_bound"] = beta.tail_bound;
            j["checks"] = json::array();
            j["exit_code"] = 0;
            return emit(j);
        }

        if (*cmd_orb) {
            pdisc::StabilizerSpec spec;
            if (b_angles.empty()) {
                spec = pdisc::StabilizerSpec::cyclic(b_order);
            } else {
                spec.order = b_order;
                size_t pos = 0;
                while (pos < b_angles.size()) {
                    size_t comma = b_angles.find(',', pos);
                    if (comma == std::string::npos) comma = b_angles.size();
                    spec.angles.push_back(std::stod(b_angles.substr(pos, comma - pos)));
                    pos = comma + 1;
                }
            }
            const auto d = pdisc::orbifold_local_density(b_absz, b_p, spec);
            json j;
            j["command"] = "orbifold";
            j["params"] = {{"p", b_p}, {"order", b_order}, {"abs_z", b_absz}};
            j["value"] = d.value;
            j["imag_residual"] = d.imag_residual;
            j["checks"] = json::array();
            j["exit_code"] = 0;
            return emit(j);
        }

        if (*cmd_verify) {
            pdisc::SuiteResult r = pdisc::run_suite(v_suite, v_fast);
            json j;
            j["command"] = "verify";
            j["params"] = {{"suite", v_suite}, {"fast", v_fast}};
            json crits = json::array();
            bool all = true;
            bool numeric_failure = false;
            for (const auto& c : r.criteria) {
                json jc;
                jc["id"] = c.id;
                jc["name"] = c.name;
                bool cpass = true;
                json checks = json::array();
                for (const auto& ch : c.checks) {
                    cpass = cpass && ch.pass;
                    numeric_failure =
                        numeric_failure || ch.note == "numeric-failure";
                    checks.push_back({{"name", ch.name},
                                      {"pass", ch.pass},
                                      {"measured", ch.measured},
                                      {"threshold", ch.threshold}});
                }
                jc["pass"] = cpass;
                jc["checks"] = checks;
                crits.push_back(jc);
                all = all && cpass;
            }
            j["criteria"] = crits;
            j["exit_code"] = all ? 0 : (numeric_failure ? 3 : 1);
            return emit(j);
        }
    } catch (const pdisc::truncation_failure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const pdisc::accuracy_cap& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const pdisc::bump_not_separated& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const pdisc::invalid_stabilizer& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
