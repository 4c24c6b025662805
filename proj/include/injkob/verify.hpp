#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>

#include "serialization.hpp"

namespace injkob {

// The identity suite: every closed-form fact the toolkit is built on, run as
// residual checks with pinned tolerances.

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0; // worst observed residual (or margin defect)
    double elapsed_s = 0.0;
};

struct RunReport {
    std::vector<CheckResult> checks;
    bool pass = true;
    double total_elapsed_s = 0.0;
};

struct VerifyOptions {
    double identity_tol = 1e-12; // closed-form identity threshold
    int grid_n = 64;             // scan grid resolution
    int word_budget = 12;        // scan word budget
    std::string only;            // substring filter; empty runs everything
};

namespace detail {

struct CheckContext {
    double worst = 0.0;
    bool ok = true;
    void observe(double residual) { worst = std::max(worst, std::abs(residual)); }
    void require(bool condition) { ok = ok && condition; }
    void within(double residual, double tol) {
        observe(residual);
        require(std::abs(residual) <= tol);
    }
};

} // namespace detail

inline RunReport run_paper_checks(const VerifyOptions& opt = {}) {
    using Clock = std::chrono::steady_clock;
    std::vector<std::pair<std::string, std::function<void(detail::CheckContext&)>>> checks;
    const double tol = opt.identity_tol;

    checks.emplace_back("ball_certificate_family", [tol](detail::CheckContext& c) {
        const auto pinned = certify_ball_hyperbolic(ball_hyperbolic(0.99, 0.1));
        c.within(pinned.residual, 1e-12);
        c.require(pinned.isolation_margin > 1e-8);
        for (double r : {0.3, 0.6, 0.9, 0.99}) {
            for (double theta = 0.0; theta < 3.15; theta += 0.31) {
                const auto cert = certify_ball_hyperbolic(ball_hyperbolic(r, theta), 500);
                const auto check = validate(cert);
                c.require(check.pass);
                c.observe(check.word_residual);
            }
        }
    });

    checks.emplace_back("bidisk_certificates", [](detail::CheckContext& c) {
        const DiskAuto par_plus = cayley_transport(HalfPlaneAuto::translation(1.0));
        const DiskAuto par_minus = cayley_transport(HalfPlaneAuto::translation(-1.0));
        const std::vector<std::pair<DiskAuto, DiskAuto>> pairs{
            {DiskAuto::normal_form(0.3), DiskAuto::normal_form(0.6)},
            {DiskAuto::normal_form(0.5), DiskAuto::normal_form(0.5)},
            {DiskAuto::normal_form(0.5), par_minus},
            {par_plus, par_minus}};
        for (const auto& [a, b] : pairs) {
            const auto cert = certify_bidisk(a, b);
            const auto check = validate(cert);
            c.require(check.pass);
            c.observe(check.word_residual);
            const auto& f1 = cert.generators_bidisk[0].first;
            const auto& f2 = cert.generators_bidisk[1].second;
            c.within(std::abs(f1.apply(cplx(0.0)) - f2.apply(cplx(0.0))), 1e-12);
            c.require(proj_distance(f1, f2) > 1e-8);
        }
    });

    checks.emplace_back("displacement_closed_form", [tol](detail::CheckContext& c) {
        std::mt19937 gen(7u);
        std::uniform_real_distribution<double> ur(0.05, 0.95), us(0.0, 0.97), uu(0.0, 1.0);
        for (int i = 0; i < 400; ++i) {
            const double r = ur(gen), s = us(gen);
            const double theta =
                0.05 + (std::numbers::pi - 0.1) * uu(gen) + (uu(gen) < 0.5 ? std::numbers::pi : 0.0);
            const cplx z = std::polar(s, theta);
            const double direct = mobius_distance(z, DiskAuto::normal_form(r).apply(z));
            c.within(tau(s, r, theta) - direct * direct, tol);
        }
        for (double r : {0.2, 0.5, 0.8}) {
            for (double theta : {0.4, 1.6, 2.9}) {
                double prev = tau(0.0, r, theta);
                for (double s = 0.02; s < 1.0; s += 0.02) {
                    const double cur = tau(s, r, theta);
                    c.require(cur > prev);
                    prev = cur;
                }
                c.within(tau(1.0 - 1e-6, r, theta) - 1.0, 1e-3);
            }
        }
        const double s_star = eta_solve(std::log(2.0), 0.3, std::numbers::pi / 2.0);
        c.within(eta(s_star, 0.3, std::numbers::pi / 2.0) - std::log(2.0), 1e-12);
    });

    checks.emplace_back("escape_bound_decay", [](detail::CheckContext& c) {
        double ph = parabolic_escape_bound(EscapeKind::heisenberg, 2.0);
        double ps = parabolic_escape_bound(EscapeKind::shear, 2.0);
        for (double s = 4.0; s <= 65536.0; s *= 2.0) {
            const double h = parabolic_escape_bound(EscapeKind::heisenberg, s);
            const double sh = parabolic_escape_bound(EscapeKind::shear, s);
            c.require(h < ph && sh < ps);
            ph = h;
            ps = sh;
        }
        c.require(ph < 1e-4 && ps < 0.005); // both vanish in the limit
    });

    checks.emplace_back("intersection_predicate", [](detail::CheckContext& c) {
        for (int i = 0; i < 50; ++i) {
            for (int j = 0; j < 50; ++j) {
                const double r = 0.02 + 0.96 * i / 49.0;
                const double theta = 0.03 + 3.05 * j / 49.0;
                const auto [z0, inside] = lalpha_intersection(r, theta);
                const bool lhs = std::norm(z0) - 1.0 < 0.0;
                const bool rhs = std::sqrt(1.0 - r * r) - std::cos(theta) < 0.0;
                c.require(lhs == rhs && inside == lhs);
            }
        }
    });

    checks.emplace_back("multiplier_eigenvalues", [tol](detail::CheckContext& c) {
        for (double r = 0.05; r < 1.0; r += 0.05) {
            const auto m = multiplier(DiskAuto::normal_form(r), cplx(1.0));
            c.within(std::abs(m.matrix_eigenvalues[0] - (1.0 - r)), tol);
            c.within(std::abs(m.matrix_eigenvalues[1] - (1.0 + r)), tol);
            c.within(std::abs(m.derivative - (1.0 - r) / (1.0 + r)), 1e-10);
        }
        std::mt19937 gen(11u);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 100; ++i) {
            const DiskAuto g{two_pi * u(gen), std::polar(0.9 * std::sqrt(u(gen)), two_pi * u(gen))};
            const auto f = compose(compose(g, DiskAuto::normal_form(0.37)), inverse(g));
            c.within(annulus_modulus(f) - std::atanh(0.37), 1e-10);
        }
    });

    checks.emplace_back("punctured_disk_conjugacy", [tol](detail::CheckContext& c) {
        const HalfPlaneAuto psi{1.4, -0.2, 0.8, 0.6};
        const HalfPlaneAuto gamma{1.0, -2.0, 2.0, 0.0};
        const auto grow = HalfPlaneAuto::dilation(5.0 / 4.0);
        const auto composite =
            compose(compose(compose(compose(grow, inverse(gamma)), psi), gamma), inverse(grow));
        std::mt19937 gen(3u);
        std::uniform_real_distribution<double> ux(-4.0, 4.0), uy(0.05, 4.0);
        for (int i = 0; i < 200; ++i) {
            const cplx z{ux(gen), uy(gen)};
            c.within(std::abs(composite.apply(z) - (z - 1.0)), tol);
        }
        c.within(std::abs(psi.apply(cplx(0.5)) - 0.5), 1e-15);
    });

    checks.emplace_back("scan_diagonal_counterexample", [&opt](detail::CheckContext& c) {
        const BidiskAmbient amb;
        const auto phi = DiskAuto::normal_form(0.5);
        const auto pres = make_presentation<BidiskAmbient>({BidiskAuto{phi, phi}}, {"d"});
        const auto rep = injectivity_scan(amb, pres, AnalyticDisc{BidiskGraph::diagonal()},
                                          GridSpec{0.0, 0.45, 0.45, opt.grid_n}, opt.word_budget);
        c.require(!rep.pass && !rep.witnesses.empty());
    });

    checks.emplace_back("scan_factor_extremal", [&opt](detail::CheckContext& c) {
        const BidiskAmbient amb;
        const auto curve = bidisk_extremal({0.0, 0.2}, {1.0, 0.5});
        const auto pres = make_presentation<BidiskAmbient>(
            {BidiskAuto{DiskAuto::normal_form(0.5), DiskAuto::identity()}}, {"a"});
        const auto rep = injectivity_scan(amb, pres, AnalyticDisc{curve.curve},
                                          GridSpec{0.0, 0.45, 0.45, opt.grid_n}, opt.word_budget);
        c.require(rep.pass);
    });

    checks.emplace_back("scan_perturbed_disc", [&opt](detail::CheckContext& c) {
        const GridSpec grid{cplx(0.0, 1.5), 0.4, 0.4, opt.grid_n};
        for (double delta : {0.1, 0.01})
            c.require(vertical_perturbation(1.0, delta, cplx(0.0, 1.5), grid, opt.word_budget).pass);
    });

    checks.emplace_back("scan_vertical_line", [&opt](detail::CheckContext& c) {
        const Auto2Ambient amb{Domain2::siegel};
        const auto pres =
            make_presentation<Auto2Ambient>({siegel_parabolic_heisenberg(0.0)}, {"t"});
        const auto rep = injectivity_scan(amb, pres, AnalyticDisc{VerticalLine{1.0}},
                                          GridSpec{cplx(0.0, 1.5), 0.4, 0.4, opt.grid_n},
                                          opt.word_budget);
        c.require(rep.pass);
    });

    checks.emplace_back("shortest_loop_grid", [](detail::CheckContext& c) {
        const DiskAmbient amb;
        for (double r : {0.3, 0.5, 0.7}) {
            const auto pres = make_presentation<DiskAmbient>({DiskAuto::normal_form(r)}, {"a"});
            const double modulus = std::atanh(r);
            double grid_min = std::numeric_limits<double>::infinity();
            for (int i = 0; i < 40; ++i) {
                for (int j = 0; j < 40; ++j) {
                    const double s = 0.9 * (i + 1) / 40.0;
                    const double theta = two_pi * j / 40.0;
                    const cplx x = std::polar(s, theta);
                    const double d = min_displacement(amb, pres, x, 8).distance;
                    grid_min = std::min(grid_min, d);
                    if (std::abs(std::sin(theta)) < 1e-15) c.within(d - modulus, 1e-9);
                    else c.require(d > modulus + 1e-12);
                }
            }
            c.within(grid_min - modulus, 1e-9);
        }
    });

    checks.emplace_back("siegel_certificates", [](detail::CheckContext& c) {
        for (double theta : {std::numbers::pi / 3.0, std::numbers::pi / 2.0, std::numbers::pi}) {
            const auto cert = certify_siegel_parabolic(theta);
            const auto check = validate(cert);
            c.require(check.pass);
            c.observe(check.word_residual);
            c.require(siegel_margin(cert.p) >= 0.1);
        }
    });

    checks.emplace_back("siegel_intersection_residuals", [tol](detail::CheckContext& c) {
        std::mt19937 gen(5u);
        std::uniform_real_distribution<double> u(-2.0, 2.0), ut(0.3, two_pi - 0.3);
        for (int i = 0; i < 200; ++i) {
            const cplx a{u(gen), u(gen)};
            if (std::abs(a) < 0.1) continue;
            const cplx b{u(gen), u(gen)};
            const double theta = ut(gen);
            const Pt2 p = siegel_geodesic_intersection(a, b, theta);
            c.within(std::abs(p[0] + a * p[1] + b), tol);
            c.within(std::abs(std::polar(1.0, theta) * p[0] + a * (p[1] + 1.0) + b), tol);
        }
    });

    std::sort(checks.begin(), checks.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    RunReport report;
    const auto t0 = Clock::now();
    for (auto& [name, fn] : checks) {
        if (!opt.only.empty() && name.find(opt.only) == std::string::npos) continue;
        detail::CheckContext ctx;
        const auto c0 = Clock::now();
        try {
            fn(ctx);
        } catch (const Error&) {
            ctx.ok = false;
        }
        const auto c1 = Clock::now();
        report.checks.push_back(
            {name, ctx.ok, ctx.worst, std::chrono::duration<double>(c1 - c0).count()});
        report.pass = report.pass && ctx.ok;
    }
    report.total_elapsed_s = std::chrono::duration<double>(Clock::now() - t0).count();
    return report;
}

// Deterministic rendering: fixed ordering, 15 significant digits, no timing.
inline std::string render_report(const RunReport& report) {
    std::ostringstream out;
    for (const auto& c : report.checks)
        out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " residual=" << format_real(c.residual)
            << '\n';
    out << (report.pass ? "OVERALL PASS" : "OVERALL FAIL") << " (" << report.checks.size()
        << " checks)\n";
    return out.str();
}

inline void to_json(json& j, const CheckResult& c) {
    j = json{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"residual", c.residual}};
}

inline void to_json(json& j, const RunReport& r) {
    j = json{{"checks", r.checks}, {"status", r.pass ? "pass" : "fail"}};
}

} // namespace injkob
