// Command-line front end: classification, distances, moduli, separation
// certificates, coincidence scans, and the verify-paper identity suite.
//
// Exit codes: 0 pass, 1 check failure, 2 input error, 3 budget exceeded.

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <injkob/injkob.hpp>

#include <iostream>
#include <optional>

namespace {

using namespace injkob;

json parse_json_arg(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON argument: ") + e.what());
    }
}

// Generator shorthand: "hyp:<r>", "par:+", "par:-", or an inline DiskAuto JSON.
DiskAuto parse_disk_generator(const std::string& spec) {
    if (spec.rfind("hyp:", 0) == 0) {
        const double r = std::stod(spec.substr(4));
        return DiskAuto::normal_form(r);
    }
    if (spec == "par:+") return cayley_transport(HalfPlaneAuto::translation(1.0));
    if (spec == "par:-") return cayley_transport(HalfPlaneAuto::translation(-1.0));
    return parse_json_arg(spec).get<DiskAuto>();
}

cplx parse_complex(const std::string& text) { return parse_json_arg(text).get<cplx>(); }

Pt2 parse_point2(const std::string& text) { return parse_json_arg(text).get<Pt2>(); }

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw ParseError("cannot open output file: " + out_path);
        out << j.dump(2) << '\n';
    }
}

const char* tag_name(ConjugacyClass::Tag tag) {
    switch (tag) {
        case ConjugacyClass::Tag::identity: return "identity";
        case ConjugacyClass::Tag::elliptic: return "elliptic";
        case ConjugacyClass::Tag::parabolic: return "parabolic";
        case ConjugacyClass::Tag::hyperbolic: return "hyperbolic";
    }
    return "?";
}

json classify_report(const ConjugacyClass& c) {
    json j{{"class", tag_name(c.tag)}};
    switch (c.tag) {
        case ConjugacyClass::Tag::identity: break;
        case ConjugacyClass::Tag::elliptic:
            j["fixed_point"] = c.fixed_interior.z;
            j["rotation_angle"] = c.rotation_angle;
            break;
        case ConjugacyClass::Tag::parabolic:
            if (c.fixed_boundary.at_infinity) j["fixed_point"] = "infinity";
            else j["fixed_point"] = c.fixed_boundary.z;
            j["translation_sign"] = c.translation_sign;
            break;
        case ConjugacyClass::Tag::hyperbolic:
            j["attracting"] = c.attracting.z;
            j["repelling"] = c.repelling.z;
            j["translation_length"] = c.length;
            j["r"] = c.r;
            break;
    }
    return j;
}

int run_classify(const std::string& auto_json, double tol, const std::string& out_path) {
    const json j = parse_json_arg(auto_json);
    const std::string kind = j.value("kind", "");
    json report;
    if (kind == "disk") report = classify_report(classify(j.get<DiskAuto>(), tol));
    else if (kind == "halfplane") report = classify_report(classify(j.get<HalfPlaneAuto>(), tol));
    else if (kind == "ball" || kind == "siegel") {
        const auto cls = classify2(j.get<ProjAuto2>());
        report["class"] = cls == Class2::hyperbolic ? "hyperbolic"
                          : cls == Class2::parabolic ? "parabolic"
                                                     : "elliptic";
    } else {
        throw ParseError("classify: unknown automorphism kind '" + kind + "'");
    }
    report["input"] = j;
    emit(report, out_path);
    return 0;
}

int run_distance(const std::string& model, const std::string& p_text, const std::string& q_text,
                 const std::string& out_path) {
    json report{{"model", model}};
    double value = 0.0;
    if (model == "disk") value = disk_distance(parse_complex(p_text), parse_complex(q_text));
    else if (model == "halfplane") value = halfplane_distance(parse_complex(p_text), parse_complex(q_text));
    else if (model == "bidisk") value = bidisk_distance(parse_point2(p_text), parse_point2(q_text));
    else if (model == "ball") value = ball_distance(parse_point2(p_text), parse_point2(q_text));
    else if (model == "siegel")
        value = domain2_distance(Domain2::siegel, parse_point2(p_text), parse_point2(q_text));
    else throw ParseError("distance: unknown model '" + model + "'");
    report["distance"] = value;
    emit(report, out_path);
    return 0;
}

int run_modulus(std::optional<double> r, const std::string& auto_json, const std::string& out_path) {
    DiskAuto phi = DiskAuto::identity();
    if (r) phi = DiskAuto::normal_form(*r);
    else if (!auto_json.empty()) phi = parse_json_arg(auto_json).get<DiskAuto>();
    else throw ParseError("modulus: provide --r or --auto");
    const double m = annulus_modulus(phi);
    emit(json{{"modulus", m}, {"r", std::tanh(m)}}, out_path);
    return 0;
}

int emit_certificate(const SeparationCertificate& cert, const std::string& out_path) {
    const auto check = validate(cert);
    json j(cert);
    j["validation"] = json{{"status", check.pass ? "pass" : "fail"},
                           {"word_residual", check.word_residual},
                           {"margin", check.margin}};
    emit(j, out_path);
    return check.pass ? 0 : 1;
}

int run_scan(const std::string& preset, const std::string& in_path, double b, double delta,
             double r, int grid_n, int word_budget, const std::string& out_path) {
    CoincidenceReport report;
    if (!in_path.empty()) {
        std::ifstream in(in_path);
        if (!in) throw ParseError("cannot open input file: " + in_path);
        json spec;
        try {
            in >> spec;
        } catch (const json::exception& e) {
            throw ParseError(std::string("malformed JSON: ") + e.what());
        }
        const auto disc = spec.at("disc").get<AnalyticDisc>();
        const auto grid = spec.at("grid").get<GridSpec>();
        const int budget = spec.value("word_budget", word_budget);
        if (disc_ambient(disc) == Ambient::bidisk) {
            const BidiskAmbient amb;
            const auto pres = make_presentation<BidiskAmbient>(
                spec.at("generators").get<std::vector<BidiskAuto>>());
            report = injectivity_scan(amb, pres, disc, grid, budget);
        } else if (disc_ambient(disc) == Ambient::siegel) {
            const Auto2Ambient amb{Domain2::siegel};
            const auto pres = make_presentation<Auto2Ambient>(
                spec.at("generators").get<std::vector<ProjAuto2>>());
            report = injectivity_scan(amb, pres, disc, grid, budget);
        } else {
            const Auto2Ambient amb{Domain2::ball};
            const auto pres = make_presentation<Auto2Ambient>(
                spec.at("generators").get<std::vector<ProjAuto2>>());
            report = injectivity_scan(amb, pres, disc, grid, budget);
        }
    } else if (preset == "vertical") {
        const Auto2Ambient amb{Domain2::siegel};
        const auto pres = make_presentation<Auto2Ambient>({siegel_parabolic_heisenberg(0.0)}, {"t"});
        report = injectivity_scan(amb, pres, AnalyticDisc{VerticalLine{b}},
                                  GridSpec{cplx(0.0, b * b + 0.5), 0.4, 0.4, grid_n}, word_budget);
    } else if (preset == "perturbed") {
        report = vertical_perturbation(b, delta, cplx(0.0, b * b + 0.5),
                                       GridSpec{cplx(0.0, b * b + 0.5), 0.4, 0.4, grid_n},
                                       word_budget);
    } else if (preset == "extremal") {
        const BidiskAmbient amb;
        const auto curve = bidisk_extremal({0.0, 0.2}, {1.0, 0.5});
        const auto pres = make_presentation<BidiskAmbient>(
            {BidiskAuto{DiskAuto::normal_form(r), DiskAuto::identity()}}, {"a"});
        report = injectivity_scan(amb, pres, AnalyticDisc{curve.curve},
                                  GridSpec{0.0, 0.45, 0.45, grid_n}, word_budget);
    } else if (preset == "diagonal") {
        const BidiskAmbient amb;
        const auto phi = DiskAuto::normal_form(r);
        const auto pres = make_presentation<BidiskAmbient>({BidiskAuto{phi, phi}}, {"d"});
        report = injectivity_scan(amb, pres, AnalyticDisc{BidiskGraph::diagonal()},
                                  GridSpec{0.0, 0.45, 0.45, grid_n}, word_budget);
    } else {
        throw ParseError("scan: provide --in or a preset (vertical|perturbed|extremal|diagonal)");
    }
    emit(json(report), out_path);
    return report.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"holomorphic automorphism groups and Kobayashi vs injective-Kobayashi separation"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    double tol = classify_tol;
    int word_budget = 12;
    int grid_n = 64;
    std::string out_path;
    app.add_option("--tol", tol, "tolerance override");
    app.add_option("--word-budget", word_budget, "word ball radius for scans");
    app.add_option("--grid", grid_n, "scan grid resolution (n x n)");
    app.add_option("--out", out_path, "output file (default: stdout)");

    auto* classify_cmd = app.add_subcommand("classify", "classify an automorphism");
    classify_cmd->fallthrough();
    std::string auto_json;
    classify_cmd->add_option("--auto", auto_json, "automorphism JSON")->required();

    auto* distance_cmd = app.add_subcommand("distance", "invariant distance between two points");
    distance_cmd->fallthrough();
    std::string model, p_text, q_text;
    distance_cmd->add_option("--model", model, "disk|halfplane|bidisk|ball|siegel")->required();
    distance_cmd->add_option("--p", p_text, "first point (JSON)")->required();
    distance_cmd->add_option("--q", q_text, "second point (JSON)")->required();

    auto* modulus_cmd = app.add_subcommand("modulus", "annulus modulus of a hyperbolic generator");
    modulus_cmd->fallthrough();
    double modulus_r = -1.0;
    std::string modulus_auto;
    modulus_cmd->add_option("--r", modulus_r, "normal-form dilation parameter");
    modulus_cmd->add_option("--auto", modulus_auto, "disk automorphism JSON");

    auto* certify_cmd = app.add_subcommand("certify", "emit a separation certificate");
    certify_cmd->fallthrough();
    certify_cmd->require_subcommand(1);
    auto* cert_ball = certify_cmd->add_subcommand("ball", "hyperbolic ball quotient");
    cert_ball->fallthrough();
    double ball_r = 0.99, ball_theta = 0.1;
    int budget = 500;
    cert_ball->add_option("--r", ball_r, "dilation parameter in (0,1)");
    cert_ball->add_option("--theta", ball_theta, "fiber rotation angle");
    cert_ball->add_option("--budget", budget, "iterate budget");
    auto* cert_siegel = certify_cmd->add_subcommand("siegel", "rotational parabolic Siegel quotient");
    cert_siegel->fallthrough();
    double siegel_theta = std::numbers::pi;
    cert_siegel->add_option("--theta", siegel_theta, "rotation angle (nonzero mod 2pi)");
    auto* cert_bidisk = certify_cmd->add_subcommand("bidisk", "cyclic-pair bidisk quotient");
    cert_bidisk->fallthrough();
    std::string gen1 = "hyp:0.3", gen2 = "hyp:0.6";
    cert_bidisk->add_option("--gen1", gen1, "factor 1: hyp:<r>, par:+, par:-, or JSON");
    cert_bidisk->add_option("--gen2", gen2, "factor 2: hyp:<r>, par:+, par:-, or JSON");

    auto* scan_cmd = app.add_subcommand("scan", "injectivity scan of a disc under a group");
    scan_cmd->fallthrough();
    std::string preset, scan_in;
    double scan_b = 1.0, scan_delta = 0.01, scan_r = 0.5;
    scan_cmd->add_option("--case", preset, "vertical|perturbed|extremal|diagonal");
    scan_cmd->add_option("--in", scan_in, "full scan spec JSON file");
    scan_cmd->add_option("--b", scan_b, "vertical line position");
    scan_cmd->add_option("--delta", scan_delta, "perturbation size");
    scan_cmd->add_option("--r", scan_r, "group dilation parameter");

    auto* verify_cmd = app.add_subcommand("verify-paper", "run the full identity suite");
    verify_cmd->fallthrough();
    std::string only;
    verify_cmd->add_option("--only", only, "run checks whose name contains this substring");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*classify_cmd) return run_classify(auto_json, tol, out_path);
        if (*distance_cmd) return run_distance(model, p_text, q_text, out_path);
        if (*modulus_cmd)
            return run_modulus(modulus_r > 0.0 ? std::optional<double>(modulus_r) : std::nullopt,
                               modulus_auto, out_path);
        if (*cert_ball) return emit_certificate(certify_ball_hyperbolic(ball_hyperbolic(ball_r, ball_theta), budget), out_path);
        if (*cert_siegel) return emit_certificate(certify_siegel_parabolic(siegel_theta), out_path);
        if (*cert_bidisk)
            return emit_certificate(certify_bidisk(parse_disk_generator(gen1), parse_disk_generator(gen2)),
                                    out_path);
        if (*scan_cmd)
            return run_scan(preset, scan_in, scan_b, scan_delta, scan_r, grid_n, word_budget, out_path);
        if (*verify_cmd) {
            VerifyOptions opt;
            opt.identity_tol = tol < 1e-9 ? tol : 1e-12; // --tol tightens identity checks
            opt.grid_n = grid_n;
            opt.word_budget = word_budget;
            opt.only = only;
            const auto report = run_paper_checks(opt);
            std::cout << render_report(report);
            if (!out_path.empty()) emit(json(report), out_path);
            std::cerr << "wall time: " << report.total_elapsed_s << " s\n";
            return report.pass ? 0 : 1;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
