#pragma once

#include <fstream>
#include <sstream>
#include <string>

#if __has_include(<json.hpp>)
#include <json.hpp>
#else
#include <nlohmann/json.hpp>
#endif

#include "separation.hpp"

// Complex numbers serialize as [re, im].
namespace nlohmann {
template <>
struct adl_serializer<std::complex<double>> {
    static void to_json(json& j, const std::complex<double>& z) {
        j = json::array({z.real(), z.imag()});
    }
    static void from_json(const json& j, std::complex<double>& z) {
        if (!j.is_array() || j.size() != 2)
            throw injkob::ParseError("complex value must be a [re, im] pair");
        z = {j[0].get<double>(), j[1].get<double>()};
    }
};
} // namespace nlohmann

namespace injkob {

using json = nlohmann::json;

// Automorphisms are kind-tagged objects with canonical parameters; 3x3
// matrices are row-major arrays of [re, im] pairs.

inline void to_json(json& j, const DiskAuto& f) {
    j = json{{"kind", "disk"}, {"phase", f.phase}, {"center", f.center}};
}

inline void from_json(const json& j, DiskAuto& f) {
    if (j.value("kind", "") != "disk") throw ParseError("expected a disk automorphism");
    f = DiskAuto{j.at("phase").get<double>(), j.at("center").get<cplx>()};
}

inline void to_json(json& j, const HalfPlaneAuto& f) {
    j = json{{"kind", "halfplane"}, {"coeffs", json::array({f.a, f.b, f.c, f.d})}};
}

inline void from_json(const json& j, HalfPlaneAuto& f) {
    if (j.value("kind", "") != "halfplane") throw ParseError("expected a half-plane automorphism");
    const auto& c = j.at("coeffs");
    if (!c.is_array() || c.size() != 4) throw ParseError("halfplane coeffs must be [a,b,c,d]");
    f = HalfPlaneAuto{c[0].get<double>(), c[1].get<double>(), c[2].get<double>(), c[3].get<double>()};
}

inline void to_json(json& j, const BidiskAuto& f) {
    j = json{{"kind", "bidisk"}, {"first", f.first}, {"second", f.second}};
}

inline void from_json(const json& j, BidiskAuto& f) {
    if (j.value("kind", "") != "bidisk") throw ParseError("expected a bidisk automorphism");
    f = BidiskAuto{j.at("first").get<DiskAuto>(), j.at("second").get<DiskAuto>()};
}

inline void to_json(json& j, const ProjAuto2& f) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) rows.push_back(cplx(f.m(r, c)));
    j = json{{"kind", f.domain == Domain2::ball ? "ball" : "siegel"}, {"matrix", rows}};
}

inline void from_json(const json& j, ProjAuto2& f) {
    const std::string kind = j.value("kind", "");
    if (kind != "ball" && kind != "siegel") throw ParseError("expected a ball or siegel automorphism");
    const auto& rows = j.at("matrix");
    if (!rows.is_array() || rows.size() != 9) throw ParseError("matrix must have 9 row-major entries");
    Mat3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = rows[3 * r + c].get<cplx>();
    f = ProjAuto2{kind == "ball" ? Domain2::ball : Domain2::siegel, m};
}

inline void to_json(json& j, const Syllable& s) { j = json::array({s.gen, s.exp}); }

inline void from_json(const json& j, Syllable& s) {
    if (!j.is_array() || j.size() != 2) throw ParseError("word syllable must be [gen, exp]");
    s = {j[0].get<int>(), j[1].get<int>()};
}

inline void to_json(json& j, const AnalyticDisc& d) {
    struct V {
        json& j;
        void operator()(const BallLine& l) const {
            j = json{{"disc", "ball_line"}, {"base", l.base}, {"dir", l.dir}};
        }
        void operator()(const HorizontalLine& l) const {
            j = json{{"disc", "horizontal_line"}, {"level", l.level}};
        }
        void operator()(const SiegelGeodesic& g) const {
            j = json{{"disc", "siegel_geodesic"}, {"a", g.a}, {"b", g.b}};
        }
        void operator()(const BidiskGraph& g) const {
            j = json{{"disc", "bidisk_graph"}, {"outer", g.outer},         {"slope", g.slope},
                     {"inner", g.inner},      {"over_second", g.over_second}};
        }
        void operator()(const VerticalLine& v) const {
            j = json{{"disc", "vertical_line"}, {"b", v.b}};
        }
    };
    std::visit(V{j}, d);
}

inline void from_json(const json& j, AnalyticDisc& d) {
    const std::string kind = j.value("disc", "");
    if (kind == "ball_line") d = BallLine{j.at("base").get<Pt2>(), j.at("dir").get<Pt2>()};
    else if (kind == "horizontal_line") d = HorizontalLine{j.at("level").get<cplx>()};
    else if (kind == "siegel_geodesic") d = SiegelGeodesic{j.at("a").get<cplx>(), j.at("b").get<cplx>()};
    else if (kind == "bidisk_graph")
        d = BidiskGraph{j.at("outer").get<DiskAuto>(), j.at("slope").get<cplx>(),
                        j.at("inner").get<DiskAuto>(), j.at("over_second").get<bool>()};
    else if (kind == "vertical_line") d = VerticalLine{j.at("b").get<cplx>()};
    else throw ParseError("unknown disc variant: " + kind);
}

inline void to_json(json& j, const SeparationCertificate& cert) {
    const char* kind = cert.kind == SeparationCertificate::Kind::ball ? "ball"
                       : cert.kind == SeparationCertificate::Kind::siegel ? "siegel"
                                                                          : "bidisk";
    j = json{{"kind", kind},
             {"labels", cert.labels},
             {"disc", cert.disc},
             {"p", cert.p},
             {"q", cert.q},
             {"word", cert.word},
             {"residual", cert.residual},
             {"isolation_margin", cert.isolation_margin},
             {"conjugators", cert.conjugators},
             {"parameters", cert.parameters}};
    if (cert.kind == SeparationCertificate::Kind::bidisk) j["generators"] = cert.generators_bidisk;
    else j["generators"] = cert.generators2;
}

inline void from_json(const json& j, SeparationCertificate& cert) {
    const std::string kind = j.value("kind", "");
    if (kind == "ball") cert.kind = SeparationCertificate::Kind::ball;
    else if (kind == "siegel") cert.kind = SeparationCertificate::Kind::siegel;
    else if (kind == "bidisk") cert.kind = SeparationCertificate::Kind::bidisk;
    else throw ParseError("unknown certificate kind: " + kind);
    if (cert.kind == SeparationCertificate::Kind::bidisk)
        cert.generators_bidisk = j.at("generators").get<std::vector<BidiskAuto>>();
    else cert.generators2 = j.at("generators").get<std::vector<ProjAuto2>>();
    cert.labels = j.at("labels").get<std::vector<std::string>>();
    cert.disc = j.at("disc").get<AnalyticDisc>();
    cert.p = j.at("p").get<Pt2>();
    cert.q = j.at("q").get<Pt2>();
    cert.word = j.at("word").get<Word>();
    cert.residual = j.at("residual").get<double>();
    cert.isolation_margin = j.at("isolation_margin").get<double>();
    cert.conjugators = j.value("conjugators", std::vector<DiskAuto>{});
    if (j.contains("parameters"))
        for (const auto& [key, value] : j.at("parameters").items())
            cert.parameters[key] = value.get<cplx>();
}

inline void to_json(json& j, const GridSpec& g) {
    j = json{{"center", g.center}, {"half_re", g.half_re}, {"half_im", g.half_im}, {"n", g.n}};
}

inline void from_json(const json& j, GridSpec& g) {
    g = GridSpec{j.at("center").get<cplx>(), j.at("half_re").get<double>(),
                 j.at("half_im").get<double>(), j.at("n").get<int>()};
}

inline void to_json(json& j, const CoincidenceWitness& w) {
    j = json{{"word", w.word},
             {"zeta1", w.zeta1},
             {"zeta2", w.zeta2},
             {"fixed_parameter", w.fixed_parameter}};
}

inline void to_json(json& j, const CoincidenceReport& r) {
    j = json{{"disc", r.disc},
             {"grid", r.grid},
             {"word_budget", r.word_budget},
             {"status", r.pass ? "pass" : "fail"},
             {"witnesses", r.witnesses}};
}

// ---------------------------------------------------------------------------
// File round trip; loading re-checks every invariant from the raw data.

inline void save_certificate(const SeparationCertificate& cert, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << json(cert).dump(2) << '\n';
}

inline SeparationCertificate load_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return j.get<SeparationCertificate>();
}

inline CertificateCheck load_and_check(const std::string& path) {
    return validate(load_certificate(path));
}

// Fixed 15-significant-digit rendering used by the deterministic reports.
inline std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

} // namespace injkob
