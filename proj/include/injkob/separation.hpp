#pragma once

#include <map>
#include <string>
#include <vector>

#include "discs.hpp"
#include "groups.hpp"

namespace injkob {

// Finite witness data for the covering-projection separation criterion: a
// unique-extremal disc Z through p, a deck word gamma with gamma(p) = q, both
// points on Z, and an isolated transversal crossing of the two local branches
// at the projected point.  A certificate that validates implies the Kobayashi
// and injective Kobayashi metrics of the quotient differ.
struct SeparationCertificate {
    enum class Kind { ball, siegel, bidisk } kind = Kind::ball;
    std::vector<ProjAuto2> generators2;      // ball / siegel presentations
    std::vector<BidiskAuto> generators_bidisk;
    std::vector<std::string> labels;
    AnalyticDisc disc;
    Pt2 p{0.0, 0.0}, q{0.0, 0.0};
    Word word;
    double residual = 0.0;
    double isolation_margin = 0.0;
    std::vector<DiskAuto> conjugators;       // bidisk normalization record
    std::map<std::string, cplx> parameters;
};

struct CertificateCheck {
    bool pass = false;
    double word_residual = 0.0;
    double p_disc_residual = 0.0;
    double q_disc_residual = 0.0;
    double margin = 0.0;
    double separation = 0.0; // |p - q|
    bool extremal_variant = false;
    std::string detail;
};

namespace detail {

template <class Auto>
Auto word_element(const std::vector<Auto>& gens, const Word& w, const Auto& id) {
    Auto acc = id;
    for (const auto& s : w) {
        if (s.gen < 0 || s.gen >= static_cast<int>(gens.size()))
            throw ParseError("word references a missing generator");
        const Auto step = s.exp > 0 ? gens[s.gen] : inverse(gens[s.gen]);
        for (int k = 0; k < std::abs(s.exp); ++k) acc = compose(acc, step);
    }
    return acc;
}

inline double pt_dist(const Pt2& a, const Pt2& b) {
    return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]);
}

} // namespace detail

// Recomputes every invariant from the raw certificate data.
inline CertificateCheck validate(const SeparationCertificate& cert, double tol_residual = 1e-10,
                                 double tol_margin = 1e-8) {
    CertificateCheck out;
    out.extremal_variant = is_unique_extremal(cert.disc);
    try {
        out.p_disc_residual = disc_residual(cert.disc, cert.p);
        out.q_disc_residual = disc_residual(cert.disc, cert.q);
        out.separation = detail::pt_dist(cert.p, cert.q);
        if (cert.kind == SeparationCertificate::Kind::bidisk) {
            const BidiskAuto gamma =
                detail::word_element(cert.generators_bidisk, cert.word, BidiskAuto::identity());
            out.word_residual = detail::pt_dist(gamma.apply(cert.p), cert.q);
            // the two branches through pi(p) are graphs of the word's factors
            out.margin =
                std::abs(derivative(gamma.first, cert.p[0]) - derivative(gamma.second, cert.p[0]));
            if (out.margin < tol_margin) {
                const auto h = [&](cplx z) { return gamma.first.apply(z) - gamma.second.apply(z); };
                const auto wc = winding_count(h, cert.p[0], 1e-3);
                if (wc.winding >= 1) out.margin = wc.min_abs;
            }
        } else {
            const Domain2 dom =
                cert.kind == SeparationCertificate::Kind::ball ? Domain2::ball : Domain2::siegel;
            const ProjAuto2 gamma =
                detail::word_element(cert.generators2, cert.word, ProjAuto2::identity(dom));
            out.word_residual = detail::pt_dist(gamma.apply(cert.p), cert.q);
            out.margin = transversality(cert.disc, line_image(gamma, cert.disc), cert.q, 1e-8);
        }
    } catch (const Error& e) {
        out.pass = false;
        out.detail = e.what();
        return out;
    }
    out.pass = out.extremal_variant && out.word_residual < tol_residual &&
               out.p_disc_residual < tol_residual && out.q_disc_residual < tol_residual &&
               out.margin > tol_margin && out.separation > tol_margin;
    if (!out.pass) out.detail = "certificate invariants violated";
    return out;
}

// ---------------------------------------------------------------------------
// Ball quotients: a hyperbolic deck element in the normal form (3) meets a
// horizontal line L_alpha transversally after a suitable iterate.

inline SeparationCertificate certify_ball_hyperbolic(const ProjAuto2& phi, int budget = 500) {
    const auto params = ball_normal_params(phi);
    const double l = std::atanh(params.r);
    for (int n = 1; n <= budget; ++n) {
        const double rn = std::tanh(n * l);
        const double qn = std::sqrt(1.0 - rn * rn);
        const double thetan = wrap_angle(n * params.theta);
        if (qn >= std::cos(thetan)) continue;
        const cplx z0 = (1.0 - qn * std::polar(1.0, -thetan)) / rn;
        const double room = 1.0 - std::norm(z0);
        if (room < 1e-10) continue; // iterate saturated numerically
        const double alpha = 0.5 * std::min(qn, std::sqrt(room));
        SeparationCertificate cert;
        cert.kind = SeparationCertificate::Kind::ball;
        cert.generators2 = {phi};
        cert.labels = {"phi"};
        cert.disc = HorizontalLine{alpha};
        cert.word = {Syllable{0, n}};
        cert.q = {z0, alpha};
        // gamma^{-n}(q) stays on L_alpha: first coordinate by the inverse
        // 1-D normal form, second coordinate equal to alpha identically
        cert.p = {(z0 - rn) / (1.0 - rn * z0), alpha};
        const ProjAuto2 gamma = power2(phi, n);
        cert.residual = detail::pt_dist(gamma.apply(cert.p), cert.q);
        // closed form of the image line: w = alpha e^{i theta_n} (1 - r_n z)/q_n
        const cplx fiber = alpha * std::polar(1.0, thetan) / qn;
        const AnalyticDisc image = BallLine{{0.0, fiber}, {1.0, -rn * fiber}};
        cert.isolation_margin = transversality(cert.disc, image, cert.q);
        cert.parameters = {{"n", cplx(n, 0)},      {"alpha", cplx(alpha, 0)},
                           {"r", cplx(params.r, 0)}, {"theta", cplx(params.theta, 0)},
                           {"r_n", cplx(rn, 0)},   {"z0", z0}};
        try {
            if (validate(cert).pass) return cert;
        } catch (const Error&) {
            // iterate too ill-conditioned to re-validate; try the next one
        }
    }
    throw BudgetExceeded("certify_ball_hyperbolic: no admissible iterate within budget");
}

// ---------------------------------------------------------------------------
// Siegel quotients generated by a rotational parabolic (theta != 0 mod 2pi):
// the geodesic G_{a,b} crosses its image once, inside H_2 by margin >= 0.1.

inline SeparationCertificate certify_siegel_parabolic(double theta) {
    const cplx a = 1.0;
    const cplx b = choose_b(a, theta); // throws DegenerateRotation when theta = 0 mod 2pi
    // (z0, w0) solves both line equations, so it lies on G and its image
    // gamma(z0, w0) = (e^{i theta} z0, w0 + 1) lies on G as well
    const Pt2 p = siegel_geodesic_intersection(a, b, theta);
    SeparationCertificate cert;
    cert.kind = SeparationCertificate::Kind::siegel;
    cert.generators2 = {siegel_parabolic_heisenberg(theta)};
    cert.labels = {"gamma"};
    cert.disc = SiegelGeodesic{a, b};
    cert.word = {Syllable{0, 1}};
    cert.p = p;
    cert.q = {std::polar(1.0, theta) * p[0], p[1] + 1.0};
    const ProjAuto2 gamma = cert.generators2.front();
    cert.residual = detail::pt_dist(gamma.apply(cert.p), cert.q);
    cert.isolation_margin = transversality(cert.disc, line_image(gamma, cert.disc), cert.q);
    cert.parameters = {{"a", a}, {"b", b}, {"theta", cplx(theta, 0)}, {"z0", p[0]}, {"w0", p[1]}};
    if (const auto check = validate(cert); !check.pass)
        throw DegenerateRotation("certify_siegel_parabolic: certificate failed to validate");
    return cert;
}

// ---------------------------------------------------------------------------
// Bidisk pair normalization: conjugate the factors of (phi1, phi2) so both
// take the same value at 0 while staying distinct maps.

struct NormalizedBidiskPair {
    DiskAuto f1, f2;        // f_k = conj_k^{-1} . phi_k^{exp_k} . conj_k
    DiskAuto conj1, conj2;
    int exp1 = 1, exp2 = 1;
    cplx common_value = 0.0;
};

namespace detail {

// z in the disk with d_M(z, f(z)) = r for a parabolic f, via the closed form
// 1/sqrt(1 + 4y^2) on the invariant vertical line of the half-plane form.
inline cplx parabolic_displacement_point(const DiskAuto& f, double r) {
    if (r <= 0.0 || r >= 1.0) throw RangeError("parabolic_displacement_point: r in (0,1)");
    const auto pf = parabolic_normalize(f);
    const double y = 0.5 * std::sqrt(1.0 / (r * r) - 1.0);
    return cayley_to_disk(pf.conjugator.apply(cplx(0.0, y)));
}

// rotate f about the origin so f(0) lands on the positive real axis
inline DiskAuto align_value_to_axis(const DiskAuto& f, DiskAuto& conj_accum) {
    const cplx v = f.apply(cplx(0.0));
    const auto rot = DiskAuto::rotation(std::arg(v));
    conj_accum = compose(conj_accum, rot);
    return compose(compose(inverse(rot), f), rot);
}

} // namespace detail

inline NormalizedBidiskPair normalize_bidisk_pair(const DiskAuto& phi1, const DiskAuto& phi2) {
    const auto c1 = classify(phi1), c2 = classify(phi2);
    const auto bad = [](const ConjugacyClass& c) {
        return c.tag == ConjugacyClass::Tag::identity || c.tag == ConjugacyClass::Tag::elliptic;
    };
    if (bad(c1) || bad(c2))
        throw DegenerateInput("normalize_bidisk_pair: factors must be hyperbolic or parabolic");

    NormalizedBidiskPair out;
    const bool hyp1 = c1.tag == ConjugacyClass::Tag::hyperbolic;
    const bool hyp2 = c2.tag == ConjugacyClass::Tag::hyperbolic;
    constexpr double theta0 = std::numbers::pi / 2.0;

    if (hyp1 && hyp2) {
        const auto n1 = hyperbolic_normalize(phi1);
        const auto n2 = hyperbolic_normalize(phi2);
        if (std::abs(n1.r - n2.r) > 1e-9) {
            // tilt the smaller-modulus factor until its displacement matches
            // the other modulus, then align that displacement pair onto (-1,1)
            const bool first_small = n1.r < n2.r;
            const double rs = first_small ? n1.r : n2.r;
            const double rb = first_small ? n2.r : n1.r;
            const double s = eta_solve(std::atanh(rb), rs, theta0);
            const cplx z = std::polar(s, theta0);
            const cplx w = DiskAuto::normal_form(rs).apply(z);
            const auto psi = geodesic_aligner(z, w);
            const auto tilted = compose(compose(inverse(psi), DiskAuto::normal_form(rs)), psi);
            if (first_small) {
                out.f1 = tilted;
                out.f2 = DiskAuto::normal_form(rb);
                out.conj1 = compose(n1.conjugator, psi);
                out.conj2 = n2.conjugator;
            } else {
                out.f2 = tilted;
                out.f1 = DiskAuto::normal_form(rb);
                out.conj2 = compose(n2.conjugator, psi);
                out.conj1 = n1.conjugator;
            }
        } else {
            // equal moduli: aim factor one at the square of factor two
            const double s = eta_solve(2.0 * std::atanh(n2.r), n1.r, theta0);
            const cplx z = std::polar(s, theta0);
            const cplx w = DiskAuto::normal_form(n1.r).apply(z);
            const auto psi = geodesic_aligner(z, w);
            out.f1 = compose(compose(inverse(psi), DiskAuto::normal_form(n1.r)), psi);
            out.conj1 = compose(n1.conjugator, psi);
            const auto nf2 = DiskAuto::normal_form(n2.r);
            out.f2 = compose(nf2, nf2);
            out.conj2 = n2.conjugator;
            out.exp2 = 2;
        }
    } else if (hyp1 != hyp2) {
        // hyperbolic factor to its normal form; parabolic factor moved so its
        // displacement at the new origin matches d_M(0, phi_r(0)) = r
        const DiskAuto& hyp = hyp1 ? phi1 : phi2;
        const DiskAuto& par = hyp1 ? phi2 : phi1;
        const auto nh = hyperbolic_normalize(hyp);
        const cplx z0 = detail::parabolic_displacement_point(par, nh.r);
        DiskAuto conj_par = DiskAuto::translation(z0);
        DiskAuto moved = compose(compose(inverse(conj_par), par), conj_par);
        moved = detail::align_value_to_axis(moved, conj_par);
        if (hyp1) {
            out.f1 = DiskAuto::normal_form(nh.r);
            out.conj1 = nh.conjugator;
            out.f2 = moved;
            out.conj2 = conj_par;
        } else {
            out.f2 = DiskAuto::normal_form(nh.r);
            out.conj2 = nh.conjugator;
            out.f1 = moved;
            out.conj1 = conj_par;
        }
    } else {
        // two parabolics: the half-plane pair z+1 and the standard conjugate
        // of z-1 sharing the value 1+i at i (which the Cayley map sends to 0)
        const auto pf1 = parabolic_normalize(phi1);
        const auto pf2 = parabolic_normalize(phi2);
        out.exp1 = pf1.sign;       // phi1^{exp1} conjugates to z + 1
        out.exp2 = -pf2.sign;      // phi2^{exp2} conjugates to z - 1
        const HalfPlaneAuto gamma{1.0, -2.0, 2.0, 0.0};        // (z-2)/(2z)
        const HalfPlaneAuto shrink = HalfPlaneAuto::dilation(4.0 / 5.0);
        const HalfPlaneAuto B = compose(gamma, shrink);        // psi = B (z-1) B^{-1}
        out.f1 = cayley_transport(HalfPlaneAuto::translation(1.0));
        out.conj1 = cayley_transport(pf1.conjugator);
        out.f2 = cayley_transport(compose(compose(B, HalfPlaneAuto::translation(-1.0)), inverse(B)));
        out.conj2 = cayley_transport(compose(pf2.conjugator, inverse(B)));
    }

    out.common_value = out.f1.apply(cplx(0.0));
    if (std::abs(out.common_value - out.f2.apply(cplx(0.0))) > 1e-10)
        throw DegenerateInput("normalize_bidisk_pair: common-value construction failed");
    if (proj_distance(out.f1, out.f2) <= 1e-8)
        throw DegenerateInput("normalize_bidisk_pair: normalized factors coincide");
    return out;
}

// Certificate along the diagonal for the quotient by <f1> x <f2>.
inline SeparationCertificate certify_bidisk(const DiskAuto& phi1, const DiskAuto& phi2) {
    const auto np = normalize_bidisk_pair(phi1, phi2);
    SeparationCertificate cert;
    cert.kind = SeparationCertificate::Kind::bidisk;
    cert.generators_bidisk = {BidiskAuto{np.f1, DiskAuto::identity()},
                              BidiskAuto{DiskAuto::identity(), np.f2}};
    cert.labels = {"a", "b"};
    cert.disc = BidiskGraph::diagonal(1.0);
    cert.word = {Syllable{0, 1}, Syllable{1, 1}};
    cert.p = {0.0, 0.0};
    cert.q = {np.common_value, np.common_value};
    const BidiskAuto gamma{np.f1, np.f2};
    cert.residual = detail::pt_dist(gamma.apply(cert.p), cert.q);
    cert.isolation_margin = std::abs(derivative(np.f1, 0.0) - derivative(np.f2, 0.0));
    if (cert.isolation_margin < 1e-8) {
        const auto h = [&](cplx z) { return np.f1.apply(z) - np.f2.apply(z); };
        const auto wc = winding_count(h, 0.0, 1e-3);
        if (wc.winding >= 1) cert.isolation_margin = wc.min_abs;
    }
    cert.conjugators = {np.conj1, np.conj2};
    cert.parameters = {{"exp1", cplx(np.exp1, 0)},
                       {"exp2", cplx(np.exp2, 0)},
                       {"common_value", np.common_value}};
    return cert;
}

// ---------------------------------------------------------------------------
// Coincidence-side scans: finite injectivity evidence for pi . disc on a
// compact parameter window.

struct GridSpec {
    cplx center;
    double half_re = 0.4;
    double half_im = 0.4;
    int n = 32;
};

struct CoincidenceWitness {
    Word word;
    cplx zeta1, zeta2;
    bool fixed_parameter = false;
};

struct CoincidenceReport {
    AnalyticDisc disc;
    GridSpec grid;
    int word_budget = 0;
    bool pass = false;
    std::vector<CoincidenceWitness> witnesses;
};

namespace detail {

inline bool in_window(const GridSpec& g, cplx zeta) {
    return std::abs(zeta.real() - g.center.real()) <= g.half_re + 1e-9 &&
           std::abs(zeta.imag() - g.center.imag()) <= g.half_im + 1e-9;
}

inline bool point_in_ambient(const BidiskAmbient&, const Pt2& p) { return in_bidisk(p, 0.0); }
inline bool point_in_ambient(const Auto2Ambient& amb, const Pt2& p) {
    return in_domain2(amb.domain, p, 0.0);
}

} // namespace detail

// For every nonidentity word gamma and window parameter zeta1, solve
// disc(zeta2) = gamma(disc(zeta1)); the scan fails on any solution with
// zeta2 inside the window (fixed-parameter solutions included).
template <class A>
CoincidenceReport injectivity_scan(const A& amb, const Presentation<A>& pres,
                                   const AnalyticDisc& disc, const GridSpec& grid,
                                   int word_budget, size_t witness_cap = 16) {
    static_assert(std::is_same_v<typename A::Point, Pt2>,
                  "injectivity_scan needs a two-dimensional ambient");
    if (grid.n < 2) throw RangeError("injectivity_scan: grid needs at least 2x2 points");
    CoincidenceReport report{disc, grid, word_budget, true, {}};
    const auto elements = enumerate(amb, pres, word_budget);
    for (const auto& e : elements) {
        if (e.word.empty() || is_identity(e.value)) continue;
        for (int i = 0; i < grid.n; ++i) {
            for (int j = 0; j < grid.n; ++j) {
                const cplx zeta1 =
                    grid.center + cplx(grid.half_re * (2.0 * i / (grid.n - 1) - 1.0),
                                       grid.half_im * (2.0 * j / (grid.n - 1) - 1.0));
                if (std::holds_alternative<BidiskGraph>(disc) && std::abs(zeta1) >= 1.0) continue;
                const Pt2 pt = disc_point(disc, zeta1);
                if (!detail::point_in_ambient(amb, pt)) continue;
                const Pt2 image = e.value.apply(pt);
                const auto zeta2 = disc_solve(disc, image, 1e-9);
                if (!zeta2 || !detail::in_window(grid, *zeta2)) continue;
                report.pass = false;
                report.witnesses.push_back(
                    {e.word, zeta1, *zeta2, std::abs(*zeta2 - zeta1) <= 1e-6});
                if (report.witnesses.size() >= witness_cap) return report;
            }
        }
    }
    return report;
}

// Scan of the perturbed vertical disc g_b^delta(zeta) = (-b + delta (zeta - zeta0), zeta)
// under the pure translation (z, w) -> (z, w + 1).
inline CoincidenceReport vertical_perturbation(cplx b, double delta, cplx zeta0,
                                               const GridSpec& grid, int word_budget) {
    if (delta <= 0.0 || delta > 0.1)
        throw RangeError("vertical_perturbation: delta must be in (0, 0.1]");
    if (zeta0.imag() <= std::norm(b))
        throw DomainError("vertical_perturbation: zeta0 outside the vertical line's domain");
    const AnalyticDisc disc = SiegelGeodesic{-delta, b + delta * zeta0};
    const Auto2Ambient amb{Domain2::siegel};
    const auto pres = make_presentation<Auto2Ambient>({siegel_parabolic_heisenberg(0.0)}, {"t"});
    return injectivity_scan(amb, pres, disc, grid, word_budget);
}

// ---------------------------------------------------------------------------
// Extremal curves of the bidisk through (alpha, beta) with direction v
// (both components nonzero), with their left-inverse witness.

struct BidiskExtremal {
    BidiskGraph curve;
    int left_inverse_coord = 0; // which coordinate the left inverse reads
    DiskAuto left_inverse_post; // L(z) = post(z[coord]); L(curve(xi)) = xi
};

inline BidiskExtremal bidisk_extremal(const Pt2& at, const Pt2& v) {
    if (!in_bidisk(at, 0.0)) throw DomainError("bidisk_extremal: basepoint outside the bidisk");
    if (std::abs(v[0]) < 1e-14 || std::abs(v[1]) < 1e-14)
        throw DegenerateDirection("bidisk_extremal: direction must have nonzero components");
    const cplx lambda = (v[1] / v[0]) * (1.0 - std::norm(at[0])) / (1.0 - std::norm(at[1]));
    BidiskExtremal out;
    if (std::abs(lambda) <= 1.0) {
        out.curve = BidiskGraph{DiskAuto::translation(at[1]), lambda,
                                inverse(DiskAuto::translation(at[0])), false};
        out.left_inverse_coord = 0;
        out.left_inverse_post = inverse(DiskAuto::translation(at[0]));
    } else {
        out.curve = BidiskGraph{DiskAuto::translation(at[0]), 1.0 / lambda,
                                inverse(DiskAuto::translation(at[1])), true};
        out.left_inverse_coord = 1;
        out.left_inverse_post = inverse(DiskAuto::translation(at[1]));
    }
    return out;
}

} // namespace injkob
