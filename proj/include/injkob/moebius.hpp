#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace injkob {

using cplx = std::complex<double>;

inline constexpr double pole_tol = 1e-14;
inline constexpr double boundary_slack = 1e-9;
inline constexpr double classify_tol = 1e-9;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline double wrap_angle(double t) {
    t = std::fmod(t, two_pi);
    if (t < 0.0) t += two_pi;
    // fmod can return exactly two_pi after the correction when t was -0-ish
    if (t >= two_pi) t -= two_pi;
    return t;
}

/*
    Disk automorphism f(z) = e^{i phase} (z + center) / (1 + conj(center) z),
    |center| < 1.  Compositions go through the su(1,1) picture

        f ~ [ a  b ; conj(b)  conj(a) ],   |a|^2 - |b|^2 = 1,

    with a = e^{i phase/2} / sqrt(1 - |center|^2), b = a * center.  The matrix
    is determined up to sign, and phase = 2 arg a (mod 2pi), center = b/a are
    recovered unambiguously from either representative.  Keeping the canonical
    (phase, center) pair instead of raw matrix entries avoids the determinant
    drift of long products.
*/
struct DiskAuto {
    double phase = 0.0; // in [0, 2pi)
    cplx center = 0.0;  // |center| < 1

    DiskAuto() = default;
    DiskAuto(double phase_, cplx center_) : phase(wrap_angle(phase_)), center(center_) {
        if (std::abs(center) >= 1.0)
            throw DomainError("DiskAuto: |center| must be < 1");
    }

    static DiskAuto identity() { return {}; }
    static DiskAuto rotation(double theta) { return {theta, 0.0}; }
    // z -> (z + w)/(1 + conj(w) z); sends 0 to w
    static DiskAuto translation(cplx w) { return {0.0, w}; }
    // phi_r(z) = (z + r)/(1 + r z), the hyperbolic normal form
    static DiskAuto normal_form(double r) {
        if (r <= 0.0 || r >= 1.0) throw RangeError("normal_form: r must be in (0,1)");
        return {0.0, r};
    }

    cplx apply(cplx z) const {
        if (std::abs(z) > 1.0 + boundary_slack)
            throw DomainError("apply: point outside the closed disk");
        const cplx den = 1.0 + std::conj(center) * z;
        if (std::abs(den) < pole_tol) throw PoleError("apply: denominator vanishes");
        return std::polar(1.0, phase) * (z + center) / den;
    }
};

// Half-plane automorphism z -> (a z + b)/(c z + d), real coefficients,
// normalized to ad - bc = 1 (the sign of the quadruple is canonicalized).
struct HalfPlaneAuto {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    HalfPlaneAuto() = default;
    HalfPlaneAuto(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
        const double det = a * d - b * c;
        if (det <= 0.0)
            throw DomainError("HalfPlaneAuto: determinant must be positive");
        const double s = std::sqrt(det);
        a /= s; b /= s; c /= s; d /= s;
        canonicalize_sign();
    }

    static HalfPlaneAuto identity() { return {}; }
    // z -> z + t
    static HalfPlaneAuto translation(double t) { return {1.0, t, 0.0, 1.0}; }
    // z -> lambda z, lambda > 0
    static HalfPlaneAuto dilation(double lambda) {
        if (lambda <= 0.0) throw RangeError("dilation: lambda must be > 0");
        return {std::sqrt(lambda), 0.0, 0.0, 1.0 / std::sqrt(lambda)};
    }

    void canonicalize_sign() {
        const double tr = a + d;
        bool flip = tr < 0.0;
        if (tr == 0.0) flip = c < 0.0 || (c == 0.0 && b < 0.0);
        if (flip) { a = -a; b = -b; c = -c; d = -d; }
    }

    cplx apply(cplx z) const {
        if (z.imag() < -boundary_slack)
            throw DomainError("apply: point below the closed half-plane");
        const cplx den = c * z + d;
        if (std::abs(den) < pole_tol) throw PoleError("apply: denominator vanishes");
        return (a * z + b) / den;
    }
};

enum class Model { disk, halfplane };

namespace detail {

struct Su11 {
    cplx a, b; // matrix [a b; conj(b) conj(a)]
};

inline Su11 to_su11(const DiskAuto& f) {
    const double s = 1.0 / std::sqrt(1.0 - std::norm(f.center));
    const cplx a = std::polar(s, f.phase / 2.0);
    return {a, a * f.center};
}

inline DiskAuto from_su11(const Su11& m) {
    const double det = std::norm(m.a) - std::norm(m.b);
    if (det <= 0.0) throw DomainError("su(1,1) matrix with nonpositive determinant");
    return DiskAuto{2.0 * std::arg(m.a), m.b / m.a};
}

inline Su11 mul(const Su11& x, const Su11& y) {
    return {x.a * y.a + x.b * std::conj(y.b), x.a * y.b + x.b * std::conj(y.a)};
}

// 2x2 complex matrix helpers used for the Cayley conjugation.
using Mat2c = std::array<cplx, 4>; // row-major [m00 m01; m10 m11]

inline Mat2c mul(const Mat2c& x, const Mat2c& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

// Cayley matrix C(z) = i(1-z)/(1+z), scaled to determinant 1:
// C = [-i i; 1 1] has det -2i and sqrt(-2i) = 1 - i.
inline Mat2c cayley_mat() {
    const cplx s = 1.0 / cplx(1.0, -1.0);
    return {cplx(0.0, -1.0) * s, cplx(0.0, 1.0) * s, s, s};
}

inline Mat2c cayley_mat_inv() {
    // inverse of the det-1 matrix above: [d -b; -c a]
    const Mat2c c = cayley_mat();
    return {c[3], -c[1], -c[2], c[0]};
}

} // namespace detail

// ---------------------------------------------------------------------------
// compose / inverse

inline DiskAuto compose(const DiskAuto& f, const DiskAuto& g) {
    return detail::from_su11(detail::mul(detail::to_su11(f), detail::to_su11(g)));
}

inline HalfPlaneAuto compose(const HalfPlaneAuto& f, const HalfPlaneAuto& g) {
    return HalfPlaneAuto{f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
                         f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d};
}

inline DiskAuto inverse(const DiskAuto& f) {
    const auto m = detail::to_su11(f);
    return detail::from_su11({std::conj(m.a), -m.b});
}

inline HalfPlaneAuto inverse(const HalfPlaneAuto& f) {
    return HalfPlaneAuto{f.d, -f.b, -f.c, f.a};
}

// ---------------------------------------------------------------------------
// Cayley transport, with the fixed map C(z) = i(1-z)/(1+z)

inline cplx cayley_to_halfplane(cplx z) {
    const cplx den = 1.0 + z;
    if (std::abs(den) < pole_tol) throw PoleError("cayley: pole at z = -1");
    return cplx(0.0, 1.0) * (1.0 - z) / den;
}

inline cplx cayley_to_disk(cplx w) {
    const cplx den = cplx(0.0, 1.0) + w;
    if (std::abs(den) < pole_tol) throw PoleError("cayley: pole at w = -i");
    return (cplx(0.0, 1.0) - w) / den;
}

inline HalfPlaneAuto cayley_transport(const DiskAuto& f) {
    const auto m = detail::to_su11(f);
    const detail::Mat2c mc{m.a, m.b, std::conj(m.b), std::conj(m.a)};
    const auto t = detail::mul(detail::mul(detail::cayley_mat(), mc), detail::cayley_mat_inv());
    // conjugating su(1,1) by the Cayley element lands in SL(2,R)
    return HalfPlaneAuto{t[0].real(), t[1].real(), t[2].real(), t[3].real()};
}

inline DiskAuto cayley_transport(const HalfPlaneAuto& f) {
    const detail::Mat2c mr{f.a, f.b, f.c, f.d};
    const auto t = detail::mul(detail::mul(detail::cayley_mat_inv(), mr), detail::cayley_mat());
    return detail::from_su11({t[0], t[1]});
}

// ---------------------------------------------------------------------------
// Fixed points and classification

struct FixedPoint {
    cplx z = 0.0;
    bool at_infinity = false; // half-plane model only
    enum class Location { interior, boundary } location = Location::interior;
};

struct ConjugacyClass {
    enum class Tag { identity, elliptic, parabolic, hyperbolic } tag = Tag::identity;
    Model model = Model::disk;
    // elliptic
    FixedPoint fixed_interior;
    double rotation_angle = 0.0;
    // parabolic
    FixedPoint fixed_boundary;
    int translation_sign = 0; // conjugate to z + sign in the half-plane
    // hyperbolic
    FixedPoint attracting, repelling;
    double length = 0.0; // translation length l = arccosh(|tr|/2)
    double r = 0.0;      // normal-form parameter tanh(l)
};

inline bool is_identity(const DiskAuto& f, double eps = classify_tol) {
    const double dphase = std::min(f.phase, two_pi - f.phase);
    return std::abs(f.center) <= eps && dphase <= eps;
}

inline bool is_identity(const HalfPlaneAuto& f, double eps = classify_tol) {
    const double dplus = std::max({std::abs(f.a - 1.0), std::abs(f.b), std::abs(f.c), std::abs(f.d - 1.0)});
    const double dminus = std::max({std::abs(f.a + 1.0), std::abs(f.b), std::abs(f.c), std::abs(f.d + 1.0)});
    return std::min(dplus, dminus) <= eps;
}

inline double trace(const DiskAuto& f) {
    return 2.0 * std::cos(f.phase / 2.0) / std::sqrt(1.0 - std::norm(f.center));
}

inline double trace(const HalfPlaneAuto& f) { return f.a + f.d; }

inline cplx derivative(const DiskAuto& f, cplx z) {
    const cplx den = 1.0 + std::conj(f.center) * z;
    if (std::abs(den) < pole_tol) throw PoleError("derivative: denominator vanishes");
    return std::polar(1.0, f.phase) * (1.0 - std::norm(f.center)) / (den * den);
}

inline cplx derivative(const HalfPlaneAuto& f, cplx z) {
    const cplx den = f.c * z + f.d;
    if (std::abs(den) < pole_tol) throw PoleError("derivative: denominator vanishes");
    return 1.0 / (den * den);
}

namespace detail {

inline constexpr double coeff_tol = 1e-13;
inline constexpr double location_tol = 1e-7;

inline FixedPoint tag_disk_point(cplx p) {
    FixedPoint fp;
    fp.z = p;
    fp.location = std::abs(p) < 1.0 - location_tol ? FixedPoint::Location::interior
                                                   : FixedPoint::Location::boundary;
    return fp;
}

inline FixedPoint tag_halfplane_point(cplx p) {
    FixedPoint fp;
    fp.z = p;
    fp.location = p.imag() > location_tol ? FixedPoint::Location::interior
                                          : FixedPoint::Location::boundary;
    return fp;
}

inline FixedPoint infinity_point() {
    FixedPoint fp;
    fp.at_infinity = true;
    fp.location = FixedPoint::Location::boundary;
    return fp;
}

// Fixed-point equation c z^2 + (d-a) z - b = 0 of a half-plane map; roots in
// the closed upper half-plane (plus infinity when c ~ 0).
inline std::vector<FixedPoint> halfplane_fixed_points(const HalfPlaneAuto& f) {
    std::vector<FixedPoint> out;
    if (std::abs(f.c) <= coeff_tol) {
        out.push_back(infinity_point());
        if (std::abs(f.a - f.d) > coeff_tol)
            out.push_back(tag_halfplane_point(f.b / (f.d - f.a)));
        return out;
    }
    const cplx disc = cplx((f.a - f.d) * (f.a - f.d) + 4.0 * f.b * f.c, 0.0);
    const cplx sq = std::sqrt(disc);
    const cplx r1 = ((f.a - f.d) + sq) / (2.0 * f.c);
    const cplx r2 = ((f.a - f.d) - sq) / (2.0 * f.c);
    for (cplx p : {r1, r2}) {
        if (p.imag() < -location_tol) continue; // lower-half mirror root
        if (!out.empty() && std::abs(out.front().z - p) <= location_tol) continue; // double root
        out.push_back(tag_halfplane_point(p));
    }
    return out;
}

} // namespace detail

inline std::vector<FixedPoint> fixed_points(const HalfPlaneAuto& f) {
    if (is_identity(f)) throw IdentityInput("fixed_points: identity map");
    return detail::halfplane_fixed_points(f);
}

inline std::vector<FixedPoint> fixed_points(const DiskAuto& f) {
    if (is_identity(f)) throw IdentityInput("fixed_points: identity map");
    // su(1,1) fixed-point equation conj(b) z^2 + (conj(a)-a) z - b = 0
    const auto m = detail::to_su11(f);
    std::vector<FixedPoint> out;
    if (std::abs(m.b) <= detail::coeff_tol) {
        out.push_back(detail::tag_disk_point(0.0)); // rotation; the mirror point is outside
        return out;
    }
    const cplx bq = std::conj(m.a) - m.a;
    const cplx disc = bq * bq + 4.0 * std::conj(m.b) * m.b;
    const cplx sq = std::sqrt(disc);
    const cplx r1 = (-bq + sq) / (2.0 * std::conj(m.b));
    const cplx r2 = (-bq - sq) / (2.0 * std::conj(m.b));
    for (cplx p : {r1, r2}) {
        if (std::abs(p) > 1.0 + detail::location_tol) continue; // mirror root outside
        if (!out.empty() && std::abs(out.front().z - p) <= detail::location_tol) continue;
        out.push_back(detail::tag_disk_point(p));
    }
    return out;
}

inline ConjugacyClass classify(const HalfPlaneAuto& f, double eps = classify_tol) {
    ConjugacyClass c;
    c.model = Model::halfplane;
    if (is_identity(f, eps)) return c;
    const double tr = trace(f);
    const double at = std::abs(tr);
    if (std::abs(at - 2.0) <= eps) {
        c.tag = ConjugacyClass::Tag::parabolic;
        // normalize to trace +2 before reading the sign off the entries
        const double s = tr < 0.0 ? -1.0 : 1.0;
        const double cc = s * f.c, bb = s * f.b;
        if (std::abs(cc) > detail::coeff_tol) {
            c.fixed_boundary = detail::tag_halfplane_point((f.a - f.d) / (2.0 * f.c));
            c.translation_sign = cc < 0.0 ? 1 : -1;
        } else {
            c.fixed_boundary = detail::infinity_point();
            c.translation_sign = bb > 0.0 ? 1 : -1;
        }
        return c;
    }
    if (at < 2.0) {
        c.tag = ConjugacyClass::Tag::elliptic;
        for (const auto& fp : detail::halfplane_fixed_points(f))
            if (!fp.at_infinity && fp.location == FixedPoint::Location::interior) c.fixed_interior = fp;
        c.rotation_angle = wrap_angle(std::arg(derivative(f, c.fixed_interior.z)));
        return c;
    }
    c.tag = ConjugacyClass::Tag::hyperbolic;
    c.length = std::acosh(at / 2.0);
    c.r = std::tanh(c.length);
    for (const auto& fp : detail::halfplane_fixed_points(f)) {
        double deriv_mod;
        if (fp.at_infinity) {
            deriv_mod = 1.0 / (f.a * f.a); // chart 1/z: F(zeta) = (c + d zeta)/(a + b zeta)
        } else {
            deriv_mod = std::abs(derivative(f, fp.z));
        }
        (deriv_mod < 1.0 ? c.attracting : c.repelling) = fp;
    }
    return c;
}

inline ConjugacyClass classify(const DiskAuto& f, double eps = classify_tol) {
    ConjugacyClass half = classify(cayley_transport(f), eps);
    ConjugacyClass c = half;
    c.model = Model::disk;
    const auto back = [](const FixedPoint& fp) {
        FixedPoint out;
        out.z = fp.at_infinity ? cplx(-1.0, 0.0) : cayley_to_disk(fp.z);
        out.location = fp.location;
        return out;
    };
    switch (half.tag) {
        case ConjugacyClass::Tag::identity: break;
        case ConjugacyClass::Tag::elliptic: c.fixed_interior = back(half.fixed_interior); break;
        case ConjugacyClass::Tag::parabolic: c.fixed_boundary = back(half.fixed_boundary); break;
        case ConjugacyClass::Tag::hyperbolic:
            c.attracting = back(half.attracting);
            c.repelling = back(half.repelling);
            break;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Multipliers

struct Multiplier {
    cplx derivative;                       // f'(p)
    std::array<cplx, 2> matrix_eigenvalues; // scaled to (1-r, 1+r) for phi_r
};

namespace detail {

// Normalized eigenvalues mu, 1/mu scaled by 2/(mu + 1/mu) so the hyperbolic
// pair reads (1-r, 1+r) and the parabolic pair (1, 1).
inline std::array<cplx, 2> scaled_eigenvalues(double tr) {
    const double at = std::abs(tr);
    if (at >= 2.0) {
        const double l = std::acosh(at / 2.0);
        const double r = std::tanh(l);
        return {cplx(1.0 - r, 0.0), cplx(1.0 + r, 0.0)};
    }
    const double t = std::sqrt(1.0 - at * at / 4.0) / (at / 2.0); // tan of half rotation
    return {cplx(1.0, -t), cplx(1.0, t)};
}

template <class Auto>
Multiplier multiplier_impl(const Auto& f, cplx p, double tol) {
    if (std::abs(f.apply(p) - p) > tol)
        throw NotFixed("multiplier: point is not fixed");
    return {derivative(f, p), scaled_eigenvalues(trace(f))};
}

} // namespace detail

inline Multiplier multiplier(const DiskAuto& f, cplx p, double tol = 1e-8) {
    return detail::multiplier_impl(f, p, tol);
}

inline Multiplier multiplier(const HalfPlaneAuto& f, cplx p, double tol = 1e-8) {
    return detail::multiplier_impl(f, p, tol);
}

// Half-plane fixed point at infinity: derivative read in the chart 1/z.
inline Multiplier multiplier_at_infinity(const HalfPlaneAuto& f, double tol = 1e-8) {
    if (std::abs(f.c) > tol) throw NotFixed("multiplier: infinity is not fixed");
    return {cplx(1.0 / (f.a * f.a), 0.0), detail::scaled_eigenvalues(trace(f))};
}

// ---------------------------------------------------------------------------
// Normal forms

template <class Auto>
struct NormalForm {
    double r = 0.0; // tanh of the translation length
    Auto conjugator; // g with g^{-1} f g = phi_r (transported to the model)
};

namespace detail {

// H in SL(2,R) with H(0) = x0 and H(infinity) = x1 (either may be infinite).
inline HalfPlaneAuto halfplane_two_point_map(const FixedPoint& x0, const FixedPoint& x1) {
    if (x0.at_infinity) {
        const double v = x1.z.real();
        return HalfPlaneAuto{v, -1.0, 1.0, 0.0}; // z -> (v z - 1)/z
    }
    if (x1.at_infinity) {
        return HalfPlaneAuto{1.0, x0.z.real(), 0.0, 1.0}; // z -> z + x0
    }
    const double u = x0.z.real(), v = x1.z.real();
    if (v - u > 0.0) return HalfPlaneAuto{v, u, 1.0, 1.0};   // det = v - u
    return HalfPlaneAuto{v, -u, 1.0, -1.0};                  // det = u - v
}

} // namespace detail

inline NormalForm<HalfPlaneAuto> hyperbolic_normalize(const HalfPlaneAuto& f) {
    const auto c = classify(f);
    if (c.tag != ConjugacyClass::Tag::hyperbolic)
        throw WrongClass("hyperbolic_normalize: map is not hyperbolic");
    // phi_r transports to z -> e^{-2l} z (attracting 0, repelling infinity)
    const auto h = detail::halfplane_two_point_map(c.attracting, c.repelling);
    return {c.r, h};
}

inline NormalForm<DiskAuto> hyperbolic_normalize(const DiskAuto& f) {
    const auto half = hyperbolic_normalize(cayley_transport(f));
    return {half.r, cayley_transport(half.conjugator)};
}

struct ParabolicForm {
    int sign = 0;              // conjugate to z + sign
    HalfPlaneAuto conjugator;  // g with g^{-1} (transport f) g = z + sign
};

inline ParabolicForm parabolic_normalize(const HalfPlaneAuto& f) {
    const auto c = classify(f);
    if (c.tag != ConjugacyClass::Tag::parabolic)
        throw WrongClass("parabolic_normalize: map is not parabolic");
    HalfPlaneAuto k = HalfPlaneAuto::identity();
    if (!c.fixed_boundary.at_infinity)
        k = HalfPlaneAuto{0.0, -1.0, 1.0, -c.fixed_boundary.z.real()}; // z -> -1/(z - x0)
    const auto f1 = compose(compose(k, f), inverse(k)); // fixes infinity: z + shift
    const double shift = f1.b * f1.d;                   // b/d with d = +-1
    const auto scale = HalfPlaneAuto::dilation(std::abs(shift));
    return {shift > 0.0 ? 1 : -1, compose(inverse(k), scale)};
}

inline ParabolicForm parabolic_normalize(const DiskAuto& f) {
    return parabolic_normalize(cayley_transport(f));
}

// ---------------------------------------------------------------------------
// Geodesic alignment: psi with psi(0) = z and psi(t) = w for t = |(w-z)/(1-conj(z)w)|,
// mapping (-1,1) onto the geodesic through z and w.

inline DiskAuto geodesic_aligner(cplx z, cplx w) {
    if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0)
        throw DomainError("geodesic_aligner: points must lie in the open disk");
    const cplx u = (w - z) / (1.0 - std::conj(z) * w);
    if (std::abs(u) < 1e-15) throw CoincidentPoints("geodesic_aligner: z == w");
    return compose(DiskAuto::translation(z), DiskAuto::rotation(std::arg(u)));
}

} // namespace injkob
