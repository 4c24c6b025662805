#pragma once

#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "autos2d.hpp"
#include "metrics.hpp"
#include "moebius.hpp"

namespace injkob {

// Parametrized analytic discs used as extremal candidates.

// {base + zeta * dir} intersected with B^2
struct BallLine {
    Pt2 base;
    Pt2 dir;
};

// L_alpha = {(z, alpha) : |z|^2 < 1 - |alpha|^2} in B^2
struct HorizontalLine {
    cplx level;
};

// G_{a,b} = {z + a w + b = 0} intersected with H_2, parametrized by w
struct SiegelGeodesic {
    cplx a;
    cplx b;
};

// {(z, outer(slope * inner(z)))} in the bidisk (or the transpose graph);
// the diagonal D_xi is {identity, xi, identity}.
struct BidiskGraph {
    DiskAuto outer;
    cplx slope = 1.0;
    DiskAuto inner;
    bool over_second = false;

    static BidiskGraph diagonal(cplx xi = 1.0) { return {DiskAuto::identity(), xi, DiskAuto::identity(), false}; }
    static BidiskGraph graph_of(const DiskAuto& g) { return {g, 1.0, DiskAuto::identity(), false}; }

    cplx value(cplx z) const { return outer.apply(slope * inner.apply(z)); }
    cplx slope_at(cplx z) const {
        const cplx u = inner.apply(z);
        return derivative(outer, slope * u) * slope * derivative(inner, z);
    }
};

// G_b = {z = -b} in H_2, parametrized by w with Im w > |b|^2
struct VerticalLine {
    cplx b;
};

using AnalyticDisc = std::variant<BallLine, HorizontalLine, SiegelGeodesic, BidiskGraph, VerticalLine>;

enum class Ambient { ball, siegel, bidisk };

inline Ambient disc_ambient(const AnalyticDisc& d) {
    struct V {
        Ambient operator()(const BallLine&) const { return Ambient::ball; }
        Ambient operator()(const HorizontalLine&) const { return Ambient::ball; }
        Ambient operator()(const SiegelGeodesic&) const { return Ambient::siegel; }
        Ambient operator()(const BidiskGraph&) const { return Ambient::bidisk; }
        Ambient operator()(const VerticalLine&) const { return Ambient::siegel; }
    };
    return std::visit(V{}, d);
}

// Affine-line form A z + B w + C = 0 (line variants only).
struct LineEq {
    cplx A, B, C;
};

inline LineEq line_eq(const AnalyticDisc& d) {
    struct V {
        LineEq operator()(const BallLine& l) const {
            if (std::abs(l.dir[0]) + std::abs(l.dir[1]) < 1e-15)
                throw VariantError("line_eq: zero direction");
            return {l.dir[1], -l.dir[0], l.base[1] * l.dir[0] - l.base[0] * l.dir[1]};
        }
        LineEq operator()(const HorizontalLine& l) const { return {0.0, 1.0, -l.level}; }
        LineEq operator()(const SiegelGeodesic& g) const { return {1.0, g.a, g.b}; }
        LineEq operator()(const BidiskGraph&) const {
            throw VariantError("line_eq: graph variant is not an affine line");
        }
        LineEq operator()(const VerticalLine& v) const { return {1.0, 0.0, v.b}; }
    };
    return std::visit(V{}, d);
}

// Residual of p against the disc locus (normalized line equation, or the
// graph defect) -- zero exactly on the disc.
inline double disc_residual(const AnalyticDisc& d, const Pt2& p) {
    if (const auto* g = std::get_if<BidiskGraph>(&d)) {
        return g->over_second ? std::abs(g->value(p[1]) - p[0]) : std::abs(g->value(p[0]) - p[1]);
    }
    const LineEq e = line_eq(d);
    const double scale = std::hypot(std::abs(e.A), std::abs(e.B));
    return std::abs(e.A * p[0] + e.B * p[1] + e.C) / scale;
}

// Point of the disc at parameter zeta.
inline Pt2 disc_point(const AnalyticDisc& d, cplx zeta) {
    struct V {
        cplx zeta;
        Pt2 operator()(const BallLine& l) const {
            return {l.base[0] + zeta * l.dir[0], l.base[1] + zeta * l.dir[1]};
        }
        Pt2 operator()(const HorizontalLine& l) const { return {zeta, l.level}; }
        Pt2 operator()(const SiegelGeodesic& g) const { return {-(g.a * zeta + g.b), zeta}; }
        Pt2 operator()(const BidiskGraph& g) const {
            return g.over_second ? Pt2{g.value(zeta), zeta} : Pt2{zeta, g.value(zeta)};
        }
        Pt2 operator()(const VerticalLine& v) const { return {-v.b, zeta}; }
    };
    return std::visit(V{zeta}, d);
}

// Parameter of a point on the disc, or nullopt when p is off the locus.
inline std::optional<cplx> disc_solve(const AnalyticDisc& d, const Pt2& p, double tol = 1e-9) {
    struct V {
        const Pt2& p;
        double tol;
        std::optional<cplx> operator()(const BallLine& l) const {
            const cplx dz0 = p[0] - l.base[0], dz1 = p[1] - l.base[1];
            const double nn = std::norm(l.dir[0]) + std::norm(l.dir[1]);
            const cplx zeta = (dz0 * std::conj(l.dir[0]) + dz1 * std::conj(l.dir[1])) / nn;
            const double res = std::abs(l.base[0] + zeta * l.dir[0] - p[0]) +
                               std::abs(l.base[1] + zeta * l.dir[1] - p[1]);
            if (res > tol) return std::nullopt;
            return zeta;
        }
        std::optional<cplx> operator()(const HorizontalLine& l) const {
            if (std::abs(p[1] - l.level) > tol) return std::nullopt;
            return p[0];
        }
        std::optional<cplx> operator()(const SiegelGeodesic& g) const {
            if (std::abs(p[0] + g.a * p[1] + g.b) > tol) return std::nullopt;
            return p[1];
        }
        std::optional<cplx> operator()(const BidiskGraph& g) const {
            const cplx zeta = g.over_second ? p[1] : p[0];
            const cplx other = g.over_second ? p[0] : p[1];
            if (std::abs(zeta) >= 1.0 || std::abs(g.value(zeta) - other) > tol) return std::nullopt;
            return zeta;
        }
        std::optional<cplx> operator()(const VerticalLine& v) const {
            if (std::abs(p[0] + v.b) > tol) return std::nullopt;
            return p[1];
        }
    };
    return std::visit(V{p, tol}, d);
}

// Tangent direction of the disc at a point on it.
inline Pt2 disc_tangent(const AnalyticDisc& d, const Pt2& p) {
    struct V {
        const Pt2& p;
        Pt2 operator()(const BallLine& l) const { return l.dir; }
        Pt2 operator()(const HorizontalLine&) const { return {1.0, 0.0}; }
        Pt2 operator()(const SiegelGeodesic& g) const { return {-g.a, 1.0}; }
        Pt2 operator()(const BidiskGraph& g) const {
            return g.over_second ? Pt2{g.slope_at(p[1]), 1.0} : Pt2{1.0, g.slope_at(p[0])};
        }
        Pt2 operator()(const VerticalLine&) const { return {0.0, 1.0}; }
    };
    return std::visit(V{p}, d);
}

// Whether the variant is one of the hard-coded unique-extremal shapes:
// complex geodesics of the ball, Siegel lines G_{a,b} / G_b, and
// diagonal-type bidisk graphs with |slope| = 1.
inline bool is_unique_extremal(const AnalyticDisc& d) {
    if (const auto* g = std::get_if<BidiskGraph>(&d))
        return std::abs(std::abs(g->slope) - 1.0) < 1e-12;
    return true;
}

// ---------------------------------------------------------------------------
// Images and intersections

// Image of a line-variant disc under an automorphism of the matching domain,
// computed on the equation form: u' = u M^{-1}.
inline AnalyticDisc line_image(const ProjAuto2& phi, const AnalyticDisc& d) {
    const Ambient amb = disc_ambient(d);
    if (amb == Ambient::bidisk) throw VariantError("line_image: graph variant");
    if ((amb == Ambient::ball) != (phi.domain == Domain2::ball))
        throw ModelMismatch("line_image: automorphism domain does not match the disc");
    const LineEq e = line_eq(d);
    const Eigen::RowVector3cd u(e.A, e.B, e.C);
    const Eigen::RowVector3cd v = u * phi.m.inverse();
    const double scale = v.cwiseAbs().maxCoeff();
    if (amb == Ambient::siegel) {
        if (std::abs(v(0)) < 1e-12 * scale)
            throw VariantError("line_image: image is a horizontal slice, not a Siegel line");
        const cplx a = v(1) / v(0), b = v(2) / v(0);
        if (std::abs(a) < 1e-12) return VerticalLine{b};
        return SiegelGeodesic{a, b};
    }
    // ball ambient: return the generic line through two of its points
    if (std::abs(v(1)) >= std::abs(v(0))) {
        const Pt2 base{0.0, -v(2) / v(1)};
        const Pt2 dir{1.0, -v(0) / v(1)};
        return BallLine{base, dir};
    }
    const Pt2 base{-v(2) / v(0), 0.0};
    const Pt2 dir{-v(1) / v(0), 1.0};
    return BallLine{base, dir};
}

struct LineIntersection {
    enum class Kind { point, parallel, coincident } kind;
    Pt2 p{0.0, 0.0};
};

inline LineIntersection line_intersect(const AnalyticDisc& d1, const AnalyticDisc& d2) {
    if (disc_ambient(d1) != disc_ambient(d2))
        throw ModelMismatch("line_intersect: different ambient domains");
    LineEq e1 = line_eq(d1), e2 = line_eq(d2);
    const auto normalize = [](LineEq& e) {
        const double s = std::max({std::abs(e.A), std::abs(e.B), std::abs(e.C)});
        e.A /= s; e.B /= s; e.C /= s;
    };
    normalize(e1);
    normalize(e2);
    const cplx det = e1.A * e2.B - e2.A * e1.B;
    if (std::abs(det) <= 1e-12) {
        const cplx m1 = e1.A * e2.C - e2.A * e1.C;
        const cplx m2 = e1.B * e2.C - e2.B * e1.C;
        if (std::abs(m1) <= 1e-12 && std::abs(m2) <= 1e-12)
            return {LineIntersection::Kind::coincident};
        return {LineIntersection::Kind::parallel};
    }
    const cplx z = (-e1.C * e2.B + e2.C * e1.B) / det;
    const cplx w = (-e1.A * e2.C + e2.A * e1.C) / det;
    return {LineIntersection::Kind::point, {z, w}};
}

// Intersection of L_alpha with its image under the ball normal form (3):
// z0 = (1 - sqrt(1-r^2) e^{-i theta}) / r, inside iff sqrt(1-r^2) < cos theta.
struct LalphaIntersection {
    cplx z0;
    bool inside;
};

inline LalphaIntersection lalpha_intersection(double r, double theta) {
    if (r <= 0.0 || r >= 1.0) throw RangeError("lalpha_intersection: r must be in (0,1)");
    const double q = std::sqrt(1.0 - r * r);
    const cplx z0 = (1.0 - q * std::polar(1.0, -theta)) / r;
    return {z0, q < std::cos(theta)};
}

// Intersection point of G_{a,b} with its image under the Heisenberg rotation
// (z,w) -> (e^{i theta} z, w+1): z0 = a/(1 - e^{i theta}), w0 = -(b + z0)/a,
// which satisfies both line equations identically.
inline Pt2 siegel_geodesic_intersection(cplx a, cplx b, double theta) {
    if (std::abs(a) < 1e-14) throw RangeError("siegel_geodesic_intersection: a must be nonzero");
    const cplx rot = 1.0 - std::polar(1.0, theta);
    if (std::abs(rot) < 1e-9)
        throw DegenerateRotation("siegel_geodesic_intersection: theta is 0 mod 2pi");
    const cplx z0 = a / rot;
    const cplx w0 = -(b + z0) / a;
    return {z0, w0};
}

// b with the self-intersection point of G_{a,b} inside H_2 by margin >= 0.1;
// b = -z0 - i t a puts the intersection at w0 = i t, and t doubles until the
// membership margin clears.
inline cplx choose_b(cplx a, double theta) {
    const cplx z0 = siegel_geodesic_intersection(a, 0.0, theta)[0];
    double t = 1.0;
    while (t - std::norm(z0) < 0.1) t *= 2.0;
    return -z0 - cplx(0.0, 1.0) * t * a;
}

// Roots of g1(z) = g2(z) inside the open disk (the cleared quadratic,
// citardauq form for a small leading coefficient).
inline std::vector<cplx> graph_intersection(const DiskAuto& g1, const DiskAuto& g2) {
    if (proj_distance(g1, g2) <= 1e-12)
        throw CoincidentMaps("graph_intersection: maps coincide");
    const cplx e1 = std::polar(1.0, g1.phase), e2 = std::polar(1.0, g2.phase);
    const cplx a1 = g1.center, a2 = g2.center;
    const cplx A = e1 * std::conj(a2) - e2 * std::conj(a1);
    const cplx B = e1 * (1.0 + a1 * std::conj(a2)) - e2 * (1.0 + a2 * std::conj(a1));
    const cplx C = e1 * a1 - e2 * a2;
    const double scale = std::max({std::abs(A), std::abs(B), std::abs(C)});
    std::vector<cplx> roots;
    if (std::abs(A) < 1e-14 * scale) {
        if (std::abs(B) >= 1e-14 * scale) roots.push_back(-C / B);
    } else {
        const cplx disc = B * B - 4.0 * A * C;
        const cplx sq = std::sqrt(disc);
        const double sgn = std::real(std::conj(B) * sq) >= 0.0 ? 1.0 : -1.0;
        const cplx q = -0.5 * (B + sgn * sq);
        roots.push_back(q / A);
        if (std::abs(q) > 1e-14 * scale) roots.push_back(C / q);
        else roots.push_back(-roots.front()); // B ~ 0: symmetric pair +-sqrt(-C/A)
    }
    std::vector<cplx> inside;
    for (cplx z : roots) {
        if (std::abs(z) >= 1.0 - 1e-9) continue;
        bool dup = false;
        for (cplx seen : inside) dup = dup || std::abs(seen - z) < 1e-10;
        if (!dup) inside.push_back(z);
    }
    return inside;
}

// Transversality margin of two discs at a common point: the angle between the
// tangent lines, or |g1' - g2'| for a pair of first-coordinate graphs.
inline double transversality(const AnalyticDisc& d1, const AnalyticDisc& d2, const Pt2& p,
                             double tol = 1e-10) {
    if (disc_residual(d1, p) > tol || disc_residual(d2, p) > tol)
        throw NotOnDisc("transversality: point not on both discs");
    const auto* g1 = std::get_if<BidiskGraph>(&d1);
    const auto* g2 = std::get_if<BidiskGraph>(&d2);
    if (g1 && g2 && !g1->over_second && !g2->over_second)
        return std::abs(g1->slope_at(p[0]) - g2->slope_at(p[0]));
    const Pt2 t1 = disc_tangent(d1, p), t2 = disc_tangent(d2, p);
    const double c = std::abs(hermitian_dot(t1, t2)) / std::sqrt(norm2(t1) * norm2(t2));
    return std::acos(std::min(1.0, c));
}

// Argument-principle fallback for isolating a zero of h: winding number of h
// around the circle |z - center| = radius, plus min |h| on the circle.
struct WindingCount {
    int winding;
    double min_abs;
};

template <class F>
WindingCount winding_count(F&& h, cplx center, double radius, int samples = 1024) {
    double total = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
    cplx prev = h(center + radius);
    min_abs = std::min(min_abs, std::abs(prev));
    for (int k = 1; k <= samples; ++k) {
        const cplx z = center + std::polar(radius, two_pi * k / samples);
        const cplx cur = h(z);
        min_abs = std::min(min_abs, std::abs(cur));
        total += std::arg(cur / prev);
        prev = cur;
    }
    return {static_cast<int>(std::lround(total / two_pi)), min_abs};
}

} // namespace injkob
