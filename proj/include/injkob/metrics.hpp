#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "moebius.hpp"

namespace injkob {

// Point of C^2 (bidisk, ball, Siegel domain).
using Pt2 = std::array<cplx, 2>;

inline cplx hermitian_dot(const Pt2& p, const Pt2& q) {
    return p[0] * std::conj(q[0]) + p[1] * std::conj(q[1]);
}

inline double norm2(const Pt2& p) { return std::norm(p[0]) + std::norm(p[1]); }

inline bool in_disk(cplx z, double slack = boundary_slack) { return std::abs(z) < 1.0 + slack; }
inline bool in_ball(const Pt2& p, double slack = boundary_slack) { return norm2(p) < 1.0 + slack; }
inline bool in_bidisk(const Pt2& p, double slack = boundary_slack) {
    return in_disk(p[0], slack) && in_disk(p[1], slack);
}
// Defining inequality of H_2 = { Im w > |z|^2 }; positive inside.
inline double siegel_margin(const Pt2& p) { return p[1].imag() - std::norm(p[0]); }
inline bool in_siegel(const Pt2& p, double slack = boundary_slack) {
    return siegel_margin(p) > -slack;
}

// Normalization: omega(0, 1) = 1 on the disk, so d(0, t) = artanh t and the
// half-plane density is |dw| / (2 Im w).

inline double poincare_metric(cplx z, cplx v) {
    if (std::abs(z) >= 1.0) throw DomainError("poincare_metric: |z| must be < 1");
    return std::abs(v) / (1.0 - std::norm(z));
}

inline double mobius_distance(cplx z, cplx w) {
    if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0)
        throw DomainError("mobius_distance: points must lie in the open disk");
    return std::abs((z - w) / (1.0 - std::conj(w) * z));
}

inline double disk_distance(cplx z, cplx w) { return std::atanh(mobius_distance(z, w)); }

inline double halfplane_distance(cplx z, cplx w) {
    if (z.imag() <= 0.0 || w.imag() <= 0.0)
        throw DomainError("halfplane_distance: points must have positive imaginary part");
    return std::atanh(std::abs((z - w) / (z - std::conj(w))));
}

inline double bidisk_metric(const Pt2& p, const Pt2& v) {
    if (!in_bidisk(p, 0.0)) throw DomainError("bidisk_metric: point outside the bidisk");
    return std::max(poincare_metric(p[0], v[0]), poincare_metric(p[1], v[1]));
}

inline double bidisk_distance(const Pt2& p, const Pt2& q) {
    if (!in_bidisk(p, 0.0) || !in_bidisk(q, 0.0))
        throw DomainError("bidisk_distance: points outside the bidisk");
    return std::max(disk_distance(p[0], q[0]), disk_distance(p[1], q[1]));
}

// Kobayashi metric of B^2 normalized so ball_metric(0, v) = |v|:
//   k(p, v)^2 = ((1-|p|^2)|v|^2 + |<p,v>|^2) / (1-|p|^2)^2.
inline double ball_metric(const Pt2& p, const Pt2& v) {
    const double s = 1.0 - norm2(p);
    if (s <= 0.0) throw DomainError("ball_metric: point outside the ball");
    const double num = s * norm2(v) + std::norm(hermitian_dot(v, p));
    return std::sqrt(num) / s;
}

inline double ball_distance(const Pt2& p, const Pt2& q) {
    const double sp = 1.0 - norm2(p), sq = 1.0 - norm2(q);
    if (sp <= 0.0 || sq <= 0.0) throw DomainError("ball_distance: point outside the ball");
    const double t = 1.0 - sp * sq / std::norm(1.0 - hermitian_dot(p, q));
    return std::atanh(std::sqrt(std::max(t, 0.0)));
}

// Distance inside the vertical slice {0} x {Im w > 0} of H_2, density |dw|/(2 Im w).
inline double siegel_slice_distance(cplx w1, cplx w2) {
    if (w1.imag() <= 0.0 || w2.imag() <= 0.0)
        throw DomainError("siegel_slice_distance: Im w must be positive");
    return halfplane_distance(w1, w2);
}

// Distance inside the disk D_s = {(z, is) : |z|^2 < s} of radius sqrt(s).
inline double ds_disk_distance(double s, cplx z1, cplx z2) {
    if (s <= 0.0) throw DomainError("ds_disk_distance: s must be positive");
    const double rs = std::sqrt(s);
    if (std::abs(z1) >= rs || std::abs(z2) >= rs)
        throw DomainError("ds_disk_distance: point outside the slice disk");
    return std::atanh(mobius_distance(z1 / rs, z2 / rs));
}

enum class EscapeKind { heisenberg, shear };

// Upper bound for d_K(a_s, phi(a_s)) along the explicit paths:
//   heisenberg (a_s = (0, is)):   horizontal segment, length 1/(2s);
//   shear (a_s = (i, is)):        vertical segment in the slice plus a chord of
//                                 D_s, length log(s/(s-1))/2 + artanh(1/sqrt(s)).
inline double parabolic_escape_bound(EscapeKind kind, double s) {
    if (s <= 1.0) throw DomainError("parabolic_escape_bound: s must be > 1");
    if (kind == EscapeKind::heisenberg) return 0.5 / s;
    return 0.5 * std::log(s / (s - 1.0)) + std::atanh(1.0 / std::sqrt(s));
}

} // namespace injkob
