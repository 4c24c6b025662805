#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <vector>

#include "metrics.hpp"
#include "moebius.hpp"

namespace injkob {

using Mat3 = Eigen::Matrix3cd;

enum class Domain2 { ball, siegel };

namespace detail {

inline Mat3 j_form(Domain2 d) {
    Mat3 j = Mat3::Zero();
    if (d == Domain2::ball) {
        j(0, 0) = 1.0; j(1, 1) = 1.0; j(2, 2) = -1.0;
    } else {
        // v* J v = Im w - |z|^2 on homogeneous (z, w, 1)
        j(0, 0) = -1.0;
        j(1, 2) = cplx(0.0, 0.5);
        j(2, 1) = cplx(0.0, -0.5);
    }
    return j;
}

// Homogeneous Cayley matrix, ball -> Siegel:
//   (z1, z2) -> (z2/(1+z1), i(1-z1)/(1+z1)).
inline Mat3 cayley2_mat() {
    Mat3 c;
    c << 0.0, 1.0, 0.0,
         cplx(0.0, -1.0), 0.0, cplx(0.0, 1.0),
         1.0, 0.0, 1.0;
    return c;
}

inline Mat3 cayley2_mat_inv() {
    Mat3 c;
    c << 0.0, cplx(0.0, 0.5), 0.5,
         1.0, 0.0, 0.0,
         0.0, cplx(0.0, -0.5), 0.5;
    return c;
}

inline Mat3 unit_det(const Mat3& m) {
    const double ad = std::abs(m.determinant());
    if (ad <= 0.0) throw DomainError("ProjAuto2: singular matrix");
    return m / std::cbrt(ad);
}

// Residual of M* J M = lambda J with the least-squares lambda, scaled by
// ||M||^2 (the computation of M* J M rounds at that magnitude).
inline double form_residual(const Mat3& m, Domain2 d) {
    const Mat3 j = j_form(d);
    const Mat3 s = m.adjoint() * j * m;
    const double jj = j.squaredNorm();
    const double lambda = (j.adjoint() * s).trace().real() / jj;
    return (s - lambda * j).norm() / std::max(1.0, m.squaredNorm());
}

} // namespace detail

// Automorphism of B^2 or H_2 as a form-preserving projective 3x3 matrix acting
// on homogeneous coordinates (z, w, 1); |det| normalized to 1, which makes the
// multiplier of M* J M = lambda J equal to 1.
struct ProjAuto2 {
    Domain2 domain = Domain2::ball;
    Mat3 m = Mat3::Identity();

    ProjAuto2() = default;
    ProjAuto2(Domain2 d, const Mat3& matrix, double form_tol = 1e-8)
        : domain(d), m(detail::unit_det(matrix)) {
        if (detail::form_residual(m, d) > form_tol)
            throw DomainError("ProjAuto2: matrix does not preserve the domain form");
    }

    static ProjAuto2 identity(Domain2 d = Domain2::ball) { return ProjAuto2{d, Mat3::Identity()}; }

    Pt2 apply(const Pt2& p) const;
};

inline double form_residual(const ProjAuto2& f) { return detail::form_residual(f.m, f.domain); }

inline bool in_domain2(Domain2 d, const Pt2& p, double slack = boundary_slack) {
    return d == Domain2::ball ? in_ball(p, slack) : in_siegel(p, slack);
}

inline Pt2 ProjAuto2::apply(const Pt2& p) const {
    if (!in_domain2(domain, p))
        throw DomainError("apply: point outside the closed domain");
    const Eigen::Vector3cd v = m * Eigen::Vector3cd(p[0], p[1], 1.0);
    if (std::abs(v(2)) < pole_tol * v.norm())
        throw PoleError("apply: image at the hyperplane at infinity");
    return {v(0) / v(2), v(1) / v(2)};
}

inline ProjAuto2 compose(const ProjAuto2& f, const ProjAuto2& g) {
    if (f.domain != g.domain) throw ModelMismatch("compose: ball/Siegel mismatch");
    return ProjAuto2{f.domain, f.m * g.m};
}

inline ProjAuto2 inverse(const ProjAuto2& f) {
    return ProjAuto2{f.domain, f.m.inverse()};
}

inline ProjAuto2 power2(const ProjAuto2& f, int n) {
    if (n == 0) return ProjAuto2::identity(f.domain);
    ProjAuto2 base = n < 0 ? inverse(f) : f;
    ProjAuto2 acc = ProjAuto2::identity(f.domain);
    for (int k = std::abs(n); k > 0; k >>= 1) {
        if (k & 1) acc = compose(acc, base);
        if (k > 1) base = compose(base, base);
    }
    return acc;
}

// Projective distance: both matrices scaled by their largest-modulus entry,
// then compared in Frobenius norm.
inline double proj_distance2(const ProjAuto2& f, const ProjAuto2& g) {
    const auto scale = [](const Mat3& m) -> Mat3 {
        Eigen::Index i, j;
        m.cwiseAbs().maxCoeff(&i, &j);
        return m / m(i, j);
    };
    return (scale(f.m) - scale(g.m)).norm();
}

inline bool is_identity2(const ProjAuto2& f, double eps = 1e-9) {
    return proj_distance2(f, ProjAuto2::identity(f.domain)) <= eps;
}

inline double proj_distance(const ProjAuto2& f, const ProjAuto2& g) { return proj_distance2(f, g); }
inline bool is_identity(const ProjAuto2& f, double eps = 1e-9) { return is_identity2(f, eps); }

// ---------------------------------------------------------------------------
// Normal forms

// (z, w) -> ((z+r)/(1+rz), e^{i theta} sqrt(1-r^2) w / (1+rz))
inline ProjAuto2 ball_hyperbolic(double r, double theta) {
    if (r <= 0.0 || r >= 1.0) throw RangeError("ball_hyperbolic: r must be in (0,1)");
    Mat3 m;
    m << 1.0, 0.0, r,
         0.0, std::polar(std::sqrt(1.0 - r * r), theta), 0.0,
         r, 0.0, 1.0;
    return ProjAuto2{Domain2::ball, m};
}

// (z, w) -> (e^{i theta} z, w + 1) on H_2
inline ProjAuto2 siegel_parabolic_heisenberg(double theta) {
    Mat3 m;
    m << std::polar(1.0, theta), 0.0, 0.0,
         0.0, 1.0, 1.0,
         0.0, 0.0, 1.0;
    return ProjAuto2{Domain2::siegel, m};
}

// (z, w) -> (z - i, w - 2z + i) on H_2
inline ProjAuto2 siegel_parabolic_shear() {
    Mat3 m;
    m << 1.0, 0.0, cplx(0.0, -1.0),
         -2.0, 1.0, cplx(0.0, 1.0),
         0.0, 0.0, 1.0;
    return ProjAuto2{Domain2::siegel, m};
}

// Extension of a disk automorphism to B^2 with a free phase on the fiber:
//   (z, w) -> (phi(z), e^{i psi} sqrt(1-|alpha|^2) w / (1 + conj(alpha) z)).
inline ProjAuto2 fuchsian_lift(const DiskAuto& phi, double psi) {
    const cplx e = std::polar(1.0, phi.phase);
    const cplx alpha = phi.center;
    Mat3 m;
    m << e, 0.0, e * alpha,
         0.0, std::polar(std::sqrt(1.0 - std::norm(alpha)), psi), 0.0,
         std::conj(alpha), 0.0, 1.0;
    return ProjAuto2{Domain2::ball, m};
}

// ---------------------------------------------------------------------------
// Cayley transport between B^2 and H_2

inline Pt2 cayley2(const Pt2& p) {
    const cplx den = 1.0 + p[0];
    if (std::abs(den) < pole_tol) throw PoleError("cayley2: pole at z1 = -1");
    return {p[1] / den, cplx(0.0, 1.0) * (1.0 - p[0]) / den};
}

inline Pt2 cayley2_inverse(const Pt2& p) {
    const cplx den = 1.0 - cplx(0.0, 1.0) * p[1];
    if (std::abs(den) < pole_tol) throw PoleError("cayley2_inverse: pole at w = -i");
    return {(1.0 + cplx(0.0, 1.0) * p[1]) / den, 2.0 * p[0] / den};
}

inline ProjAuto2 to_siegel(const ProjAuto2& f) {
    if (f.domain == Domain2::siegel) return f;
    return ProjAuto2{Domain2::siegel, detail::cayley2_mat() * f.m * detail::cayley2_mat_inv()};
}

inline ProjAuto2 to_ball(const ProjAuto2& f) {
    if (f.domain == Domain2::ball) return f;
    return ProjAuto2{Domain2::ball, detail::cayley2_mat_inv() * f.m * detail::cayley2_mat()};
}

// Kobayashi distance of the tagged domain (H_2 through the Cayley map).
inline double domain2_distance(Domain2 d, const Pt2& p, const Pt2& q) {
    if (d == Domain2::ball) return ball_distance(p, q);
    return ball_distance(cayley2_inverse(p), cayley2_inverse(q));
}

// ---------------------------------------------------------------------------
// Classification by fixed points in the closed ball

enum class Class2 { hyperbolic, parabolic, elliptic };

inline Class2 classify2(const ProjAuto2& f, double eps = 1e-6) {
    const Mat3 m = to_ball(f).m;
    Eigen::ComplexEigenSolver<Mat3> es(m);
    if (es.info() != Eigen::Success)
        throw ToleranceAmbiguity("classify2: eigensolver failed");
    std::vector<Pt2> interior, boundary;
    for (int k = 0; k < 3; ++k) {
        const Eigen::Vector3cd v = es.eigenvectors().col(k);
        // keep genuine eigenvectors only (defective matrices yield filler columns)
        if ((m * v - es.eigenvalues()(k) * v).norm() > 1e-6 * m.norm() * v.norm()) continue;
        if (std::abs(v(2)) <= eps * v.norm()) continue; // hyperplane at infinity
        const Pt2 p{v(0) / v(2), v(1) / v(2)};
        const double n = std::sqrt(norm2(p));
        auto& bucket = n < 1.0 - eps ? interior : boundary;
        if (n > 1.0 + eps) continue; // reflected fixed point outside the ball
        bool dup = false;
        for (const auto& q : bucket)
            dup = dup || (std::abs(p[0] - q[0]) + std::abs(p[1] - q[1]) <= 10 * eps);
        if (!dup) bucket.push_back(p);
    }
    if (!interior.empty()) return Class2::elliptic;
    if (boundary.size() >= 2) return Class2::hyperbolic;
    if (boundary.size() == 1) return Class2::parabolic;
    throw ToleranceAmbiguity("classify2: no fixed point resolved in the closed ball");
}

// Reads (r, theta) off a matrix in ball_hyperbolic form.
struct BallNormalParams { double r; double theta; };

inline BallNormalParams ball_normal_params(const ProjAuto2& f) {
    if (f.domain != Domain2::ball) throw ModelMismatch("ball_normal_params: ball form required");
    const Mat3& m = f.m;
    const cplx scale = m(0, 0);
    const double off = std::abs(m(0, 1)) + std::abs(m(1, 0)) + std::abs(m(1, 2)) + std::abs(m(2, 1));
    if (std::abs(scale) < 1e-12 || off > 1e-9 * m.norm())
        throw WrongClass("ball_normal_params: matrix not in hyperbolic normal form");
    const cplx r01 = m(0, 2) / scale;
    const cplx r10 = m(2, 0) / scale;
    const cplx one = m(2, 2) / scale;
    if (std::abs(r01 - r10) > 1e-9 || std::abs(one - 1.0) > 1e-9 || std::abs(r01.imag()) > 1e-9)
        throw WrongClass("ball_normal_params: matrix not in hyperbolic normal form");
    const double r = r01.real();
    if (r <= 0.0 || r >= 1.0) throw WrongClass("ball_normal_params: r outside (0,1)");
    return {r, wrap_angle(std::arg(m(1, 1) / scale))};
}

// ---------------------------------------------------------------------------
// Bidisk automorphisms act coordinatewise.

struct BidiskAuto {
    DiskAuto first, second;

    static BidiskAuto identity() { return {}; }

    Pt2 apply(const Pt2& p) const { return {first.apply(p[0]), second.apply(p[1])}; }
};

inline BidiskAuto compose(const BidiskAuto& f, const BidiskAuto& g) {
    return {compose(f.first, g.first), compose(f.second, g.second)};
}

inline BidiskAuto inverse(const BidiskAuto& f) {
    return {inverse(f.first), inverse(f.second)};
}

inline double angle_distance(double a, double b) {
    const double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, two_pi - d);
}

inline double proj_distance(const DiskAuto& f, const DiskAuto& g) {
    return angle_distance(f.phase, g.phase) + std::abs(f.center - g.center);
}

inline double proj_distance(const BidiskAuto& f, const BidiskAuto& g) {
    return std::max(proj_distance(f.first, g.first), proj_distance(f.second, g.second));
}

inline bool is_identity(const BidiskAuto& f, double eps = classify_tol) {
    return is_identity(f.first, eps) && is_identity(f.second, eps);
}

} // namespace injkob
