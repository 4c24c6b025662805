#pragma once

#include <random>

#include <injkob/autos2d.hpp>
#include <injkob/moebius.hpp>

namespace testsupport {

using injkob::cplx;

inline std::mt19937& rng() {
    static std::mt19937 gen(20240817u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline cplx random_disk_point(double rmax = 0.95) {
    const double r = rmax * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, injkob::two_pi));
}

inline cplx random_halfplane_point(double span = 4.0) {
    return {uniform(-span, span), uniform(0.05, span)};
}

inline injkob::DiskAuto random_disk_auto(double center_max = 0.9) {
    return {uniform(0.0, injkob::two_pi), random_disk_point(center_max)};
}

inline injkob::HalfPlaneAuto random_halfplane_auto() {
    // Iwasawa-style sample: translation * dilation * rotation
    const double x = uniform(-3.0, 3.0);
    const double lam = std::exp(uniform(-1.5, 1.5));
    const double t = uniform(0.0, injkob::two_pi);
    const auto rot = injkob::HalfPlaneAuto{std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
    return compose(compose(injkob::HalfPlaneAuto::translation(x), injkob::HalfPlaneAuto::dilation(lam)), rot);
}

inline injkob::Pt2 random_ball_point(double rmax = 0.9) {
    const double t = uniform(0.0, injkob::two_pi);
    const double u = std::sqrt(uniform(0.0, 1.0));
    const cplx z0 = std::polar(rmax * u * std::cos(t / 2.0), uniform(0.0, injkob::two_pi));
    const double rem = rmax * rmax - std::norm(z0);
    const cplx z1 = std::polar(std::sqrt(std::max(0.0, rem * uniform(0.0, 1.0))), uniform(0.0, injkob::two_pi));
    return {z0, z1};
}

inline injkob::Pt2 random_siegel_point(double span = 2.0) {
    const cplx z{uniform(-span, span), uniform(-span, span)};
    const double w_im = std::norm(z) + uniform(0.05, span);
    return {z, cplx(uniform(-span, span), w_im)};
}

inline injkob::ProjAuto2 random_ball_auto(int factors = 3) {
    injkob::ProjAuto2 out = injkob::ProjAuto2::identity();
    for (int i = 0; i < factors; ++i) {
        out = compose(out, injkob::fuchsian_lift(random_disk_auto(0.8), uniform(0.0, injkob::two_pi)));
        injkob::Mat3 rot = injkob::Mat3::Zero();
        rot(0, 0) = std::polar(1.0, uniform(0.0, injkob::two_pi));
        rot(1, 1) = std::polar(1.0, uniform(0.0, injkob::two_pi));
        rot(2, 2) = 1.0;
        out = compose(out, injkob::ProjAuto2{injkob::Domain2::ball, rot});
    }
    return out;
}

} // namespace testsupport
