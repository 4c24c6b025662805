#include <catch2/catch_amalgamated.hpp>

#include <injkob/discs.hpp>

#include "test_support.hpp"

using namespace injkob;
using testsupport::uniform;

namespace {
double dist2(const Pt2& p, const Pt2& q) { return std::abs(p[0] - q[0]) + std::abs(p[1] - q[1]); }
}

TEST_CASE("disc parametrization round trips") {
    const std::vector<AnalyticDisc> discs{
        BallLine{{0.1, 0.2}, {cplx(0.3, 0.1), 1.0}},
        HorizontalLine{0.25},
        SiegelGeodesic{cplx(1.0, 0.5), cplx(-0.5, -2.0)},
        BidiskGraph::graph_of(DiskAuto::normal_form(0.4)),
        VerticalLine{cplx(1.0, 0.0)},
    };
    for (const auto& d : discs) {
        for (int i = 0; i < 20; ++i) {
            const cplx zeta = disc_ambient(d) == Ambient::bidisk
                                  ? testsupport::random_disk_point(0.8)
                                  : cplx(uniform(-0.5, 0.5), uniform(1.2, 2.0));
            const Pt2 p = disc_point(d, zeta);
            REQUIRE(disc_residual(d, p) < 1e-12);
            const auto back = disc_solve(d, p);
            REQUIRE(back.has_value());
            REQUIRE(std::abs(*back - zeta) < 1e-10);
        }
        REQUIRE_FALSE(disc_solve(d, Pt2{cplx(0.11, 0.07), cplx(5.0, 9.0)}).has_value());
    }
}

TEST_CASE("line_image") {
    const AnalyticDisc lalpha = HorizontalLine{0.1};
    SECTION("identity maps a disc to itself") {
        const auto img = line_image(ProjAuto2::identity(), lalpha);
        for (int i = 0; i < 10; ++i) {
            const Pt2 p = disc_point(lalpha, cplx(uniform(-0.5, 0.5), uniform(-0.5, 0.5)));
            REQUIRE(disc_residual(img, p) < 1e-13);
        }
    }
    SECTION("ball normal form sends L_alpha to the displayed line") {
        const double r = 0.7, theta = 0.4, alpha = 0.1;
        const auto phi = ball_hyperbolic(r, theta);
        const auto img = line_image(phi, AnalyticDisc{HorizontalLine{alpha}});
        for (int i = 0; i < 100; ++i) {
            const cplx z = testsupport::random_disk_point(0.8);
            if (std::norm(z) >= 1.0 - alpha * alpha) continue;
            const Pt2 q = phi.apply({z, alpha});
            REQUIRE(disc_residual(img, q) < 1e-12);
            // w' = alpha e^{i theta} (1 - r z') / sqrt(1 - r^2) on the image
            const cplx expected =
                alpha * std::polar(1.0, theta) * (1.0 - r * q[0]) / std::sqrt(1.0 - r * r);
            REQUIRE(std::abs(q[1] - expected) < 1e-12);
        }
    }
    SECTION("heisenberg rotation maps G_{a,b} to a Siegel line") {
        const cplx a{1.0, 0.3}, b{-0.2, -2.0};
        const double theta = 1.1;
        const auto gamma = siegel_parabolic_heisenberg(theta);
        const auto img = line_image(gamma, AnalyticDisc{SiegelGeodesic{a, b}});
        const auto* gg = std::get_if<SiegelGeodesic>(&img);
        REQUIRE(gg != nullptr);
        REQUIRE(std::abs(gg->a - a * std::polar(1.0, theta)) < 1e-12);
        REQUIRE(std::abs(gg->b - (b - a) * std::polar(1.0, theta)) < 1e-12);
        for (int i = 0; i < 100; ++i) {
            const cplx w = cplx(uniform(-1.0, 1.0), uniform(5.0, 9.0));
            const Pt2 p = disc_point(AnalyticDisc{SiegelGeodesic{a, b}}, w);
            if (siegel_margin(p) <= 0.0) continue;
            REQUIRE(disc_residual(img, gamma.apply(p)) < 1e-12);
        }
    }
    REQUIRE_THROWS_AS(line_image(ProjAuto2::identity(), AnalyticDisc{BidiskGraph::diagonal()}),
                      VariantError);
    REQUIRE_THROWS_AS(line_image(siegel_parabolic_shear(), lalpha), ModelMismatch);
}

TEST_CASE("line_intersect") {
    const AnalyticDisc lalpha = HorizontalLine{0.35};
    SECTION("a line is coincident with itself") {
        REQUIRE(line_intersect(lalpha, lalpha).kind == LineIntersection::Kind::coincident);
    }
    SECTION("{w = alpha} meets {z = 0} at (0, alpha)") {
        const AnalyticDisc axis = BallLine{{0.0, 0.0}, {0.0, 1.0}};
        const auto hit = line_intersect(lalpha, axis);
        REQUIRE(hit.kind == LineIntersection::Kind::point);
        REQUIRE(dist2(hit.p, {0.0, 0.35}) < 1e-13);
    }
    SECTION("L_alpha meets its image at z0") {
        const double r = 0.99, theta = 0.1, alpha = 0.1;
        const auto img = line_image(ball_hyperbolic(r, theta), AnalyticDisc{HorizontalLine{alpha}});
        const auto hit = line_intersect(AnalyticDisc{HorizontalLine{alpha}}, img);
        REQUIRE(hit.kind == LineIntersection::Kind::point);
        REQUIRE(std::abs(hit.p[0] - lalpha_intersection(r, theta).z0) < 1e-12);
        REQUIRE(std::abs(hit.p[1] - alpha) < 1e-13);
    }
    SECTION("parallel horizontal lines") {
        REQUIRE(line_intersect(lalpha, AnalyticDisc{HorizontalLine{0.2}}).kind ==
                LineIntersection::Kind::parallel);
    }
}

TEST_CASE("lalpha_intersection") {
    SECTION("r = 0.99, theta = 0.1 lands inside") {
        const auto [z0, inside] = lalpha_intersection(0.99, 0.1);
        REQUIRE(inside);
        REQUIRE(std::abs(std::abs(z0) - 0.8684) < 2e-4);
        REQUIRE(std::abs(z0) < 1.0);
    }
    SECTION("r = 0.5, theta = pi/2 stays outside") {
        REQUIRE_FALSE(lalpha_intersection(0.5, std::numbers::pi / 2.0).inside);
    }
    SECTION("the closed-form point lies on both lines") {
        for (int i = 0; i < 50; ++i) {
            const double r = uniform(0.05, 0.99), theta = uniform(0.0, two_pi);
            const auto z0 = lalpha_intersection(r, theta).z0;
            const double alpha = 0.05;
            const cplx w_img = alpha * std::polar(1.0, theta) * (1.0 - r * z0) / std::sqrt(1.0 - r * r);
            REQUIRE(std::abs(w_img - alpha) < 1e-13); // both equations give w = alpha at z0
        }
    }
    SECTION("predicate equivalence on a grid") {
        for (int i = 0; i < 50; ++i) {
            for (int j = 0; j < 50; ++j) {
                const double r = 0.02 + 0.96 * i / 49.0;
                const double theta = 0.03 + 3.05 * j / 49.0;
                const auto [z0, inside] = lalpha_intersection(r, theta);
                const double lhs = std::norm(z0) - 1.0;
                const double rhs = std::sqrt(1.0 - r * r) - std::cos(theta);
                REQUIRE((lhs < 0.0) == (rhs < 0.0));
                REQUIRE((lhs < 0.0) == inside);
            }
        }
    }
}

TEST_CASE("siegel_geodesic_intersection") {
    SECTION("worked example (a, b) = (1, -1/2 - 2i), theta = pi") {
        const Pt2 p = siegel_geodesic_intersection(1.0, cplx(-0.5, -2.0), std::numbers::pi);
        REQUIRE(dist2(p, {0.5, cplx(0.0, 2.0)}) < 1e-14);
        REQUIRE(siegel_margin(p) > 0.0); // 2 > 1/4
    }
    SECTION("residuals of both defining equations") {
        for (int i = 0; i < 100; ++i) {
            const cplx a{uniform(-2.0, 2.0), uniform(-2.0, 2.0)};
            const cplx b{uniform(-2.0, 2.0), uniform(-2.0, 2.0)};
            const double theta = uniform(0.3, two_pi - 0.3);
            if (std::abs(a) < 0.1) continue;
            const Pt2 p = siegel_geodesic_intersection(a, b, theta);
            REQUIRE(std::abs(p[0] + a * p[1] + b) < 1e-12);
            REQUIRE(std::abs(std::polar(1.0, theta) * p[0] + a * (p[1] + 1.0) + b) < 1e-12);
        }
    }
    SECTION("membership margin grows linearly in |Im b|") {
        double prev = -1e9;
        for (double t = 1.0; t <= 64.0; t *= 2.0) {
            const cplx b = cplx(-0.5, 0.0) - cplx(0.0, t);
            const Pt2 p = siegel_geodesic_intersection(1.0, b, std::numbers::pi);
            const double margin = siegel_margin(p);
            REQUIRE(std::abs(margin - (t - 0.25)) < 1e-12);
            REQUIRE(margin > prev);
            prev = margin;
        }
    }
    REQUIRE_THROWS_AS(siegel_geodesic_intersection(1.0, 0.0, 1e-12), DegenerateRotation);
}

TEST_CASE("choose_b") {
    for (double theta : {std::numbers::pi, std::numbers::pi / 3.0, 2.4}) {
        for (cplx a : {cplx(1.0), cplx(2.0), cplx(0.3, 0.8)}) {
            const cplx b = choose_b(a, theta);
            const Pt2 p = siegel_geodesic_intersection(a, b, theta);
            REQUIRE(siegel_margin(p) >= 0.1);
        }
    }
}

TEST_CASE("graph_intersection") {
    SECTION("phi_0.5 against the identity has no interior root") {
        REQUIRE(graph_intersection(DiskAuto::normal_form(0.5), DiskAuto::identity()).empty());
    }
    SECTION("maps agreeing at 0 meet at 0") {
        const auto g1 = DiskAuto::translation(0.3);
        const auto g2 = compose(DiskAuto::translation(0.3), DiskAuto::rotation(1.0));
        const auto roots = graph_intersection(g1, g2);
        bool zero_found = false;
        for (cplx z : roots) zero_found = zero_found || std::abs(z) < 1e-12;
        REQUIRE(zero_found);
    }
    SECTION("roots reproduce g1 = g2 and there are at most two") {
        for (int i = 0; i < 200; ++i) {
            const auto g1 = testsupport::random_disk_auto();
            const auto g2 = testsupport::random_disk_auto();
            if (proj_distance(g1, g2) < 1e-6) continue;
            const auto roots = graph_intersection(g1, g2);
            REQUIRE(roots.size() <= 2);
            for (cplx z : roots) REQUIRE(std::abs(g1.apply(z) - g2.apply(z)) < 1e-11);
        }
    }
    REQUIRE_THROWS_AS(graph_intersection(DiskAuto::normal_form(0.5), DiskAuto::normal_form(0.5)),
                      CoincidentMaps);
}

TEST_CASE("transversality") {
    SECTION("coordinate lines meet at a right angle") {
        const AnalyticDisc h = BallLine{{0.0, 0.0}, {1.0, 0.0}};
        const AnalyticDisc v = BallLine{{0.0, 0.0}, {0.0, 1.0}};
        REQUIRE(std::abs(transversality(h, v, {0.0, 0.0}) - std::numbers::pi / 2.0) < 1e-13);
    }
    SECTION("L_alpha against its image at the closed-form point") {
        const double r = 0.99, theta = 0.1;
        const auto [z0, inside] = lalpha_intersection(r, theta);
        REQUIRE(inside);
        const double alpha = 0.1;
        const AnalyticDisc l = HorizontalLine{alpha};
        const auto img = line_image(ball_hyperbolic(r, theta), l);
        const Pt2 p{z0, alpha};
        REQUIRE(transversality(l, img, p) > 1e-8);
    }
    SECTION("graph margin is the derivative difference") {
        const auto g1 = DiskAuto::translation(0.3);
        const auto g2 = compose(DiskAuto::translation(0.3), DiskAuto::rotation(1.0));
        const AnalyticDisc d1 = BidiskGraph::graph_of(g1);
        const AnalyticDisc d2 = BidiskGraph::graph_of(g2);
        const Pt2 p{0.0, 0.3};
        const double margin = transversality(d1, d2, p);
        REQUIRE(std::abs(margin - std::abs(derivative(g1, 0.0) - derivative(g2, 0.0))) < 1e-13);
        REQUIRE(margin > 1e-8);
    }
    REQUIRE_THROWS_AS(transversality(AnalyticDisc{HorizontalLine{0.1}},
                                     AnalyticDisc{HorizontalLine{0.2}}, Pt2{0.0, 0.1}),
                      NotOnDisc);
}

TEST_CASE("winding_count") {
    const auto simple = [](cplx z) { return z - cplx(1e-4, 2e-4); };
    REQUIRE(winding_count(simple, 0.0, 1e-3).winding == 1);
    const auto dbl = [](cplx z) { return z * z; };
    REQUIRE(winding_count(dbl, 0.0, 1e-3).winding == 2);
    const auto off = [](cplx z) { return z - 5.0; };
    REQUIRE(winding_count(off, 0.0, 1e-3).winding == 0);
    REQUIRE(winding_count(off, 0.0, 1e-3).min_abs > 4.9);
}
