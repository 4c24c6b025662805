#pragma once

#include <string>
#include <vector>

#include "autos2d.hpp"
#include "metrics.hpp"
#include "moebius.hpp"

namespace injkob {

// Reduced word: (generator index, exponent) syllables, adjacent indices
// distinct, exponents nonzero.
struct Syllable {
    int gen;
    int exp;
};
using Word = std::vector<Syllable>;

inline int word_length(const Word& w) {
    int n = 0;
    for (const auto& s : w) n += std::abs(s.exp);
    return n;
}

inline std::string word_to_string(const Word& w, const std::vector<std::string>& labels) {
    if (w.empty()) return "1";
    std::string out;
    for (const auto& s : w) {
        if (!out.empty()) out += '.';
        out += s.gen < static_cast<int>(labels.size()) ? labels[s.gen] : "g" + std::to_string(s.gen);
        if (s.exp != 1) out += '^' + std::to_string(s.exp);
    }
    return out;
}

// Ambient traits: the point type, the invariant distance, and the element
// predicates the word machinery needs.  Presentations are kind-tagged by the
// ambient they carry.

struct DiskAmbient {
    using Auto = DiskAuto;
    using Point = cplx;
    Auto identity_element() const { return DiskAuto::identity(); }
    double distance(const Point& x, const Point& y) const { return disk_distance(x, y); }
    bool elliptic(const Auto& a) const { return classify(a).tag == ConjugacyClass::Tag::elliptic; }
    // displacement along <a^n> is eventually monotone in |n| for hyperbolic a
    bool cyclic_monotone(const Auto& a) const {
        return classify(a).tag == ConjugacyClass::Tag::hyperbolic;
    }
};

struct BidiskAmbient {
    using Auto = BidiskAuto;
    using Point = Pt2;
    Auto identity_element() const { return BidiskAuto::identity(); }
    double distance(const Point& x, const Point& y) const { return bidisk_distance(x, y); }
    bool elliptic(const Auto& a) const {
        const auto fix = [](const DiskAuto& f) {
            const auto tag = classify(f).tag;
            return tag == ConjugacyClass::Tag::elliptic || tag == ConjugacyClass::Tag::identity;
        };
        return !is_identity(a) && fix(a.first) && fix(a.second);
    }
    bool cyclic_monotone(const Auto& a) const {
        const auto hyp = [](const DiskAuto& f) {
            const auto tag = classify(f).tag;
            return tag == ConjugacyClass::Tag::hyperbolic || tag == ConjugacyClass::Tag::identity;
        };
        return !is_identity(a) && hyp(a.first) && hyp(a.second);
    }
};

struct Auto2Ambient {
    Domain2 domain = Domain2::ball;
    using Auto = ProjAuto2;
    using Point = Pt2;
    Auto identity_element() const { return ProjAuto2::identity(domain); }
    double distance(const Point& x, const Point& y) const { return domain2_distance(domain, x, y); }
    bool elliptic(const Auto& a) const { return classify2(a) == Class2::elliptic; }
    bool cyclic_monotone(const Auto&) const { return false; }
};

template <class A>
struct Presentation {
    std::vector<typename A::Auto> generators;
    std::vector<std::string> labels;
};

template <class A>
Presentation<A> make_presentation(std::vector<typename A::Auto> gens,
                                  std::vector<std::string> labels = {}) {
    for (const auto& g : gens)
        if (is_identity(g)) throw DegenerateInput("make_presentation: identity generator");
    if (labels.empty())
        for (size_t i = 0; i < gens.size(); ++i) labels.push_back("g" + std::to_string(i));
    return {std::move(gens), std::move(labels)};
}

template <class A>
struct GroupElement {
    Word word;
    typename A::Auto value;
};

inline constexpr int enumerate_max_len = 16;
inline constexpr size_t enumerate_max_count = 50000;
inline constexpr double dedup_tol = 1e-9;

// All freely reduced words of length <= max_len with their automorphisms,
// deduplicated by projective matrix distance (conservative merge).
template <class A>
std::vector<GroupElement<A>> enumerate(const A& amb, const Presentation<A>& pres, int max_len) {
    if (max_len < 0 || max_len > enumerate_max_len)
        throw BudgetExceeded("enumerate: max_len must be in [0, 16]");
    const int ngen = static_cast<int>(pres.generators.size());

    std::vector<GroupElement<A>> kept;
    const auto try_keep = [&](const Word& w, const typename A::Auto& v) {
        for (const auto& e : kept)
            if (proj_distance(e.value, v) < dedup_tol) return;
        if (kept.size() >= enumerate_max_count)
            throw BudgetExceeded("enumerate: element cap exceeded");
        kept.push_back({w, v});
    };

    struct Node {
        Word word;
        typename A::Auto value;
        int last_letter; // 2*gen + dir with dir 1 for the inverse; -1 at the root
    };
    std::vector<Node> frontier{{Word{}, amb.identity_element(), -1}};
    try_keep(frontier.front().word, frontier.front().value);

    std::vector<typename A::Auto> gen_inv;
    for (const auto& g : pres.generators) gen_inv.push_back(inverse(g));

    for (int len = 1; len <= max_len; ++len) {
        std::vector<Node> next;
        for (const auto& node : frontier) {
            for (int g = 0; g < ngen; ++g) {
                for (int dir = 0; dir < 2; ++dir) {
                    const int letter = 2 * g + dir;
                    if (node.last_letter == (letter ^ 1)) continue; // cancellation
                    Word w = node.word;
                    if (!w.empty() && w.back().gen == g) w.back().exp += dir == 0 ? 1 : -1;
                    else w.push_back({g, dir == 0 ? 1 : -1});
                    auto v = dir == 0 ? compose(node.value, pres.generators[g])
                                      : compose(node.value, gen_inv[g]);
                    try_keep(w, v);
                    next.push_back({std::move(w), std::move(v), letter});
                }
            }
        }
        frontier = std::move(next);
        if (frontier.size() > enumerate_max_count)
            throw BudgetExceeded("enumerate: frontier cap exceeded");
    }
    return kept;
}

template <class A>
struct OrbitResult {
    Word word;
    typename A::Auto element;
    double distance = 0.0;
    int search_bound = 0;
    bool certified_exact = false;
};

namespace detail {

// Cyclic search d(x, g^n(y)) over n, stopping a direction after three
// consecutive increases (displacement is eventually monotone in |n|).
template <class A>
OrbitResult<A> cyclic_min(const A& amb, const typename A::Auto& gen,
                          const typename A::Point& x, const typename A::Point& y,
                          bool skip_identity) {
    OrbitResult<A> best;
    best.element = amb.identity_element();
    best.distance = std::numeric_limits<double>::infinity();
    int bound = 0;
    if (!skip_identity) {
        best.distance = amb.distance(x, y);
        best.word = {};
    }
    for (int dir : {1, -1}) {
        auto step = dir == 1 ? gen : inverse(gen);
        auto acc = step;
        double prev = std::numeric_limits<double>::infinity();
        int increases = 0;
        for (int n = 1; n < 100000; ++n) {
            const double d = amb.distance(x, acc.apply(y));
            bound = std::max(bound, n);
            if (d < best.distance) {
                best.distance = d;
                best.word = {Syllable{0, dir * n}};
                best.element = acc;
            }
            increases = d > prev ? increases + 1 : 0;
            if (increases >= 3) break;
            prev = d;
            acc = compose(acc, step);
        }
    }
    best.search_bound = bound;
    best.certified_exact = true;
    return best;
}

} // namespace detail

// Minimum of d(x, gamma y) over the enumerated ball (exact and certified for
// cyclic groups with monotone displacement).
template <class A>
OrbitResult<A> orbit_min_distance(const A& amb, const Presentation<A>& pres,
                                  const typename A::Point& x, const typename A::Point& y,
                                  int max_len) {
    if (pres.generators.size() == 1 && amb.cyclic_monotone(pres.generators.front()))
        return detail::cyclic_min(amb, pres.generators.front(), x, y, false);
    OrbitResult<A> best;
    best.element = amb.identity_element();
    best.distance = std::numeric_limits<double>::infinity();
    for (const auto& e : enumerate(amb, pres, max_len)) {
        const double d = amb.distance(x, e.value.apply(y));
        if (d < best.distance) {
            best.distance = d;
            best.word = e.word;
            best.element = e.value;
        }
    }
    best.search_bound = max_len;
    best.certified_exact = false;
    return best;
}

// Shortest nontrivial loop through pi(x): min over nonidentity words of d(x, gamma x).
template <class A>
OrbitResult<A> min_displacement(const A& amb, const Presentation<A>& pres,
                                const typename A::Point& x, int max_len) {
    if (pres.generators.size() == 1 && amb.cyclic_monotone(pres.generators.front()))
        return detail::cyclic_min(amb, pres.generators.front(), x, x, true);
    OrbitResult<A> best;
    best.element = amb.identity_element();
    best.distance = std::numeric_limits<double>::infinity();
    for (const auto& e : enumerate(amb, pres, max_len)) {
        if (e.word.empty() || is_identity(e.value)) continue;
        const double d = amb.distance(x, e.value.apply(x));
        if (d < best.distance) {
            best.distance = d;
            best.word = e.word;
            best.element = e.value;
        }
    }
    best.search_bound = max_len;
    best.certified_exact = false;
    return best;
}

// M(X) = artanh r = (1/2) log((1+r)/(1-r)), the Kobayashi length of the
// invariant geodesic loop of the annulus X = disk / <phi>.
inline double annulus_modulus(const DiskAuto& phi) {
    const auto c = classify(phi);
    if (c.tag != ConjugacyClass::Tag::hyperbolic)
        throw WrongClass("annulus_modulus: generator is not hyperbolic");
    return c.length;
}

// Squared Moebius displacement of phi_r at s e^{i theta}:
//   tau = r^2 [1 + 4 s^2 (1-r^2) sin^2 theta / ((1-s^2)^2 + 4 r^2 s^2 sin^2 theta)].
inline double tau(double s, double r, double theta) {
    if (s < 0.0 || s >= 1.0) throw RangeError("tau: s must be in [0,1)");
    if (r <= 0.0 || r >= 1.0) throw RangeError("tau: r must be in (0,1)");
    if (theta <= 0.0 || theta >= two_pi || std::abs(std::sin(theta)) < 1e-12)
        throw RangeError("tau: theta must avoid 0 and pi mod 2pi");
    const double ss = s * s, sin2 = std::sin(theta) * std::sin(theta);
    const double den = (1.0 - ss) * (1.0 - ss) + 4.0 * r * r * ss * sin2;
    return r * r * (1.0 + 4.0 * ss * (1.0 - r * r) * sin2 / den);
}

// Kobayashi displacement eta = artanh sqrt(tau); strictly increasing in s.
inline double eta(double s, double r, double theta) { return std::atanh(std::sqrt(tau(s, r, theta))); }

// Unique s with eta(s) = target, by bisection (monotonicity gives uniqueness).
inline double eta_solve(double target, double r, double theta, double tol = 1e-12) {
    const double floor_value = std::atanh(r); // eta(0)
    if (target < floor_value - 1e-12)
        throw TargetTooSmall("eta_solve: target below artanh r");
    if (target <= floor_value) return 0.0;
    double lo = 0.0, hi = 0.5;
    while (eta(hi, r, theta) < target) {
        hi = 0.5 * (1.0 + hi);
        if (1.0 - hi < 1e-15)
            break; // eta blows up near 1; the bracket is as tight as doubles allow
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double val = eta(mid, r, theta);
        if (std::abs(val - target) < tol) return mid;
        (val < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Proper-discontinuity evidence over a finite word ball: per-basepoint minimum
// displacement plus flags for elliptic elements and near-zero displacements.
template <class A>
struct DiscontinuityReport {
    struct PerBase {
        typename A::Point base;
        double min_displacement;
        Word word;
    };
    std::vector<PerBase> basepoints;
    std::vector<Word> elliptic_flags;
    std::vector<Word> small_displacement_flags;
    bool clean = true;
};

template <class A>
DiscontinuityReport<A> proper_discontinuity_scan(const A& amb, const Presentation<A>& pres,
                                                 const std::vector<typename A::Point>& basepoints,
                                                 int max_len) {
    DiscontinuityReport<A> report;
    const auto elements = enumerate(amb, pres, max_len);
    for (const auto& e : elements) {
        if (e.word.empty() || is_identity(e.value)) continue;
        if (amb.elliptic(e.value)) {
            report.elliptic_flags.push_back(e.word);
            report.clean = false;
        }
    }
    for (const auto& x : basepoints) {
        typename DiscontinuityReport<A>::PerBase pb{x, std::numeric_limits<double>::infinity(), {}};
        for (const auto& e : elements) {
            if (e.word.empty() || is_identity(e.value)) continue;
            const double d = amb.distance(x, e.value.apply(x));
            if (d < pb.min_displacement) {
                pb.min_displacement = d;
                pb.word = e.word;
            }
            if (d < 1e-6) {
                report.small_displacement_flags.push_back(e.word);
                report.clean = false;
            }
        }
        report.basepoints.push_back(std::move(pb));
    }
    return report;
}

} // namespace injkob
