#include "klytor/positivity.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace klytor;
using kt::q;

namespace {

Filtration three_step(const QVec& line, const QMat& plane) {
    return Filtration::make(3, {Breakpoint{Rat(2), Subspace::line(line)}, Breakpoint{Rat(0), canonicalize(plane, 3)},
                                Breakpoint{Rat(-1), Subspace::full(3)}});
}

// Rank 3 on P^2 found by a seeded search over small flags: nef, not globally generated.
KlyachkoBundle nef_not_gg() {
    return build_bundle(projective_space_fan(2),
                        {three_step(q({1, 0, 1}), {q({1, 0, 0}), q({0, 0, 1})}),
                         three_step(q({0, 1, 1}), {q({0, 1, 0}), q({0, 0, 1})}),
                         three_step(q({1, 1, -1}), {q({1, 0, -1}), q({0, 1, 0})})});
}

KlyachkoBundle trivial_bundle(const Fan& f, std::size_t r) {
    return build_bundle(f, std::vector<Filtration>(f.num_rays(), Filtration::trivial(r)));
}

std::vector<IVec> box(long lo, long hi, std::size_t n) {
    std::vector<IVec> out{{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<IVec> next;
        for (const auto& p : out)
            for (long x = lo; x <= hi; ++x) {
                IVec v = p;
                v.push_back(x);
                next.push_back(v);
            }
        out = next;
    }
    return out;
}

}  // namespace

TEST(Positivity, TangentPlane) {
    auto b = example_tangent_pn(2);
    EXPECT_TRUE(is_nef(b));
    EXPECT_TRUE(is_ample(b));
    EXPECT_TRUE(is_globally_generated(b));
    EXPECT_TRUE(is_buildingwise_convex(b));
    EXPECT_TRUE(is_fanwise_convex(b));
    // on cone(e1, e2) the generators span v1 and v2 and w1, w2 are vertices of their polytopes
    auto cert = gg_certificate(b, 2);
    ASSERT_TRUE(cert.ok);
    for (std::size_t i = 0; i < 2; ++i) {
        const QVec& u = cert.characters[i];
        QVec line = u == q({1, 0}) ? q({1, 0}) : q({0, 1});
        EXPECT_EQ(Subspace::line(cert.generators[i]), Subspace::line(line));
        auto p = polytope_of(pl_valuation(b, cert.generators[i]));
        const auto& verts = p.vertices();
        EXPECT_NE(std::find(verts.begin(), verts.end(), u), verts.end());
    }
    auto rep = positivity_report(b);
    EXPECT_EQ(rep.walls.size(), 3u);
    for (const auto& w : rep.walls)
        EXPECT_EQ(w.degrees, (std::vector<Rat>{1, 2}));
    EXPECT_TRUE(rep.nef && rep.ample && rep.globally_generated && rep.buildingwise_convex && rep.fanwise_convex);
}

TEST(Positivity, TrivialAndLineBundles) {
    auto o2 = trivial_bundle(projective_space_fan(2), 2);
    EXPECT_TRUE(is_nef(o2));
    EXPECT_FALSE(is_ample(o2));
    EXPECT_TRUE(is_globally_generated(o2));
    EXPECT_TRUE(is_fanwise_convex(o2));
    EXPECT_TRUE(is_buildingwise_convex(o2));

    // O(-1) on P^1: P_phi empty
    auto om = line_bundle(projective_space_fan(1), q({0, -1}));
    EXPECT_TRUE(polytope_of(PLFunction::from_ray_values(projective_space_fan(1), q({0, -1}))).is_empty());
    EXPECT_FALSE(is_globally_generated(om));
    EXPECT_FALSE(is_nef(om));

    // pullback of O(1) from the first factor of P^1 x P^1: degree 0 on the fibres
    auto pb = line_bundle(product_p1_fan(2), q({1, 0, 0, 0}));
    EXPECT_TRUE(is_nef(pb));
    EXPECT_FALSE(is_ample(pb));
    EXPECT_TRUE(is_globally_generated(pb));
}

TEST(Positivity, RejectsBadInput) {
    Fan quadrant(2, {{1, 0}, {0, 1}}, {{0, 1}});
    auto b = line_bundle(quadrant, q({1, 1}));
    EXPECT_THROW(is_nef(b), std::invalid_argument);
    EXPECT_THROW(is_globally_generated(b), std::invalid_argument);
    auto half = line_bundle(projective_space_fan(2), QVec{Rat(1, 2), Rat(0), Rat(0)});
    EXPECT_FALSE(half.is_integral());
    EXPECT_THROW(is_ample(half), std::invalid_argument);
}

TEST(Positivity, NefButNotGloballyGenerated) {
    auto b = nef_not_gg();
    EXPECT_TRUE(is_nef(b));
    EXPECT_TRUE(is_buildingwise_convex(b));
    EXPECT_FALSE(is_globally_generated(b));
    EXPECT_FALSE(is_fanwise_convex(b));

    // brute force: on some cone, the small vectors e with u_i in P_{v(e)} contain no basis
    std::map<QVec, PLFunction> val;
    std::vector<QVec> probes;
    for (const auto& p : box(-2, 2, 3)) {
        QVec e = to_qvec(p);
        if (is_zero(e) || primitive(e) != p)
            continue;
        probes.push_back(e);
        val.emplace(e, pl_valuation(b, e));
    }
    bool some_cone_fails = false;
    for (std::size_t c = 0; c < b.fan().num_cones(); ++c) {
        const auto& chars = b.compat(c).characters;
        std::vector<std::vector<QVec>> cand(3);
        for (std::size_t i = 0; i < 3; ++i)
            for (const auto& e : probes)
                if (polytope_of(val.at(e)).contains(chars[i]))
                    cand[i].push_back(e);
        bool found = false;
        for (const auto& a : cand[0])
            for (const auto& bb : cand[1])
                for (const auto& cc : cand[2])
                    found = found || rank({a, bb, cc}, 3) == 3;
        some_cone_fails = some_cone_fails || !found;
        EXPECT_EQ(found, gg_certificate(b, c).ok);
    }
    EXPECT_TRUE(some_cone_fails);
}

TEST(Positivity, SearchFindsNefNotGloballyGenerated) {
    // the search is the oracle: seeded sweep of rank 3 flags on P^2 with levels in [-1, 2]
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> d(-1, 1), lv(-1, 2);
    Fan f = projective_space_fan(2);
    int found = 0;
    for (int t = 0; t < 3000 && found == 0; ++t) {
        std::vector<Filtration> fs;
        for (std::size_t k = 0; k < 3; ++k) {
            QMat m;
            for (int i = 0; i < 3; ++i)
                m.push_back(QVec{Rat(d(rng)), Rat(d(rng)), Rat(d(rng))});
            if (rank(m, 3) != 3)
                break;
            fs.push_back(Filtration::from_frame(m, QVec{Rat(lv(rng)), Rat(lv(rng)), Rat(lv(rng))}));
        }
        if (fs.size() != 3)
            continue;
        auto b = build_bundle(f, fs);
        if (is_nef(b) && !is_globally_generated(b)) {
            ++found;
            EXPECT_TRUE(is_buildingwise_convex(b));
            EXPECT_FALSE(is_fanwise_convex(b));
        }
    }
    EXPECT_GT(found, 0);
}

TEST(Positivity, RankOneMatchesConvexity) {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 30; ++t) {
        Fan f = kt::random_smooth_fan_2d(rng, t % 3);
        auto phi = kt::random_integral_pl(rng, f, -2, 2);
        auto b = line_bundle(f, phi.values_on_rays());
        bool convex = is_convex(phi);
        EXPECT_EQ(is_nef(b), convex);
        EXPECT_EQ(is_globally_generated(b), convex);
        EXPECT_TRUE(equal_pl(pl_valuation(b, q({1})), phi));
    }
}

TEST(Positivity, CrossChecksAgreeOnRandomBundles) {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<int> d(-1, 1), lv(-1, 2);
    int nef = 0, gg = 0;
    for (int t = 0; t < 60; ++t) {
        Fan f = kt::random_smooth_fan_2d(rng, t % 2);
        std::size_t r = 2 + t % 2;
        std::vector<Filtration> fs;
        while (fs.size() < f.num_rays()) {
            QMat m;
            for (std::size_t i = 0; i < r; ++i) {
                QVec v;
                for (std::size_t j = 0; j < r; ++j)
                    v.emplace_back(d(rng));
                m.push_back(v);
            }
            if (rank(m, r) != r)
                continue;
            QVec lvl;
            for (std::size_t j = 0; j < r; ++j)
                lvl.emplace_back(lv(rng));
            fs.push_back(Filtration::from_frame(m, lvl));
        }
        auto b = build_bundle(f, fs);
        bool n = is_nef(b), g = is_globally_generated(b);
        nef += n;
        gg += g;
        EXPECT_EQ(is_buildingwise_convex(b), n);
        EXPECT_EQ(is_fanwise_convex(b), g);
        if (is_ample(b))
            EXPECT_TRUE(n);
        // certificates re-verify through the PL valuation
        for (std::size_t c = 0; c < f.num_cones(); ++c) {
            auto cert = gg_certificate(b, c, 5);
            if (!cert.ok)
                continue;
            EXPECT_EQ(rank(cert.generators, r), r);
            for (std::size_t i = 0; i < r; ++i)
                EXPECT_TRUE(leq_pl(PLFunction::linear(f, cert.characters[i]), pl_valuation(b, cert.generators[i])));
        }
    }
    EXPECT_GT(nef, 0);
    EXPECT_GT(gg, 0);
}
