#include "klytor/klyachko.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace klytor;
using kt::q;

namespace {

Filtration line_filtration(const QVec& v, Rat top = 1, Rat bottom = 0) {
    std::size_t r = v.size();
    return Filtration::make(r, {Breakpoint{top, Subspace::line(v)}, Breakpoint{bottom, Subspace::full(r)}});
}

QMat random_basis(std::mt19937_64& rng, std::size_t r) {
    std::uniform_int_distribution<int> d(-2, 2);
    while (true) {
        QMat m;
        for (std::size_t i = 0; i < r; ++i) {
            QVec v;
            for (std::size_t j = 0; j < r; ++j)
                v.emplace_back(d(rng));
            m.push_back(v);
        }
        if (rank(m, r) == r)
            return m;
    }
}

QVec random_values(std::mt19937_64& rng, std::size_t r, int lo = -2, int hi = 2) {
    std::uniform_int_distribution<int> d(lo, hi);
    QVec v;
    for (std::size_t i = 0; i < r; ++i)
        v.emplace_back(d(rng));
    return v;
}

QVec random_vec(std::mt19937_64& rng, std::size_t r) {
    while (true) {
        QVec v = random_values(rng, r, -3, 3);
        if (!is_zero(v))
            return v;
    }
}

// Multiset of characters on a cone, sorted.
std::vector<QVec> chars(const KlyachkoBundle& b, std::size_t cone) {
    auto c = b.compat(cone).characters;
    std::sort(c.begin(), c.end());
    return c;
}

std::vector<QVec> sorted(std::vector<QVec> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Random bundle on a fan: filtrations all adapted to one frame per cone are not
// guaranteed compatible, so draw rank 2 data on 2D fans (always compatible).
KlyachkoBundle random_rank2_bundle(std::mt19937_64& rng, const Fan& f) {
    std::vector<Filtration> fs;
    for (std::size_t r = 0; r < f.num_rays(); ++r)
        fs.push_back(Filtration::from_frame(random_basis(rng, 2), random_values(rng, 2)));
    return build_bundle(f, fs);
}

}  // namespace

TEST(Filtration, NormalizationAndValidation) {
    auto l = Subspace::line(q({1, 0}));
    auto f = Filtration::make(2, {Breakpoint{Rat(0), Subspace::full(2)}, Breakpoint{Rat(3), l},
                                  Breakpoint{Rat(2), l}, Breakpoint{Rat(5), Subspace::zero(2)}});
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f.breakpoints()[0].level, 3);
    EXPECT_EQ(f.at(3), l);
    EXPECT_EQ(f.at(Rat(1, 2)), l);
    EXPECT_TRUE(f.at(4).is_zero_space());
    EXPECT_TRUE(f.at(-10).is_full());
    EXPECT_THROW(Filtration::make(2, {Breakpoint{Rat(1), l}}), std::invalid_argument);
    EXPECT_THROW(Filtration::make(2, {Breakpoint{Rat(1), Subspace::full(2)}, Breakpoint{Rat(0), l}}),
                 std::invalid_argument);
}

TEST(FiltrationToValuation, Examples) {
    auto t = filtration_to_valuation(Filtration::trivial(2));
    EXPECT_EQ(t.flag.subspaces, (std::vector<Subspace>{Subspace::full(2)}));
    EXPECT_EQ(t.values, (std::vector<Rat>{0}));

    auto b = example_tangent_pn(2);
    auto v1 = filtration_to_valuation(b.filtration(0));
    EXPECT_EQ(v1.flag.subspaces, (std::vector<Subspace>{Subspace::line(q({1, 0})), Subspace::full(2)}));
    EXPECT_EQ(v1.values, (std::vector<Rat>{1, 0}));

    // two jumps in Q^3: line at 4, plane at 1, everything at -2
    auto l = Subspace::line(q({1, 1, 0}));
    auto p = canonicalize({q({1, 1, 0}), q({0, 0, 1})}, 3);
    auto f3 = Filtration::make(3, {Breakpoint{Rat(4), l}, Breakpoint{Rat(1), p}, Breakpoint{Rat(-2), Subspace::full(3)}});
    auto v3 = filtration_to_valuation(f3);
    EXPECT_EQ(v3.flag.subspaces.size(), 3u);
    EXPECT_EQ(v3.values, (std::vector<Rat>{4, 1, -2}));
    EXPECT_EQ(valuation_to_filtration(v3), f3);
    EXPECT_EQ(filtration_to_valuation(valuation_to_filtration(v1)), v1);
}

TEST(ValuationApply, Examples) {
    auto v1 = filtration_to_valuation(example_tangent_pn(2).filtration(0));
    EXPECT_FALSE(valuation_apply(v1, q({0, 0})).has_value());
    EXPECT_EQ(*valuation_apply(v1, q({1, 0})), 1);
    EXPECT_EQ(*valuation_apply(v1, q({0, 1})), 0);
    EXPECT_EQ(*valuation_apply(v1, q({-3, 0})), 1);
}

TEST(ValuationApply, NonArchimedean) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        auto f = Filtration::from_frame(random_basis(rng, 3), random_values(rng, 3));
        auto v = filtration_to_valuation(f);
        QVec a = random_vec(rng, 3), b = random_vec(rng, 3);
        auto s = valuation_apply(v, add(a, b));
        if (s)
            EXPECT_GE(*s, std::min(*valuation_apply(v, a), *valuation_apply(v, b)));
        EXPECT_EQ(valuation_apply(v, scale(a, Rat(-5, 3))), valuation_apply(v, a));
    }
}

TEST(LeqValuation, Examples) {
    auto b = example_tangent_pn(2);
    auto v1 = filtration_to_valuation(b.filtration(0));
    auto v2 = filtration_to_valuation(b.filtration(1));
    EXPECT_TRUE(leq_valuation(v1, v1));
    EXPECT_FALSE(leq_valuation(v1, v2));
    EXPECT_FALSE(leq_valuation(v2, v1));
    auto shifted = v1;
    for (auto& x : shifted.values)
        x += 1;
    EXPECT_TRUE(leq_valuation(v1, shifted));
    EXPECT_FALSE(leq_valuation(shifted, v1));
}

TEST(LeqValuation, AgreesWithSampledOrder) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 60; ++t) {
        auto v = filtration_to_valuation(Filtration::from_frame(random_basis(rng, 2), random_values(rng, 2, 0, 2)));
        auto w = filtration_to_valuation(Filtration::from_frame(random_basis(rng, 2), random_values(rng, 2, 0, 2)));
        bool sampled = true;
        for (int k = 0; k < 300; ++k) {
            QVec e = random_vec(rng, 2);
            sampled = sampled && *valuation_apply(v, e) <= *valuation_apply(w, e);
        }
        // checking the flag members of v is exhaustive; sampling hits every line class here
        QMat probes;
        for (const auto& s : v.flag.subspaces)
            for (const auto& row : s.basis())
                probes.push_back(row);
        for (const auto& s : w.flag.subspaces)
            for (const auto& row : s.basis())
                probes.push_back(row);
        for (const auto& e : probes)
            sampled = sampled && *valuation_apply(v, e) <= *valuation_apply(w, e);
        EXPECT_EQ(leq_valuation(v, w), sampled);
    }
}

TEST(CommonFrame, Examples) {
    auto fa = line_filtration(q({1, 0}));
    auto fb = line_filtration(q({0, 1}));
    auto cf = common_frame({fa, fb});
    ASSERT_TRUE(cf.has_value());
    std::set<Subspace> lines;
    for (const auto& v : cf->vectors)
        lines.insert(Subspace::line(v));
    EXPECT_EQ(lines, (std::set<Subspace>{Subspace::line(q({1, 0})), Subspace::line(q({0, 1}))}));

    auto b = example_tangent_pn(2);
    auto s3 = common_frame({b.filtration(0), b.filtration(1)});
    ASSERT_TRUE(s3.has_value());
    lines.clear();
    for (const auto& v : s3->vectors)
        lines.insert(Subspace::line(v));
    EXPECT_EQ(lines, (std::set<Subspace>{Subspace::line(q({1, 0})), Subspace::line(q({0, 1}))}));

    auto fc = line_filtration(q({1, 1}));
    EXPECT_FALSE(common_frame({fa, fb, fc}).has_value());
    EXPECT_THROW(common_frame({fa, line_filtration(q({1, 0, 0}))}), DimensionMismatch);
}

TEST(CommonFrame, ThreeLinesHaveNoFrameExhaustively) {
    // any adapted frame contains each jump line, so candidates come from the arrangement
    std::vector<QVec> lines{q({1, 0}), q({0, 1}), q({1, 1}), q({1, -1}), q({2, 1})};
    std::vector<Filtration> fs{line_filtration(lines[0]), line_filtration(lines[1]), line_filtration(lines[2])};
    int adapted = 0;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            bool all = true;
            for (const auto& f : fs)
                all = all && is_adapted({lines[i], lines[j]}, f);
            adapted += all;
        }
    EXPECT_EQ(adapted, 0);
    EXPECT_FALSE(common_frame(fs).has_value());
}

TEST(CommonFrame, FindsPlantedFrames) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 2 + t % 3;
        QMat frame = random_basis(rng, r);
        std::vector<Filtration> fs;
        for (int k = 0; k < 1 + t % 4; ++k)
            fs.push_back(Filtration::from_frame(frame, random_values(rng, r)));
        auto cf = common_frame(fs);
        ASSERT_TRUE(cf.has_value());
        for (const auto& f : fs)
            EXPECT_TRUE(is_adapted(cf->vectors, f));
    }
}

TEST(CommonFrame, TwoFlagsAlwaysAdmitAFrame) {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 2 + t % 3;
        auto fa = Filtration::from_frame(random_basis(rng, r), random_values(rng, r));
        auto fb = Filtration::from_frame(random_basis(rng, r), random_values(rng, r));
        auto cf = common_frame({fa, fb});
        ASSERT_TRUE(cf.has_value());
        EXPECT_TRUE(is_adapted(cf->vectors, fa));
        EXPECT_TRUE(is_adapted(cf->vectors, fb));
    }
}

TEST(BuildBundle, TangentBundleCharacters) {
    for (std::size_t n = 1; n <= 3; ++n) {
        auto b = example_tangent_pn(n);
        std::vector<QVec> w;
        for (std::size_t i = 0; i < n; ++i)
            w.push_back(unit(n, i));
        // the last cone omits the last ray: cone(e_1, ..., e_n)
        EXPECT_EQ(chars(b, n), sorted(w));
        EXPECT_TRUE(b.is_integral());
    }
    auto b = example_tangent_pn(2);
    // sigma_1 omits e1: characters w2 - w1 and -w1
    EXPECT_EQ(chars(b, 0), sorted({q({-1, 1}), q({-1, 0})}));
    EXPECT_EQ(chars(b, 1), sorted({q({1, -1}), q({0, -1})}));
}

TEST(BuildBundle, LineBundles) {
    Fan p2 = projective_space_fan(2);
    auto b = line_bundle(p2, q({2, -1, 3}));
    for (std::size_t i = 0; i < p2.num_cones(); ++i) {
        ASSERT_EQ(b.compat(i).characters.size(), 1u);
        for (auto r : p2.maximal_cones()[i])
            EXPECT_EQ(dot(b.compat(i).characters[0], p2.ray(r)), q({2, -1, 3})[r]);
    }
}

TEST(BuildBundle, IncompatibleConeIsNamed) {
    Fan p3 = projective_space_fan(3);
    QVec l1 = q({1, 0}), l2 = q({0, 1}), l3 = q({-1, -1});
    std::vector<Filtration> fs{line_filtration(l1), line_filtration(l2), line_filtration(l3), Filtration::trivial(2)};
    try {
        build_bundle(p3, fs);
        FAIL() << "expected IncompatibleFiltrations";
    } catch (const IncompatibleFiltrations& e) {
        // cone(e1, e2, e3) is the one omitting the last ray
        EXPECT_EQ(e.cone(), 3u);
        EXPECT_NE(std::string(e.what()).find("subdivide_by_hyperplanes"), std::string::npos);
    }
    EXPECT_THROW(build_bundle(p3, {Filtration::trivial(2)}), std::invalid_argument);
}

TEST(PhiEval, Examples) {
    auto b = example_tangent_pn(2);
    auto v = phi_eval(b, q({1, 1}));
    EXPECT_EQ(v.flag.subspaces, (std::vector<Subspace>{Subspace::full(2)}));
    EXPECT_EQ(v.values, (std::vector<Rat>{1}));
    auto z = phi_eval(b, q({0, 0}));
    EXPECT_EQ(z, filtration_to_valuation(Filtration::trivial(2)));
    auto half = phi_eval(b, QVec{Rat(3), Rat(1, 2)});
    EXPECT_EQ(*valuation_apply(half, q({1, 0})), 3);
    EXPECT_EQ(*valuation_apply(half, q({1, 1})), Rat(1, 2));
}

TEST(PhiEval, InterpolatesRayData) {
    std::mt19937_64 rng(41);
    std::vector<KlyachkoBundle> bundles{example_tangent_pn(1), example_tangent_pn(2), example_tangent_pn(3)};
    for (int t = 0; t < 8; ++t)
        bundles.push_back(random_rank2_bundle(rng, kt::random_smooth_fan_2d(rng, 2)));
    for (const auto& b : bundles)
        for (std::size_t r = 0; r < b.fan().num_rays(); ++r)
            EXPECT_EQ(phi_eval(b, b.fan().ray(r)), filtration_to_valuation(b.filtration(r)));
}

TEST(PlValuation, TangentPlaneFunctions) {
    auto b = example_tangent_pn(2);
    auto f1 = pl_valuation(b, q({1, 0}));
    auto f3 = pl_valuation(b, q({-1, -1}));
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
        QVec x = kt::random_point(rng, 2);
        std::size_t c = *b.fan().find_cone(x);
        Rat x1 = x[0], x2 = x[1];
        // cone index c omits ray c: 0 -> sigma_1, 1 -> sigma_2, 2 -> sigma_3
        Rat e1 = c == 0 ? std::min<Rat>(x2 - x1, -x1) : c == 1 ? x1 - x2 : x1;
        Rat e3 = c == 0 ? -x1 : c == 1 ? -x2 : std::min<Rat>(x1, x2);
        EXPECT_EQ(f1.eval(x), e1);
        EXPECT_EQ(f3.eval(x), e3);
    }
    EXPECT_EQ(f3.eval(q({2, 1})), 1);
    EXPECT_EQ(f1.eval(q({-1, 0})), 1);
    EXPECT_TRUE(f1.is_integral());
    EXPECT_THROW(pl_valuation(b, q({0, 0})), std::invalid_argument);
}

TEST(PlValuation, SplitFrameVectorNeedsNoSubdivision) {
    Fan pp = product_p1_fan(2);
    auto b = split_bundle(pp, {q({1, 0}), q({0, 2}), q({-1, 1}), q({3, 3})});
    auto f = pl_valuation(b, q({0, 1}));
    EXPECT_TRUE(f.fan().same_cones(pp));
    EXPECT_TRUE(is_equivariantly_split(b).has_value());
}

TEST(PlValuation, ValuationAxioms) {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 6; ++t) {
        auto b = t < 2 ? example_tangent_pn(2 + t) : random_rank2_bundle(rng, kt::random_smooth_fan_2d(rng, 1));
        std::size_t r = b.rank();
        QVec e1 = random_vec(rng, r), e2 = random_vec(rng, r);
        auto f1 = pl_valuation(b, e1);
        auto f2 = pl_valuation(b, e2);
        auto fc = pl_valuation(b, scale(e1, Rat(-7, 2)));
        EXPECT_TRUE(equal_pl(f1, fc));
        EXPECT_FALSE(f1.fan().face_to_face_error().has_value());
        bool has_sum = !is_zero(add(e1, e2));
        auto fs = has_sum ? pl_valuation(b, add(e1, e2)) : f1;
        for (int k = 0; k < 30; ++k) {
            QVec x = kt::random_point(rng, b.fan().rank());
            EXPECT_EQ(f1.eval(x), *valuation_apply(phi_eval(b, x), e1));
            if (has_sum)
                EXPECT_GE(fs.eval(x), std::min(f1.eval(x), f2.eval(x)));
        }
    }
}

TEST(EquivariantSplitting, Examples) {
    EXPECT_FALSE(is_equivariantly_split(example_tangent_pn(2)).has_value());
    std::mt19937_64 rng(47);
    Fan p1 = projective_space_fan(1);
    for (int t = 0; t < 20; ++t) {
        std::size_t r = 1 + t % 4;
        std::vector<Filtration> fs{Filtration::from_frame(random_basis(rng, r), random_values(rng, r)),
                                   Filtration::from_frame(random_basis(rng, r), random_values(rng, r))};
        auto b = build_bundle(p1, fs);
        auto frame = is_equivariantly_split(b);
        ASSERT_TRUE(frame.has_value());
        for (const auto& f : b.filtrations())
            EXPECT_TRUE(is_adapted(frame->vectors, f));
    }
    auto diag = split_bundle(projective_space_fan(2), {q({1, 0}), q({0, 0}), q({2, -1})});
    auto frame = is_equivariantly_split(diag);
    ASSERT_TRUE(frame.has_value());
    std::set<Subspace> lines;
    for (const auto& v : frame->vectors)
        lines.insert(Subspace::line(v));
    EXPECT_EQ(lines, (std::set<Subspace>{Subspace::line(q({1, 0})), Subspace::line(q({0, 1}))}));
}

TEST(CurveSplitting, TangentPlane) {
    auto b = example_tangent_pn(2);
    auto s = curve_splitting(b, {0});
    EXPECT_EQ(s.degrees(), (std::vector<Rat>{1, 2}));
    std::set<std::pair<QVec, QVec>> pairs;
    for (const auto& p : s.pairs)
        pairs.insert({p.u, p.u_prime});
    EXPECT_EQ(pairs, (std::set<std::pair<QVec, QVec>>{{q({1, 0}), q({1, -1})}, {q({0, 1}), q({0, -1})}}));
    for (const auto& w : b.fan().walls())
        EXPECT_EQ(curve_splitting(b, w.rays).degrees(), (std::vector<Rat>{1, 2}));
    auto b3 = example_tangent_pn(3);
    for (const auto& w : b3.fan().walls())
        EXPECT_EQ(curve_splitting(b3, w.rays).degrees(), (std::vector<Rat>{1, 1, 2}));
}

TEST(CurveSplitting, LineAndSplitBundles) {
    Fan p2 = projective_space_fan(2);
    // O(d) with levels (0, 0, d): degree d on every invariant curve
    for (long d = -2; d <= 3; ++d) {
        auto lb = line_bundle(p2, QVec{Rat(0), Rat(0), Rat(d)});
        for (const auto& w : p2.walls()) {
            auto s = curve_splitting(lb, w.rays);
            ASSERT_EQ(s.pairs.size(), 1u);
            EXPECT_EQ(s.pairs[0].degree, d);
        }
    }
    auto sb = split_bundle(p2, {q({1, 0}), q({0, 0}), q({0, 2})});
    for (const auto& w : p2.walls()) {
        auto s = curve_splitting(sb, w.rays);
        EXPECT_EQ(s.degrees(), (std::vector<Rat>{1, 2}));
        for (const auto& p : s.pairs)
            EXPECT_EQ(p.degree, dot(sub(p.u, p.u_prime), s.wall.v_tau));
    }
}

TEST(CurveSplitting, IndependentOfVTauChoice) {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 10; ++t) {
        Fan f = kt::random_smooth_fan_2d(rng, 2);
        auto b = random_rank2_bundle(rng, f);
        for (const auto& w : f.walls()) {
            auto s = curve_splitting(b, w.rays);
            IVec shifted = s.wall.v_tau;
            for (auto r : w.rays)
                for (std::size_t i = 0; i < shifted.size(); ++i)
                    shifted[i] -= 3 * f.ray(r)[i];
            EXPECT_EQ(curve_splitting(b, w.rays, shifted).degrees(), s.degrees());
            // characters agree on the wall ray
            for (const auto& p : s.pairs)
                for (auto r : w.rays)
                    EXPECT_EQ(dot(p.u, f.ray(r)), dot(p.u_prime, f.ray(r)));
        }
    }
}

TEST(RefineBundle, Examples) {
    auto b = example_tangent_pn(2);
    auto same = refine_bundle(b, b.fan());
    EXPECT_EQ(same.filtrations(), b.filtrations());

    Fan cut = subdivide_by_hyperplanes(b.fan(), std::vector<IVec>{{1, -1}});
    auto r = refine_bundle(b, cut);
    auto idx = *cut.ray_index({1, 1});
    EXPECT_EQ(r.filtration(idx), Filtration::trivial(2, 1));
    EXPECT_EQ(r.filtration(*cut.ray_index({1, 0})), b.filtration(0));
    std::mt19937_64 rng(59);
    for (int k = 0; k < 50; ++k) {
        QVec x = kt::random_point(rng, 2);
        EXPECT_EQ(phi_eval(r, x), phi_eval(b, x));
    }

    auto sb = split_bundle(b.fan(), {q({1, 0}), q({0, 0}), q({0, 2})});
    EXPECT_TRUE(is_equivariantly_split(refine_bundle(sb, cut)).has_value());
    EXPECT_THROW(refine_bundle(b, product_p1_fan(2)), FanError);
}
