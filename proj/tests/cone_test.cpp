#include "toric/cone.hpp"
#include "toric/verifier.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace toric;

namespace {

std::vector<IntVector> vs(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<IntVector> out;
    for (auto r : rows) out.push_back(ivec(r));
    return out;
}

bool same(const std::vector<IntVector>& a, const std::vector<IntVector>& b)
{
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) { return equal(x, y); });
}

Cone random_cone(std::mt19937_64& rng, Index n)
{
    std::uniform_int_distribution<int> count(1, 6), entry(-3, 3);
    std::vector<IntVector> gens;
    const int m = count(rng);
    for (int j = 0; j < m; ++j) {
        IntVector g(n);
        for (Index i = 0; i < n; ++i) g(i) = entry(rng);
        gens.push_back(g);
    }
    return Cone::from_rays(n, gens);
}

}  // namespace

TEST(DdConvert, QuadrantFromGenerators)
{
    const auto gens = vs({{2, 0}, {0, 1}, {1, 1}});
    const Cone c = dd_convert(2, gens, ConeInput::Rays);
    EXPECT_TRUE(same(c.rays(), vs({{0, 1}, {1, 0}})));
    EXPECT_TRUE(same(c.inequalities(), vs({{0, 1}, {1, 0}})));
    EXPECT_EQ(c.lineality().rank(), 0);
    EXPECT_TRUE(dd_cross_check(c, BoxSpec(5)).ok());
    EXPECT_EQ(dd_cross_check(c, BoxSpec(5)).points_checked, 121u);
}

TEST(DdConvert, HalfspaceHasTwoLinealityDirections)
{
    const auto ineq = vs({{0, 0, 1}});
    const Cone c = dd_convert(3, ineq, ConeInput::Inequalities);
    EXPECT_TRUE(same(c.lineality().rows(), vs({{1, 0, 0}, {0, 1, 0}})));
    EXPECT_TRUE(same(c.rays(), vs({{0, 0, 1}})));
    EXPECT_TRUE(dd_cross_check(c, BoxSpec(3)).ok());

    // Primitive directions in [-2,2]^3 orthogonal to the lineality space and inside the cone.
    std::vector<IntVector> extreme;
    for (int x = -2; x <= 2; ++x)
        for (int y = -2; y <= 2; ++y)
            for (int z = -2; z <= 2; ++z) {
                const IntVector d = ivec({x, y, z});
                if (is_zero(d) || !equal(primitive(d), d) || x != 0 || y != 0 || z < 0) continue;
                extreme.push_back(d);
            }
    EXPECT_TRUE(same(extreme, c.rays()));
}

TEST(DdConvert, EmptyInputs)
{
    const Cone full = dd_convert(2, {}, ConeInput::Inequalities);
    EXPECT_TRUE(same(full.lineality().rows(), vs({{1, 0}, {0, 1}})));
    EXPECT_TRUE(full.rays().empty());

    const Cone zero = dd_convert(2, {}, ConeInput::Rays);
    EXPECT_EQ(zero.dim(), 0);
    const auto report = dd_cross_check(zero, BoxSpec(2));
    EXPECT_TRUE(report.ok());
    EXPECT_TRUE(zero.contains(ivec({0, 0})));
    EXPECT_FALSE(zero.contains(ivec({1, 0})));
}

TEST(DdConvert, RejectsLengthMismatch)
{
    const auto bad = vs({{1, 0, 0}});
    EXPECT_THROW(dd_convert(2, bad, ConeInput::Rays), DimensionMismatch);
}

TEST(DualCone, Examples)
{
    const auto q = vs({{1, 0}, {0, 1}});
    const Cone quadrant = Cone::from_rays(2, q);
    EXPECT_EQ(dual_cone(quadrant), quadrant);

    const auto r = vs({{1, 0}});
    const Cone ray = Cone::from_rays(2, r);
    const Cone half = dual_cone(ray);
    EXPECT_TRUE(same(half.inequalities(), vs({{1, 0}})));
    EXPECT_EQ(half.lineality().rank(), 1);

    const Cone zero = Cone::from_rays(2, {});
    EXPECT_EQ(dual_cone(zero).lineality().rank(), 2);
}

TEST(DualCone, Involution)
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        const Cone c = random_cone(rng, 1 + trial % 4);
        EXPECT_EQ(dual_cone(dual_cone(c)), c);
    }
}

TEST(ConeInvariants, RepresentationsAgree)
{
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 150; ++trial) {
        const Index n = 1 + trial % 4;
        const Cone c = random_cone(rng, n);
        for (const auto& a : c.inequalities()) {
            std::vector<IntVector> tight = c.lineality().rows();
            for (const auto& r : c.rays()) {
                EXPECT_GE(dot(a, r), 0);
                if (dot(a, r) == 0) tight.push_back(r);
            }
            EXPECT_EQ(rank(stack_rows(tight, n)), c.dim() - 1);
        }
        for (const auto& r : c.rays()) EXPECT_TRUE(equal(primitive(r), r));
        for (const auto& a : c.inequalities()) EXPECT_TRUE(equal(primitive(a), a));
        EXPECT_TRUE(std::is_sorted(c.rays().begin(), c.rays().end(),
                                   [](const IntVector& x, const IntVector& y) { return lex_less(x, y); }));
        EXPECT_TRUE(dd_cross_check(c, BoxSpec(n <= 2 ? 4 : 2)).ok());
    }
}

TEST(FaceLattice, Counts)
{
    const auto q = vs({{1, 0}, {0, 1}});
    const auto quadrant = face_lattice(Cone::from_rays(2, q));
    EXPECT_EQ(quadrant.faces.size(), 4u);
    EXPECT_EQ(quadrant.covers.size(), 4u);

    const auto z = vs({{0, 0, 1}});
    EXPECT_EQ(face_lattice(Cone::from_inequalities(3, z)).faces.size(), 2u);

    const auto e = vs({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const auto orthant = face_lattice(Cone::from_rays(3, e));
    EXPECT_EQ(orthant.faces.size(), 8u);
    EXPECT_EQ(orthant.covers.size(), 12u);
}

TEST(FaceLattice, NonSimplicial)
{
    // Cone over a square: 1 + 4 facets + 4 rays + apex.
    const auto sq = vs({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}});
    const auto f = face_lattice(Cone::from_rays(3, sq));
    EXPECT_EQ(f.faces.size(), 10u);
}

TEST(FaceLattice, ClosedUnderMeetWithLinealityAtBottom)
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const Cone c = random_cone(rng, 1 + trial % 4);
        const auto fl = face_lattice(c);
        std::set<std::vector<int>> sets;
        for (const auto& f : fl.faces) sets.insert(f.ray_indices);
        EXPECT_EQ(sets.size(), fl.faces.size());
        for (const auto& a : fl.faces)
            for (const auto& b : fl.faces) {
                std::vector<int> m;
                std::set_intersection(a.ray_indices.begin(), a.ray_indices.end(), b.ray_indices.begin(),
                                      b.ray_indices.end(), std::back_inserter(m));
                EXPECT_TRUE(sets.count(m));
            }
        EXPECT_TRUE(fl.bottom().ray_indices.empty());
        EXPECT_EQ(fl.bottom().dim, c.lineality().rank());
        EXPECT_EQ(fl.top().dim, c.dim());
        for (std::size_t i = 1; i < fl.faces.size(); ++i) EXPECT_GE(fl.faces[i - 1].dim, fl.faces[i].dim);
    }
}

TEST(MinimalFace, QuadrantPoints)
{
    const auto q = vs({{1, 0}, {0, 1}});
    const Cone c = Cone::from_rays(2, q);
    const auto fl = face_lattice(c);
    EXPECT_EQ(minimal_face_of_point(c, fl, rvec({1, 1})).id, fl.top().id);
    EXPECT_EQ(minimal_face_of_point(c, fl, rvec({3, 0})).dim, 1);
    EXPECT_TRUE(equal(c.rays()[static_cast<std::size_t>(minimal_face_of_point(c, fl, rvec({3, 0})).ray_indices[0])],
                      ivec({1, 0})));
    EXPECT_EQ(minimal_face_of_point(c, fl, rvec({0, 0})).id, fl.bottom().id);
    EXPECT_THROW(minimal_face_of_point(c, fl, rvec({-1, 0})), NotInCone);
}

TEST(MinimalFace, PointIsInsideItsFace)
{
    std::mt19937_64 rng(24);
    std::uniform_int_distribution<int> coef(0, 3);
    for (int trial = 0; trial < 100; ++trial) {
        const Index n = 1 + trial % 4;
        const Cone c = random_cone(rng, n);
        const auto fl = face_lattice(c);
        for (int k = 0; k < 5; ++k) {
            IntVector x = IntVector::Zero(n);
            for (const auto& g : c.conic_generators()) x += g * Integer(coef(rng));
            const auto f = minimal_face_of_point(c, fl, to_rational(x));
            for (int i = 0; i < static_cast<int>(c.inequalities().size()); ++i) {
                const bool tight = std::binary_search(f.tight_set.begin(), f.tight_set.end(), i);
                if (!tight) EXPECT_GT(dot(c.inequalities()[static_cast<std::size_t>(i)], x), 0);
            }
            EXPECT_TRUE(face_cone(c, f).contains_in_relative_interior(x));
        }
    }
}

TEST(Pointed, Examples)
{
    const auto q = vs({{1, 0}, {0, 1}});
    EXPECT_TRUE(is_pointed(Cone::from_rays(2, q)));
    const auto z = vs({{0, 0, 1}});
    EXPECT_FALSE(is_pointed(Cone::from_inequalities(3, z)));
    EXPECT_FALSE(is_pointed(Cone::from_inequalities(2, {})));
}
