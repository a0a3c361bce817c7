#include "toric/spectrum.hpp"
#include "toric/verifier.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace toric;

namespace {

std::vector<IntVector> vs(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<IntVector> out;
    for (auto r : rows) out.push_back(ivec(r));
    return out;
}

SpectrumAtlas naturals() { return enumerate_faces(SemigroupSpec::generators(1, vs({{1}}))); }
SpectrumAtlas quadrant_index2() { return enumerate_faces(SemigroupSpec::generators(2, vs({{2, 0}, {0, 1}, {1, 1}}))); }
SpectrumAtlas naturals_squared() { return enumerate_faces(SemigroupSpec::generators(2, vs({{1, 0}, {0, 1}}))); }
SpectrumAtlas halfspace_tower()
{
    return enumerate_faces(
        SemigroupSpec::tower(3, ivec({0, 0, 1}), SemigroupSpec::generators(2, vs({{1, 0}, {0, 1}}))));
}

int face_with_rays(const SpectrumAtlas& a, const std::vector<IntVector>& rays)
{
    for (const auto& f : a.faces)
        if (f.cone.rays().size() == rays.size() &&
            std::equal(rays.begin(), rays.end(), f.cone.rays().begin(),
                       [](const auto& x, const auto& y) { return equal(x, y); }))
            return f.handle.id;
    return -1;
}

Rational q(long p, long d = 1) { return Rational(p, d); }

std::vector<SpectrumAtlas> fixtures()
{
    return {quadrant_index2(),
            halfspace_tower(),
            naturals(),
            enumerate_faces(SemigroupSpec::generators(1, vs({{2}, {3}}))),
            enumerate_faces(SemigroupSpec::generators(1, vs({{1}, {-1}}))),
            enumerate_faces(SemigroupSpec::generators(2, vs({{1, 0}, {-1, 0}, {0, 1}, {0, -1}})))};
}

}  // namespace

TEST(Idempotent, Semantics)
{
    const auto a = quadrant_index2();
    const int x_axis = face_with_rays(a, vs({{1, 0}}));
    const auto k = idempotent(a, x_axis);
    EXPECT_EQ(evaluate(a, k, ivec({2, 0})), ExactValue::polar(0, 0));
    EXPECT_TRUE(evaluate(a, k, ivec({1, 1})).zero);
    EXPECT_TRUE(evaluate(a, k, ivec({0, 1})).zero);

    const auto one = idempotent(a, a.top());
    for (const auto& x : vs({{0, 0}, {2, 0}, {1, 1}, {5, 3}})) EXPECT_EQ(evaluate(a, one, x), ExactValue::polar(0, 0));

    const auto zero = idempotent(a, a.least());
    EXPECT_EQ(evaluate(a, zero, ivec({0, 0})), ExactValue::polar(0, 0));
    EXPECT_TRUE(evaluate(a, zero, ivec({1, 1})).zero);
    EXPECT_THROW(idempotent(a, 17), std::out_of_range);
}

TEST(Evaluate, DiscPoint)
{
    const auto a = naturals();
    const auto chi = make_character(a, 0, rvec({q(1, 2)}), rvec({q(1)}));
    const auto v = evaluate(a, chi, ivec({1}));
    EXPECT_EQ(v.angle, q(1, 2));
    EXPECT_EQ(v.exponent, q(1));
    EXPECT_NEAR(v.to_complex().real(), -std::exp(-1.0), 1e-12);
    EXPECT_NEAR(v.to_complex().imag(), 0.0, 1e-12);
    EXPECT_THROW(evaluate(a, chi, ivec({-1})), NotInSemigroup);
}

TEST(Character, Validation)
{
    const auto a = naturals();
    EXPECT_THROW(make_character(a, 0, rvec({q(0)}), rvec({q(-1)})), InvalidCharacter);
    EXPECT_THROW(make_character(a, 0, rvec({q(0), q(0)}), rvec({q(1)})), InvalidCharacter);
    EXPECT_THROW(make_character(a, 5, rvec({q(0)}), rvec({q(1)})), InvalidCharacter);
    EXPECT_EQ(make_character(a, 0, rvec({q(5, 4)}), rvec({q(0)})).theta(0), q(1, 4));
    EXPECT_EQ(make_character(a, 0, rvec({q(-1, 4)}), rvec({q(0)})).theta(0), q(3, 4));
}

TEST(Multiply, DiscModel)
{
    const auto a = naturals();
    const auto x = make_character(a, 0, rvec({q(1, 4)}), rvec({q(1)}));
    const auto y = make_character(a, 0, rvec({q(1, 2)}), rvec({q(2)}));
    EXPECT_EQ(multiply(a, x, y), make_character(a, 0, rvec({q(3, 4)}), rvec({q(3)})));
    EXPECT_EQ(multiply(a, idempotent(a, 0), x), x);
}

TEST(Multiply, IdempotentsMultiplyByMeet)
{
    const auto a = quadrant_index2();
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
            EXPECT_EQ(multiply(a, idempotent(a, j), idempotent(a, k)), idempotent(a, a.meet(j, k)));
}

TEST(Multiply, RestrictsToTheSmallerGroup)
{
    const auto a = quadrant_index2();
    const int x_axis = face_with_rays(a, vs({{1, 0}}));
    const auto chi = make_character(a, a.top(), rvec({q(1, 3), q(1, 5)}), rvec({q(1), q(1)}));
    const auto p = multiply(a, chi, idempotent(a, x_axis));
    EXPECT_EQ(p.face_id, x_axis);
    // Γ of the axis is generated by (2,0), which has top-face coordinates (2,0).
    EXPECT_EQ(p.theta(0), q(2, 3));
    EXPECT_EQ(p.lambda(0), q(2));
}

TEST(Involute, Examples)
{
    const auto a = naturals();
    const auto chi = make_character(a, 0, rvec({q(1, 4)}), rvec({q(2)}));
    const auto c = involute(a, chi);
    EXPECT_EQ(c.theta(0), q(3, 4));
    EXPECT_EQ(evaluate(a, c, ivec({3})), conj(evaluate(a, chi, ivec({3}))));
    const auto b = quadrant_index2();
    for (int j = 0; j < 4; ++j) EXPECT_EQ(involute(b, idempotent(b, j)), idempotent(b, j));
}

TEST(Polar, Examples)
{
    const auto a = naturals();
    const auto z = make_character(a, 0, rvec({q(1, 3)}), rvec({q(2)}));
    const auto parts = polar_decompose(a, z);
    EXPECT_EQ(parts.unitary, make_character(a, 0, rvec({q(1, 3)}), rvec({q(0)})));
    EXPECT_EQ(parts.radial, make_character(a, 0, rvec({q(0)}), rvec({q(2)})));

    const auto sym = make_character(a, 0, rvec({q(0)}), rvec({q(5)}));
    EXPECT_EQ(polar_decompose(a, sym).unitary, idempotent(a, 0));
    EXPECT_EQ(polar_decompose(a, sym).radial, sym);
    EXPECT_EQ(polar_decompose(a, idempotent(a, 1)).unitary, idempotent(a, 1));
    EXPECT_EQ(polar_decompose(a, idempotent(a, 1)).radial, idempotent(a, 1));
}

TEST(Ray, Limits)
{
    const auto a = naturals_squared();
    const int y_axis = face_with_rays(a, vs({{0, 1}}));
    EXPECT_EQ(ray_limit(a, Ray{a.top(), rvec({q(1), q(0)})}), y_axis);
    EXPECT_EQ(ray_limit(a, Ray{a.top(), rvec({q(1), q(2)})}), a.least());
    EXPECT_EQ(ray_limit(a, Ray{a.top(), rvec({q(0), q(0)})}), a.top());
    EXPECT_THROW(ray_limit(a, Ray{a.top(), rvec({q(-1), q(0)})}), InvalidCharacter);

    const Ray r{a.top(), rvec({q(1), q(3)})};
    EXPECT_EQ(ray_point(a, r, 0), idempotent(a, a.top()));
    EXPECT_THROW(ray_point(a, r, -1), std::invalid_argument);
}

TEST(Ray, SemigroupLaw)
{
    for (const auto& a : fixtures()) {
        Rng rng(41);
        for (int trial = 0; trial < 50; ++trial) {
            const auto chi = random_character(a, rng);
            const Ray r{chi.face_id, chi.lambda};
            const Rational s(static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 3));
            const Rational t(static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 3));
            EXPECT_EQ(ray_point(a, r, s + t), multiply(a, ray_point(a, r, s), ray_point(a, r, t)));
        }
    }
}

TEST(LatticeOps, Examples)
{
    const auto a = quadrant_index2();
    const int x_axis = face_with_rays(a, vs({{1, 0}}));
    const int y_axis = face_with_rays(a, vs({{0, 1}}));
    const auto b = idempotent_lattice_ops(a, {x_axis, y_axis});
    EXPECT_EQ(b.inf, a.least());
    EXPECT_EQ(b.sup, a.top());
    EXPECT_EQ(idempotent_lattice_ops(a, {x_axis}).inf, x_axis);
    EXPECT_EQ(idempotent_lattice_ops(a, {x_axis}).sup, x_axis);
    EXPECT_EQ(idempotent_lattice_ops(a, {0, 1, 2, 3}).inf, zero_element(a)->face_id);
    EXPECT_THROW(idempotent_lattice_ops(a, {}), std::invalid_argument);
}

TEST(Chain, QuadrantExamples)
{
    const auto a = quadrant_index2();
    const int x_axis = face_with_rays(a, vs({{1, 0}}));
    const auto to_origin = chain_of_rays(a, a.top(), a.least());
    ASSERT_EQ(to_origin.size(), 2u);
    EXPECT_EQ(to_origin[0].base_face_id, a.top());
    EXPECT_EQ(ray_limit(a, to_origin[1]), a.least());
    EXPECT_EQ(chain_of_rays(a, a.top(), x_axis).size(), 1u);
    EXPECT_TRUE(chain_of_rays(a, x_axis, x_axis).empty());
    EXPECT_THROW(chain_of_rays(a, x_axis, a.top()), std::invalid_argument);
}

TEST(Chain, BoundAndComposition)
{
    for (const auto& a : fixtures()) {
        for (int k = 0; k < static_cast<int>(a.faces.size()); ++k)
            for (int j = 0; j < static_cast<int>(a.faces.size()); ++j) {
                if (!a.leq(j, k)) continue;
                const auto rays = chain_of_rays(a, k, j);
                EXPECT_LE(static_cast<Index>(rays.size()), a.face(k).lattice.rank() - a.face(j).lattice.rank());
                int at = k;
                for (const auto& r : rays) {
                    EXPECT_EQ(r.base_face_id, at);
                    const int next = ray_limit(a, r);
                    EXPECT_LT(a.face(next).lattice.rank(), a.face(at).lattice.rank());
                    at = next;
                }
                EXPECT_EQ(at, j);
            }
    }
}

TEST(Classify, Examples)
{
    const auto a = quadrant_index2();
    const auto one = classify(a, idempotent(a, a.top()));
    EXPECT_TRUE(one.is_idempotent && one.is_symmetric && one.is_nonnegative && one.in_Se);

    const auto tiny = classify(a, make_character(a, a.top(), rvec({q(0), q(0)}), rvec({q(1000), q(1000)})));
    EXPECT_TRUE(tiny.in_Se);
    EXPECT_FALSE(tiny.is_idempotent);

    const int x_axis = face_with_rays(a, vs({{1, 0}}));
    EXPECT_FALSE(classify(a, idempotent(a, x_axis)).in_Se);
    EXPECT_TRUE(classify(a, make_character(a, 0, rvec({q(1, 2), q(0)}), rvec({q(0), q(0)}))).is_symmetric);
    EXPECT_FALSE(classify(a, make_character(a, 0, rvec({q(1, 3), q(0)}), rvec({q(0), q(0)}))).is_symmetric);
}

TEST(Classify, TowerOpenness)
{
    const auto a = halfspace_tower();
    const auto top_char = make_character(a, a.top(), rvec({q(0), q(0), q(0)}), rvec({q(0), q(0), q(1)}));
    EXPECT_TRUE(classify(a, top_char).in_Se);
    EXPECT_FALSE(classify(a, idempotent(a, 1)).in_Se);
}

TEST(ZeroElement, MatchesAntisymmetry)
{
    for (const auto& a : fixtures()) {
        const auto z = zero_element(a);
        EXPECT_EQ(z.has_value(), a.antisymmetric);
        if (!z) continue;
        Rng rng(42);
        for (int trial = 0; trial < 30; ++trial) {
            const auto chi = random_character(a, rng);
            EXPECT_EQ(multiply(a, *z, chi), *z);
        }
    }
}

// ---------------------------------------------------------------------------
// Algebraic laws on sampled characters.

TEST(Laws, Homomorphism)
{
    for (const auto& a : fixtures()) {
        const auto h = numeric_homomorphism_check(a, 300, 43);
        EXPECT_EQ(h.exact_mismatches, 0);
        EXPECT_LE(h.max_float_deviation, 1e-9);
    }
}

TEST(Laws, InvolutionAndCommutativity)
{
    for (const auto& a : fixtures()) {
        Rng rng(44);
        for (int trial = 0; trial < 100; ++trial) {
            const auto x = random_character(a, rng), y = random_character(a, rng);
            EXPECT_EQ(involute(a, involute(a, x)), x);
            EXPECT_EQ(multiply(a, x, y), multiply(a, y, x));
            EXPECT_EQ(involute(a, multiply(a, x, y)), multiply(a, involute(a, y), involute(a, x)));
        }
    }
}

TEST(Laws, PolarRoundTripAndUniqueness)
{
    for (const auto& a : fixtures()) {
        Rng rng(45);
        for (int trial = 0; trial < 100; ++trial) {
            const auto chi = random_character(a, rng);
            const auto parts = polar_decompose(a, chi);
            EXPECT_EQ(multiply(a, parts.unitary, parts.radial), chi);
            // Another character with the same moduli: change only the angles.
            const auto other = make_character(a, chi.face_id, random_character_on(a, chi.face_id, rng).theta, chi.lambda);
            EXPECT_EQ(polar_decompose(a, other).radial, parts.radial);
        }
    }
}

TEST(Laws, IdempotentsAreExactlyTheFaceCharacters)
{
    for (const auto& a : fixtures()) {
        for (int f = 0; f < static_cast<int>(a.faces.size()); ++f) EXPECT_TRUE(classify(a, idempotent(a, f)).is_idempotent);
        Rng rng(46);
        for (int trial = 0; trial < 100; ++trial) {
            const auto chi = random_character(a, rng);
            if (multiply(a, chi, chi) == chi) EXPECT_EQ(chi, idempotent(a, chi.face_id));
        }
    }
}
