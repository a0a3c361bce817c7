#include "toric/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace toric {

namespace {

bool same(const RatVector& a, const RatVector& b) { return equal(a, b); }

RatVector reduce_mod_one(RatVector theta)
{
    for (Index i = 0; i < theta.size(); ++i) theta(i) = frac(theta(i));
    return theta;
}

IntVector to_ambient(const Lattice& lattice, const IntVector& local)
{
    return IntVector(lattice.basis().transpose() * local);
}

}  // namespace

// ---------------------------------------------------------------------------

bool Character::operator==(const Character& other) const
{
    return face_id == other.face_id && same(theta, other.theta) && same(lambda, other.lambda);
}

ExactValue ExactValue::polar(const Rational& angle, const Rational& exponent)
{
    return ExactValue{false, frac(angle), exponent};
}

std::complex<double> ExactValue::to_complex() const
{
    if (zero) return {0.0, 0.0};
    const double modulus = std::exp(-exponent.convert_to<double>());
    return std::polar(modulus, 2.0 * std::numbers::pi * angle.convert_to<double>());
}

bool ExactValue::operator==(const ExactValue& other) const
{
    if (zero || other.zero) return zero == other.zero;
    return angle == other.angle && exponent == other.exponent;
}

ExactValue operator*(const ExactValue& a, const ExactValue& b)
{
    if (a.zero || b.zero) return ExactValue::zero_value();
    return ExactValue::polar(a.angle + b.angle, a.exponent + b.exponent);
}

ExactValue conj(const ExactValue& v)
{
    if (v.zero) return v;
    return ExactValue::polar(-v.angle, v.exponent);
}

// ---------------------------------------------------------------------------

void validate_character(const SpectrumAtlas& atlas, const Character& chi)
{
    if (chi.face_id < 0 || chi.face_id >= static_cast<int>(atlas.faces.size()))
        throw InvalidCharacter("unknown face id " + std::to_string(chi.face_id));
    const FaceData& f = atlas.face(chi.face_id);
    const Index r = f.lattice.rank();
    if (chi.theta.size() != r || chi.lambda.size() != r)
        throw InvalidCharacter("face " + std::to_string(chi.face_id) + " needs " + std::to_string(r) +
                               " theta and lambda entries");
    for (Index i = 0; i < r; ++i)
        if (chi.theta(i) < 0 || chi.theta(i) >= 1) throw InvalidCharacter("theta entries must lie in [0, 1)");
    if (!f.dual_cone_local.contains(chi.lambda))
        throw InvalidCharacter("lambda " + to_string(chi.lambda) + " is not in the dual cone of face " +
                               std::to_string(chi.face_id));
}

Character make_character(const SpectrumAtlas& atlas, int face_id, RatVector theta, RatVector lambda)
{
    Character chi{face_id, reduce_mod_one(std::move(theta)), std::move(lambda)};
    validate_character(atlas, chi);
    return chi;
}

Character idempotent(const SpectrumAtlas& atlas, int face_id)
{
    const Index r = atlas.face(face_id).lattice.rank();
    return Character{face_id, RatVector::Zero(r), RatVector::Zero(r)};
}

ExactValue evaluate(const SpectrumAtlas& atlas, const Character& chi, const IntVector& x)
{
    validate_character(atlas, chi);
    if (!atlas.contains(x)) throw NotInSemigroup("evaluate: " + to_string(x) + " is not in S");
    const FaceData& f = atlas.face(chi.face_id);
    if (!f.cone.contains(x)) return ExactValue::zero_value();
    const auto c = lattice_coordinates(f.lattice, x);
    ensure(c.has_value(), "point of the face lies outside its group");
    Rational angle = 0, exponent = 0;
    for (Index i = 0; i < c->size(); ++i) {
        angle += chi.theta(i) * Rational((*c)(i));
        exponent += chi.lambda(i) * Rational((*c)(i));
    }
    ensure(exponent >= 0, "character exceeds modulus one");
    return ExactValue::polar(angle, exponent);
}

RatVector restrict_to_face(const SpectrumAtlas& atlas, int from, int to, const RatVector& data)
{
    if (!atlas.leq(to, from)) throw std::invalid_argument("restrict_to_face: target face is not below the source");
    const Lattice& source = atlas.face(from).lattice;
    const Lattice& target = atlas.face(to).lattice;
    RatVector out = RatVector::Zero(target.rank());
    for (Index i = 0; i < target.rank(); ++i) {
        const auto c = lattice_coordinates(source, target.basis().row(i).transpose());
        ensure(c.has_value(), "group of a lower face is not contained in the upper group");
        for (Index k = 0; k < c->size(); ++k) out(i) += data(k) * Rational((*c)(k));
    }
    return out;
}

Character multiply(const SpectrumAtlas& atlas, const Character& a, const Character& b)
{
    validate_character(atlas, a);
    validate_character(atlas, b);
    const int m = atlas.meet(a.face_id, b.face_id);
    RatVector theta = restrict_to_face(atlas, a.face_id, m, a.theta) + restrict_to_face(atlas, b.face_id, m, b.theta);
    RatVector lambda =
        restrict_to_face(atlas, a.face_id, m, a.lambda) + restrict_to_face(atlas, b.face_id, m, b.lambda);
    Character out{m, reduce_mod_one(std::move(theta)), std::move(lambda)};
    ensure(atlas.face(m).dual_cone_local.contains(out.lambda), "product left the dual cone");
    return out;
}

Character involute(const SpectrumAtlas& atlas, const Character& chi)
{
    validate_character(atlas, chi);
    return Character{chi.face_id, reduce_mod_one(RatVector(-chi.theta)), chi.lambda};
}

PolarParts polar_decompose(const SpectrumAtlas& atlas, const Character& chi)
{
    validate_character(atlas, chi);
    const Index r = chi.theta.size();
    return {Character{chi.face_id, chi.theta, RatVector::Zero(r)},
            Character{chi.face_id, RatVector::Zero(r), chi.lambda}};
}

// ---------------------------------------------------------------------------

Character ray_point(const SpectrumAtlas& atlas, const Ray& ray, const Rational& t)
{
    if (t < 0) throw std::invalid_argument("ray_point: parameter must be nonnegative");
    const Index r = atlas.face(ray.base_face_id).lattice.rank();
    return make_character(atlas, ray.base_face_id, RatVector::Zero(r), RatVector(ray.lambda * t));
}

int ray_limit(const SpectrumAtlas& atlas, const Ray& ray)
{
    const FaceData& base = atlas.face(ray.base_face_id);
    if (ray.lambda.size() != base.lattice.rank() || !base.dual_cone_local.contains(ray.lambda))
        throw InvalidCharacter("ray_limit: lambda is not in the dual cone of the base face");

    std::vector<IntVector> kept;
    for (const auto& g : base.cone_local.conic_generators())
        if (dot(g, ray.lambda) == 0) kept.push_back(to_ambient(base.lattice, g));
    const Cone flat = Cone::from_rays(atlas.spec.ambient_rank(), kept);

    std::vector<int> inside;
    for (int j = 0; j < static_cast<int>(atlas.faces.size()); ++j)
        if (atlas.leq(j, ray.base_face_id) && cone_subset(atlas.face(j).cone, flat)) inside.push_back(j);
    for (int c : inside)
        if (std::all_of(inside.begin(), inside.end(), [&](int d) { return atlas.leq(d, c); })) return c;
    throw InvariantViolation("ray_limit: no greatest face inside the flat");
}

LatticeBounds idempotent_lattice_ops(const SpectrumAtlas& atlas, const std::vector<int>& face_ids)
{
    if (face_ids.empty()) throw std::invalid_argument("idempotent_lattice_ops: empty set of faces");
    LatticeBounds out{face_ids.front(), face_ids.front()};
    (void)atlas.face(out.inf);
    for (int id : face_ids) {
        out.inf = atlas.meet(out.inf, id);
        out.sup = atlas.join(out.sup, id);
    }
    return out;
}

std::vector<Ray> chain_of_rays(const SpectrumAtlas& atlas, int from, int to)
{
    (void)atlas.face(from);
    (void)atlas.face(to);
    if (!atlas.leq(to, from))
        throw std::invalid_argument("chain_of_rays: face " + std::to_string(to) + " is not below face " +
                                    std::to_string(from));
    std::vector<Ray> chain;
    int current = from;
    while (current != to) {
        int next = -1;
        for (const auto& [upper, lower] : atlas.hasse)
            if (upper == current && atlas.leq(to, lower)) {
                next = lower;
                break;
            }
        ensure(next >= 0, "chain_of_rays: no cover step toward the target");

        const FaceData& f = atlas.face(current);
        std::vector<RatVector> below;
        for (const auto& g : atlas.face(next).cone.conic_generators())
            below.push_back(rational_coordinates(f.lattice, g));
        RatVector lambda = RatVector::Zero(f.lattice.rank());
        for (const auto& a : f.cone_local.inequalities())
            if (std::all_of(below.begin(), below.end(), [&](const RatVector& g) { return dot(a, g) == 0; }))
                lambda += to_rational(a);
        ensure(!is_zero(lambda), "chain_of_rays: no facet normal cuts out the next face");

        Ray ray{current, lambda};
        ensure(ray_limit(atlas, ray) == next, "chain_of_rays: ray does not reach the next face");
        chain.push_back(std::move(ray));
        current = next;
    }
    return chain;
}

CharacterFlags classify(const SpectrumAtlas& atlas, const Character& chi)
{
    validate_character(atlas, chi);
    CharacterFlags flags;
    flags.is_nonnegative = is_zero(chi.theta);
    flags.is_idempotent = flags.is_nonnegative && is_zero(chi.lambda);
    flags.is_symmetric = true;
    for (Index i = 0; i < chi.theta.size(); ++i)
        flags.is_symmetric = flags.is_symmetric && (chi.theta(i) == 0 || chi.theta(i) == Rational(1, 2));
    flags.in_Se = chi.face_id == atlas.top();
    const bool nonzero_inside = !evaluate(atlas, chi, atlas.interior_point).zero;
    ensure(flags.in_Se == nonzero_inside, "openness test disagrees with the face test");
    return flags;
}

std::optional<Character> zero_element(const SpectrumAtlas& atlas)
{
    const int least = atlas.least();
    if (atlas.face(least).lattice.rank() != 0) return std::nullopt;
    return idempotent(atlas, least);
}

}  // namespace toric
