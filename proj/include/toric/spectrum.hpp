#ifndef TORIC_SPECTRUM_HPP
#define TORIC_SPECTRUM_HPP

#include "toric/semigroup.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

/** Character data that does not fit the face it names. */
class InvalidCharacter : public std::invalid_argument {
public:
    explicit InvalidCharacter(const std::string& what) : std::invalid_argument(what) {}
};

/**
 * A point of Hom(S, closed unit disc). On its face P it is
 *
 *   chi(x) = exp(2 pi i <theta, c>) * exp(-<lambda, c>),   x = sum_i c_i b_i,
 *
 * where b_i is the Hermite basis of Γ_face; off P it vanishes. theta is
 * reduced into [0, 1) and lambda lies in the dual of the face cone, so the
 * triple is a canonical representative.
 */
struct Character {
    int face_id = 0;
    RatVector theta;
    RatVector lambda;

    bool operator==(const Character& other) const;
    bool operator!=(const Character& other) const { return !(*this == other); }
};

/** An exact value e^{2 pi i angle} e^{-exponent}, or zero. */
struct ExactValue {
    bool zero = true;
    Rational angle = 0;
    Rational exponent = 0;

    static ExactValue zero_value() { return {}; }
    static ExactValue polar(const Rational& angle, const Rational& exponent);

    std::complex<double> to_complex() const;
    bool operator==(const ExactValue& other) const;
    bool operator!=(const ExactValue& other) const { return !(*this == other); }
};

ExactValue operator*(const ExactValue& a, const ExactValue& b);
ExactValue conj(const ExactValue& v);

struct Ray {
    int base_face_id = 0;
    RatVector lambda;
};

/// Brings theta into [0, 1) and checks shapes and the dual-cone constraint on lambda.
Character make_character(const SpectrumAtlas& atlas, int face_id, RatVector theta, RatVector lambda);
void validate_character(const SpectrumAtlas& atlas, const Character& chi);

/// kappa_P: 1 on the face, 0 elsewhere.
Character idempotent(const SpectrumAtlas& atlas, int face_id);

ExactValue evaluate(const SpectrumAtlas& atlas, const Character& chi, const IntVector& x);
Character multiply(const SpectrumAtlas& atlas, const Character& a, const Character& b);
Character involute(const SpectrumAtlas& atlas, const Character& chi);

struct PolarParts {
    Character unitary;
    Character radial;
};
PolarParts polar_decompose(const SpectrumAtlas& atlas, const Character& chi);

Character ray_point(const SpectrumAtlas& atlas, const Ray& ray, const Rational& t);
/// The face P = S ∩ (C_base ∩ λ^⊥) reached as t → ∞.
int ray_limit(const SpectrumAtlas& atlas, const Ray& ray);

struct LatticeBounds {
    int inf;
    int sup;
};
LatticeBounds idempotent_lattice_ops(const SpectrumAtlas& atlas, const std::vector<int>& face_ids);

/// Rays stepping down the cover relation from face `from` to face `to`.
std::vector<Ray> chain_of_rays(const SpectrumAtlas& atlas, int from, int to);

struct CharacterFlags {
    bool is_idempotent = false;
    bool is_symmetric = false;
    bool is_nonnegative = false;
    bool in_Se = false;
};
CharacterFlags classify(const SpectrumAtlas& atlas, const Character& chi);

/// The zero of the character semigroup, present exactly when the least face is {0}.
std::optional<Character> zero_element(const SpectrumAtlas& atlas);

/// Restriction of theta/lambda data from face `from` to a face `to` below it.
RatVector restrict_to_face(const SpectrumAtlas& atlas, int from, int to, const RatVector& data);

}  // namespace toric

#endif
