#ifndef TORIC_VERIFIER_HPP
#define TORIC_VERIFIER_HPP

// Brute-force oracles. Apart from IntVector and the SemigroupSpec/atlas inputs they
// inspect, nothing here calls into the face, membership or cone code.

#include "toric/spectrum.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace toric {

struct BoxSpec {
    int radius = 6;

    explicit BoxSpec(int b = 6);
};

/// Box radius from TORIC_SPECTRUM_BOX, or `fallback` when unset.
BoxSpec default_box(int fallback = 6);

using PointSet = std::vector<IntVector>;

struct OracleReport {
    /// Sets found by the oracle, each sorted, the family sorted.
    std::vector<PointSet> oracle_faces;
    /// Atlas faces intersected with the box, in the same normal form.
    std::vector<PointSet> atlas_faces;
    /// Box points where the oracle and the library disagree on x ∈ S.
    PointSet membership_mismatches;
    std::size_t box_points_in_S = 0;

    bool agree() const;
};

/// Points of S in [-B, B]^n, computed without the library's membership test.
PointSet brute_force_members(const SemigroupSpec& spec, const BoxSpec& box);

/// Subsets of S ∩ box cut out by sets of supporting normals (found by brute force over
/// cross products) that pass the face test on the box.
std::vector<PointSet> brute_force_faces(const SemigroupSpec& spec, const BoxSpec& box);

/// Runs the oracle and lines its answer up against an atlas.
OracleReport compare_faces(const SpectrumAtlas& atlas, const BoxSpec& box);

struct DdReport {
    std::size_t points_checked = 0;
    PointSet mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// Scans the box and compares inequality membership with membership in cone(rays) + span(lineality).
DdReport dd_cross_check(const Cone& cone, const BoxSpec& box);

struct HomomorphismReport {
    int trials = 0;
    int exact_mismatches = 0;
    double max_float_deviation = 0.0;
};

HomomorphismReport numeric_homomorphism_check(const SpectrumAtlas& atlas, int trials, std::uint64_t seed);

using Rng = std::mt19937_64;

/// A random valid character on a random face: theta with small denominators, lambda a small
/// nonnegative combination of the dual cone's generators.
Character random_character(const SpectrumAtlas& atlas, Rng& rng);
Character random_character_on(const SpectrumAtlas& atlas, int face_id, Rng& rng);

/// A random point of S built from its SemigroupSpec description.
IntVector random_semigroup_point(const SemigroupSpec& spec, Rng& rng);

struct RandomSpecOptions {
    int min_rank = 1;
    int max_rank = 4;
    int max_generators = 8;
    int entry_bound = 3;
    bool pointed_only = false;
};

SemigroupSpec random_generators_spec(Rng& rng, const RandomSpecOptions& options);

}  // namespace toric

#endif
