#ifndef TORIC_SEMIGROUP_HPP
#define TORIC_SEMIGROUP_HPP

#include "toric/cone.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace toric {

/**
 * A semigroup S ⊆ Z^n containing 0, described either by generators or as a
 * tower: S = {x : <v, x> > 0} ∪ embed(inner), where inner lives on the
 * Hermite basis of v^⊥ ∩ Z^n.
 */
class SemigroupSpec {
public:
    struct Generators {
        std::vector<IntVector> generators;
    };
    struct Tower {
        IntVector normal;
        std::shared_ptr<const SemigroupSpec> inner;
        /// Rows: Hermite basis of v^⊥ ∩ Z^n; inner coordinates y map to y * kernel_basis.
        IntMatrix kernel_basis;
    };

    static SemigroupSpec generators(Index ambient_rank, std::vector<IntVector> generators);
    static SemigroupSpec tower(Index ambient_rank, IntVector normal, SemigroupSpec inner);

    Index ambient_rank() const { return n_; }
    bool is_tower() const { return std::holds_alternative<Tower>(data_); }
    const Generators& as_generators() const { return std::get<Generators>(data_); }
    const Tower& as_tower() const { return std::get<Tower>(data_); }

    bool operator==(const SemigroupSpec& other) const;

private:
    SemigroupSpec(Index n, std::variant<Generators, Tower> data) : n_(n), data_(std::move(data)) {}
    Index n_ = 0;
    std::variant<Generators, Tower> data_;
};

struct MembershipOptions {
    /// Search nodes allowed per query before reporting IndeterminateMembership.
    std::size_t node_budget = 2'000'000;
};

/**
 * Exact membership x ∈ S. Generator sets are split into the part lying in
 * the lineality space of α(S), which generates a group, and the rest, whose
 * coefficients are bounded through a functional strictly positive on them.
 * Prepared once per spec; queries are const and thread-safe.
 */
class MembershipTester {
public:
    explicit MembershipTester(const SemigroupSpec& spec, MembershipOptions options = {});
    bool contains(const IntVector& x) const;

private:
    struct GeneratorData;
    Index n_;
    MembershipOptions options_;
    std::shared_ptr<const GeneratorData> generators_;
    std::optional<IntVector> normal_;
    std::optional<Lattice> kernel_;
    std::shared_ptr<const MembershipTester> inner_;
};

Cone asymptotic_cone(const SemigroupSpec& spec);
bool contains(const SemigroupSpec& spec, const IntVector& x, MembershipOptions options = {});
bool is_antisymmetric(const SemigroupSpec& spec);
bool is_separating(const SemigroupSpec& spec);

/** One face P of S with the data attached to it. */
struct FaceData {
    FaceHandle handle;
    /// C_j = α(P).
    Cone cone;
    /// Γ_j, the group generated by P.
    Lattice lattice;
    std::vector<Integer> torsion;
    /// C_j written in coordinates of the basis of Γ_j.
    Cone cone_local;
    /// Dual of cone_local: the admissible radial data on this face.
    Cone dual_cone_local;
    std::vector<IntVector> member_generators;
};

struct AtlasOptions {
    unsigned threads = 1;
    MembershipOptions membership;
};

struct SpectrumAtlas {
    SemigroupSpec spec;
    Cone ambient_cone;
    std::vector<FaceData> faces;
    /// Cover relations (upper, lower), sorted.
    std::vector<std::pair<int, int>> hasse;
    /// order[j][k] is true when face j ≤ face k.
    std::vector<std::vector<bool>> order;
    bool antisymmetric = false;
    bool separating = false;
    /// A point of S in the relative interior of α(S).
    IntVector interior_point;
    /// Rounds of the expansion procedure that added at least one face.
    int expansion_rounds = 0;
    std::shared_ptr<const MembershipTester> membership;

    int top() const { return 0; }
    int least() const;
    bool leq(int j, int k) const { return order.at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(k)); }
    const FaceData& face(int id) const;
    int meet(int j, int k) const;
    int join(int j, int k) const;
    bool contains(const IntVector& x) const { return membership->contains(x); }
};

SpectrumAtlas enumerate_faces(const SemigroupSpec& spec, AtlasOptions options = {});

Lattice face_group(const SpectrumAtlas& atlas, int face_id);
Cone dual_face_cone(const SpectrumAtlas& atlas, int face_id);
bool hull_contains(const SpectrumAtlas& atlas, const IntVector& x);

struct SdataViolation {
    char condition;  // 'A', 'B' or 'C'
    int lower;
    int upper;
    std::string detail;
};

struct SdataReport {
    std::vector<SdataViolation> violations;
    int pairs_checked = 0;
    bool ok() const { return violations.empty(); }
};

/// Checks the compatibility conditions between faces, cones and groups on every comparable pair.
SdataReport validate_sdata(const SpectrumAtlas& atlas);

/// Coordinates of x (lying in span of `lattice`) with respect to the lattice basis.
RatVector rational_coordinates(const Lattice& lattice, const IntVector& x);

}  // namespace toric

#endif
