#ifndef TORIC_CONE_HPP
#define TORIC_CONE_HPP

#include "toric/exact_linalg.hpp"

#include <span>
#include <utility>
#include <vector>

namespace toric {

/**
 * A rational polyhedral cone C in R^n, held in both representations:
 *
 *   C = cone(rays) + span(lineality) = {x : <a, x> >= 0 for a in inequalities,
 *                                            <e, x> = 0 for e in equations}.
 *
 * Canonical form: lineality and equations are saturated lattices in Hermite
 * normal form; rays are primitive and orthogonal to the lineality space;
 * inequality normals are primitive and lie in span(C). Both lists are
 * sorted lexicographically, so equal cones have identical members.
 */
class Cone {
public:
    Cone() = default;

    Index ambient_rank() const { return n_; }
    const std::vector<IntVector>& rays() const { return rays_; }
    const std::vector<IntVector>& inequalities() const { return inequalities_; }
    const Lattice& lineality() const { return lineality_; }
    /// Saturated basis of span(C)^⊥.
    const Lattice& equations() const { return equations_; }

    Index dim() const { return n_ - equations_.rank(); }
    bool pointed() const { return lineality_.rank() == 0; }

    bool contains(const IntVector& x) const;
    bool contains(const RatVector& x) const;
    /// x in C with every inequality strictly positive.
    bool contains_in_relative_interior(const IntVector& x) const;
    bool contains_in_relative_interior(const RatVector& x) const;

    /// Generators of C as a cone: rays, lineality rows and their negatives.
    std::vector<IntVector> conic_generators() const;

    bool operator==(const Cone& other) const;
    bool operator!=(const Cone& other) const { return !(*this == other); }

    static Cone from_rays(Index n, std::span<const IntVector> rays, std::span<const IntVector> lineality = {});
    static Cone from_inequalities(Index n, std::span<const IntVector> inequalities,
                                  std::span<const IntVector> equations = {});

private:
    Index n_ = 0;
    std::vector<IntVector> rays_;
    std::vector<IntVector> inequalities_;
    Lattice lineality_;
    Lattice equations_;
};

enum class ConeInput { Rays, Inequalities };

/// Double description conversion; both representations of the result are populated.
Cone dd_convert(Index n, std::span<const IntVector> input, ConeInput kind);

/// {y : <x, y> >= 0 for all x in C}, computed from the definition by a fresh conversion.
Cone dual_cone(const Cone& cone);

bool is_pointed(const Cone& cone);

/// Inclusion test A ⊆ B.
bool cone_subset(const Cone& a, const Cone& b);

struct FaceHandle {
    int id = 0;
    /// Indices into Cone::inequalities() vanishing on the face.
    std::vector<int> tight_set;
    Index dim = 0;
    /// Indices into Cone::rays() lying on the face.
    std::vector<int> ray_indices;
};

struct FaceLattice {
    /// Ordered by dim descending, then tight_set lexicographically; ids are positions.
    std::vector<FaceHandle> faces;
    /// Hasse diagram as (upper, lower) pairs, sorted.
    std::vector<std::pair<int, int>> covers;

    const FaceHandle& top() const { return faces.front(); }
    const FaceHandle& bottom() const { return faces.back(); }
};

FaceLattice face_lattice(const Cone& cone);

/// The face containing x in its relative interior.
FaceHandle minimal_face_of_point(const Cone& cone, const FaceLattice& lattice, const RatVector& x);
FaceHandle minimal_face_of_point(const Cone& cone, const RatVector& x);

/// Cone spanned by the lineality space and the given rays of `cone`.
Cone face_cone(const Cone& cone, const FaceHandle& face);

namespace detail {

struct VRepresentation {
    std::vector<IntVector> rays;
    Lattice lineality;
};

/// {x : A x >= 0, E x = 0} to extreme rays modulo lineality (canonical).
VRepresentation double_description(Index n, std::span<const IntVector> inequalities,
                                   std::span<const IntVector> equations);

}  // namespace detail

}  // namespace toric

#endif
