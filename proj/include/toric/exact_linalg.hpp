#ifndef TORIC_EXACT_LINALG_HPP
#define TORIC_EXACT_LINALG_HPP

#include "toric/types.hpp"

#include <optional>
#include <vector>

namespace toric {

/**
 * A subgroup of Z^n stored by its row-style Hermite normal form.
 *
 * Rows are linearly independent, pivots are positive and strictly move
 * right, and every entry above a pivot lies in [0, pivot). The form is
 * unique for the lattice, so two Lattice values compare equal exactly when
 * they describe the same subgroup.
 */
class Lattice {
public:
    Lattice() = default;
    /// Zero lattice in Z^n.
    explicit Lattice(Index ambient_rank);

    Index ambient_rank() const { return ambient_rank_; }
    Index rank() const { return basis_.rows(); }
    const IntMatrix& basis() const { return basis_; }
    std::vector<IntVector> rows() const { return unstack_rows(basis_); }

    bool operator==(const Lattice& other) const;
    bool operator!=(const Lattice& other) const { return !(*this == other); }

private:
    friend Lattice hnf(const IntMatrix& rows);
    Index ambient_rank_ = 0;
    IntMatrix basis_;
};

/// Canonical lattice spanned by the rows of `rows` (n = rows.cols()).
Lattice hnf(const IntMatrix& rows);
/// Same, for a list of vectors that must all have length `ambient_rank`.
Lattice hnf(const std::vector<IntVector>& rows, Index ambient_rank);

struct QuotientInvariants {
    Index free_rank = 0;
    /// Invariant factors > 1 of the torsion part, each dividing the next.
    std::vector<Integer> torsion;
};

/// Structure of Z^n / L.
QuotientInvariants quotient_invariants(Index ambient_rank, const Lattice& lattice);

/// Smith invariant factors of an integer matrix (nonzero diagonal entries only).
std::vector<Integer> smith_invariants(const IntMatrix& m);

bool lattice_contains(const Lattice& lattice, const IntVector& x);

/// Integer coordinates c with x = c * basis, if x lies in the lattice.
std::optional<IntVector> lattice_coordinates(const Lattice& lattice, const IntVector& x);

struct Saturation {
    Lattice saturated;
    Integer index;
};

/// (Q-span of L) ∩ Z^n together with the index [saturated : L].
Saturation saturation_index(Index ambient_rank, const Lattice& lattice);

/// {x in Z^n : m x = 0}, as a canonical lattice (n = m.cols()).
Lattice integer_kernel(const IntMatrix& m);

bool lattice_subset(const Lattice& sub, const Lattice& super);

// ---------------------------------------------------------------------------
// Rational helpers.

/// Rank over Q. Works for any exact scalar convertible to Rational.
template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& m);

/// Basis rows of {x : m x = 0} over Q, in reduced form.
RatMatrix rational_kernel(const RatMatrix& m);

/// Solves c * basis = x (basis rows independent); empty when x is not in the row span.
std::optional<RatVector> solve_row_combination(const RatMatrix& basis, const RatVector& x);

/// Exact determinant of a square matrix.
Rational determinant(const RatMatrix& m);

/// Positive integer multiple of v with coprime entries (v nonzero).
IntVector primitive(const RatVector& v);
IntVector primitive(const IntVector& v);

Integer floor_div(const Integer& a, const Integer& b);

/// Reduces q into [0, 1).
Rational frac(const Rational& q);

// ---------------------------------------------------------------------------

namespace detail {
/// In-place Gauss-Jordan over Q; returns the pivot columns.
std::vector<Index> rref(RatMatrix& m);
}  // namespace detail

template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& m)
{
    RatMatrix work = m.template cast<Rational>();
    return static_cast<Index>(detail::rref(work).size());
}

}  // namespace toric

#endif
