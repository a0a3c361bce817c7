#include "toric/exact_linalg.hpp"

#include <sstream>

namespace toric {

namespace {

Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

void subtract_row_multiple(IntMatrix& a, Index target, Index source, const Integer& q)
{
    for (Index j = 0; j < a.cols(); ++j) a(target, j) -= q * a(source, j);
}

void swap_rows(IntMatrix& a, Index i, Index j)
{
    if (i == j) return;
    for (Index c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

// Integer row echelon form by gcd elimination. Pivots are searched in the
// first `col_limit` columns only; row operations act on every column so an
// augmented block records the transform. Returns the rank.
Index row_echelon(IntMatrix& a, Index col_limit, bool reduce_above)
{
    const Index m = a.rows();
    Index r = 0;
    for (Index c = 0; c < col_limit && r < m; ++c) {
        for (;;) {
            Index best = -1;
            for (Index i = r; i < m; ++i) {
                if (a(i, c) == 0) continue;
                if (best < 0 || abs_value(a(i, c)) < abs_value(a(best, c))) best = i;
            }
            if (best < 0) break;
            swap_rows(a, r, best);
            bool cleared = true;
            for (Index i = r + 1; i < m; ++i) {
                if (a(i, c) == 0) continue;
                Integer q = a(i, c) / a(r, c);
                subtract_row_multiple(a, i, r, q);
                if (a(i, c) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0)
            for (Index j = 0; j < a.cols(); ++j) a(r, j) = -a(r, j);
        if (reduce_above) {
            for (Index i = 0; i < r; ++i) {
                Integer q = floor_div(a(i, c), a(r, c));
                if (q != 0) subtract_row_multiple(a, i, r, q);
            }
        }
        ++r;
    }
    return r;
}

bool is_diagonal_shape(const IntMatrix& a)
{
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (i != j && a(i, j) != 0) return false;
    return true;
}

Index pivot_column(const IntMatrix& basis, Index row)
{
    for (Index j = 0; j < basis.cols(); ++j)
        if (basis(row, j) != 0) return j;
    throw InvariantViolation("lattice basis has a zero row");
}

}  // namespace

// ---------------------------------------------------------------------------

Lattice::Lattice(Index ambient_rank) : ambient_rank_(ambient_rank), basis_(0, ambient_rank) {}

bool Lattice::operator==(const Lattice& other) const
{
    if (ambient_rank_ != other.ambient_rank_ || basis_.rows() != other.basis_.rows()) return false;
    return basis_.size() == 0 || basis_ == other.basis_;
}

Lattice hnf(const IntMatrix& rows)
{
    IntMatrix a = rows;
    const Index r = row_echelon(a, a.cols(), true);
    Lattice out;
    out.ambient_rank_ = rows.cols();
    out.basis_ = a.topRows(r);
    return out;
}

Lattice hnf(const std::vector<IntVector>& rows, Index ambient_rank)
{
    return hnf(stack_rows(rows, ambient_rank));
}

std::vector<Integer> smith_invariants(const IntMatrix& m)
{
    IntMatrix a = m;
    for (;;) {
        const Index r = row_echelon(a, a.cols(), false);
        a = IntMatrix(a.topRows(r));
        if (is_diagonal_shape(a)) break;
        a = IntMatrix(a.transpose());
    }
    std::vector<Integer> d;
    for (Index i = 0; i < std::min(a.rows(), a.cols()); ++i)
        if (a(i, i) != 0) d.push_back(abs_value(a(i, i)));
    // diag(a, b) ~ diag(gcd, lcm); sweeping all pairs yields the divisibility chain.
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            Integer g = gcd(d[i], d[j]);
            Integer l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    return d;
}

QuotientInvariants quotient_invariants(Index ambient_rank, const Lattice& lattice)
{
    if (lattice.ambient_rank() != ambient_rank) throw DimensionMismatch("quotient_invariants: ambient rank mismatch");
    QuotientInvariants q;
    q.free_rank = ambient_rank - lattice.rank();
    for (const Integer& f : smith_invariants(lattice.basis()))
        if (f > 1) q.torsion.push_back(f);
    return q;
}

std::optional<IntVector> lattice_coordinates(const Lattice& lattice, const IntVector& x)
{
    if (x.size() != lattice.ambient_rank()) throw DimensionMismatch("lattice_coordinates: length mismatch");
    const IntMatrix& b = lattice.basis();
    IntVector residual = x;
    IntVector coords(b.rows());
    for (Index i = 0; i < b.rows(); ++i) {
        const Index p = pivot_column(b, i);
        if (residual(p) % b(i, p) != 0) return std::nullopt;
        coords(i) = residual(p) / b(i, p);
        for (Index j = 0; j < b.cols(); ++j) residual(j) -= coords(i) * b(i, j);
    }
    if (!is_zero(residual)) return std::nullopt;
    return coords;
}

bool lattice_contains(const Lattice& lattice, const IntVector& x)
{
    return lattice_coordinates(lattice, x).has_value();
}

bool lattice_subset(const Lattice& sub, const Lattice& super)
{
    if (sub.ambient_rank() != super.ambient_rank()) return false;
    for (Index i = 0; i < sub.rank(); ++i)
        if (!lattice_contains(super, sub.basis().row(i).transpose())) return false;
    return true;
}

Lattice integer_kernel(const IntMatrix& m)
{
    const Index n = m.cols();
    const Index k = m.rows();
    IntMatrix aug(n, k + n);
    aug.leftCols(k) = m.transpose();
    aug.rightCols(n) = IntMatrix::Identity(n, n);
    const Index r = row_echelon(aug, k, false);
    return hnf(IntMatrix(aug.bottomRows(n - r).rightCols(n)));
}

Saturation saturation_index(Index ambient_rank, const Lattice& lattice)
{
    if (lattice.ambient_rank() != ambient_rank) throw DimensionMismatch("saturation_index: ambient rank mismatch");
    if (lattice.rank() == 0) return {lattice, Integer(1)};

    const RatMatrix kernel = rational_kernel(to_rational(lattice.basis()));
    std::vector<IntVector> normals;
    for (Index i = 0; i < kernel.rows(); ++i) normals.push_back(primitive(RatVector(kernel.row(i).transpose())));
    Lattice saturated = integer_kernel(stack_rows(normals, ambient_rank));

    // [saturated : L] = |det| of L's basis written in saturated coordinates.
    RatMatrix coords(lattice.rank(), saturated.rank());
    for (Index i = 0; i < lattice.rank(); ++i) {
        auto c = lattice_coordinates(saturated, lattice.basis().row(i).transpose());
        ensure(c.has_value(), "saturation does not contain the lattice");
        coords.row(i) = c->cast<Rational>().transpose();
    }
    Rational det = determinant(coords);
    ensure(denominator(det) == 1, "lattice index is not integral");
    Integer index = numerator(det);
    return {saturated, abs_value(index)};
}

// ---------------------------------------------------------------------------

namespace detail {

std::vector<Index> rref(RatMatrix& m)
{
    std::vector<Index> pivots;
    Index r = 0;
    for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
        Index p = -1;
        for (Index i = r; i < m.rows(); ++i)
            if (m(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (Index j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        const Rational inv = 1 / m(r, c);
        for (Index j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (Index i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            const Rational f = m(i, c);
            for (Index j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

RatMatrix rational_kernel(const RatMatrix& m)
{
    RatMatrix a = m;
    const std::vector<Index> pivots = detail::rref(a);
    const Index n = m.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

    RatMatrix kernel(n - static_cast<Index>(pivots.size()), n);
    Index row = 0;
    for (Index f = 0; f < n; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        RatVector v = RatVector::Zero(n);
        v(f) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v(pivots[i]) = -a(static_cast<Index>(i), f);
        kernel.row(row++) = v.transpose();
    }
    return kernel;
}

std::optional<RatVector> solve_row_combination(const RatMatrix& basis, const RatVector& x)
{
    if (x.size() != basis.cols()) throw DimensionMismatch("solve_row_combination: length mismatch");
    const Index r = basis.rows();
    RatMatrix aug(basis.cols(), r + 1);
    aug.leftCols(r) = basis.transpose();
    aug.col(r) = x;
    const std::vector<Index> pivots = detail::rref(aug);
    if (!pivots.empty() && pivots.back() == r) return std::nullopt;
    if (static_cast<Index>(pivots.size()) != r) throw InvariantViolation("solve_row_combination: dependent basis");
    RatVector c(r);
    for (Index i = 0; i < r; ++i) c(i) = aug(i, r);
    return c;
}

Rational determinant(const RatMatrix& m)
{
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant: matrix is not square");
    RatMatrix a = m;
    Rational det = 1;
    const Index n = a.rows();
    for (Index c = 0; c < n; ++c) {
        Index p = -1;
        for (Index i = c; i < n; ++i)
            if (a(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) return 0;
        if (p != c) {
            for (Index j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (Index i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            const Rational f = a(i, c) / a(c, c);
            for (Index j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

IntVector primitive(const RatVector& v)
{
    Integer l = 1;
    for (Index i = 0; i < v.size(); ++i) l = lcm(l, Integer(denominator(v(i))));
    IntVector out(v.size());
    for (Index i = 0; i < v.size(); ++i) out(i) = numerator(v(i)) * (l / denominator(v(i)));
    return primitive(out);
}

IntVector primitive(const IntVector& v)
{
    Integer g = 0;
    for (Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
    if (g == 0) throw std::invalid_argument("primitive: zero vector");
    IntVector out(v.size());
    for (Index i = 0; i < v.size(); ++i) out(i) = v(i) / g;
    return out;
}

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    Integer r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
    return q;
}

Rational frac(const Rational& q)
{
    Integer f = floor_div(numerator(q), denominator(q));
    return q - Rational(f);
}

// ---------------------------------------------------------------------------

std::string to_string(const Rational& q)
{
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << '/' << denominator(q);
    return os.str();
}

std::string to_string(const IntVector& v)
{
    std::ostringstream os;
    os << '(';
    for (Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
    os << ')';
    return os.str();
}

std::string to_string(const RatVector& v)
{
    std::ostringstream os;
    os << '(';
    for (Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v(i));
    os << ')';
    return os.str();
}

std::string to_string(const std::vector<IntVector>& vs)
{
    std::string s = "[";
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + to_string(vs[i]);
    return s + "]";
}

}  // namespace toric
