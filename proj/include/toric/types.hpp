#ifndef TORIC_TYPES_HPP
#define TORIC_TYPES_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Index = Eigen::Index;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Row-major convention throughout: each row of a Matrix is one vector of Z^n or Q^n.
template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntVector = Vector<Integer>;
using IntMatrix = Matrix<Integer>;
using RatVector = Vector<Rational>;
using RatMatrix = Matrix<Rational>;

/** Vector lengths or ranks that do not agree. */
class DimensionMismatch : public std::invalid_argument {
public:
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/** A point was required to lie in a cone and does not. */
class NotInCone : public std::domain_error {
public:
    explicit NotInCone(const std::string& what) : std::domain_error(what) {}
};

/** A point was required to lie in the semigroup and does not. */
class NotInSemigroup : public std::domain_error {
public:
    explicit NotInSemigroup(const std::string& what) : std::domain_error(what) {}
};

/** Membership search hit its configured budget; the answer is unknown, not "false". */
class IndeterminateMembership : public std::runtime_error {
public:
    explicit IndeterminateMembership(const std::string& what) : std::runtime_error(what) {}
};

/** An internal invariant failed. Always a bug. */
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

inline void ensure(bool condition, const char* what)
{
    if (!condition) throw InvariantViolation(what);
}

// ---------------------------------------------------------------------------
// Small generic helpers over Eigen vectors.

template <class Scalar>
Vector<Scalar> make_vector(std::initializer_list<Scalar> entries)
{
    Vector<Scalar> v(static_cast<Index>(entries.size()));
    Index i = 0;
    for (const auto& e : entries) v(i++) = e;
    return v;
}

inline IntVector ivec(std::initializer_list<long> entries)
{
    IntVector v(static_cast<Index>(entries.size()));
    Index i = 0;
    for (long e : entries) v(i++) = e;
    return v;
}

inline RatVector rvec(std::initializer_list<Rational> entries) { return make_vector<Rational>(entries); }

/// Lexicographic comparison, shorter vectors first.
template <class Scalar>
bool lex_less(const Vector<Scalar>& a, const Vector<Scalar>& b)
{
    if (a.size() != b.size()) return a.size() < b.size();
    for (Index i = 0; i < a.size(); ++i) {
        if (a(i) < b(i)) return true;
        if (b(i) < a(i)) return false;
    }
    return false;
}

template <class Scalar>
bool lex_less(const std::vector<Vector<Scalar>>& a, const std::vector<Vector<Scalar>>& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const auto& x, const auto& y) { return lex_less(x, y); });
}

template <class Scalar>
bool equal(const Vector<Scalar>& a, const Vector<Scalar>& b)
{
    return a.size() == b.size() && (a.size() == 0 || a == b);
}

template <class Scalar>
bool is_zero(const Vector<Scalar>& v)
{
    for (Index i = 0; i < v.size(); ++i)
        if (v(i) != 0) return false;
    return true;
}

template <class Scalar>
Scalar dot(const Vector<Scalar>& a, const Vector<Scalar>& b)
{
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Scalar s = 0;
    for (Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
    return s;
}

inline Rational dot(const IntVector& a, const RatVector& b)
{
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Rational s = 0;
    for (Index i = 0; i < a.size(); ++i) s += Rational(a(i)) * b(i);
    return s;
}

inline RatVector to_rational(const IntVector& v) { return v.template cast<Rational>(); }
inline RatMatrix to_rational(const IntMatrix& m) { return m.template cast<Rational>(); }

/// Stack vectors as rows; `cols` is needed when the list is empty.
template <class Scalar>
Matrix<Scalar> stack_rows(const std::vector<Vector<Scalar>>& rows, Index cols)
{
    Matrix<Scalar> m(static_cast<Index>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionMismatch("stack_rows: row length differs from ambient rank");
        m.row(static_cast<Index>(i)) = rows[i].transpose();
    }
    return m;
}

template <class Scalar>
std::vector<Vector<Scalar>> unstack_rows(const Matrix<Scalar>& m)
{
    std::vector<Vector<Scalar>> out;
    out.reserve(static_cast<std::size_t>(m.rows()));
    for (Index i = 0; i < m.rows(); ++i) out.push_back(m.row(i).transpose());
    return out;
}

std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);
std::string to_string(const std::vector<IntVector>& vs);
std::string to_string(const Rational& q);

}  // namespace toric

#endif
