#include "toric/verifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace toric {

namespace {

using Point = std::vector<long long>;

long long to_ll(const Integer& v)
{
    if (v > Integer(std::numeric_limits<long long>::max() / 4) || v < Integer(std::numeric_limits<long long>::min() / 4))
        throw std::out_of_range("oracle: entry too large for brute force");
    return v.convert_to<long long>();
}

Point to_point(const IntVector& v)
{
    Point p(static_cast<std::size_t>(v.size()));
    for (Index i = 0; i < v.size(); ++i) p[static_cast<std::size_t>(i)] = to_ll(v(i));
    return p;
}

IntVector to_int_vector(const Point& p)
{
    IntVector v(static_cast<Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) v(static_cast<Index>(i)) = p[i];
    return v;
}

long long sup_norm(const Point& p)
{
    long long m = 0;
    for (long long x : p) m = std::max(m, x < 0 ? -x : x);
    return m;
}

// Small exact rationals; the oracle only ever sees tiny entries.
struct Q {
    __int128 p = 0, q = 1;

    Q() = default;
    Q(long long v) : p(v) {}
    Q(__int128 a, __int128 b) : p(a), q(b) { normalize(); }

    void normalize()
    {
        if (q < 0) {
            p = -p;
            q = -q;
        }
        __int128 a = p < 0 ? -p : p, b = q;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            p /= a;
            q /= a;
        }
    }
    friend Q operator+(Q a, Q b) { return {a.p * b.q + b.p * a.q, a.q * b.q}; }
    friend Q operator-(Q a, Q b) { return {a.p * b.q - b.p * a.q, a.q * b.q}; }
    friend Q operator*(Q a, Q b) { return {a.p * b.p, a.q * b.q}; }
    friend Q operator/(Q a, Q b) { return {a.p * b.q, a.q * b.p}; }
    bool is_zero() const { return p == 0; }
    bool negative() const { return p < 0; }
    friend bool operator==(Q a, Q b) { return a.p == b.p && a.q == b.q; }
};

using QMatrix = std::vector<std::vector<Q>>;

int rank_of(const std::vector<Point>& rows, std::size_t n)
{
    QMatrix m;
    for (const auto& r : rows) {
        std::vector<Q> row;
        for (long long x : r) row.emplace_back(x);
        m.push_back(std::move(row));
    }
    int rank = 0;
    for (std::size_t col = 0; col < n && rank < static_cast<int>(m.size()); ++col) {
        std::size_t pivot = static_cast<std::size_t>(rank);
        while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[pivot], m[static_cast<std::size_t>(rank)]);
        const auto& pr = m[static_cast<std::size_t>(rank)];
        for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < m.size(); ++i) {
            if (m[i][col].is_zero()) continue;
            const Q f = m[i][col] / pr[col];
            for (std::size_t j = col; j < n; ++j) m[i][j] = m[i][j] - f * pr[j];
        }
        ++rank;
    }
    return rank;
}

// Inverse of a square matrix, or nothing when singular.
std::optional<QMatrix> inverse(QMatrix a)
{
    const std::size_t k = a.size();
    QMatrix inv(k, std::vector<Q>(k));
    for (std::size_t i = 0; i < k; ++i) inv[i][i] = Q(1);
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && a[pivot][col].is_zero()) ++pivot;
        if (pivot == k) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const Q d = a[col][col];
        for (std::size_t j = 0; j < k; ++j) {
            a[col][j] = a[col][j] / d;
            inv[col][j] = inv[col][j] / d;
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            const Q f = a[i][col];
            for (std::size_t j = 0; j < k; ++j) {
                a[i][j] = a[i][j] - f * a[col][j];
                inv[i][j] = inv[i][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

// All integer points of [-r, r]^n in lexicographic order.
std::vector<Point> box_points(std::size_t n, long long r)
{
    std::vector<Point> out;
    Point p(n, -r);
    while (true) {
        out.push_back(p);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (p[i] < r) {
                ++p[i];
                break;
            }
            p[i] = -r;
            if (i == 0) return out;
        }
        if (n == 0) return out;
    }
}

struct Window {
    std::size_t n;
    long long r;

    long long side() const { return 2 * r + 1; }
    bool inside(const Point& p) const
    {
        return std::all_of(p.begin(), p.end(), [&](long long x) { return x >= -r && x <= r; });
    }
    std::size_t index(const Point& p) const
    {
        std::size_t idx = 0;
        for (long long x : p) idx = idx * static_cast<std::size_t>(side()) + static_cast<std::size_t>(x + r);
        return idx;
    }
    std::size_t size() const
    {
        std::size_t s = 1;
        for (std::size_t i = 0; i < n; ++i) s *= static_cast<std::size_t>(side());
        return s;
    }
};

// Points reachable from 0 by adding generators while staying inside a window. Any
// representation of a point of norm ≤ B can be reordered so that its partial sums stay
// within n·(G + B) of the segment [0, x] (Steinitz), so this window is large enough.
std::set<Point> generated_members(const std::vector<Point>& gens, std::size_t n, long long b)
{
    long long g = 0;
    for (const auto& v : gens) g = std::max(g, sup_norm(v));
    const Window w{n, b + static_cast<long long>(n) * (g + b)};
    if (w.size() > 200'000'000) throw std::out_of_range("oracle: search window too large");

    std::vector<bool> seen(w.size(), false);
    std::vector<Point> queue{Point(n, 0)};
    seen[w.index(queue.front())] = true;
    std::set<Point> out;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Point p = queue[head];
        if (sup_norm(p) <= b) out.insert(p);
        for (const auto& v : gens) {
            Point q = p;
            for (std::size_t i = 0; i < n; ++i) q[i] += v[i];
            if (!w.inside(q)) continue;
            const std::size_t idx = w.index(q);
            if (seen[idx]) continue;
            seen[idx] = true;
            queue.push_back(std::move(q));
        }
    }
    return out;
}

// Solves y·K = x for the echelon-form matrix K, if an integer solution exists.
std::optional<Point> solve_echelon(const std::vector<Point>& k, const Point& x)
{
    Point y(k.size(), 0);
    Point residual = x;
    for (std::size_t i = 0; i < k.size(); ++i) {
        std::size_t col = 0;
        while (k[i][col] == 0) ++col;
        if (residual[col] % k[i][col] != 0) return std::nullopt;
        y[i] = residual[col] / k[i][col];
        for (std::size_t j = 0; j < x.size(); ++j) residual[j] -= y[i] * k[i][j];
    }
    if (std::any_of(residual.begin(), residual.end(), [](long long v) { return v != 0; })) return std::nullopt;
    return y;
}

std::vector<Point> rows_of(const IntMatrix& m)
{
    std::vector<Point> out;
    for (Index i = 0; i < m.rows(); ++i) out.push_back(to_point(IntVector(m.row(i).transpose())));
    return out;
}

long long dot_ll(const Point& a, const Point& b)
{
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::set<Point> members_in_box(const SemigroupSpec& spec, long long b)
{
    const auto n = static_cast<std::size_t>(spec.ambient_rank());
    if (!spec.is_tower()) {
        std::vector<Point> gens;
        for (const auto& g : spec.as_generators().generators) gens.push_back(to_point(g));
        return generated_members(gens, n, b);
    }
    const auto& t = spec.as_tower();
    const Point v = to_point(t.normal);
    const auto k = rows_of(t.kernel_basis);
    std::vector<std::pair<Point, Point>> flat;
    long long inner_radius = 0;
    std::set<Point> out;
    for (const auto& x : box_points(n, b)) {
        const long long s = dot_ll(v, x);
        if (s > 0) out.insert(x);
        if (s != 0) continue;
        auto y = solve_echelon(k, x);
        if (!y) continue;
        inner_radius = std::max(inner_radius, sup_norm(*y));
        flat.emplace_back(x, *y);
    }
    const auto inner = members_in_box(*t.inner, inner_radius);
    for (const auto& [x, y] : flat)
        if (inner.count(y)) out.insert(x);
    return out;
}

Q determinant(QMatrix a)
{
    const std::size_t k = a.size();
    Q det(1);
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && a[pivot][col].is_zero()) ++pivot;
        if (pivot == k) return Q(0);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = Q(0) - det;
        }
        det = det * a[col][col];
        for (std::size_t i = col + 1; i < k; ++i) {
            const Q f = a[i][col] / a[col][col];
            for (std::size_t j = col; j < k; ++j) a[i][j] = a[i][j] - f * a[col][j];
        }
    }
    return det;
}

// Vector orthogonal to the n-1 given rows (cofactor expansion).
Point cross(const std::vector<Point>& rows, std::size_t n)
{
    Point a(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        QMatrix minor;
        for (const auto& r : rows) {
            std::vector<Q> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.emplace_back(r[c]);
            minor.push_back(std::move(row));
        }
        const Q d = determinant(minor);
        a[j] = static_cast<long long>(j % 2 == 0 ? d.p : -d.p);
    }
    long long g = 0;
    for (long long x : a) g = std::gcd(g, x);
    if (g > 1)
        for (auto& x : a) x /= g;
    return a;
}

// Normals a with <a, g> >= 0 on every generator, from cross products of n-1 vectors
// drawn from the generators and the standard basis.
std::vector<Point> supporting_normals(const std::vector<Point>& gens, std::size_t n)
{
    std::vector<Point> pool = gens;
    for (std::size_t i = 0; i < n; ++i) {
        Point e(n, 0);
        e[i] = 1;
        pool.push_back(e);
    }
    std::set<Point> out;
    const std::size_t k = n - 1;
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        std::vector<Point> rows;
        for (std::size_t i : pick) rows.push_back(pool[i]);
        Point a = cross(rows, n);
        bool nonneg = true, nonpos = true;
        for (const auto& g : gens) {
            const long long s = dot_ll(a, g);
            nonneg = nonneg && s >= 0;
            nonpos = nonpos && s <= 0;
        }
        if (nonpos && !nonneg)
            for (auto& x : a) x = -x;
        if ((nonneg || nonpos) && sup_norm(a) > 0) out.insert(a);

        std::size_t i = k;
        while (i > 0 && pick[i - 1] == pool.size() - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    return {out.begin(), out.end()};
}

// Candidate faces as membership masks over `members` (points of S).
std::set<std::vector<bool>> candidate_sets(const SemigroupSpec& spec, const std::vector<Point>& members)
{
    const auto n = static_cast<std::size_t>(spec.ambient_rank());
    std::set<std::vector<bool>> out{std::vector<bool>(members.size(), true)};
    if (!spec.is_tower()) {
        std::vector<Point> gens;
        for (const auto& g : spec.as_generators().generators) gens.push_back(to_point(g));
        std::vector<std::vector<bool>> tight;
        for (const auto& a : supporting_normals(gens, n)) {
            std::vector<bool> t(members.size());
            for (std::size_t i = 0; i < members.size(); ++i) t[i] = dot_ll(a, members[i]) == 0;
            tight.push_back(std::move(t));
        }
        // Close the family under intersection.
        std::vector<std::vector<bool>> frontier(out.begin(), out.end());
        while (!frontier.empty()) {
            std::vector<std::vector<bool>> next;
            for (const auto& s : frontier)
                for (const auto& t : tight) {
                    std::vector<bool> m(members.size());
                    for (std::size_t i = 0; i < members.size(); ++i) m[i] = s[i] && t[i];
                    if (out.insert(m).second) next.push_back(std::move(m));
                }
            frontier = std::move(next);
        }
        return out;
    }
    // Tower: S itself, and the faces of the inner semigroup carried into v^perp.
    const auto& t = spec.as_tower();
    const Point v = to_point(t.normal);
    const auto k = rows_of(t.kernel_basis);
    std::vector<Point> inner_members;
    std::vector<int> slot(members.size(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (dot_ll(v, members[i]) != 0) continue;
        auto y = solve_echelon(k, members[i]);
        if (!y) throw std::logic_error("oracle: member of v^perp outside the kernel lattice");
        slot[i] = static_cast<int>(inner_members.size());
        inner_members.push_back(*y);
    }
    for (const auto& s : candidate_sets(*t.inner, inner_members)) {
        std::vector<bool> m(members.size());
        for (std::size_t i = 0; i < members.size(); ++i) m[i] = slot[i] >= 0 && s[static_cast<std::size_t>(slot[i])];
        out.insert(std::move(m));
    }
    return out;
}

PointSet to_point_set(const std::vector<Point>& ps)
{
    PointSet out;
    for (const auto& p : ps) out.push_back(to_int_vector(p));
    return out;
}

bool same_sets(const PointSet& a, const PointSet& b)
{
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](const IntVector& x, const IntVector& y) { return equal(x, y); });
}

void sort_family(std::vector<PointSet>& family)
{
    std::sort(family.begin(), family.end(), [](const PointSet& a, const PointSet& b) { return lex_less(a, b); });
}

}  // namespace

// ---------------------------------------------------------------------------

BoxSpec::BoxSpec(int b) : radius(b)
{
    if (b < 1) throw std::invalid_argument("box radius must be at least 1");
}

BoxSpec default_box(int fallback)
{
    const char* env = std::getenv("TORIC_SPECTRUM_BOX");
    if (env == nullptr || *env == '\0') return BoxSpec(fallback);
    std::size_t used = 0;
    int b = 0;
    try {
        b = std::stoi(env, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != std::string(env).size() || b < 1)
        throw std::invalid_argument(std::string("TORIC_SPECTRUM_BOX must be a positive integer, got '") + env + "'");
    return BoxSpec(b);
}

PointSet brute_force_members(const SemigroupSpec& spec, const BoxSpec& box)
{
    const auto s = members_in_box(spec, box.radius);
    return to_point_set(std::vector<Point>(s.begin(), s.end()));
}

std::vector<PointSet> brute_force_faces(const SemigroupSpec& spec, const BoxSpec& box)
{
    const auto n = static_cast<std::size_t>(spec.ambient_rank());
    const auto members_set = members_in_box(spec, box.radius);
    const std::vector<Point> members(members_set.begin(), members_set.end());
    const Window w{n, box.radius};
    std::vector<int> slot(w.size(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) slot[w.index(members[i])] = static_cast<int>(i);

    std::vector<PointSet> out;
    for (const auto& in : candidate_sets(spec, members)) {
        // x + y ∈ P exactly when x ∈ P and y ∈ P: P is closed under sums and S∖P absorbs S.
        bool face = true;
        for (std::size_t i = 0; i < members.size() && face; ++i) {
            for (std::size_t j = i; j < members.size(); ++j) {
                Point s = members[i];
                for (std::size_t c = 0; c < n; ++c) s[c] += members[j][c];
                if (!w.inside(s)) continue;
                const int k = slot[w.index(s)];
                if (k < 0) throw std::logic_error("oracle: box members are not closed under addition");
                if (in[static_cast<std::size_t>(k)] != (in[i] && in[j])) {
                    face = false;
                    break;
                }
            }
        }
        if (!face) continue;
        std::vector<Point> p;
        for (std::size_t i = 0; i < members.size(); ++i)
            if (in[i]) p.push_back(members[i]);
        out.push_back(to_point_set(p));
    }
    sort_family(out);
    return out;
}

bool OracleReport::agree() const
{
    if (!membership_mismatches.empty() || oracle_faces.size() != atlas_faces.size()) return false;
    for (std::size_t i = 0; i < oracle_faces.size(); ++i)
        if (!same_sets(oracle_faces[i], atlas_faces[i])) return false;
    return true;
}

OracleReport compare_faces(const SpectrumAtlas& atlas, const BoxSpec& box)
{
    OracleReport report;
    report.oracle_faces = brute_force_faces(atlas.spec, box);

    const auto oracle_members = members_in_box(atlas.spec, box.radius);
    report.box_points_in_S = oracle_members.size();
    PointSet library_members;
    for (const auto& p : box_points(static_cast<std::size_t>(atlas.spec.ambient_rank()), box.radius)) {
        const IntVector x = to_int_vector(p);
        const bool lib = atlas.contains(x);
        if (lib != (oracle_members.count(p) > 0)) report.membership_mismatches.push_back(x);
        if (lib) library_members.push_back(x);
    }
    for (const auto& f : atlas.faces) {
        PointSet s;
        for (const auto& x : library_members)
            if (f.cone.contains(x)) s.push_back(x);
        report.atlas_faces.push_back(std::move(s));
    }
    sort_family(report.atlas_faces);
    return report;
}

DdReport dd_cross_check(const Cone& cone, const BoxSpec& box)
{
    const auto n = static_cast<std::size_t>(cone.ambient_rank());
    std::vector<Point> rays, lin;
    for (const auto& r : cone.rays()) rays.push_back(to_point(r));
    for (const auto& l : cone.lineality().rows()) lin.push_back(to_point(l));
    if (rays.size() > 20) throw std::out_of_range("dd_cross_check: too many rays for subset enumeration");

    // Carathéodory: x lies in cone(rays) + span(lin) iff it does for some subset of rays
    // independent modulo span(lin). Each such subset gets a left inverse.
    struct Solver {
        std::vector<Point> columns;
        std::size_t ray_count;
        QMatrix left_inverse;
    };
    std::vector<Solver> solvers;
    for (std::size_t mask = 0; mask < (std::size_t{1} << rays.size()); ++mask) {
        std::vector<Point> cols;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (mask >> i & 1) cols.push_back(rays[i]);
        const std::size_t ray_count = cols.size();
        cols.insert(cols.end(), lin.begin(), lin.end());
        if (cols.size() > n || rank_of(cols, n) != static_cast<int>(cols.size())) continue;
        const std::size_t k = cols.size();
        QMatrix gram(k, std::vector<Q>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) gram[i][j] = Q(dot_ll(cols[i], cols[j]));
        auto gi = inverse(gram);
        if (!gi) continue;
        QMatrix left(k, std::vector<Q>(n));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t j = 0; j < k; ++j) left[i][c] = left[i][c] + (*gi)[i][j] * Q(cols[j][c]);
        solvers.push_back({std::move(cols), ray_count, std::move(left)});
    }

    auto generated = [&](const Point& x) {
        for (const auto& s : solvers) {
            const std::size_t k = s.columns.size();
            std::vector<Q> c(k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < n; ++j) c[i] = c[i] + s.left_inverse[i][j] * Q(x[j]);
            bool ok = true;
            for (std::size_t i = 0; i < s.ray_count && ok; ++i) ok = !c[i].negative();
            for (std::size_t j = 0; j < n && ok; ++j) {
                Q back;
                for (std::size_t i = 0; i < k; ++i) back = back + c[i] * Q(s.columns[i][j]);
                ok = back == Q(x[j]);
            }
            if (ok) return true;
        }
        return false;
    };

    DdReport report;
    for (const auto& p : box_points(n, box.radius)) {
        const IntVector x = to_int_vector(p);
        ++report.points_checked;
        if (cone.contains(x) != generated(p)) report.mismatches.push_back(x);
    }
    return report;
}

// ---------------------------------------------------------------------------

Character random_character_on(const SpectrumAtlas& atlas, int face_id, Rng& rng)
{
    const FaceData& f = atlas.face(face_id);
    const Index r = f.lattice.rank();
    std::uniform_int_distribution<int> den(1, 12), coef(0, 4), small_den(1, 4);
    RatVector theta(r);
    for (Index i = 0; i < r; ++i) {
        const int q = den(rng);
        theta(i) = Rational(std::uniform_int_distribution<int>(0, q - 1)(rng), q);
    }
    RatVector lambda = RatVector::Zero(r);
    for (const auto& g : f.dual_cone_local.conic_generators()) {
        const Rational c(coef(rng), small_den(rng));
        lambda += to_rational(g) * c;
    }
    return make_character(atlas, face_id, theta, lambda);
}

Character random_character(const SpectrumAtlas& atlas, Rng& rng)
{
    const int face = std::uniform_int_distribution<int>(0, static_cast<int>(atlas.faces.size()) - 1)(rng);
    return random_character_on(atlas, face, rng);
}

IntVector random_semigroup_point(const SemigroupSpec& spec, Rng& rng)
{
    const Index n = spec.ambient_rank();
    if (!spec.is_tower()) {
        IntVector x = IntVector::Zero(n);
        std::uniform_int_distribution<int> count(0, 3);
        for (const auto& g : spec.as_generators().generators) x += g * Integer(count(rng));
        return x;
    }
    const auto& t = spec.as_tower();
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
        const IntVector y = random_semigroup_point(*t.inner, rng);
        return IntVector(t.kernel_basis.transpose() * y);
    }
    std::uniform_int_distribution<int> entry(-4, 4);
    while (true) {
        IntVector x(n);
        for (Index i = 0; i < n; ++i) x(i) = entry(rng);
        if (dot(t.normal, x) > 0) return x;
    }
}

HomomorphismReport numeric_homomorphism_check(const SpectrumAtlas& atlas, int trials, std::uint64_t seed)
{
    Rng rng(seed);
    HomomorphismReport report;
    for (int i = 0; i < trials; ++i) {
        const Character a = random_character(atlas, rng);
        const Character b = random_character(atlas, rng);
        const IntVector x = random_semigroup_point(atlas.spec, rng);
        const ExactValue product = evaluate(atlas, multiply(atlas, a, b), x);
        const ExactValue va = evaluate(atlas, a, x), vb = evaluate(atlas, b, x);
        if (product != va * vb) ++report.exact_mismatches;
        const double dev = std::abs(product.to_complex() - va.to_complex() * vb.to_complex());
        report.max_float_deviation = std::max(report.max_float_deviation, dev);
        ++report.trials;
    }
    return report;
}

SemigroupSpec random_generators_spec(Rng& rng, const RandomSpecOptions& options)
{
    std::uniform_int_distribution<int> rank(options.min_rank, options.max_rank);
    std::uniform_int_distribution<int> count(1, options.max_generators);
    std::uniform_int_distribution<int> entry(-options.entry_bound, options.entry_bound);
    while (true) {
        const Index n = rank(rng);
        const int m = count(rng);
        std::vector<IntVector> gens;
        for (int j = 0; j < m; ++j) {
            IntVector g(n);
            for (Index i = 0; i < n; ++i) g(i) = entry(rng);
            gens.push_back(std::move(g));
        }
        auto spec = SemigroupSpec::generators(n, std::move(gens));
        if (!options.pointed_only || asymptotic_cone(spec).pointed()) return spec;
    }
}

}  // namespace toric
