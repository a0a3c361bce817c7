#include "toric/cone.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toric {

namespace {

void check_lengths(Index n, std::span<const IntVector> vs, const char* what)
{
    for (const auto& v : vs)
        if (v.size() != n) throw DimensionMismatch(std::string(what) + ": vector length differs from ambient rank");
}

IntVector combine(const Integer& a, const IntVector& x, const Integer& b, const IntVector& y)
{
    IntVector out(x.size());
    for (Index i = 0; i < x.size(); ++i) out(i) = a * x(i) - b * y(i);
    return out;
}

// Orthogonal projection of v onto the complement of the row space of `basis`.
RatVector project_out(const IntMatrix& basis, const IntVector& v)
{
    RatVector x = to_rational(v);
    if (basis.rows() == 0) return x;
    const RatMatrix l = to_rational(basis);
    const RatMatrix gram = l * l.transpose();
    const RatVector rhs = l * x;
    auto y = solve_row_combination(gram, rhs);
    ensure(y.has_value(), "project_out: singular Gram matrix");
    return x - l.transpose() * (*y);
}

void sort_unique(std::vector<IntVector>& vs)
{
    std::sort(vs.begin(), vs.end(), [](const IntVector& a, const IntVector& b) { return lex_less(a, b); });
    vs.erase(std::unique(vs.begin(), vs.end(), [](const IntVector& a, const IntVector& b) { return equal(a, b); }),
             vs.end());
}

bool adjacent(const IntVector& p, const IntVector& q, const std::vector<IntVector>& processed, Index target_rank,
              Index n)
{
    if (target_rank < 0) return false;
    std::vector<IntVector> tight;
    for (const auto& c : processed)
        if (dot(c, p) == 0 && dot(c, q) == 0) tight.push_back(c);
    if (static_cast<Index>(tight.size()) < target_rank) return false;
    return rank(stack_rows(tight, n)) == target_rank;
}

}  // namespace

namespace detail {

VRepresentation double_description(Index n, std::span<const IntVector> inequalities,
                                   std::span<const IntVector> equations)
{
    check_lengths(n, inequalities, "double_description");
    check_lengths(n, equations, "double_description");

    std::vector<IntVector> constraints(inequalities.begin(), inequalities.end());
    for (const auto& e : equations) {
        constraints.push_back(e);
        constraints.push_back(-e);
    }

    std::vector<IntVector> lineality = unstack_rows(IntMatrix(IntMatrix::Identity(n, n)));
    std::vector<IntVector> rays;
    std::vector<IntVector> processed;

    for (const auto& a : constraints) {
        if (is_zero(a)) continue;

        auto pick = std::find_if(lineality.begin(), lineality.end(),
                                 [&](const IntVector& l) { return dot(a, l) != 0; });
        if (pick != lineality.end()) {
            // The constraint cuts the lineality space: one direction becomes a ray.
            IntVector l = *pick;
            Integer al = dot(a, l);
            if (al < 0) {
                l = -l;
                al = -al;
            }
            std::vector<IntVector> next_lineality;
            for (auto it = lineality.begin(); it != lineality.end(); ++it) {
                if (it == pick) continue;
                const Integer s = dot(a, *it);
                next_lineality.push_back(s == 0 ? *it : primitive(combine(al, *it, s, l)));
            }
            for (auto& r : rays) {
                const Integer s = dot(a, r);
                if (s != 0) r = primitive(combine(al, r, s, l));
            }
            rays.push_back(primitive(l));
            lineality = std::move(next_lineality);
        } else {
            std::vector<IntVector> positive, negative, next_rays;
            for (const auto& r : rays) {
                const Integer s = dot(a, r);
                if (s > 0) positive.push_back(r);
                else if (s < 0) negative.push_back(r);
                if (s >= 0) next_rays.push_back(r);
            }
            const Index target_rank = n - static_cast<Index>(lineality.size()) - 2;
            for (const auto& p : positive) {
                const Integer sp = dot(a, p);
                for (const auto& q : negative) {
                    if (!adjacent(p, q, processed, target_rank, n)) continue;
                    const Integer sq = dot(a, q);
                    next_rays.push_back(primitive(combine(sp, q, sq, p)));
                }
            }
            rays = std::move(next_rays);
        }
        processed.push_back(a);
    }

    VRepresentation out;
    out.lineality = saturation_index(n, hnf(lineality, n)).saturated;
    for (const auto& r : rays) {
        RatVector projected = project_out(out.lineality.basis(), r);
        if (!is_zero(projected)) out.rays.push_back(primitive(projected));
    }
    sort_unique(out.rays);
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

Cone Cone::from_rays(Index n, std::span<const IntVector> rays, std::span<const IntVector> lineality)
{
    check_lengths(n, rays, "Cone::from_rays");
    check_lengths(n, lineality, "Cone::from_rays");
    const auto dual = detail::double_description(n, rays, lineality);
    const auto eqs = dual.lineality.rows();
    const auto primal = detail::double_description(n, dual.rays, eqs);
    Cone c;
    c.n_ = n;
    c.rays_ = primal.rays;
    c.lineality_ = primal.lineality;
    c.inequalities_ = dual.rays;
    c.equations_ = dual.lineality;
    return c;
}

Cone Cone::from_inequalities(Index n, std::span<const IntVector> inequalities, std::span<const IntVector> equations)
{
    check_lengths(n, inequalities, "Cone::from_inequalities");
    check_lengths(n, equations, "Cone::from_inequalities");
    const auto primal = detail::double_description(n, inequalities, equations);
    const auto lin = primal.lineality.rows();
    const auto dual = detail::double_description(n, primal.rays, lin);
    Cone c;
    c.n_ = n;
    c.rays_ = primal.rays;
    c.lineality_ = primal.lineality;
    c.inequalities_ = dual.rays;
    c.equations_ = dual.lineality;
    return c;
}

bool Cone::contains(const IntVector& x) const { return contains(to_rational(x)); }

bool Cone::contains(const RatVector& x) const
{
    if (x.size() != n_) throw DimensionMismatch("Cone::contains: length mismatch");
    for (Index i = 0; i < equations_.rank(); ++i)
        if (dot(IntVector(equations_.basis().row(i).transpose()), x) != 0) return false;
    for (const auto& a : inequalities_)
        if (dot(a, x) < 0) return false;
    return true;
}

bool Cone::contains_in_relative_interior(const IntVector& x) const
{
    return contains_in_relative_interior(to_rational(x));
}

bool Cone::contains_in_relative_interior(const RatVector& x) const
{
    if (!contains(x)) return false;
    for (const auto& a : inequalities_)
        if (dot(a, x) == 0) return false;
    return true;
}

std::vector<IntVector> Cone::conic_generators() const
{
    std::vector<IntVector> out = rays_;
    for (const auto& l : lineality_.rows()) {
        out.push_back(l);
        out.push_back(-l);
    }
    return out;
}

bool Cone::operator==(const Cone& other) const
{
    auto same = [](const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
        return a.size() == b.size() &&
               std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) { return equal(x, y); });
    };
    return n_ == other.n_ && lineality_ == other.lineality_ && equations_ == other.equations_ &&
           same(rays_, other.rays_) && same(inequalities_, other.inequalities_);
}

Cone dd_convert(Index n, std::span<const IntVector> input, ConeInput kind)
{
    return kind == ConeInput::Rays ? Cone::from_rays(n, input) : Cone::from_inequalities(n, input);
}

Cone dual_cone(const Cone& cone)
{
    const auto lin = cone.lineality().rows();
    return Cone::from_inequalities(cone.ambient_rank(), cone.rays(), lin);
}

bool is_pointed(const Cone& cone) { return cone.pointed(); }

bool cone_subset(const Cone& a, const Cone& b)
{
    if (a.ambient_rank() != b.ambient_rank()) return false;
    for (const auto& g : a.conic_generators())
        if (!b.contains(g)) return false;
    return true;
}

// ---------------------------------------------------------------------------

FaceLattice face_lattice(const Cone& cone)
{
    const auto& rays = cone.rays();
    const auto& ineqs = cone.inequalities();
    const int m = static_cast<int>(rays.size());

    std::vector<std::vector<int>> facet_sets;
    for (const auto& a : ineqs) {
        std::vector<int> s;
        for (int r = 0; r < m; ++r)
            if (dot(a, rays[static_cast<std::size_t>(r)]) == 0) s.push_back(r);
        facet_sets.push_back(std::move(s));
    }

    std::vector<int> all(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) all[static_cast<std::size_t>(r)] = r;

    // Every face is the intersection of the facets containing it.
    std::set<std::vector<int>> sets{all};
    std::vector<std::vector<int>> frontier{all};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& s : frontier) {
            for (const auto& f : facet_sets) {
                std::vector<int> meet;
                std::set_intersection(s.begin(), s.end(), f.begin(), f.end(), std::back_inserter(meet));
                if (sets.insert(meet).second) next.push_back(std::move(meet));
            }
        }
        frontier = std::move(next);
    }

    std::vector<FaceHandle> faces;
    for (const auto& s : sets) {
        FaceHandle h;
        h.ray_indices = s;
        for (int i = 0; i < static_cast<int>(ineqs.size()); ++i) {
            bool tight = std::all_of(s.begin(), s.end(), [&](int r) {
                return dot(ineqs[static_cast<std::size_t>(i)], rays[static_cast<std::size_t>(r)]) == 0;
            });
            if (tight) h.tight_set.push_back(i);
        }
        std::vector<IntVector> span = cone.lineality().rows();
        for (int r : s) span.push_back(rays[static_cast<std::size_t>(r)]);
        h.dim = rank(stack_rows(span, cone.ambient_rank()));
        faces.push_back(std::move(h));
    }
    std::sort(faces.begin(), faces.end(), [](const FaceHandle& a, const FaceHandle& b) {
        if (a.dim != b.dim) return a.dim > b.dim;
        return a.tight_set < b.tight_set;
    });

    FaceLattice out;
    for (std::size_t i = 0; i < faces.size(); ++i) faces[i].id = static_cast<int>(i);
    for (const auto& upper : faces) {
        for (const auto& lower : faces) {
            if (lower.dim + 1 != upper.dim) continue;
            if (std::includes(upper.ray_indices.begin(), upper.ray_indices.end(), lower.ray_indices.begin(),
                              lower.ray_indices.end()))
                out.covers.emplace_back(upper.id, lower.id);
        }
    }
    std::sort(out.covers.begin(), out.covers.end());
    out.faces = std::move(faces);
    return out;
}

FaceHandle minimal_face_of_point(const Cone& cone, const FaceLattice& lattice, const RatVector& x)
{
    if (!cone.contains(x)) throw NotInCone("minimal_face_of_point: point " + to_string(x) + " is not in the cone");
    std::vector<int> tight;
    const auto& ineqs = cone.inequalities();
    for (int i = 0; i < static_cast<int>(ineqs.size()); ++i)
        if (dot(ineqs[static_cast<std::size_t>(i)], x) == 0) tight.push_back(i);
    for (const auto& f : lattice.faces)
        if (f.tight_set == tight) return f;
    throw InvariantViolation("minimal_face_of_point: tight set is not a face");
}

FaceHandle minimal_face_of_point(const Cone& cone, const RatVector& x)
{
    return minimal_face_of_point(cone, face_lattice(cone), x);
}

Cone face_cone(const Cone& cone, const FaceHandle& face)
{
    std::vector<IntVector> rays;
    for (int r : face.ray_indices) rays.push_back(cone.rays()[static_cast<std::size_t>(r)]);
    const auto lin = cone.lineality().rows();
    return Cone::from_rays(cone.ambient_rank(), rays, lin);
}

}  // namespace toric
