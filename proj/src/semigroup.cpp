#include "toric/semigroup.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_set>

namespace toric {

// ---------------------------------------------------------------------------
// SemigroupSpec

SemigroupSpec SemigroupSpec::generators(Index ambient_rank, std::vector<IntVector> generators)
{
    if (ambient_rank < 0) throw std::invalid_argument("SemigroupSpec: negative ambient rank");
    for (const auto& g : generators)
        if (g.size() != ambient_rank) throw DimensionMismatch("SemigroupSpec: generator length differs from ambient rank");
    return SemigroupSpec(ambient_rank, Generators{std::move(generators)});
}

SemigroupSpec SemigroupSpec::tower(Index ambient_rank, IntVector normal, SemigroupSpec inner)
{
    if (ambient_rank < 1) throw std::invalid_argument("SemigroupSpec: a tower needs ambient rank >= 1");
    if (normal.size() != ambient_rank) throw DimensionMismatch("SemigroupSpec: normal length differs from ambient rank");
    if (is_zero(normal)) throw std::invalid_argument("SemigroupSpec: tower normal is zero");
    if (!equal(primitive(normal), normal)) throw std::invalid_argument("SemigroupSpec: tower normal is not primitive");
    if (inner.ambient_rank() != ambient_rank - 1)
        throw DimensionMismatch("SemigroupSpec: inner ambient rank must be one less than the tower's");
    IntMatrix row(1, ambient_rank);
    row.row(0) = normal.transpose();
    Tower t{normal, std::make_shared<const SemigroupSpec>(std::move(inner)), integer_kernel(row).basis()};
    return SemigroupSpec(ambient_rank, std::move(t));
}

bool SemigroupSpec::operator==(const SemigroupSpec& other) const
{
    if (n_ != other.n_ || is_tower() != other.is_tower()) return false;
    if (is_tower())
        return equal(as_tower().normal, other.as_tower().normal) && *as_tower().inner == *other.as_tower().inner;
    const auto& a = as_generators().generators;
    const auto& b = other.as_generators().generators;
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) { return equal(x, y); });
}

// ---------------------------------------------------------------------------
// Membership

struct MembershipTester::GeneratorData {
    std::vector<IntVector> bounded;  // generators outside the lineality space
    std::vector<Integer> weight;     // <w, g> > 0 for each bounded generator
    IntVector w;
    Lattice group_part;              // group generated by generators in the lineality space
    std::vector<Cone> suffix_cones;
    std::vector<Lattice> suffix_lattices;
};

MembershipTester::MembershipTester(const SemigroupSpec& spec, MembershipOptions options)
    : n_(spec.ambient_rank()), options_(options)
{
    if (spec.is_tower()) {
        const auto& t = spec.as_tower();
        normal_ = t.normal;
        kernel_ = hnf(t.kernel_basis);
        inner_ = std::make_shared<const MembershipTester>(*t.inner, options);
        return;
    }

    const auto& gens = spec.as_generators().generators;
    auto data = std::make_shared<GeneratorData>();
    const Cone cone = Cone::from_rays(n_, gens);
    data->w = IntVector::Zero(n_);
    for (const auto& a : cone.inequalities()) data->w += a;

    std::vector<IntVector> in_lineality;
    std::vector<std::pair<Integer, IntVector>> bounded;
    for (const auto& g : gens) {
        if (is_zero(g)) continue;
        const bool on_lineality =
            std::all_of(cone.inequalities().begin(), cone.inequalities().end(), [&](const IntVector& a) { return dot(a, g) == 0; });
        if (on_lineality) in_lineality.push_back(g);
        else bounded.emplace_back(dot(data->w, g), g);
    }
    // Heavier generators first keeps the coefficient ranges short near the root.
    std::stable_sort(bounded.begin(), bounded.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (auto& [wg, g] : bounded) {
        data->weight.push_back(wg);
        data->bounded.push_back(g);
    }
    data->group_part = hnf(in_lineality, n_);

    for (std::size_t i = 0; i <= data->bounded.size(); ++i) {
        std::vector<IntVector> suffix(data->bounded.begin() + static_cast<std::ptrdiff_t>(i), data->bounded.end());
        data->suffix_cones.push_back(Cone::from_rays(n_, suffix, in_lineality));
        suffix.insert(suffix.end(), in_lineality.begin(), in_lineality.end());
        data->suffix_lattices.push_back(hnf(suffix, n_));
    }
    generators_ = std::move(data);
}

bool MembershipTester::contains(const IntVector& x) const
{
    if (x.size() != n_) throw DimensionMismatch("contains: point length differs from ambient rank");
    if (n_ == 0 || is_zero(x)) return true;

    if (normal_) {
        const Integer level = dot(*normal_, x);
        if (level > 0) return true;
        if (level < 0) return false;
        auto y = lattice_coordinates(*kernel_, x);
        ensure(y.has_value(), "tower kernel basis does not cover the hyperplane");
        return inner_->contains(*y);
    }

    const GeneratorData& g = *generators_;
    std::size_t nodes = 0;
    std::set<std::string> failed;

    auto search = [&](auto&& self, std::size_t i, const IntVector& r) -> bool {
        if (++nodes > options_.node_budget)
            throw IndeterminateMembership("membership search exceeded its node budget for " + to_string(x));
        if (i == g.bounded.size()) return lattice_contains(g.group_part, r);
        if (!g.suffix_cones[i].contains(r) || !lattice_contains(g.suffix_lattices[i], r)) return false;
        const std::string key = std::to_string(i) + to_string(r);
        if (failed.count(key)) return false;
        const Integer budget = dot(g.w, r);
        for (Integer m = budget / g.weight[i]; m >= 0; --m) {
            IntVector rest = r;
            for (Index j = 0; j < rest.size(); ++j) rest(j) -= m * g.bounded[i](j);
            if (self(self, i + 1, rest)) return true;
        }
        failed.insert(key);
        return false;
    };
    return search(search, 0, x);
}

bool contains(const SemigroupSpec& spec, const IntVector& x, MembershipOptions options)
{
    return MembershipTester(spec, options).contains(x);
}

Cone asymptotic_cone(const SemigroupSpec& spec)
{
    if (spec.is_tower()) {
        const std::vector<IntVector> halfspace{spec.as_tower().normal};
        return Cone::from_inequalities(spec.ambient_rank(), halfspace);
    }
    return Cone::from_rays(spec.ambient_rank(), spec.as_generators().generators);
}

bool is_antisymmetric(const SemigroupSpec& spec)
{
    if (spec.is_tower()) return is_antisymmetric(*spec.as_tower().inner);
    // S ∩ (-S) ≠ {0} exactly when some nonzero generator has its negative in S.
    const MembershipTester tester(spec);
    for (const auto& g : spec.as_generators().generators)
        if (!is_zero(g) && tester.contains(IntVector(-g))) return false;
    return true;
}

bool is_separating(const SemigroupSpec& spec)
{
    const Index n = spec.ambient_rank();
    if (spec.is_tower()) return true;
    return hnf(spec.as_generators().generators, n) == hnf(IntMatrix(IntMatrix::Identity(n, n)));
}

// ---------------------------------------------------------------------------
// Face enumeration

namespace {

// A face found by the expansion procedure: either the subsemigroup generated
// by a subset of a generator spec, or a whole tower, placed in Z^n by `embed`.
struct FaceNode {
    std::shared_ptr<const SemigroupSpec> spec;
    IntMatrix embed;  // local rank × n
    std::vector<int> subset;

    std::pair<const SemigroupSpec*, std::vector<int>> key() const { return {spec.get(), subset}; }
};

IntVector embed_point(const IntVector& local, const IntMatrix& embed)
{
    return IntVector(embed.transpose() * local);
}

std::vector<IntVector> node_generators(const FaceNode& node)
{
    std::vector<IntVector> out;
    const auto& gens = node.spec->as_generators().generators;
    for (int i : node.subset) out.push_back(embed_point(gens[static_cast<std::size_t>(i)], node.embed));
    return out;
}

Cone node_cone(const FaceNode& node, Index n)
{
    if (!node.spec->is_tower()) return Cone::from_rays(n, node_generators(node));
    const Index k = node.spec->ambient_rank();
    const std::vector<IntVector> normal{node.spec->as_tower().normal};
    const Cone local = Cone::from_inequalities(k, normal);
    std::vector<IntVector> rays, lin;
    for (const auto& r : local.rays()) rays.push_back(embed_point(r, node.embed));
    for (const auto& l : local.lineality().rows()) lin.push_back(embed_point(l, node.embed));
    return Cone::from_rays(n, rays, lin);
}

Lattice node_group(const FaceNode& node, Index n)
{
    if (!node.spec->is_tower()) return hnf(node_generators(node), n);
    return hnf(node.embed);
}

std::vector<int> all_indices(const SemigroupSpec& spec)
{
    std::vector<int> out;
    if (spec.is_tower()) return out;
    for (int i = 0; i < static_cast<int>(spec.as_generators().generators.size()); ++i) out.push_back(i);
    return out;
}

// P ∩ F for a closed face F of α(P).
FaceNode intersect_with_face(const FaceNode& node, const Cone& node_alpha, const Cone& face)
{
    if (!node.spec->is_tower()) {
        FaceNode out{node.spec, node.embed, {}};
        const auto& gens = node.spec->as_generators().generators;
        for (int i : node.subset)
            if (face.contains(embed_point(gens[static_cast<std::size_t>(i)], node.embed))) out.subset.push_back(i);
        return out;
    }
    if (face == node_alpha) return node;
    // The only proper face of a halfspace is its boundary hyperplane, which meets P in the inner semigroup.
    ensure(face.dim() + 1 == node_alpha.dim(), "tower face is not the boundary hyperplane");
    const auto& t = node.spec->as_tower();
    return FaceNode{t.inner, IntMatrix(t.kernel_basis * node.embed), all_indices(*t.inner)};
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn)
{
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, count); ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<IntVector> sorted_rows(const Lattice& l) { return l.rows(); }

}  // namespace

RatVector rational_coordinates(const Lattice& lattice, const IntVector& x)
{
    auto c = solve_row_combination(to_rational(lattice.basis()), to_rational(x));
    if (!c) throw DimensionMismatch("rational_coordinates: vector is outside the span of the lattice");
    return *c;
}

SpectrumAtlas enumerate_faces(const SemigroupSpec& spec, AtlasOptions options)
{
    const Index n = spec.ambient_rank();
    SpectrumAtlas atlas{spec, asymptotic_cone(spec), {}, {}, {}, false, false, IntVector::Zero(n), 0, nullptr};
    atlas.membership = std::make_shared<const MembershipTester>(spec, options.membership);

    // Expansion: start from {S}; for each face P and each closed face F of α(P) add P ∩ F.
    auto root = std::make_shared<const SemigroupSpec>(spec);
    std::vector<FaceNode> nodes{FaceNode{root, IntMatrix(IntMatrix::Identity(n, n)), all_indices(spec)}};
    std::vector<Cone> cones{node_cone(nodes[0], n)};
    std::set<std::pair<const SemigroupSpec*, std::vector<int>>> seen{nodes[0].key()};
    std::vector<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t idx : frontier) {
            const Cone alpha = cones[idx];
            const FaceNode node = nodes[idx];
            const FaceLattice lattice = face_lattice(alpha);
            for (const auto& f : lattice.faces) {
                FaceNode child = intersect_with_face(node, alpha, face_cone(alpha, f));
                if (!seen.insert(child.key()).second) continue;
                cones.push_back(node_cone(child, n));
                nodes.push_back(std::move(child));
                next.push_back(nodes.size() - 1);
            }
        }
        if (!next.empty()) ++atlas.expansion_rounds;
        frontier = std::move(next);
    }

    const auto& ambient_ineqs = atlas.ambient_cone.inequalities();
    std::vector<FaceData> faces(nodes.size());
    parallel_for(nodes.size(), options.threads, [&](std::size_t i) {
        FaceData& f = faces[i];
        f.cone = cones[i];
        f.lattice = node_group(nodes[i], n);
        f.torsion = quotient_invariants(n, f.lattice).torsion;
        if (!nodes[i].spec->is_tower()) f.member_generators = node_generators(nodes[i]);

        std::vector<IntVector> local_rays, local_lin;
        for (const auto& r : f.cone.rays()) local_rays.push_back(primitive(rational_coordinates(f.lattice, r)));
        for (const auto& l : f.cone.lineality().rows()) local_lin.push_back(primitive(rational_coordinates(f.lattice, l)));
        f.cone_local = Cone::from_rays(f.lattice.rank(), local_rays, local_lin);
        f.dual_cone_local = dual_cone(f.cone_local);

        const auto gens = f.cone.conic_generators();
        for (int a = 0; a < static_cast<int>(ambient_ineqs.size()); ++a) {
            const auto& normal = ambient_ineqs[static_cast<std::size_t>(a)];
            if (std::all_of(gens.begin(), gens.end(), [&](const IntVector& g) { return dot(normal, g) == 0; }))
                f.handle.tight_set.push_back(a);
        }
        f.handle.dim = f.cone.dim();
        f.handle.ray_indices.clear();
    });

    std::stable_sort(faces.begin(), faces.end(), [](const FaceData& a, const FaceData& b) {
        if (a.handle.dim != b.handle.dim) return a.handle.dim > b.handle.dim;
        if (a.handle.tight_set != b.handle.tight_set) return a.handle.tight_set < b.handle.tight_set;
        if (lex_less(a.cone.rays(), b.cone.rays())) return true;
        if (lex_less(b.cone.rays(), a.cone.rays())) return false;
        return lex_less(sorted_rows(a.cone.lineality()), sorted_rows(b.cone.lineality()));
    });
    for (std::size_t i = 0; i < faces.size(); ++i) faces[i].handle.id = static_cast<int>(i);
    ensure(faces.front().cone == atlas.ambient_cone, "top face is not α(S)");
    atlas.faces = std::move(faces);

    const std::size_t m = atlas.faces.size();
    atlas.order.assign(m, std::vector<bool>(m, false));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
            atlas.order[j][k] = (j == k) || cone_subset(atlas.faces[j].cone, atlas.faces[k].cone);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t j = 0; j < m; ++j) {
            if (j == k || !atlas.order[j][k]) continue;
            bool between = false;
            for (std::size_t i = 0; i < m && !between; ++i)
                between = i != j && i != k && atlas.order[j][i] && atlas.order[i][k];
            if (!between) atlas.hasse.emplace_back(static_cast<int>(k), static_cast<int>(j));
        }
    }
    std::sort(atlas.hasse.begin(), atlas.hasse.end());

    atlas.antisymmetric = is_antisymmetric(spec);
    atlas.separating = is_separating(spec);
    if (spec.is_tower()) {
        atlas.interior_point = spec.as_tower().normal;
    } else {
        for (const auto& g : spec.as_generators().generators) atlas.interior_point += g;
    }
    ensure(atlas.ambient_cone.contains_in_relative_interior(atlas.interior_point), "interior point is not interior");
    return atlas;
}

// ---------------------------------------------------------------------------
// Atlas queries

const FaceData& SpectrumAtlas::face(int id) const
{
    if (id < 0 || id >= static_cast<int>(faces.size()))
        throw std::out_of_range("unknown face id " + std::to_string(id));
    return faces[static_cast<std::size_t>(id)];
}

int SpectrumAtlas::least() const
{
    const int m = static_cast<int>(faces.size());
    for (int j = 0; j < m; ++j) {
        bool below_all = true;
        for (int k = 0; k < m && below_all; ++k) below_all = leq(j, k);
        if (below_all) return j;
    }
    throw InvariantViolation("face order has no least element");
}

int SpectrumAtlas::meet(int j, int k) const
{
    (void)face(j);
    (void)face(k);
    const int m = static_cast<int>(faces.size());
    for (int c = 0; c < m; ++c) {
        if (!leq(c, j) || !leq(c, k)) continue;
        bool greatest = true;
        for (int d = 0; d < m && greatest; ++d)
            if (leq(d, j) && leq(d, k)) greatest = leq(d, c);
        if (greatest) return c;
    }
    throw InvariantViolation("faces have no meet");
}

int SpectrumAtlas::join(int j, int k) const
{
    (void)face(j);
    (void)face(k);
    const int m = static_cast<int>(faces.size());
    for (int c = 0; c < m; ++c) {
        if (!leq(j, c) || !leq(k, c)) continue;
        bool least_bound = true;
        for (int d = 0; d < m && least_bound; ++d)
            if (leq(j, d) && leq(k, d)) least_bound = leq(c, d);
        if (least_bound) return c;
    }
    throw InvariantViolation("faces have no join");
}

Lattice face_group(const SpectrumAtlas& atlas, int face_id) { return atlas.face(face_id).lattice; }

Cone dual_face_cone(const SpectrumAtlas& atlas, int face_id) { return atlas.face(face_id).dual_cone_local; }

bool hull_contains(const SpectrumAtlas& atlas, const IntVector& x)
{
    for (const auto& f : atlas.faces)
        if (f.cone.contains_in_relative_interior(x) && lattice_contains(f.lattice, x)) return true;
    return false;
}

SdataReport validate_sdata(const SpectrumAtlas& atlas)
{
    SdataReport report;
    const int m = static_cast<int>(atlas.faces.size());
    const Index n = atlas.spec.ambient_rank();

    for (int j = 0; j < m; ++j) {
        const FaceData& f = atlas.face(j);
        // B) the lattice points of Γ_j in C_j have asymptotic cone C_j.
        const Integer index = saturation_index(n, f.lattice).index;
        std::vector<IntVector> points;
        bool spanned = true;
        for (const auto& g : f.cone.conic_generators()) {
            bool found = false;
            for (Integer s = 1; s <= index && !found; ++s) {
                IntVector p = g * s;
                if (lattice_contains(f.lattice, p)) {
                    points.push_back(p);
                    found = true;
                }
            }
            spanned = spanned && found;
        }
        if (!spanned || Cone::from_rays(n, points) != f.cone)
            report.violations.push_back({'B', j, j, "C_j differs from the asymptotic cone of Γ_j ∩ C_j"});
    }

    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            if (j == k || !atlas.leq(j, k)) continue;
            ++report.pairs_checked;
            const FaceData& lower = atlas.face(j);
            const FaceData& upper = atlas.face(k);
            // A) C_j sits inside a proper closed face of C_k.
            bool in_proper_face = cone_subset(lower.cone, upper.cone);
            if (in_proper_face) {
                const auto gens = lower.cone.conic_generators();
                in_proper_face = std::any_of(upper.cone.inequalities().begin(), upper.cone.inequalities().end(),
                                             [&](const IntVector& a) {
                                                 return std::all_of(gens.begin(), gens.end(), [&](const IntVector& g) {
                                                     return dot(a, g) == 0;
                                                 });
                                             });
            }
            if (!in_proper_face)
                report.violations.push_back({'A', j, k, "C_j is not contained in a proper face of C_k"});
            // C) Γ_j ⊆ Γ_k.
            if (!lattice_subset(lower.lattice, upper.lattice))
                report.violations.push_back({'C', j, k, "Γ_j is not a subgroup of Γ_k"});
        }
    }
    return report;
}

}  // namespace toric
