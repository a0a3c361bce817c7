#include "toric/io.hpp"
#include "toric/verifier.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

using namespace toric;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixture(const std::string& name) { return std::string(TORIC_FIXTURE_DIR) + "/" + name; }

const std::vector<std::string> fixture_names{"quadrant_index2.json", "halfspace_tower.json", "naturals.json",
                                             "numerical_2_3.json",   "integers.json",        "plane.json"};

std::vector<SpectrumAtlas> fixture_atlases()
{
    std::vector<SpectrumAtlas> out;
    for (const auto& name : fixture_names) out.push_back(enumerate_faces(read_spec_file(fixture(name))));
    return out;
}

int failures = 0;

void report(int id, bool pass, const std::string& detail)
{
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
}

void run(int id, const std::function<std::string(bool&)>& body)
{
    bool pass = true;
    std::string detail;
    try {
        detail = body(pass);
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    report(id, pass, detail);
}

// Exact test of x ∈ cone(gens): some linearly independent subset of the nonzero
// generators expresses x with nonnegative coefficients (Carathéodory).
bool solve_nonnegative(const std::vector<IntVector>& cols, const IntVector& x)
{
    const auto n = static_cast<std::size_t>(x.size());
    const std::size_t k = cols.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = Rational(cols[j](static_cast<Index>(i)));
        a[i][k] = Rational(x(static_cast<Index>(i)));
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < k && row < n; ++c) {
        std::size_t p = row;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return false;  // dependent subset; another subset covers it
        std::swap(a[p], a[row]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || a[i][c] == 0) continue;
            const Rational f = a[i][c] / a[row][c];
            for (std::size_t j = c; j <= k; ++j) a[i][j] -= f * a[row][j];
        }
        pivot_col.push_back(c);
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        if (a[i][k] != 0) return false;
    for (std::size_t i = 0; i < row; ++i)
        if (a[i][k] / a[i][pivot_col[i]] < 0) return false;
    return true;
}

bool in_cone_oracle(const std::vector<IntVector>& gens, const IntVector& x)
{
    if (is_zero(x)) return true;
    std::vector<IntVector> nonzero;
    for (const auto& g : gens)
        if (!is_zero(g)) nonzero.push_back(g);
    const std::size_t m = nonzero.size();
    const auto n = static_cast<std::size_t>(x.size());
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) > n) continue;
        std::vector<IntVector> cols;
        for (std::size_t j = 0; j < m; ++j)
            if (mask & (1u << j)) cols.push_back(nonzero[j]);
        if (solve_nonnegative(cols, x)) return true;
    }
    return false;
}

bool oracle_pointed(const std::vector<IntVector>& gens)
{
    for (const auto& g : gens)
        if (!is_zero(g) && in_cone_oracle(gens, IntVector(-g))) return false;
    return true;
}

std::vector<IntVector> box(Index n, int b)
{
    std::vector<IntVector> out;
    IntVector x = IntVector::Constant(n, Integer(-b));
    while (true) {
        out.push_back(x);
        Index i = 0;
        while (i < n && x(i) == b) x(i++) = -b;
        if (i == n) return out;
        x(i) += 1;
    }
}

std::vector<SemigroupSpec> random_specs()
{
    Rng rng(20240601);
    RandomSpecOptions opt;
    opt.max_rank = 4;
    opt.max_generators = 8;
    std::vector<SemigroupSpec> out;
    for (int i = 0; i < 200; ++i) out.push_back(random_generators_spec(rng, opt));
    return out;
}

std::string capture(const std::string& command)
{
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
    if (!pipe) throw std::runtime_error("cannot run " + command);
    std::string out;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe.get())) > 0) out.append(buffer.data(), got);
    return out;
}

}  // namespace

int main()
{
    run(1, [](bool& pass) {
        const auto start = Clock::now();
        const auto atlas = enumerate_faces(read_spec_file(fixture("quadrant_index2.json")));
        const double t = seconds_since(start);
        int axis = -1;
        for (const auto& f : atlas.faces)
            if (f.cone.rays().size() == 1 && equal(f.cone.rays()[0], ivec({1, 0}))) axis = f.handle.id;
        const bool torsion = axis >= 0 && atlas.face(axis).torsion == std::vector<Integer>{2};
        pass = atlas.faces.size() == 4 && torsion && atlas.hasse.size() == 4 && t < 1.0;
        std::ostringstream d;
        d << atlas.faces.size() << " faces, x-axis torsion " << (axis >= 0 ? format_torsion(atlas.face(axis).torsion) : "?")
          << ", " << atlas.hasse.size() << " covers, " << t << " s (limit 1 s)";
        return d.str();
    });

    run(2, [](bool& pass) {
        const auto start = Clock::now();
        const auto atlas = enumerate_faces(read_spec_file(fixture("halfspace_tower.json")));
        std::multiset<Index> dims;
        for (const auto& f : atlas.faces) dims.insert(f.handle.dim);
        int quadrant = -1;
        for (const auto& f : atlas.faces)
            if (f.handle.dim == 2) quadrant = f.handle.id;
        const auto interior = make_character(atlas, atlas.top(), rvec({0, 0, 0}), rvec({0, 0, 1}));
        const bool open_top = classify(atlas, interior).in_Se;
        const bool closed_quadrant = quadrant >= 0 && !classify(atlas, idempotent(atlas, quadrant)).in_Se;
        const double t = seconds_since(start);
        pass = atlas.faces.size() == 5 && dims == std::multiset<Index>{3, 2, 1, 1, 0} && open_top && closed_quadrant &&
               t < 1.0;
        std::ostringstream d;
        d << atlas.faces.size() << " faces, dims {";
        for (auto it = dims.rbegin(); it != dims.rend(); ++it) d << (it == dims.rbegin() ? "" : ",") << *it;
        d << "}, interior character in_Se=" << open_top << ", quadrant idempotent in_Se=" << !closed_quadrant << ", "
          << t << " s (limit 1 s)";
        return d.str();
    });

    run(3, [](bool& pass) {
        const auto numerical = enumerate_faces(read_spec_file(fixture("numerical_2_3.json")));
        int bad = 0, checked = 0;
        for (int x = -10; x <= 10; ++x, ++checked)
            if (hull_contains(numerical, ivec({x})) != (x >= 0)) ++bad;
        const auto quadrant = enumerate_faces(read_spec_file(fixture("quadrant_index2.json")));
        for (const auto& x : box(2, 8)) {
            ++checked;
            if (hull_contains(quadrant, x) != quadrant.contains(x)) ++bad;
        }
        pass = bad == 0;
        return std::to_string(bad) + " disagreements over " + std::to_string(checked) + " points (exact)";
    });

    const auto specs = random_specs();
    std::vector<SpectrumAtlas> random_atlases;

    run(4, [&](bool& pass) {
        const auto start = Clock::now();
        int bad = 0, antisymmetric = 0;
        for (const auto& spec : specs) {
            random_atlases.push_back(enumerate_faces(spec));
            const auto& atlas = random_atlases.back();
            const bool a = is_antisymmetric(spec);
            const bool p = is_pointed(asymptotic_cone(spec));
            const bool z = zero_element(atlas).has_value();
            const bool o = oracle_pointed(spec.as_generators().generators);
            if (!(a == p && p == z && z == o && atlas.antisymmetric == a)) ++bad;
            antisymmetric += a;
        }
        const double t = seconds_since(start);
        pass = bad == 0 && t < 60.0;
        std::ostringstream d;
        d << bad << " failures over " << specs.size() << " specs (" << antisymmetric << " antisymmetric), " << t
          << " s (limit 60 s)";
        return d.str();
    });

    run(5, [&](bool& pass) {
        int bad = 0, box_bad = 0;
        for (const auto& spec : specs) {
            const auto& gens = spec.as_generators().generators;
            const Index n = spec.ambient_rank();
            const Cone alpha = asymptotic_cone(spec);
            if (!(alpha == dual_cone(dual_cone(Cone::from_rays(n, gens))))) ++bad;
            for (const auto& x : box(n, n <= 2 ? 3 : 1))
                if (alpha.contains(x) != in_cone_oracle(gens, x)) ++box_bad;
        }
        pass = bad == 0 && box_bad == 0;
        return std::to_string(bad) + " bidual mismatches, " + std::to_string(box_bad) +
               " box points where the cone disagrees with the Caratheodory oracle";
    });

    const auto fixtures = fixture_atlases();

    run(6, [&](bool& pass) {
        int exact = 0, identity = 0, trials = 0;
        double deviation = 0.0;
        for (std::size_t i = 0; i < fixtures.size(); ++i) {
            const auto& atlas = fixtures[i];
            const auto h = numeric_homomorphism_check(atlas, 1000, 100 + i);
            exact += h.exact_mismatches;
            trials += h.trials;
            deviation = std::max(deviation, h.max_float_deviation);
            Rng rng(200 + i);
            for (int k = 0; k < 1000; ++k) {
                const auto x = random_character(atlas, rng), y = random_character(atlas, rng);
                const auto parts = polar_decompose(atlas, x);
                if (!(involute(atlas, involute(atlas, x)) == x) ||
                    !(involute(atlas, multiply(atlas, x, y)) == multiply(atlas, involute(atlas, y), involute(atlas, x))) ||
                    !(multiply(atlas, parts.unitary, parts.radial) == x) ||
                    !(polar_decompose(atlas, parts.radial).radial == parts.radial) ||
                    !(involute(atlas, parts.radial) == parts.radial))
                    ++identity;
            }
        }
        pass = exact == 0 && identity == 0 && deviation <= 1e-9;
        std::ostringstream d;
        d << trials << " triples: " << exact << " exact mismatches, max float deviation " << deviation
          << " (limit 1e-9), " << identity << " involution/polar failures";
        return d.str();
    });

    run(7, [&](bool& pass) {
        const BoxSpec b(6);
        int bad = 0, checked = 0;
        for (const auto& atlas : fixtures) {
            ++checked;
            const auto r = compare_faces(atlas, b);
            if (!r.agree() || !r.membership_mismatches.empty()) ++bad;
        }
        Rng rng(7);
        RandomSpecOptions opt;
        opt.max_rank = 3;
        opt.max_generators = 5;
        opt.entry_bound = 3;
        opt.pointed_only = true;
        for (int i = 0; i < 50; ++i) {
            const auto spec = random_generators_spec(rng, opt);
            ++checked;
            const auto r = compare_faces(enumerate_faces(spec), b);
            if (!r.agree() || !r.membership_mismatches.empty()) {
                ++bad;
                std::cerr << "oracle disagreement on " << spec_to_json(spec).dump() << "\n";
            }
        }
        pass = bad == 0;
        return std::to_string(bad) + " disagreements over " + std::to_string(checked) +
               " specs (box 6, set equality)";
    });

    run(8, [&](bool& pass) {
        int pairs = 0, bad = 0;
        for (const auto& atlas : fixtures)
            for (int k = 0; k < static_cast<int>(atlas.faces.size()); ++k)
                for (int j = 0; j < static_cast<int>(atlas.faces.size()); ++j) {
                    if (!atlas.leq(j, k)) continue;
                    ++pairs;
                    const auto rays = chain_of_rays(atlas, k, j);
                    int at = k;
                    for (const auto& r : rays) at = r.base_face_id == at ? ray_limit(atlas, r) : -1;
                    const auto bound = atlas.face(k).lattice.rank() - atlas.face(j).lattice.rank();
                    const bool composed = at == j && multiply(atlas, idempotent(atlas, k), idempotent(atlas, at)) ==
                                                         idempotent(atlas, j);
                    if (static_cast<Index>(rays.size()) > bound || !composed) ++bad;
                }
        pass = bad == 0;
        return std::to_string(bad) + " failures over " + std::to_string(pairs) + " comparable pairs";
    });

    run(9, [&](bool& pass) {
        int bad = 0, pairs = 0;
        for (const std::vector<SpectrumAtlas>* list : {&fixtures, static_cast<const std::vector<SpectrumAtlas>*>(&random_atlases)})
            for (const auto& atlas : *list) {
                const auto r = validate_sdata(atlas);
                pairs += r.pairs_checked;
                if (!r.ok()) ++bad;
            }
        pass = bad == 0;
        return std::to_string(bad) + " failing atlases over " + std::to_string(fixtures.size() + random_atlases.size()) +
               " (" + std::to_string(pairs) + " pairs checked)";
    });

    run(10, [&](bool& pass) {
        int bad = 0, compared = 0;
        for (const auto& name : fixture_names) {
            const auto spec = read_spec_file(fixture(name));
            std::string text, dot, json;
            for (unsigned threads : {1u, 2u, 4u, 1u}) {
                AtlasOptions o;
                o.threads = threads;
                const auto atlas = enumerate_faces(spec, o);
                const auto t = text_report(atlas), g = dot_report(atlas), j = atlas_to_json(atlas).dump(2);
                if (!text.empty()) {
                    compared += 3;
                    bad += (t != text) + (g != dot) + (j != json);
                }
                text = t, dot = g, json = j;
            }
            const std::string exe = TORIC_SPECTRUM_EXE;
            const std::string path = fixture(name);
            for (const std::string& sub : {"analyze", "analyze --json", "dot"}) {
                const std::string verb = sub.substr(0, sub.find(' '));
                const std::string flags = sub.size() > verb.size() ? sub.substr(verb.size()) : "";
                const auto a = capture(exe + " " + verb + " '" + path + "'" + flags + " --threads 1");
                const auto b = capture(exe + " " + verb + " '" + path + "'" + flags + " --threads 3");
                const auto c = capture(exe + " " + verb + " '" + path + "'" + flags + " --threads 1");
                compared += 2;
                bad += (a != b) + (a != c) + (a.empty() ? 1 : 0);
            }
        }
        pass = bad == 0;
        return std::to_string(bad) + " differences over " + std::to_string(compared) +
               " comparisons (library and CLI, threads 1/2/3/4, repeated runs)";
    });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
