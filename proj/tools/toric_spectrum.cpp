#include "toric/io.hpp"
#include "toric/verifier.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <regex>
#include <sstream>

using namespace toric;

namespace {

enum Exit { ok = 0, input = 2, unsupported = 3, internal = 4 };

struct Options {
    std::string path;
    bool json = false;
    unsigned threads = 1;
    std::vector<std::string> args;
    int from = 0, to = 0, base = 0;
    std::string lambda;
    int box = 0;
    std::uint64_t seed = 1;
    int trials = 1000;
};

SpectrumAtlas load(const Options& o)
{
    AtlasOptions opts;
    opts.threads = std::max(1u, o.threads);
    return enumerate_faces(read_spec_file(o.path), opts);
}

IntVector point_from_args(const SpectrumAtlas& atlas, const std::vector<std::string>& args)
{
    if (static_cast<Index>(args.size()) != atlas.spec.ambient_rank())
        throw InputError("expected " + std::to_string(atlas.spec.ambient_rank()) + " coordinates, got " +
                         std::to_string(args.size()));
    static const std::regex integer(R"(-?[0-9]+)");
    IntVector x(atlas.spec.ambient_rank());
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (!std::regex_match(args[i], integer)) throw InputError("malformed coordinate '" + args[i] + "'");
        x(static_cast<Index>(i)) = Integer(args[i]);
    }
    return x;
}

Character next_character(const SpectrumAtlas& atlas, const std::vector<std::string>& args, std::size_t& pos)
{
    return parse_character(atlas, args, pos);
}

void no_extra(const std::vector<std::string>& args, std::size_t pos)
{
    if (pos < args.size()) throw InputError("unexpected token '" + args[pos] + "'");
}

int run_char(const std::string& op, const Options& o)
{
    const auto atlas = load(o);
    std::size_t pos = 0;
    if (op == "mul") {
        const Character a = next_character(atlas, o.args, pos);
        const Character b = next_character(atlas, o.args, pos);
        no_extra(o.args, pos);
        std::cout << format_character(multiply(atlas, a, b)) << "\n";
    } else if (op == "polar") {
        const Character chi = next_character(atlas, o.args, pos);
        no_extra(o.args, pos);
        const auto parts = polar_decompose(atlas, chi);
        std::cout << "unitary: " << format_character(parts.unitary) << "\n"
                  << "radial: " << format_character(parts.radial) << "\n";
    } else if (op == "conj") {
        const Character chi = next_character(atlas, o.args, pos);
        no_extra(o.args, pos);
        std::cout << format_character(involute(atlas, chi)) << "\n";
    } else if (op == "eval") {
        const Character chi = next_character(atlas, o.args, pos);
        if (pos >= o.args.size() || o.args[pos].rfind("at:", 0) != 0)
            throw InputError(pos < o.args.size() ? "malformed token '" + o.args[pos] + "': expected 'at:<x1,...>'"
                                                 : std::string("missing token 'at:<x1,...>'"));
        IntVector x;
        try {
            x = parse_integer_list(o.args[pos].substr(3));
        } catch (const InputError&) {
            throw InputError("malformed token '" + o.args[pos] + "'");
        }
        if (x.size() != atlas.spec.ambient_rank()) throw InputError("token '" + o.args[pos] + "' has the wrong length");
        no_extra(o.args, pos + 1);
        std::cout << format_value(evaluate(atlas, chi, x)) << "\n";
    } else if (op == "classify") {
        const Character chi = next_character(atlas, o.args, pos);
        no_extra(o.args, pos);
        const auto f = classify(atlas, chi);
        auto b = [](bool v) { return v ? "true" : "false"; };
        std::cout << "idempotent: " << b(f.is_idempotent) << "\nsymmetric: " << b(f.is_symmetric)
                  << "\nnonnegative: " << b(f.is_nonnegative) << "\nin_Se: " << b(f.in_Se) << "\n";
    }
    return ok;
}

int run_oracle(const Options& o)
{
    const auto atlas = load(o);
    const BoxSpec box = o.box > 0 ? BoxSpec(o.box) : default_box();
    bool all = true;
    auto line = [&](bool pass, const std::string& what) {
        all = all && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << what << "\n";
    };

    const auto faces = compare_faces(atlas, box);
    line(faces.membership_mismatches.empty(), "membership on box " + std::to_string(box.radius) + ": " +
                                                   std::to_string(faces.membership_mismatches.size()) +
                                                   " disagreements over " + std::to_string(faces.box_points_in_S) +
                                                   " points of S");
    line(faces.agree(), "faces: oracle " + std::to_string(faces.oracle_faces.size()) + ", atlas " +
                            std::to_string(faces.atlas_faces.size()));

    std::size_t bad = 0, cones = 0;
    auto check = [&](const Cone& c) {
        ++cones;
        if (!dd_cross_check(c, box).ok()) ++bad;
    };
    check(atlas.ambient_cone);
    for (const auto& f : atlas.faces) {
        check(f.cone);
        if (f.dual_cone_local.ambient_rank() > 0) check(f.dual_cone_local);
    }
    line(bad == 0, "double description: " + std::to_string(cones - bad) + "/" + std::to_string(cones) + " cones agree");

    const auto h = numeric_homomorphism_check(atlas, o.trials, o.seed);
    std::ostringstream dev;
    dev << h.max_float_deviation;
    line(h.exact_mismatches == 0 && h.max_float_deviation <= 1e-9,
         "homomorphism: " + std::to_string(h.trials) + " trials, " + std::to_string(h.exact_mismatches) +
             " exact mismatches, max float deviation " + dev.str());
    line(validate_sdata(atlas).ok(), "compatibility conditions A, B, C");
    if (!all) std::cerr << "failing spec: " << spec_to_json(atlas.spec).dump() << "\n";
    return all ? ok : internal;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Faces, groups and characters of a semigroup S in Z^n"};
    app.require_subcommand(1);
    Options o;

    auto file = [&](CLI::App* sub) { sub->add_option("file", o.path, "semigroup JSON file")->required(); };
    auto threads = [&](CLI::App* sub) { sub->add_option("--threads", o.threads, "worker threads")->default_val(1); };

    auto* analyze = app.add_subcommand("analyze", "print the face atlas");
    file(analyze);
    threads(analyze);
    analyze->add_flag("--json", o.json, "machine-readable output");

    auto* dot = app.add_subcommand("dot", "Hasse diagram of the idempotents in DOT");
    file(dot);
    threads(dot);

    auto* member = app.add_subcommand("member", "test x ∈ S");
    file(member);
    member->add_option("x", o.args, "coordinates")->required();

    auto* hull = app.add_subcommand("hull-member", "test x in the hull of S");
    file(hull);
    hull->add_option("x", o.args, "coordinates")->required();

    auto* chr = app.add_subcommand("char", "character operations");
    chr->require_subcommand(1);
    std::string char_op;
    for (const char* op : {"mul", "polar", "eval", "conj", "classify"}) {
        auto* sub = chr->add_subcommand(op, std::string("character ") + op);
        file(sub);
        sub->add_option("tokens", o.args, "face:<id> theta:<q,...> lambda:<q,...> [at:<x,...>]")->required();
        sub->callback([&char_op, op] { char_op = op; });
    }

    auto* ray = app.add_subcommand("ray", "one-parameter semigroups");
    ray->require_subcommand(1);
    auto* limit = ray->add_subcommand("limit", "face reached by the ray as t → ∞");
    file(limit);
    limit->add_option("--base", o.base, "base face id")->default_val(0);
    limit->add_option("--lambda", o.lambda, "radial direction q1,q2,...")->required();

    auto* chain = app.add_subcommand("chain", "chain of rays between two faces");
    file(chain);
    chain->add_option("--from", o.from, "upper face id")->required();
    chain->add_option("--to", o.to, "lower face id")->required();

    auto* oracle = app.add_subcommand("oracle", "brute-force cross checks");
    oracle->require_subcommand(1);
    auto* verify = oracle->add_subcommand("verify", "compare the atlas with independent oracles");
    file(verify);
    threads(verify);
    verify->add_option("--box", o.box, "box radius (default: TORIC_SPECTRUM_BOX or 6)");
    verify->add_option("--seed", o.seed, "seed for the sampled checks")->default_val(1);
    verify->add_option("--trials", o.trials, "sampled homomorphism trials")->default_val(1000);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return input;
    }

    try {
        if (analyze->parsed()) {
            const auto atlas = load(o);
            std::cout << (o.json ? atlas_to_json(atlas).dump(2) + "\n" : text_report(atlas));
        } else if (dot->parsed()) {
            std::cout << dot_report(load(o));
        } else if (member->parsed()) {
            const auto atlas = load(o);
            std::cout << (atlas.contains(point_from_args(atlas, o.args)) ? "true" : "false") << "\n";
        } else if (hull->parsed()) {
            const auto atlas = load(o);
            std::cout << (hull_contains(atlas, point_from_args(atlas, o.args)) ? "true" : "false") << "\n";
        } else if (chr->parsed()) {
            return run_char(char_op, o);
        } else if (limit->parsed()) {
            const auto atlas = load(o);
            if (o.base < 0 || o.base >= static_cast<int>(atlas.faces.size()))
                throw InputError("--base " + std::to_string(o.base) + ": no such face");
            RatVector lambda;
            try {
                lambda = parse_rational_list(o.lambda);
            } catch (const InputError& e) {
                throw InputError("--lambda '" + o.lambda + "': " + e.what());
            }
            std::cout << "limit: face " << ray_limit(atlas, Ray{o.base, lambda}) << "\n";
        } else if (chain->parsed()) {
            const auto atlas = load(o);
            for (int id : {o.from, o.to})
                if (id < 0 || id >= static_cast<int>(atlas.faces.size()))
                    throw InputError("face " + std::to_string(id) + " does not exist");
            const auto rays = chain_of_rays(atlas, o.from, o.to);
            std::cout << "chain length: " << rays.size() << "\n";
            for (std::size_t i = 0; i < rays.size(); ++i)
                std::cout << "ray " << i + 1 << ": base face " << rays[i].base_face_id << ", lambda "
                          << to_string(rays[i].lambda) << ", limit face " << ray_limit(atlas, rays[i]) << "\n";
        } else if (verify->parsed()) {
            return run_oracle(o);
        }
        return ok;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input;
    } catch (const UnsupportedInput& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return unsupported;
    } catch (const IndeterminateMembership& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return unsupported;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return internal;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return internal;
    }
}
