#include "toric/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>

namespace toric {

namespace {

const std::regex integer_pattern(R"(-?[0-9]+)");
const std::regex rational_pattern(R"((-?[0-9]+)(?:/([0-9]+))?)");

std::string location(const std::string& text, std::size_t byte)
{
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

Integer read_integer(const Json& v, const std::string& path)
{
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
        return Integer(v.get<std::int64_t>());
    }
    if (v.is_number_float())
        throw UnsupportedInput(path + ": non-integer number " + v.dump() +
                               "; only integer data is supported (irrational or real halfspace data is out of scope; "
                               "integers beyond 64 bits must be written as strings)");
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        if (std::regex_match(s, integer_pattern)) return Integer(s);
        throw InputError(path + ": expected an integer, got string \"" + s + "\"");
    }
    throw InputError(path + ": expected an integer, got " + std::string(v.type_name()));
}

IntVector read_vector(const Json& v, Index n, const std::string& path)
{
    if (!v.is_array()) throw InputError(path + ": expected an array of " + std::to_string(n) + " integers");
    if (static_cast<Index>(v.size()) != n)
        throw InputError(path + ": expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    IntVector out(n);
    for (Index i = 0; i < n; ++i)
        out(i) = read_integer(v[static_cast<std::size_t>(i)], path + "[" + std::to_string(i) + "]");
    return out;
}

const Json& field(const Json& doc, const char* key, const std::string& path)
{
    auto it = doc.find(key);
    if (it == doc.end()) throw InputError(path + ": missing field \"" + key + "\"");
    return *it;
}

SemigroupSpec read_spec(const Json& doc, const std::string& path)
{
    if (!doc.is_object()) throw InputError(path + ": expected an object");

    const Json& kind_field = field(doc, "kind", path);
    if (!kind_field.is_string()) throw InputError(path + ".kind: expected a string");
    const std::string kind = kind_field.get<std::string>();
    if (kind == "light_cone" || kind == "quadratic_cone" || kind == "halfspace_irrational")
        throw UnsupportedInput(path + ".kind: \"" + kind +
                               "\" describes a non-polyhedral or irrational semigroup (such as the light-cone "
                               "example, whose idempotent set is infinite); only finitely generated data and "
                               "integer halfspace towers are supported");
    if (kind != "generators" && kind != "tower")
        throw InputError(path + ".kind: expected \"generators\" or \"tower\", got \"" + kind + "\"");

    for (const auto& [key, value] : doc.items()) {
        (void)value;
        const bool known = key == "kind" || key == "ambient_rank" || key == "name" || key == "description" ||
                           (kind == "generators" && key == "generators") ||
                           (kind == "tower" && (key == "normal" || key == "inner"));
        if (!known) throw InputError(path + ": unexpected field \"" + key + "\" for kind \"" + kind + "\"");
    }

    const Integer rank = read_integer(field(doc, "ambient_rank", path), path + ".ambient_rank");
    if (rank < 1 || rank > 64) throw InputError(path + ".ambient_rank: expected an integer in [1, 64]");
    const auto n = rank.convert_to<Index>();

    if (kind == "generators") {
        const Json& gens = field(doc, "generators", path);
        if (!gens.is_array()) throw InputError(path + ".generators: expected an array");
        std::vector<IntVector> out;
        for (std::size_t i = 0; i < gens.size(); ++i)
            out.push_back(read_vector(gens[i], n, path + ".generators[" + std::to_string(i) + "]"));
        return SemigroupSpec::generators(n, std::move(out));
    }

    const IntVector normal = read_vector(field(doc, "normal", path), n, path + ".normal");
    if (is_zero(normal)) throw InputError(path + ".normal: must be nonzero");
    if (!equal(primitive(normal), normal)) throw InputError(path + ".normal: must be primitive (entries with gcd 1)");
    if (n < 2) throw InputError(path + ": a tower needs ambient_rank at least 2");
    SemigroupSpec inner = read_spec(field(doc, "inner", path), path + ".inner");
    if (inner.ambient_rank() != n - 1)
        throw InputError(path + ".inner.ambient_rank: expected " + std::to_string(n - 1) + ", got " +
                         std::to_string(inner.ambient_rank()));
    return SemigroupSpec::tower(n, normal, std::move(inner));
}

Json vector_json(const IntVector& v)
{
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(integer_to_json(v(i)));
    return out;
}

Json vectors_json(const std::vector<IntVector>& vs)
{
    Json out = Json::array();
    for (const auto& v : vs) out.push_back(vector_json(v));
    return out;
}

Json cone_json(const Cone& c)
{
    Json out = Json::object();
    out["rays"] = vectors_json(c.rays());
    out["inequalities"] = vectors_json(c.inequalities());
    out["lineality"] = vectors_json(c.lineality().rows());
    return out;
}

std::string list(const std::vector<IntVector>& vs)
{
    if (vs.empty()) return "none";
    std::string out;
    for (const auto& v : vs) out += (out.empty() ? "" : " ") + to_string(v);
    return out;
}

std::string component_group(const std::vector<Integer>& torsion)
{
    if (torsion.empty()) return "connected";
    std::string out = "component group ";
    for (std::size_t i = 0; i < torsion.size(); ++i) out += (i ? " × " : "") + std::string("ℤ/") + torsion[i].str();
    return out;
}

std::string join_rationals(const RatVector& v)
{
    std::string out;
    for (Index i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v(i));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Json integer_to_json(const Integer& v)
{
    static const Integer limit = Integer(1) << 53;
    if (v <= limit && v >= -limit) return Json(v.convert_to<std::int64_t>());
    return Json(v.str());
}

SemigroupSpec spec_from_json(const Json& doc)
{
    if (doc.is_object() && doc.contains("spec")) return read_spec(doc["spec"], "$.spec");
    return read_spec(doc, "$");
}

SemigroupSpec parse_spec(const std::string& text)
{
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::string what = e.what();
        const auto colon = what.find("syntax error");
        throw InputError("JSON parse error at " + location(text, e.byte) + ": " +
                         (colon == std::string::npos ? what : what.substr(colon)));
    }
    return spec_from_json(doc);
}

SemigroupSpec read_spec_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_spec(buffer.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    } catch (const UnsupportedInput& e) {
        throw UnsupportedInput(path + ": " + e.what());
    }
}

Json spec_to_json(const SemigroupSpec& spec)
{
    Json out = Json::object();
    out["ambient_rank"] = spec.ambient_rank();
    if (!spec.is_tower()) {
        out["kind"] = "generators";
        out["generators"] = vectors_json(spec.as_generators().generators);
    } else {
        out["kind"] = "tower";
        out["normal"] = vector_json(spec.as_tower().normal);
        out["inner"] = spec_to_json(*spec.as_tower().inner);
    }
    return out;
}

Json atlas_to_json(const SpectrumAtlas& atlas)
{
    Json out = Json::object();
    out["spec"] = spec_to_json(atlas.spec);
    out["antisymmetric"] = atlas.antisymmetric;
    out["separating"] = atlas.separating;
    const auto zero = zero_element(atlas);
    out["zero_element"] = zero ? Json(zero->face_id) : Json(nullptr);
    out["least_idempotent"] = atlas.least();
    out["asymptotic_cone"] = cone_json(atlas.ambient_cone);
    Json faces = Json::array();
    for (const auto& f : atlas.faces) {
        Json j = Json::object();
        j["id"] = f.handle.id;
        j["dim"] = f.handle.dim;
        j["rank"] = f.lattice.rank();
        Json torsion = Json::array();
        for (const auto& t : f.torsion) torsion.push_back(integer_to_json(t));
        j["torsion"] = torsion;
        j["cone"] = cone_json(f.cone);
        j["group_basis"] = vectors_json(f.lattice.rows());
        j["dual_cone"] = cone_json(f.dual_cone_local);
        if (!atlas.spec.is_tower()) j["generators_on_face"] = vectors_json(f.member_generators);
        faces.push_back(j);
    }
    out["faces"] = faces;
    Json hasse = Json::array();
    for (const auto& [upper, lower] : atlas.hasse) hasse.push_back(Json::array({upper, lower}));
    out["hasse"] = hasse;
    out["expansion_rounds"] = atlas.expansion_rounds;
    return out;
}

std::string text_report(const SpectrumAtlas& atlas)
{
    std::ostringstream out;
    const auto& spec = atlas.spec;
    if (spec.is_tower())
        out << "semigroup: tower in ℤ^" << spec.ambient_rank() << ", normal " << to_string(spec.as_tower().normal)
            << "\n";
    else
        out << "semigroup: generators in ℤ^" << spec.ambient_rank() << ", "
            << list(spec.as_generators().generators) << "\n";

    const auto zero = zero_element(atlas);
    out << "antisymmetric: " << (atlas.antisymmetric ? "true" : "false")
        << "; zero element: " << (zero ? "face " + std::to_string(zero->face_id) : std::string("none")) << "\n";
    out << "separating: " << (atlas.separating ? "true" : "false") << "\n";
    out << "asymptotic cone:\n"
        << "  rays: " << list(atlas.ambient_cone.rays()) << "\n"
        << "  inequalities: " << list(atlas.ambient_cone.inequalities()) << "\n"
        << "  lineality: " << list(atlas.ambient_cone.lineality().rows()) << "\n";
    out << "faces: " << atlas.faces.size() << "\n";
    for (const auto& f : atlas.faces) {
        out << "face " << f.handle.id << " torsion " << format_torsion(f.torsion) << " ("
            << component_group(f.torsion) << ")\n";
        out << "  dim " << f.handle.dim << ", group rank " << f.lattice.rank() << "\n";
        out << "  cone rays: " << list(f.cone.rays()) << "; lineality: " << list(f.cone.lineality().rows()) << "\n";
        out << "  group basis: " << list(f.lattice.rows()) << "\n";
        out << "  dual cone rays: " << list(f.dual_cone_local.rays())
            << "; lineality: " << list(f.dual_cone_local.lineality().rows()) << "\n";
        if (!spec.is_tower()) out << "  generators on face: " << list(f.member_generators) << "\n";
    }
    out << "hasse covers:";
    if (atlas.hasse.empty()) out << " none";
    for (const auto& [upper, lower] : atlas.hasse) out << " " << upper << ">" << lower;
    out << "\n";
    out << "least idempotent: face " << atlas.least() << "\n";
    out << "expansion rounds: " << atlas.expansion_rounds << "\n";
    return out.str();
}

std::string dot_report(const SpectrumAtlas& atlas)
{
    std::ostringstream out;
    out << "digraph idempotents {\n";
    for (const auto& f : atlas.faces)
        out << "  f" << f.handle.id << " [label=\"dim=" << f.handle.dim << " rank=" << f.lattice.rank()
            << " torsion=" << format_torsion(f.torsion) << "\"];\n";
    for (const auto& [upper, lower] : atlas.hasse) out << "  f" << upper << " -> f" << lower << ";\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------

Rational parse_rational(const std::string& text)
{
    std::smatch m;
    if (!std::regex_match(text, m, rational_pattern)) throw InputError("malformed rational '" + text + "'");
    const Integer num(m[1].str());
    const Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    return Rational(num, den);
}

RatVector parse_rational_list(const std::string& text)
{
    std::vector<Rational> entries;
    if (!text.empty()) {
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            entries.push_back(parse_rational(text.substr(start, comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    RatVector out(static_cast<Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) out(static_cast<Index>(i)) = entries[i];
    return out;
}

IntVector parse_integer_list(const std::string& text)
{
    const RatVector q = parse_rational_list(text);
    IntVector out(q.size());
    for (Index i = 0; i < q.size(); ++i) {
        if (denominator(q(i)) != 1) throw InputError("expected integers, got '" + text + "'");
        out(i) = numerator(q(i));
    }
    return out;
}

Character parse_character(const SpectrumAtlas& atlas, const std::vector<std::string>& tokens, std::size_t& pos)
{
    auto take = [&](const std::string& prefix) {
        if (pos >= tokens.size()) throw InputError("missing token '" + prefix + "...'");
        const std::string& token = tokens[pos];
        if (token.rfind(prefix, 0) != 0)
            throw InputError("malformed character token '" + token + "': expected '" + prefix + "...'");
        ++pos;
        return std::pair{token, token.substr(prefix.size())};
    };

    const auto [face_token, face_text] = take("face:");
    if (!std::regex_match(face_text, integer_pattern)) throw InputError("malformed character token '" + face_token + "'");
    const int face = std::stoi(face_text);
    if (face < 0 || face >= static_cast<int>(atlas.faces.size()))
        throw InputError("character token '" + face_token + "': no such face");

    RatVector theta, lambda;
    const auto [theta_token, theta_text] = take("theta:");
    try {
        theta = parse_rational_list(theta_text);
    } catch (const InputError& e) {
        throw InputError("malformed character token '" + theta_token + "': " + e.what());
    }
    const auto [lambda_token, lambda_text] = take("lambda:");
    try {
        lambda = parse_rational_list(lambda_text);
    } catch (const InputError& e) {
        throw InputError("malformed character token '" + lambda_token + "': " + e.what());
    }
    try {
        return make_character(atlas, face, theta, lambda);
    } catch (const InvalidCharacter& e) {
        throw InputError("character '" + face_token + " " + theta_token + " " + lambda_token + "': " + e.what());
    }
}

std::string format_character(const Character& chi)
{
    return "face:" + std::to_string(chi.face_id) + " theta:" + join_rationals(chi.theta) +
           " lambda:" + join_rationals(chi.lambda);
}

std::string format_value(const ExactValue& v)
{
    if (v.zero) return "zero";
    auto c = v.to_complex();
    auto clean = [](double x) { return std::abs(x) < 5e-13 ? 0.0 : x; };
    c = {clean(c.real()), clean(c.imag())};
    std::ostringstream out;
    out << "angle " << to_string(v.angle) << ", exponent " << to_string(v.exponent) << ", value " << std::fixed
        << std::setprecision(12) << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    return out.str();
}

std::string format_torsion(const std::vector<Integer>& torsion)
{
    std::string out = "[";
    for (std::size_t i = 0; i < torsion.size(); ++i) out += (i ? "," : "") + torsion[i].str();
    return out + "]";
}

}  // namespace toric
