#ifndef TORIC_IO_HPP
#define TORIC_IO_HPP

#include "toric/spectrum.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

/// Unreadable or schema-invalid input (CLI exit code 2).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Well-formed input describing something outside the supported class (CLI exit code 3).
class UnsupportedInput : public std::runtime_error {
public:
    explicit UnsupportedInput(const std::string& what) : std::runtime_error(what) {}
};

using Json = nlohmann::ordered_json;

/// Accepts a spec document, or an analysis document carrying one under "spec".
SemigroupSpec parse_spec(const std::string& text);
SemigroupSpec read_spec_file(const std::string& path);
SemigroupSpec spec_from_json(const Json& doc);

Json spec_to_json(const SemigroupSpec& spec);
Json atlas_to_json(const SpectrumAtlas& atlas);

std::string text_report(const SpectrumAtlas& atlas);
std::string dot_report(const SpectrumAtlas& atlas);

/// Integers as JSON numbers while |v| ≤ 2^53, as decimal strings beyond.
Json integer_to_json(const Integer& v);

Rational parse_rational(const std::string& text);
/// Comma-separated rationals; empty text gives an empty vector.
RatVector parse_rational_list(const std::string& text);
IntVector parse_integer_list(const std::string& text);

/// Reads `face:<id> theta:<q,...> lambda:<q,...>` starting at tokens[pos]; advances pos.
Character parse_character(const SpectrumAtlas& atlas, const std::vector<std::string>& tokens, std::size_t& pos);
/// The token form accepted by parse_character.
std::string format_character(const Character& chi);
std::string format_value(const ExactValue& v);
std::string format_torsion(const std::vector<Integer>& torsion);

}  // namespace toric

#endif
