#pragma once

// JSON forms of the library types. Infinite values are written as null
// (interpreted in the field's natural direction: -inf for g0plus, +inf
// elsewhere); on input "inf" / "-inf" strings are accepted too, and the limit
// fields also take "estimate".

#include "hardy_means/envelope.hpp"
#include "hardy_means/generator.hpp"
#include "hardy_means/hardy.hpp"
#include "hardy_means/harness.hpp"
#include "hardy_means/quadrature.hpp"
#include "hardy_means/validation.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hardy_means {

using json = nlohmann::ordered_json;

[[nodiscard]] json to_json(const GeneratorSpec& g);
[[nodiscard]] GeneratorSpec generator_from_json(const json& j);

[[nodiscard]] json to_json(const ValidationReport& r);
[[nodiscard]] json to_json(const std::vector<ValidationReport>& rs);
[[nodiscard]] json to_json(const EnvelopeParams& e);
[[nodiscard]] json to_json(const IntegralResult& r);
[[nodiscard]] json to_json(const HardyReport& r);
[[nodiscard]] json to_json(const RatioReport& r);

/// Sequence from {"kind": "geometric", "r": .., "N": .., "scale": ..} and the
/// other kinds (power_decay with "s", constant, csv with "path").
[[nodiscard]] SequenceSpec sequence_from_json(const json& j);

/// Sequence shorthand: "geometric:0.5", "power_decay:2", "constant",
/// "csv:<path>", or an inline JSON object. N comes from the caller.
[[nodiscard]] SequenceSpec parse_sequence(const std::string& text, std::size_t N);

/// Generator from a preset name ("power:<p>", "log", "truncated_linear:<M>"
/// or "truncated:<M>", "g_dip", "g_L"), inline JSON, or a path to a JSON file.
[[nodiscard]] GeneratorSpec parse_generator(const std::string& text);

/// {"generators": [...], "sequences": [...], "N": 4096}. Generators are preset
/// strings or JSON objects; sequences are objects or shorthand strings and may
/// carry their own "N".
[[nodiscard]] SweepConfig sweep_config_from_json(const json& j);

/// The two non-concave reference generators of the test corpus.
[[nodiscard]] GeneratorSpec preset_g_dip();
[[nodiscard]] GeneratorSpec preset_g_L();

}  // namespace hardy_means
