#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "scg/constructions.hpp"
#include "scg/dynamics.hpp"
#include "scg/game.hpp"
#include "scg/montecarlo.hpp"

namespace scg {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON document; IoError when the file cannot be read.
Json load_json(const std::filesystem::path& path);

/// Writes `text` to `path`, replacing any existing file.
void write_text(const std::filesystem::path& path, const std::string& text);

/// Scalars are decimal strings in rational mode ("p/q" or "0.25") and JSON numbers in float mode.
template <typename T>
Json scalar_to_json(const T& value);

/// Accepts a JSON number or a rational/decimal string.
template <typename T>
T scalar_from_json(const Json& value);

/// {"indexing": "0-based", "n", "resources": [{id, value}], "actions": [[[ids...]...]...], "null_index": [...]}
template <typename T>
Json game_to_json(const SetCoveringGame<T>& game);

template <typename T>
SetCoveringGame<T> game_from_json(const Json& doc);

/// {"name", "values": [...], "n_max"}
template <typename T>
Json rule_to_json(const UtilityRule<T>& rule);

template <typename T>
UtilityRule<T> rule_from_json(const Json& doc);

/// {"n", "max_actions", "max_resources", "value_grid": [...]}
template <typename T>
GameFamily<T> family_from_json(const Json& doc);

template <typename T>
Json family_to_json(const GameFamily<T>& family);

/// Mirrors ExperimentConfig: runs, n, set_size, rounds, seed, tie_policy. Missing keys keep defaults.
ExperimentConfig config_from_json(const Json& doc);
Json config_to_json(const ExperimentConfig& cfg);

/// CSV with columns step, agent, action_index, welfare, potential (agents 0-based).
template <typename T>
void write_trajectory_csv(const Trajectory<T>& trajectory, std::ostream& out);

/// [{"profile": [...], "welfare": ...}] in the given order.
template <typename T>
Json end_states_to_json(const SetCoveringGame<T>& game, const std::vector<JointAction>& states);

Json profile_to_json(const JointAction& a);

}  // namespace scg
