#include "scg/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "scg/error.hpp"

namespace scg {

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

template <>
Json scalar_to_json(const double& value) {
  return value;
}

template <>
Json scalar_to_json(const Rational& value) {
  return to_string(value);
}

template <>
double scalar_from_json(const Json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return to_double(parse_rational(value.get<std::string>()));
  throw InvalidInputError("expected a number or numeric string, got " + value.dump());
}

template <>
Rational scalar_from_json(const Json& value) {
  if (value.is_number_integer()) return Rational(std::to_string(value.get<long long>()));
  if (value.is_number()) return Rational(value.get<double>());
  if (value.is_string()) return parse_rational(value.get<std::string>());
  throw InvalidInputError("expected a number or numeric string, got " + value.dump());
}

namespace {

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InvalidInputError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::string id_from_json(const Json& id) {
  if (id.is_string()) return id.get<std::string>();
  if (id.is_number_integer()) return std::to_string(id.get<long long>());
  throw InvalidInputError("resource ids must be strings or integers, got " + id.dump());
}

std::size_t size_from_json(const Json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InvalidInputError(std::string(what) + " must be a nonnegative integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

}  // namespace

template <typename T>
Json game_to_json(const SetCoveringGame<T>& game) {
  Json doc;
  doc["indexing"] = "0-based";
  doc["n"] = game.num_agents();
  Json resources = Json::array();
  for (const auto& r : game.resources()) resources.push_back({{"id", r.id}, {"value", scalar_to_json(r.value)}});
  doc["resources"] = std::move(resources);
  Json actions = Json::array();
  for (std::size_t i = 0; i < game.num_agents(); ++i) {
    Json agent = Json::array();
    for (const auto& act : game.actions(i)) {
      Json ids = Json::array();
      for (auto r : act) ids.push_back(game.resources()[r].id);
      agent.push_back(std::move(ids));
    }
    actions.push_back(std::move(agent));
  }
  doc["actions"] = std::move(actions);
  doc["null_index"] = game.null_indices();
  return doc;
}

template <typename T>
SetCoveringGame<T> game_from_json(const Json& doc) {
  if (doc.contains("indexing") && doc.at("indexing") != "0-based") {
    throw InvalidInputError("only 0-based game files are supported");
  }
  const std::size_t n = size_from_json(require(doc, "n"), "n");
  std::vector<Resource<T>> resources;
  for (const auto& r : require(doc, "resources")) {
    resources.push_back({id_from_json(require(r, "id")), scalar_from_json<T>(require(r, "value"))});
  }
  auto index_of = [&](const Json& id) {
    const std::string key = id_from_json(id);
    for (std::size_t r = 0; r < resources.size(); ++r) {
      if (resources[r].id == key) return r;
    }
    throw InvalidInputError("action references unknown resource '" + key + "'");
  };
  const auto& actions_doc = require(doc, "actions");
  if (!actions_doc.is_array() || actions_doc.size() != n) {
    throw InvalidInputError("'actions' must list one action set per agent");
  }
  std::vector<std::vector<Action>> actions;
  for (const auto& agent : actions_doc) {
    std::vector<Action> set;
    for (const auto& act : agent) {
      Action a;
      for (const auto& id : act) a.push_back(index_of(id));
      set.push_back(std::move(a));
    }
    actions.push_back(std::move(set));
  }
  std::vector<std::size_t> null_index;
  for (const auto& v : require(doc, "null_index")) null_index.push_back(size_from_json(v, "null_index entry"));
  return SetCoveringGame<T>(std::move(resources), std::move(actions), std::move(null_index));
}

template <typename T>
Json rule_to_json(const UtilityRule<T>& rule) {
  Json values = Json::array();
  for (const auto& v : rule.values()) values.push_back(scalar_to_json(v));
  Json doc;
  doc["name"] = rule.name();
  doc["values"] = std::move(values);
  doc["n_max"] = rule.n_max();
  return doc;
}

template <typename T>
UtilityRule<T> rule_from_json(const Json& doc) {
  std::vector<T> values;
  for (const auto& v : require(doc, "values")) values.push_back(scalar_from_json<T>(v));
  if (doc.contains("n_max") && size_from_json(doc.at("n_max"), "n_max") != values.size()) {
    throw InvalidInputError("rule n_max disagrees with the number of values");
  }
  std::string name = doc.contains("name") ? doc.at("name").get<std::string>() : std::string("custom");
  return UtilityRule<T>(std::move(name), std::move(values));
}

template <typename T>
GameFamily<T> family_from_json(const Json& doc) {
  GameFamily<T> family;
  family.n = size_from_json(require(doc, "n"), "n");
  family.max_actions = size_from_json(require(doc, "max_actions"), "max_actions");
  family.max_resources = size_from_json(require(doc, "max_resources"), "max_resources");
  if (doc.contains("value_grid")) {
    for (const auto& v : doc.at("value_grid")) family.value_grid.push_back(scalar_from_json<T>(v));
  }
  return family;
}

template <typename T>
Json family_to_json(const GameFamily<T>& family) {
  Json grid = Json::array();
  for (const auto& v : family.value_grid) grid.push_back(scalar_to_json(v));
  Json doc;
  doc["n"] = family.n;
  doc["max_actions"] = family.max_actions;
  doc["max_resources"] = family.max_resources;
  doc["value_grid"] = std::move(grid);
  return doc;
}

ExperimentConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidInputError("experiment config must be a JSON object");
  ExperimentConfig cfg;
  if (doc.contains("runs")) cfg.runs = size_from_json(doc.at("runs"), "runs");
  if (doc.contains("n")) cfg.n = size_from_json(doc.at("n"), "n");
  if (doc.contains("set_size")) cfg.set_size = size_from_json(doc.at("set_size"), "set_size");
  if (doc.contains("rounds")) cfg.rounds = size_from_json(doc.at("rounds"), "rounds");
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) throw InvalidInputError("seed must be a nonnegative integer");
    cfg.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("tie_policy")) cfg.tie_policy = parse_tie_policy(doc.at("tie_policy").get<std::string>());
  cfg.validate();
  return cfg;
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json doc;
  doc["runs"] = cfg.runs;
  doc["n"] = cfg.n;
  doc["set_size"] = cfg.set_size;
  doc["rounds"] = cfg.rounds;
  doc["seed"] = cfg.seed;
  doc["tie_policy"] = to_string(cfg.tie_policy);
  return doc;
}

namespace {

std::string csv_scalar(double v) { return to_string(v); }
std::string csv_scalar(const Rational& v) { return to_string(v); }

}  // namespace

template <typename T>
void write_trajectory_csv(const Trajectory<T>& trajectory, std::ostream& out) {
  out << "step,agent,action_index,welfare,potential\n";
  for (const auto& s : trajectory.steps) {
    out << s.step << ',' << s.agent << ',' << s.action << ',' << csv_scalar(s.welfare) << ','
        << csv_scalar(s.potential) << '\n';
  }
}

Json profile_to_json(const JointAction& a) { return a.choices; }

template <typename T>
Json end_states_to_json(const SetCoveringGame<T>& game, const std::vector<JointAction>& states) {
  Json doc = Json::array();
  for (const auto& a : states) {
    doc.push_back({{"profile", profile_to_json(a)}, {"welfare", scalar_to_json(welfare(game, a))}});
  }
  return doc;
}

#define SCG_INSTANTIATE(T)                                                                     \
  template Json game_to_json(const SetCoveringGame<T>&);                                       \
  template SetCoveringGame<T> game_from_json(const Json&);                                     \
  template Json rule_to_json(const UtilityRule<T>&);                                           \
  template UtilityRule<T> rule_from_json(const Json&);                                         \
  template GameFamily<T> family_from_json(const Json&);                                        \
  template Json family_to_json(const GameFamily<T>&);                                          \
  template void write_trajectory_csv(const Trajectory<T>&, std::ostream&);                     \
  template Json end_states_to_json(const SetCoveringGame<T>&, const std::vector<JointAction>&);

SCG_INSTANTIATE(double)
SCG_INSTANTIATE(Rational)

#undef SCG_INSTANTIATE

}  // namespace scg
