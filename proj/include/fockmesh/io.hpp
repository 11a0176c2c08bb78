#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fockmesh/mesh.hpp"
#include "fockmesh/sweep.hpp"

namespace fockmesh {

inline nlohmann::json network_to_json(const NetworkSpec& network) {
  nlohmann::json doc;
  doc["modes"] = network.modes;
  doc["splitters"] = nlohmann::json::array();
  for (const auto& bs : network.splitters) {
    doc["splitters"].push_back({{"a", bs.mode_a}, {"b", bs.mode_b}, {"theta", bs.theta}});
  }
  return doc;
}

inline NetworkSpec network_from_json(const nlohmann::json& doc) {
  NetworkSpec network;
  network.modes = doc.at("modes").get<int>();
  for (const auto& item : doc.at("splitters")) {
    network.splitters.push_back({item.at("a").get<int>(), item.at("b").get<int>(),
                                 item.at("theta").get<double>()});
  }
  network.validate();
  return network;
}

inline nlohmann::json sweep_result_to_json(const SweepResult& result,
                                           const std::vector<std::vector<Extremum>>& extrema) {
  nlohmann::json doc;
  doc["config"] = {
      {"modes", result.config.modes},
      {"photons", result.config.photons},
      {"keep", {result.config.keep.first, result.config.keep.second}},
      {"backend", backend_name(result.config.backend)},
      {"network", result.config.uses_default_chain() ? "chain" : "custom"},
      {"grid", {{"lo", result.config.grid.lo},
                {"hi", result.config.grid.hi},
                {"count", result.config.grid.count}}},
  };
  doc["theta"] = result.grid;
  doc["columns"] = nlohmann::json::object();
  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    doc["columns"][csv_column_name(result.config.targets[c])] = result.columns[c];
  }
  doc["extrema"] = nlohmann::json::object();
  for (std::size_t c = 0; c < extrema.size() && c < result.columns.size(); ++c) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& e : extrema[c]) {
      list.push_back({{"theta", e.theta_star},
                      {"value", e.value},
                      {"kind", e.kind == Extremum::Kind::Max ? "max" : "min"},
                      {"width", e.width}});
    }
    doc["extrema"][csv_column_name(result.config.targets[c])] = list;
  }
  return doc;
}

}  // namespace fockmesh
