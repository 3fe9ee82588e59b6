#ifndef POSESYNC_GRAPH_IO_HPP
#define POSESYNC_GRAPH_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "posesync/pose_graph.hpp"

namespace posesync {

/// PoseGraph <-> the interchange JSON document:
///   {"nodes":[{"id":0,"true":[x,y,theta_deg],"noisy":[...],"provenance":"weak"}],
///    "edges":[{"from":1,"to":0,"predicted":[x,y,theta_deg],"overlap":0.7}]}
/// Angles are degrees on the wire, radians internally.
nlohmann::json graph_to_json(const PoseGraph& graph);
PoseGraph graph_from_json(const nlohmann::json& doc);

PoseGraph load_graph(const std::string& path);
void save_graph(const PoseGraph& graph, const std::string& path);

nlohmann::json pose_to_json(const Pose& p);
Pose pose_from_json(const nlohmann::json& arr);

}  // namespace posesync

#endif
