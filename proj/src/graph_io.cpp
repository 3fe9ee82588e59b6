#include "posesync/graph_io.hpp"

#include <fstream>
#include <stdexcept>

namespace posesync {

using nlohmann::json;

json pose_to_json(const Pose& p) {
  return json::array({p.x, p.y, rad_to_deg(p.theta)});
}

Pose pose_from_json(const json& arr) {
  if (!arr.is_array() || arr.size() != 3) {
    throw std::invalid_argument("pose must be a [x, y, theta_deg] array");
  }
  return Pose{arr[0].get<double>(), arr[1].get<double>(),
              wrap_angle(deg_to_rad(arr[2].get<double>()))};
}

json graph_to_json(const PoseGraph& graph) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& n : graph.nodes) {
    doc["nodes"].push_back(
        {{"id", n.id},
         {"true", pose_to_json(n.true_pose)},
         {"noisy", pose_to_json(n.noisy_pose)},
         {"provenance",
          n.provenance == NoiseProvenance::kStrong ? "strong" : "weak"}});
  }
  doc["edges"] = json::array();
  for (const auto& e : graph.edges) {
    doc["edges"].push_back({{"from", e.from},
                            {"to", e.to},
                            {"predicted", pose_to_json(e.predicted_relative)},
                            {"overlap", e.overlap}});
  }
  return doc;
}

PoseGraph graph_from_json(const json& doc) {
  PoseGraph graph;
  for (const auto& jn : doc.at("nodes")) {
    GraphNode n;
    n.id = jn.at("id").get<int>();
    n.true_pose = pose_from_json(jn.at("true"));
    n.noisy_pose = pose_from_json(jn.at("noisy"));
    const std::string prov = jn.value("provenance", "weak");
    if (prov != "weak" && prov != "strong") {
      throw std::invalid_argument("provenance must be 'weak' or 'strong'");
    }
    n.provenance = prov == "strong" ? NoiseProvenance::kStrong : NoiseProvenance::kWeak;
    graph.nodes.push_back(n);
  }
  for (const auto& je : doc.at("edges")) {
    GraphEdge e;
    e.from = je.at("from").get<int>();
    e.to = je.at("to").get<int>();
    e.predicted_relative = pose_from_json(je.at("predicted"));
    e.overlap = je.value("overlap", 1.0);
    e.weight = je.value("weight", 1.0);
    graph.edges.push_back(e);
  }
  graph.validate();
  return graph;
}

PoseGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  json doc;
  in >> doc;
  return graph_from_json(doc);
}

void save_graph(const PoseGraph& graph, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  out << graph_to_json(graph).dump(2) << "\n";
}

}  // namespace posesync
