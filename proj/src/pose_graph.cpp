#include "posesync/pose_graph.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace posesync {

const GraphNode& PoseGraph::node(int id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return n;
  }
  throw std::invalid_argument("unknown node id " + std::to_string(id));
}

GraphNode& PoseGraph::node(int id) {
  return const_cast<GraphNode&>(static_cast<const PoseGraph*>(this)->node(id));
}

const GraphEdge* PoseGraph::find_edge(int from, int to) const {
  for (const auto& e : edges) {
    if (e.from == from && e.to == to) return &e;
  }
  return nullptr;
}

std::vector<int> PoseGraph::neighbors(int id) const {
  std::set<int> adj;
  for (const auto& e : edges) {
    if (e.to == id) adj.insert(e.from);
    if (e.from == id) adj.insert(e.to);
  }
  return {adj.begin(), adj.end()};
}

void PoseGraph::validate() const {
  if (nodes.size() < 2) {
    throw std::invalid_argument("pose graph needs at least 2 nodes");
  }
  std::set<int> ids;
  for (const auto& n : nodes) {
    if (!ids.insert(n.id).second) {
      throw std::invalid_argument("duplicate node id " + std::to_string(n.id));
    }
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (!ids.count(e.from) || !ids.count(e.to)) {
      throw std::invalid_argument("edge references unknown node");
    }
    if (e.from == e.to) throw std::invalid_argument("self edge not allowed");
    if (e.overlap <= 0.0 || e.overlap > 1.0) {
      throw std::invalid_argument("edge overlap must lie in (0, 1]");
    }
    if (e.weight < 0.0) throw std::invalid_argument("edge weight must be >= 0");
    if (!seen.insert({e.from, e.to}).second) {
      throw std::invalid_argument("duplicate directed edge");
    }
  }
  for (const auto& e : edges) {
    if (!seen.count({e.to, e.from})) {
      throw std::invalid_argument("edge (" + std::to_string(e.from) + "->" +
                                  std::to_string(e.to) + ") has no reverse edge");
    }
  }
}

std::vector<std::vector<int>> PoseGraph::connected_components() const {
  std::vector<std::vector<int>> components;
  std::set<int> unvisited;
  for (const auto& n : nodes) unvisited.insert(n.id);
  while (!unvisited.empty()) {
    std::vector<int> stack{*unvisited.begin()};
    unvisited.erase(unvisited.begin());
    std::vector<int> comp;
    while (!stack.empty()) {
      const int id = stack.back();
      stack.pop_back();
      comp.push_back(id);
      for (int nb : neighbors(id)) {
        if (unvisited.erase(nb)) stack.push_back(nb);
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

}  // namespace posesync
