#include "xmapf/plan_io.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace xmapf {

std::string dump_plan(const Plan& plan) {
  std::ostringstream out;
  for (const auto& p : plan.paths) {
    out << "agent " << p.agent_id << ":";
    for (Cell c : p.vertices) out << " (" << c.x << "," << c.y << ")";
    out << '\n';
  }
  return out.str();
}

Plan parse_plan(const std::string& text) {
  Plan plan;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    int id;
    char colon;
    if (!(ls >> kw >> id >> colon) || kw != "agent" || colon != ':') {
      throw std::runtime_error("plan dump: bad line: " + line);
    }
    Path p;
    p.agent_id = id;
    char ch;
    while (ls >> ch) {
      if (ch != '(') throw std::runtime_error("plan dump: expected '(': " + line);
      int x, y;
      char comma, close;
      if (!(ls >> x >> comma >> y >> close) || comma != ',' || close != ')') {
        throw std::runtime_error("plan dump: bad vertex: " + line);
      }
      p.vertices.push_back(Cell{x, y});
    }
    if (p.vertices.empty()) {
      throw std::runtime_error("plan dump: empty path for agent " +
                               std::to_string(id));
    }
    if (id != static_cast<int>(plan.paths.size())) {
      throw std::runtime_error("plan dump: agent ids must be 0..n-1 in order");
    }
    plan.paths.push_back(std::move(p));
  }
  return plan;
}

std::string dump_plan_json(const Plan& plan) {
  nlohmann::json agents = nlohmann::json::array();
  for (const auto& p : plan.paths) {
    nlohmann::json path = nlohmann::json::array();
    for (Cell c : p.vertices) path.push_back({c.x, c.y});
    agents.push_back({{"id", p.agent_id}, {"path", path}});
  }
  return nlohmann::json{{"agents", agents}}.dump(2);
}

Plan parse_plan_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Plan plan;
  for (const auto& a : j.at("agents")) {
    Path p;
    p.agent_id = a.at("id").get<int>();
    for (const auto& v : a.at("path")) {
      p.vertices.push_back(Cell{v.at(0).get<int>(), v.at(1).get<int>()});
    }
    plan.paths.push_back(std::move(p));
  }
  return plan;
}

}  // namespace xmapf
