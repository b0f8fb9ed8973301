#include "xmapf/grid.hpp"

#include <cctype>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

namespace xmapf {

GridWorld::GridWorld(int width, int height, bool allow_wait)
    : width_(width),
      height_(height),
      allow_wait_(allow_wait),
      passable_count_(width * height),
      blocked_(static_cast<std::size_t>(width) * height, 0) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
}

void GridWorld::block(Cell c) {
  if (!in_bounds(c)) {
    throw std::out_of_range("blocked cell " + to_string(c) + " out of bounds");
  }
  if (!blocked_[index(c)]) {
    blocked_[index(c)] = 1;
    --passable_count_;
  }
}

std::vector<Cell> GridWorld::neighbors(Cell v) const {
  if (!passable(v)) {
    throw std::invalid_argument("neighbors() of impassable cell " + to_string(v));
  }
  std::vector<Cell> out;
  out.reserve(5);
  if (allow_wait_) out.push_back(v);
  const Cell steps[4] = {{v.x, v.y - 1}, {v.x + 1, v.y}, {v.x, v.y + 1}, {v.x - 1, v.y}};
  for (Cell c : steps) {
    if (passable(c)) out.push_back(c);
  }
  return out;
}

DistanceField::DistanceField(const GridWorld& world, Cell goal)
    : width_(world.width()),
      dist_(static_cast<std::size_t>(world.width()) * world.height(),
            kUnreachable) {
  if (!world.passable(goal)) {
    throw std::invalid_argument("distance field goal is not passable");
  }
  std::deque<Cell> queue;
  dist_[static_cast<std::size_t>(idx_(goal))] = 0;
  queue.push_back(goal);
  while (!queue.empty()) {
    Cell c = queue.front();
    queue.pop_front();
    int d = dist_[static_cast<std::size_t>(idx_(c))];
    const Cell steps[4] = {{c.x, c.y - 1}, {c.x + 1, c.y}, {c.x, c.y + 1}, {c.x - 1, c.y}};
    for (Cell n : steps) {
      if (world.passable(n) && dist_[static_cast<std::size_t>(idx_(n))] == kUnreachable) {
        dist_[static_cast<std::size_t>(idx_(n))] = d + 1;
        queue.push_back(n);
      }
    }
  }
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

GridWorld parse_map(const std::string& text) {
  auto lines = split_lines(text);
  int width = -1, height = -1;
  std::size_t row0 = 0;
  bool saw_map = false;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    std::istringstream in(lines[k]);
    std::string key;
    in >> key;
    if (key == "type") {
      continue;
    } else if (key == "height") {
      in >> height;
    } else if (key == "width") {
      in >> width;
    } else if (key == "map") {
      saw_map = true;
      row0 = k + 1;
      break;
    } else if (key.empty()) {
      continue;
    } else {
      throw ParseError("map header: unknown key '" + key + "'");
    }
  }
  if (!saw_map || width <= 0 || height <= 0) {
    throw ParseError("map header: missing/invalid width, height, or 'map' line");
  }
  if (lines.size() < row0 + static_cast<std::size_t>(height)) {
    throw ParseError("map body has fewer rows than the declared height");
  }
  GridWorld world(width, height);
  for (int y = 0; y < height; ++y) {
    const std::string& row = lines[row0 + static_cast<std::size_t>(y)];
    if (static_cast<int>(row.size()) != width) {
      throw ParseError("map row " + std::to_string(y) + " has width " +
                       std::to_string(row.size()) + ", expected " +
                       std::to_string(width));
    }
    for (int x = 0; x < width; ++x) {
      switch (row[static_cast<std::size_t>(x)]) {
        case '.':
        case 'G':
        case 'S':
          break;
        case '@':
        case 'T':
        case 'O':
        case 'W':
          world.block(Cell{x, y});
          break;
        default:
          throw ParseError(std::string("map: unknown cell character '") +
                           row[static_cast<std::size_t>(x)] + "' at " +
                           to_string(Cell{x, y}));
      }
    }
  }
  return world;
}

std::string serialize_map(const GridWorld& world) {
  std::ostringstream out;
  out << "type octile\nheight " << world.height() << "\nwidth " << world.width()
      << "\nmap\n";
  for (int y = 0; y < world.height(); ++y) {
    for (int x = 0; x < world.width(); ++x) {
      out << (world.blocked(Cell{x, y}) ? '@' : '.');
    }
    out << '\n';
  }
  return out.str();
}

Instance parse_scenario(const std::string& text, const GridWorld& world, int n) {
  if (n < 0) throw ParseError("scenario: negative agent count");
  auto lines = split_lines(text);
  std::size_t k = 0;
  if (!lines.empty() && lines[0].rfind("version", 0) == 0) k = 1;

  Instance inst{world, {}};
  for (; k < lines.size() && static_cast<int>(inst.tasks.size()) < n; ++k) {
    if (lines[k].empty()) continue;
    std::istringstream in(lines[k]);
    std::string bucket, map_name;
    int mw, mh, sx, sy, gx, gy;
    if (!(in >> bucket >> map_name >> mw >> mh >> sx >> sy >> gx >> gy)) {
      throw ParseError("scenario row " + std::to_string(k) + " is malformed");
    }
    Cell start{sx, sy}, goal{gx, gy};
    if (!world.passable(start)) {
      throw ParseError("scenario row " + std::to_string(k) + ": start " +
                       to_string(start) + " is blocked or out of bounds");
    }
    if (!world.passable(goal)) {
      throw ParseError("scenario row " + std::to_string(k) + ": goal " +
                       to_string(goal) + " is blocked or out of bounds");
    }
    inst.tasks.push_back(
        AgentTask{static_cast<int>(inst.tasks.size()), start, goal});
  }
  if (static_cast<int>(inst.tasks.size()) < n) {
    throw ParseError("scenario has only " + std::to_string(inst.tasks.size()) +
                     " rows, " + std::to_string(n) + " requested");
  }
  return inst;
}

Instance parse_ascii_instance(const std::string& text, bool allow_wait) {
  std::vector<std::string> rows;
  for (const auto& line : split_lines(text)) {
    std::string trimmed = line;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
      trimmed.erase(trimmed.begin());
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    if (!trimmed.empty()) rows.push_back(trimmed);
  }
  if (rows.empty()) throw ParseError("ascii fixture: empty");
  int height = static_cast<int>(rows.size());
  int width = static_cast<int>(rows[0].size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != width) {
      throw ParseError("ascii fixture: ragged rows");
    }
  }
  GridWorld world(width, height, allow_wait);
  std::map<int, Cell> starts, goals;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      char c = rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      if (c == '@') {
        world.block(Cell{x, y});
      } else if (c >= 'a' && c <= 'z') {
        starts[c - 'a'] = Cell{x, y};
      } else if (c >= 'A' && c <= 'Z') {
        goals[c - 'A'] = Cell{x, y};
      } else if (c != '.') {
        throw ParseError(std::string("ascii fixture: unknown character '") + c + "'");
      }
    }
  }
  if (starts.size() != goals.size()) {
    throw ParseError("ascii fixture: start/goal letter mismatch");
  }
  Instance inst{world, {}};
  for (const auto& [id, start] : starts) {
    auto it = goals.find(id);
    if (it == goals.end()) {
      throw ParseError("ascii fixture: no goal for agent " + std::to_string(id));
    }
    if (id != static_cast<int>(inst.tasks.size())) {
      throw ParseError("ascii fixture: agent letters must be consecutive from 'a'");
    }
    inst.tasks.push_back(AgentTask{id, start, it->second});
  }
  return inst;
}

namespace {
std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

GridWorld load_map_file(const std::string& path) { return parse_map(read_file(path)); }

Instance load_scenario_file(const std::string& path, const GridWorld& world, int n) {
  return parse_scenario(read_file(path), world, n);
}

}  // namespace xmapf
