#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "xmapf/lowlevel.hpp"
#include "space_time.hpp"

namespace xmapf {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

std::uint64_t mix_hash(std::uint64_t h, Cell c) {
  std::uint64_t k =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
      static_cast<std::uint32_t>(c.y);
  h = (h ^ k) * 0x100000001b3ULL;
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 32;
  return h;
}

/// Fixed view of the other agents' paths: per-time positions, per-cell visit
/// times, and the largest e such that the others alone stay pairwise
/// vertex-disjoint over [s, e].
class OthersContext {
 public:
  explicit OthersContext(const Plan& others) : others_(others) {
    horizon_ = others.makespan();
    pos_at_.resize(static_cast<std::size_t>(horizon_ + 1));
    for (const auto& p : others.paths) {
      for (int t = 0; t <= p.last_time(); ++t) {
        pos_at_[static_cast<std::size_t>(t)].push_back(p.at(t));
        visits_[p.at(t)].push_back(t);
      }
    }
    for (auto& [cell, times] : visits_) std::sort(times.begin(), times.end());
  }

  int horizon() const { return horizon_; }

  const std::vector<Cell>& at(int t) const {
    static const std::vector<Cell> kEmpty;
    if (t < 0 || t > horizon_) return kEmpty;
    return pos_at_[static_cast<std::size_t>(t)];
  }

  bool visited_in(Cell c, int lo, int hi) const {
    auto it = visits_.find(c);
    if (it == visits_.end()) return false;
    auto t = std::lower_bound(it->second.begin(), it->second.end(), lo);
    return t != it->second.end() && *t <= hi;
  }

  /// Largest e >= s-1 with the others pairwise disjoint over [s, e]; kInf when
  /// they stay disjoint through their end.
  int max_disjoint_end(int s) {
    if (s > horizon_) return kInf;
    auto it = maxend_.find(s);
    if (it != maxend_.end()) return it->second;
    std::unordered_map<Cell, int, CellHash> owner;
    int e = s - 1;
    for (int t = s; t <= horizon_; ++t) {
      bool ok = true;
      int who = 0;
      for (const auto& p : others_.paths) {
        if (!p.alive_at(t)) {
          ++who;
          continue;
        }
        auto [oit, inserted] = owner.emplace(p.at(t), who);
        if (!inserted && oit->second != who) ok = false;
        ++who;
      }
      if (!ok) break;
      e = t;
    }
    int result = (e == horizon_) ? kInf : e;
    maxend_[s] = result;
    return result;
  }

  /// Greedy segment count of the others alone over [s, end].
  int index_from(int s) {
    if (s > horizon_) return 0;
    int count = 0;
    int cur = s;
    while (cur <= horizon_) {
      ++count;
      int e = max_disjoint_end(cur);
      if (e == kInf) break;
      cur = std::max(e + 1, cur + 1);
    }
    return count;
  }

 private:
  const Plan& others_;
  int horizon_;
  std::vector<std::vector<Cell>> pos_at_;
  std::unordered_map<Cell, std::vector<int>, CellHash> visits_;
  std::unordered_map<int, int> maxend_;
};

struct XgNode {
  Cell v;
  int t = 0;
  int i = 1;
  int seg_start = 0;
  Cell seg_root;
  std::uint64_t hist_hash = 0;
  bool degenerate = false;  // current single-step window is non-disjoint
  int parent = -1;
};

struct DedupKey {
  Cell v;
  int t;
  int seg_start;
  std::uint64_t hist_hash;
  friend bool operator==(const DedupKey&, const DedupKey&) = default;
};
struct DedupHash {
  std::size_t operator()(const DedupKey& k) const noexcept {
    std::uint64_t h = k.hist_hash;
    h = mix_hash(h, k.v);
    h = mix_hash(h, Cell{k.t, k.seg_start});
    return static_cast<std::size_t>(h);
  }
};

struct QEntry {
  double prio = 0.0;  // WXG combined cost; unused for XG
  int i = 0;
  int h = 0;
  int t = 0;
  bool sealed = false;
  std::int64_t seq = 0;
  int node = -1;       // arena index; -1 for fallback-sealed entries
  int sealed_path = -1;  // index into sealed path store
};

enum class Mode { Xg, Wxg };

struct QOrder {
  Mode mode;
  double w = 0.0;
  bool operator()(const QEntry& a, const QEntry& b) const {
    if (mode == Mode::Wxg && a.prio != b.prio) return a.prio > b.prio;
    if (a.i != b.i) return a.i > b.i;
    if (a.h != b.h) return a.h > b.h;
    if (a.t != b.t) return a.t > b.t;
    if (a.sealed != b.sealed) return !a.sealed;  // sealed first among equals
    return a.seq > b.seq;
  }
};

class XgSearch {
 public:
  XgSearch(const LowLevelQuery& q, const XgOptions& opts, Mode mode, double w)
      : q_(q),
        opts_(opts),
        mode_(mode),
        w_(w),
        world_(*q.world),
        ct_(q.constraints, q.task.agent_id),
        h_(world_, q.task.goal),
        others_(q.others),
        r_bar_(index_with_collision_breaks(q.others)),
        open_(QOrder{mode, w}) {}

  std::optional<Path> run() {
    if (!world_.passable(q_.task.start) || !world_.passable(q_.task.goal) ||
        !h_.reachable(q_.task.start)) {
      return std::nullopt;
    }
    push_start();
    while (!open_.empty()) {
      QEntry top = open_.top();
      open_.pop();
      if (top.sealed) return build_result(top);
      const XgNode node = arena_[static_cast<std::size_t>(top.node)];
      // lazy deletion: a better i for the same (v,t,H) was queued later
      auto best = best_i_.find(key_of(node));
      if (best != best_i_.end() && best->second < node.i) continue;
      if (opts_.debug_check_index) check_index(top.node);

      if (node.v == q_.task.goal) {
        seal_goal(top.node);
        if (opts_.fallback_after_budget && node.i > r_bar_) continue;
      } else if (opts_.fallback_after_budget && node.i > r_bar_) {
        fallback(top.node);
        continue;
      }
      expand(top.node);
    }
    return std::nullopt;
  }

 private:
  static DedupKey key_of(const XgNode& n) {
    return DedupKey{n.v, n.t, n.seg_start, n.hist_hash};
  }

  bool hist_contains(int node_idx, Cell c) const {
    const XgNode* n = &arena_[static_cast<std::size_t>(node_idx)];
    int remaining = n->t - n->seg_start + 1;
    while (remaining-- > 0) {
      if (n->v == c) return true;
      if (n->parent < 0) break;
      n = &arena_[static_cast<std::size_t>(n->parent)];
    }
    return false;
  }

  std::vector<Cell> reconstruct(int node_idx) const {
    std::vector<Cell> cells;
    for (int k = node_idx; k != -1; k = arena_[static_cast<std::size_t>(k)].parent) {
      cells.push_back(arena_[static_cast<std::size_t>(k)].v);
    }
    std::reverse(cells.begin(), cells.end());
    return cells;
  }

  void push_entry(int node_idx) {
    const XgNode& n = arena_[static_cast<std::size_t>(node_idx)];
    auto [it, inserted] = best_i_.emplace(key_of(n), n.i);
    if (!inserted) {
      if (it->second <= n.i) return;  // dominated
      it->second = n.i;
    }
    QEntry e;
    e.i = n.i;
    e.h = h_.at(n.v);
    e.t = n.t;
    e.seq = seq_++;
    e.node = node_idx;
    if (mode_ == Mode::Wxg) e.prio = w_ * n.i + (1.0 - w_) * (n.t + e.h);
    open_.push(e);
  }

  void push_start() {
    XgNode s;
    s.v = q_.task.start;
    s.t = 0;
    s.i = 1;
    s.seg_start = 0;
    s.seg_root = s.v;
    s.hist_hash = mix_hash(0, s.v);
    s.degenerate = window_degenerate(0, s.v);
    s.parent = -1;
    arena_.push_back(s);
    push_entry(static_cast<int>(arena_.size()) - 1);
  }

  bool others_occupy(int t, Cell c) const {
    for (Cell oc : others_.at(t)) {
      if (oc == c) return true;
    }
    return false;
  }

  bool window_degenerate(int t, Cell mine) {
    return others_.max_disjoint_end(t) < t || others_occupy(t, mine);
  }

  void expand(int node_idx) {
    const XgNode node = arena_[static_cast<std::size_t>(node_idx)];
    const int nt = node.t + 1;
    if (nt > q_.length_bound) return;
    for (Cell nb : world_.neighbors(node.v)) {
      if (!h_.reachable(nb)) continue;
      if (ct_.move_forbidden(node.v, nb, nt)) continue;

      bool extendable = !node.degenerate &&
                        nt <= others_.max_disjoint_end(node.seg_start) &&
                        !others_.visited_in(nb, node.seg_start, nt) &&
                        !others_at_time_touch_hist(node_idx, nt);
      if (extendable && opts_.eliminate_cycles && hist_contains(node_idx, nb) &&
          !(nb == node.seg_root && node.v == node.seg_root)) {
        continue;  // within-segment cycle; normal form forbids it
      }
      XgNode child;
      child.v = nb;
      child.t = nt;
      child.parent = node_idx;
      if (extendable) {
        child.i = node.i;
        child.seg_start = node.seg_start;
        child.seg_root = node.seg_root;
        child.hist_hash = mix_hash(node.hist_hash, nb);
        child.degenerate = false;
      } else {
        child.i = node.i + 1;
        child.seg_start = nt;
        child.seg_root = nb;
        child.hist_hash = mix_hash(0, nb);
        child.degenerate = window_degenerate(nt, nb);
      }
      arena_.push_back(child);
      push_entry(static_cast<int>(arena_.size()) - 1);
    }
  }

  bool others_at_time_touch_hist(int node_idx, int t) const {
    for (Cell oc : others_.at(t)) {
      if (hist_contains(node_idx, oc)) return true;
    }
    return false;
  }

  /// Index of the full combined plan if the path stops at this node: continue
  /// the greedy over the others alone, my window cells frozen.
  int final_index(int node_idx) {
    const XgNode& n = arena_[static_cast<std::size_t>(node_idx)];
    if (n.degenerate) {
      return n.i + others_.index_from(n.t + 1);
    }
    for (int e = n.t + 1; e <= others_.horizon(); ++e) {
      bool ok = e <= others_.max_disjoint_end(n.seg_start) &&
                !others_at_time_touch_hist(node_idx, e);
      if (!ok) return n.i + others_.index_from(e);
    }
    return n.i;
  }

  void seal_goal(int node_idx) {
    const XgNode& n = arena_[static_cast<std::size_t>(node_idx)];
    QEntry e;
    e.i = final_index(node_idx);
    e.h = 0;
    e.t = n.t;
    e.sealed = true;
    e.seq = seq_++;
    e.node = node_idx;
    if (mode_ == Mode::Wxg) e.prio = w_ * e.i + (1.0 - w_) * n.t;
    open_.push(e);
  }

  void fallback(int node_idx) {
    const XgNode& n = arena_[static_cast<std::size_t>(node_idx)];
    if (!fallback_done_.insert(detail::CellTimeKey{n.v, n.t}).second) return;
    auto suffix = detail::space_time_astar(world_, n.v, n.t, q_.task.goal, ct_,
                                           q_.length_bound, h_);
    if (!suffix) return;
    std::vector<Cell> full = reconstruct(n.parent >= 0 ? n.parent : node_idx);
    if (n.parent < 0) full.clear();
    full.insert(full.end(), suffix->begin(), suffix->end());
    Path p{q_.task.agent_id, full};
    QEntry e;
    e.i = combined_index(p, q_.others);
    e.h = 0;
    e.t = static_cast<int>(full.size()) - 1;
    e.sealed = true;
    e.seq = seq_++;
    e.sealed_path = static_cast<int>(sealed_paths_.size());
    if (mode_ == Mode::Wxg) e.prio = w_ * e.i + (1.0 - w_) * e.t;
    sealed_paths_.push_back(std::move(full));
    open_.push(e);
  }

  std::optional<Path> build_result(const QEntry& e) {
    if (e.sealed_path >= 0) {
      return Path{q_.task.agent_id,
                  sealed_paths_[static_cast<std::size_t>(e.sealed_path)]};
    }
    return Path{q_.task.agent_id, reconstruct(e.node)};
  }

  void check_index(int node_idx) const {
    Path prefix{q_.task.agent_id, reconstruct(node_idx)};
    int expected = combined_index_prefix(prefix, q_.others);
    if (expected != arena_[static_cast<std::size_t>(node_idx)].i) {
      throw std::logic_error("xg_astar: incremental index " +
                             std::to_string(arena_[static_cast<std::size_t>(node_idx)].i) +
                             " != recomputed " + std::to_string(expected));
    }
  }

  const LowLevelQuery& q_;
  XgOptions opts_;
  Mode mode_;
  double w_;
  const GridWorld& world_;
  detail::ConstraintTable ct_;
  DistanceField h_;
  OthersContext others_;
  int r_bar_;
  std::vector<XgNode> arena_;
  std::priority_queue<QEntry, std::vector<QEntry>, QOrder> open_;
  std::unordered_map<DedupKey, int, DedupHash> best_i_;
  std::unordered_set<detail::CellTimeKey, detail::CellTimeHash> fallback_done_;
  std::vector<std::vector<Cell>> sealed_paths_;
  std::int64_t seq_ = 0;
};

}  // namespace

std::optional<Path> xg_astar(const LowLevelQuery& q, const XgOptions& opts) {
  return XgSearch(q, opts, Mode::Xg, 0.0).run();
}

std::optional<Path> wxg_astar(const LowLevelQuery& q, double w,
                              const XgOptions& opts) {
  if (!(w > 0.0 && w < 1.0)) {
    throw std::invalid_argument("wxg_astar: weight must lie in (0,1)");
  }
  return XgSearch(q, opts, Mode::Wxg, w).run();
}

int combined_index_prefix(const Path& prefix, const Plan& others) {
  const int t_end = prefix.last_time();
  Plan combined;
  for (const auto& p : others.paths) {
    Path cut = p;
    if (cut.last_time() > t_end) {
      cut.vertices.resize(static_cast<std::size_t>(t_end) + 1);
    }
    combined.paths.push_back(std::move(cut));
  }
  combined.paths.push_back(prefix);
  return index_with_collision_breaks(combined);
}

int combined_index(const Path& path, const Plan& others) {
  Plan combined = others;
  combined.paths.push_back(path);
  return index_with_collision_breaks(combined);
}

}  // namespace xmapf
