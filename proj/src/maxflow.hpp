#pragma once

#include <cstdint>
#include <deque>
#include <vector>

namespace tfl::detail {

// Boykov-Kolmogorov max-flow for grid cuts. Capacities are given as reals and
// quantized to integers relative to `unit` (about 1e-9 * unit resolution), so
// augmentation is exact.
class MaxFlow {
 public:
  MaxFlow(int nodes, double unit);

  // Directed capacities u->v and v->u.
  void add_edge(int u, int v, double cap, double rev_cap);
  // Cost paid when u ends on the sink side (source_cap) or on the source side
  // (sink_cap).
  void add_terminal(int u, double source_cap, double sink_cap);

  void solve();
  // After solve(): true when u is on the source side of the minimum cut.
  bool source_side(int u) const;

 private:
  using Cap = std::int64_t;
  static constexpr int kNone = -1, kTerminal = -2, kOrphan = -3;

  struct Node {
    int first = -1;       // first outgoing arc
    int parent = kNone;   // arc to the parent, or a marker
    int next_active = -1;
    int ts = 0, dist = 0;
    bool sink = false, queued = false;
    Cap tr = 0;           // > 0: residual from the source, < 0: to the sink
  };
  struct Arc {
    int head, next;
    Cap r;
  };

  Cap quantize(double c) const;
  void set_active(int i);
  int next_active();
  void augment(int middle);
  void adopt_source(int i);
  void adopt_sink(int i);
  int sister(int a) const { return a ^ 1; }
  int tail(int a) const { return arcs_[a ^ 1].head; }

  double scale_;
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  int queue_first_ = -1, queue_last_ = -1;
  std::deque<int> orphans_;
  int time_ = 0;
};

}  // namespace tfl::detail
