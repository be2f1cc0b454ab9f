#include "maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tfl::detail {

MaxFlow::MaxFlow(int nodes, double unit) : scale_(1e9 / unit), nodes_(nodes) {}

MaxFlow::Cap MaxFlow::quantize(double c) const { return c > 0.0 ? static_cast<Cap>(std::llround(c * scale_)) : 0; }

void MaxFlow::add_edge(int u, int v, double cap, double rev_cap) {
  const Cap c = quantize(cap), rc = quantize(rev_cap);
  if (c == 0 && rc == 0) return;
  const int a = static_cast<int>(arcs_.size());
  arcs_.push_back({v, nodes_[u].first, c});
  nodes_[u].first = a;
  arcs_.push_back({u, nodes_[v].first, rc});
  nodes_[v].first = a + 1;
}

void MaxFlow::add_terminal(int u, double source_cap, double sink_cap) {
  nodes_[u].tr += static_cast<Cap>(std::llround((source_cap - sink_cap) * scale_));
}

void MaxFlow::set_active(int i) {
  Node& n = nodes_[i];
  if (n.queued) return;
  n.queued = true;
  n.next_active = -1;
  if (queue_last_ >= 0) {
    nodes_[queue_last_].next_active = i;
  } else {
    queue_first_ = i;
  }
  queue_last_ = i;
}

int MaxFlow::next_active() {
  while (queue_first_ >= 0) {
    const int i = queue_first_;
    queue_first_ = nodes_[i].next_active;
    if (queue_first_ < 0) queue_last_ = -1;
    nodes_[i].queued = false;
    if (nodes_[i].parent != kNone) return i;
  }
  return -1;
}

void MaxFlow::augment(int middle) {
  // Bottleneck along source path, middle arc and sink path.
  Cap b = arcs_[middle].r;
  for (int i = tail(middle);;) {
    const int a = nodes_[i].parent;
    if (a == kTerminal) {
      b = std::min(b, nodes_[i].tr);
      break;
    }
    b = std::min(b, arcs_[sister(a)].r);
    i = arcs_[a].head;
  }
  for (int i = arcs_[middle].head;;) {
    const int a = nodes_[i].parent;
    if (a == kTerminal) {
      b = std::min(b, -nodes_[i].tr);
      break;
    }
    b = std::min(b, arcs_[a].r);
    i = arcs_[a].head;
  }

  arcs_[middle].r -= b;
  arcs_[sister(middle)].r += b;
  for (int i = tail(middle);;) {
    const int a = nodes_[i].parent;
    if (a == kTerminal) {
      nodes_[i].tr -= b;
      if (nodes_[i].tr == 0) {
        nodes_[i].parent = kOrphan;
        orphans_.push_front(i);
      }
      break;
    }
    arcs_[a].r += b;
    arcs_[sister(a)].r -= b;
    if (arcs_[sister(a)].r == 0) {
      nodes_[i].parent = kOrphan;
      orphans_.push_front(i);
    }
    i = arcs_[a].head;
  }
  for (int i = arcs_[middle].head;;) {
    const int a = nodes_[i].parent;
    if (a == kTerminal) {
      nodes_[i].tr += b;
      if (nodes_[i].tr == 0) {
        nodes_[i].parent = kOrphan;
        orphans_.push_front(i);
      }
      break;
    }
    arcs_[sister(a)].r += b;
    arcs_[a].r -= b;
    if (arcs_[a].r == 0) {
      nodes_[i].parent = kOrphan;
      orphans_.push_front(i);
    }
    i = arcs_[a].head;
  }
}

// Distance from j to its terminal through valid parents, or max() when the
// path runs into an orphan. Marks the walked path with the current time.
namespace {
constexpr int kInfinite = std::numeric_limits<int>::max();
}

void MaxFlow::adopt_source(int i) {
  int best = kNone;
  int best_d = kInfinite;
  for (int a0 = nodes_[i].first; a0 >= 0; a0 = arcs_[a0].next) {
    if (arcs_[sister(a0)].r == 0) continue;
    int j = arcs_[a0].head;
    if (nodes_[j].sink || nodes_[j].parent == kNone) continue;
    int d = 0;
    while (true) {
      if (nodes_[j].ts == time_) {
        d += nodes_[j].dist;
        break;
      }
      const int a = nodes_[j].parent;
      ++d;
      if (a == kTerminal) {
        nodes_[j].ts = time_;
        nodes_[j].dist = 1;
        break;
      }
      if (a == kOrphan) {
        d = kInfinite;
        break;
      }
      j = arcs_[a].head;
    }
    if (d == kInfinite) continue;
    if (d < best_d) {
      best = a0;
      best_d = d;
    }
    for (j = arcs_[a0].head; nodes_[j].ts != time_; j = arcs_[nodes_[j].parent].head) {
      nodes_[j].ts = time_;
      nodes_[j].dist = d--;
    }
  }
  nodes_[i].parent = best;
  if (best != kNone) {
    nodes_[i].ts = time_;
    nodes_[i].dist = best_d + 1;
    return;
  }
  for (int a0 = nodes_[i].first; a0 >= 0; a0 = arcs_[a0].next) {
    const int j = arcs_[a0].head;
    const int a = nodes_[j].parent;
    if (nodes_[j].sink || a == kNone) continue;
    if (arcs_[sister(a0)].r > 0) set_active(j);
    if (a >= 0 && arcs_[a].head == i) {
      nodes_[j].parent = kOrphan;
      orphans_.push_back(j);
    }
  }
}

void MaxFlow::adopt_sink(int i) {
  int best = kNone;
  int best_d = kInfinite;
  for (int a0 = nodes_[i].first; a0 >= 0; a0 = arcs_[a0].next) {
    if (arcs_[a0].r == 0) continue;
    int j = arcs_[a0].head;
    if (!nodes_[j].sink || nodes_[j].parent == kNone) continue;
    int d = 0;
    while (true) {
      if (nodes_[j].ts == time_) {
        d += nodes_[j].dist;
        break;
      }
      const int a = nodes_[j].parent;
      ++d;
      if (a == kTerminal) {
        nodes_[j].ts = time_;
        nodes_[j].dist = 1;
        break;
      }
      if (a == kOrphan) {
        d = kInfinite;
        break;
      }
      j = arcs_[a].head;
    }
    if (d == kInfinite) continue;
    if (d < best_d) {
      best = a0;
      best_d = d;
    }
    for (j = arcs_[a0].head; nodes_[j].ts != time_; j = arcs_[nodes_[j].parent].head) {
      nodes_[j].ts = time_;
      nodes_[j].dist = d--;
    }
  }
  nodes_[i].parent = best;
  if (best != kNone) {
    nodes_[i].ts = time_;
    nodes_[i].dist = best_d + 1;
    return;
  }
  for (int a0 = nodes_[i].first; a0 >= 0; a0 = arcs_[a0].next) {
    const int j = arcs_[a0].head;
    const int a = nodes_[j].parent;
    if (!nodes_[j].sink || a == kNone) continue;
    if (arcs_[a0].r > 0) set_active(j);
    if (a >= 0 && arcs_[a].head == i) {
      nodes_[j].parent = kOrphan;
      orphans_.push_back(j);
    }
  }
}

void MaxFlow::solve() {
  const int n = static_cast<int>(nodes_.size());
  for (int i = 0; i < n; ++i) {
    Node& v = nodes_[i];
    if (v.tr > 0) {
      v.sink = false;
      v.parent = kTerminal;
      v.dist = 1;
      set_active(i);
    } else if (v.tr < 0) {
      v.sink = true;
      v.parent = kTerminal;
      v.dist = 1;
      set_active(i);
    } else {
      v.parent = kNone;
    }
  }

  int current = -1;
  while (true) {
    // Keep growing from the node of the last augmentation while it is in a tree.
    int i = current;
    if (i >= 0) {
      nodes_[i].queued = false;
      if (nodes_[i].parent == kNone) i = -1;
    }
    if (i < 0 && (i = next_active()) < 0) break;
    int middle = -1;
    if (!nodes_[i].sink) {
      for (int a = nodes_[i].first; a >= 0; a = arcs_[a].next) {
        if (arcs_[a].r == 0) continue;
        const int j = arcs_[a].head;
        Node& nj = nodes_[j];
        if (nj.parent == kNone) {
          nj.sink = false;
          nj.parent = sister(a);
          nj.ts = nodes_[i].ts;
          nj.dist = nodes_[i].dist + 1;
          set_active(j);
        } else if (nj.sink) {
          middle = a;
          break;
        } else if (nj.ts <= nodes_[i].ts && nj.dist > nodes_[i].dist) {
          nj.parent = sister(a);
          nj.ts = nodes_[i].ts;
          nj.dist = nodes_[i].dist + 1;
        }
      }
    } else {
      for (int a = nodes_[i].first; a >= 0; a = arcs_[a].next) {
        if (arcs_[sister(a)].r == 0) continue;
        const int j = arcs_[a].head;
        Node& nj = nodes_[j];
        if (nj.parent == kNone) {
          nj.sink = true;
          nj.parent = sister(a);
          nj.ts = nodes_[i].ts;
          nj.dist = nodes_[i].dist + 1;
          set_active(j);
        } else if (!nj.sink) {
          middle = sister(a);
          break;
        } else if (nj.ts <= nodes_[i].ts && nj.dist > nodes_[i].dist) {
          nj.parent = sister(a);
          nj.ts = nodes_[i].ts;
          nj.dist = nodes_[i].dist + 1;
        }
      }
    }

    ++time_;
    if (middle < 0) {
      current = -1;
      continue;
    }
    // The scan of i stopped early; resume from it next round.
    nodes_[i].queued = true;
    current = i;
    augment(middle);
    while (!orphans_.empty()) {
      const int o = orphans_.front();
      orphans_.pop_front();
      if (nodes_[o].sink) {
        adopt_sink(o);
      } else {
        adopt_source(o);
      }
    }
  }
}

bool MaxFlow::source_side(int u) const {
  const Node& n = nodes_[u];
  return n.parent == kNone || !n.sink;
}

}  // namespace tfl::detail
