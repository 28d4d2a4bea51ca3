// Static directed multigraph with CSR out/in adjacency by arc index.

#ifndef AMCFLOW_DIGRAPH_H_
#define AMCFLOW_DIGRAPH_H_

#include <span>
#include <vector>

namespace amcflow {

class Digraph {
 public:
  Digraph() = default;
  Digraph(int num_nodes, std::vector<int> tails, std::vector<int> heads);

  int num_nodes() const { return num_nodes_; }
  int num_arcs() const { return static_cast<int>(tail_.size()); }
  int Tail(int a) const { return tail_[a]; }
  int Head(int a) const { return head_[a]; }
  int Opposite(int a, int v) const { return tail_[a] == v ? head_[a] : tail_[a]; }

  // Arc ids in increasing order.
  std::span<const int> OutArcs(int v) const {
    return {out_arcs_.data() + out_start_[v], out_arcs_.data() + out_start_[v + 1]};
  }
  std::span<const int> InArcs(int v) const {
    return {in_arcs_.data() + in_start_[v], in_arcs_.data() + in_start_[v + 1]};
  }

  // Nodes reachable from `from` (forward) or reaching `from` (backward).
  std::vector<bool> Reach(int from, bool forward) const;
  // Topological order, or empty if the graph has a cycle (and n > 0).
  std::vector<int> TopologicalOrder() const;

 private:
  int num_nodes_ = 0;
  std::vector<int> tail_, head_;
  std::vector<int> out_start_, out_arcs_, in_start_, in_arcs_;
};

}  // namespace amcflow

#endif  // AMCFLOW_DIGRAPH_H_
