#include "amcflow/digraph.h"

#include <stdexcept>

namespace amcflow {

Digraph::Digraph(int num_nodes, std::vector<int> tails, std::vector<int> heads)
    : num_nodes_(num_nodes), tail_(std::move(tails)), head_(std::move(heads)) {
  if (tail_.size() != head_.size()) throw std::invalid_argument("Digraph: size mismatch");
  out_start_.assign(num_nodes_ + 1, 0);
  in_start_.assign(num_nodes_ + 1, 0);
  for (int a = 0; a < num_arcs(); ++a) {
    if (tail_[a] < 0 || tail_[a] >= num_nodes_ || head_[a] < 0 || head_[a] >= num_nodes_) {
      throw std::out_of_range("Digraph: arc endpoint out of range");
    }
    ++out_start_[tail_[a] + 1];
    ++in_start_[head_[a] + 1];
  }
  for (int v = 0; v < num_nodes_; ++v) {
    out_start_[v + 1] += out_start_[v];
    in_start_[v + 1] += in_start_[v];
  }
  out_arcs_.resize(num_arcs());
  in_arcs_.resize(num_arcs());
  std::vector<int> out_pos(out_start_.begin(), out_start_.end() - 1);
  std::vector<int> in_pos(in_start_.begin(), in_start_.end() - 1);
  for (int a = 0; a < num_arcs(); ++a) {
    out_arcs_[out_pos[tail_[a]]++] = a;
    in_arcs_[in_pos[head_[a]]++] = a;
  }
}

std::vector<bool> Digraph::Reach(int from, bool forward) const {
  std::vector<bool> seen(num_nodes_, false);
  std::vector<int> stack = {from};
  seen[from] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int a : forward ? OutArcs(v) : InArcs(v)) {
      int w = forward ? head_[a] : tail_[a];
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<int> Digraph::TopologicalOrder() const {
  std::vector<int> indegree(num_nodes_, 0);
  for (int a = 0; a < num_arcs(); ++a) ++indegree[head_[a]];
  std::vector<int> order;
  order.reserve(num_nodes_);
  for (int v = 0; v < num_nodes_; ++v) {
    if (indegree[v] == 0) order.push_back(v);
  }
  for (size_t i = 0; i < order.size(); ++i) {
    for (int a : OutArcs(order[i])) {
      if (--indegree[head_[a]] == 0) order.push_back(head_[a]);
    }
  }
  if (static_cast<int>(order.size()) != num_nodes_) order.clear();
  return order;
}

}  // namespace amcflow
