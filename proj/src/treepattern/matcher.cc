#include "disembed/treepattern.h"

namespace disembed {

namespace {

constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

// Preorder view of a tree with the structural facts every relation needs.
class TreeIndex {
 public:
  explicit TreeIndex(const ParseNode& root) { add(root, kNoParent); }

  std::size_t size() const { return nodes_.size(); }
  const ParseNode& node(std::size_t i) const { return *nodes_[i]; }

  bool holds(Relation rel, std::size_t head, std::size_t target) const {
    switch (rel) {
      case Relation::kParentOf:
        return parent_[target] == head;
      case Relation::kChildOf:
        return parent_[head] == target;
      case Relation::kAncestorOf:
        return target > head && target < subtree_end_[head];
      case Relation::kDescendantOf:
        return head > target && head < subtree_end_[target];
      case Relation::kImmediatelyPrecedes:
        return nodes_[head]->span.end == nodes_[target]->span.begin;
      case Relation::kPrecedes:
        return nodes_[head]->span.end <= nodes_[target]->span.begin;
      case Relation::kSisterOf:
        return head != target && parent_[head] != kNoParent && parent_[head] == parent_[target];
      case Relation::kFirstChild:
        return !children_[head].empty() && children_[head].front() == target;
      case Relation::kLastChild:
        return !children_[head].empty() && children_[head].back() == target;
    }
    return false;
  }

 private:
  std::size_t add(const ParseNode& node, std::size_t parent) {
    std::size_t id = nodes_.size();
    nodes_.push_back(&node);
    parent_.push_back(parent);
    children_.emplace_back();
    subtree_end_.push_back(0);
    for (const ParseNode& child : node.children) {
      std::size_t c = add(child, id);
      children_[id].push_back(c);
    }
    subtree_end_[id] = nodes_.size();
    return id;
  }

  std::vector<const ParseNode*> nodes_;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> subtree_end_;
};

// Pattern nodes form a tree, so sibling edges constrain disjoint sets of
// pattern nodes: taking the first workable candidate per edge yields the
// lexicographically first full assignment.
bool satisfy(const TreeIndex& index, const PatternNode& pnode, std::size_t bound,
             std::map<std::string, const ParseNode*>& captures) {
  for (const PatternEdge& edge : pnode.relations) {
    bool found = false;
    for (std::size_t cand = 0; cand < index.size() && !found; ++cand) {
      if (!edge.target.accepts(index.node(cand).label)) continue;
      if (!index.holds(edge.relation, bound, cand)) continue;
      std::map<std::string, const ParseNode*> trial = captures;
      if (!edge.target.capture.empty()) trial[edge.target.capture] = &index.node(cand);
      if (satisfy(index, edge.target, cand, trial)) {
        captures = std::move(trial);
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::vector<MatchResult> match_pattern(const TreePattern& pattern, const ParseNode& tree) {
  TreeIndex index(tree);
  std::vector<MatchResult> out;
  for (std::size_t anchor = 0; anchor < index.size(); ++anchor) {
    if (!pattern.root.accepts(index.node(anchor).label)) continue;
    MatchResult result;
    result.anchor = &index.node(anchor);
    if (!pattern.root.capture.empty()) result.captures[pattern.root.capture] = result.anchor;
    if (satisfy(index, pattern.root, anchor, result.captures)) out.push_back(std::move(result));
  }
  return out;
}

}  // namespace disembed
