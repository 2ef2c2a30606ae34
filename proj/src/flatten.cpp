#include <algorithm>
#include <map>

#include "src/syntax_internal.hpp"

namespace scvar::syntax {
namespace {

struct TreeIndex {
  // name -> node, plus name -> parent name ("" for top level)
  std::map<std::string, const StateNode*> nodes;
  std::map<std::string, std::string> parent;

  void add(const StateNode& node, const std::string& parent_name) {
    nodes.emplace(node.name, &node);
    parent.emplace(node.name, parent_name);
    for (const StateNode& child : node.children) add(child, node.name);
  }
};

// Follows initial declarations down to a leaf.
std::string resolve_to_leaf(const TreeIndex& index, std::string name) {
  while (true) {
    auto it = index.nodes.find(name);
    if (it == index.nodes.end() || !it->second->is_composite()) return name;
    name = it->second->initial.value_or("");
  }
}

}  // namespace

namespace detail {

FlatAst flatten_unchecked(const Ast& ast) {
  TreeIndex index;
  for (const StateNode& s : ast.states) index.add(s, "");

  FlatAst flat;
  flat.chart_name = ast.chart_name;
  flat.stereotypes = ast.stereotypes;
  flat.signature = ast.signature;

  std::vector<std::string> leaves;
  for (const auto& [name, node] : index.nodes) {
    if (!node->is_composite()) leaves.push_back(name);
  }
  flat.states = leaves;  // index.nodes is name-ordered already

  const std::uint32_t flag_count =
      static_cast<std::uint32_t>(ast.signature.flags.size());

  for (const std::string& leaf : leaves) {
    // Ancestor chain from the leaf itself outwards.
    std::vector<std::string> chain;
    for (std::string cur = leaf; !cur.empty(); cur = index.parent.at(cur)) {
      chain.push_back(cur);
    }
    for (const std::string& event : ast.signature.events) {
      // Walk levels from the innermost out. A level's transitions are only
      // effective on the valuations no inner level already covers.
      Guard mask = Guard::none(flag_count);
      for (std::size_t level = 0; level < chain.size(); ++level) {
        Guard level_union = Guard::none(flag_count);
        for (const Transition& t : ast.transitions) {
          if (t.source != chain[level] || t.event != event) continue;
          Guard effective = t.guard.minus(mask);
          level_union = level_union.united(t.guard);
          if (effective.is_empty() && !t.guard.is_empty()) continue;
          flat.transitions.push_back(
              {leaf, event, effective, resolve_to_leaf(index, t.target)});
        }
        mask = mask.united(level_union);
      }
    }
    // Transitions on undeclared events still belong to the chart; keep them
    // (wellformedness flags them separately). They only exist at the leaf's
    // own level because the event loop above covers declared events only.
    for (const Transition& t : ast.transitions) {
      if (t.source == leaf && ast.signature.event_index(t.event) < 0) {
        flat.transitions.push_back(
            {leaf, t.event, t.guard, resolve_to_leaf(index, t.target)});
      }
    }
  }

  flat.initial = resolve_to_leaf(index, ast.root_initial.value_or(""));
  flat.normalize();
  return flat;
}

}  // namespace detail

Result<FlatAst> flatten(const Ast& ast, const LanguageVariant& variant) {
  if (!variant.hierarchy_enabled && !is_reduced(ast)) {
    return Error{ErrorCode::HierarchyDisabled,
                 "chart '" + ast.chart_name +
                     "' uses hierarchy but the variant does not include the "
                     "hierarchy abbreviation"};
  }
  return detail::flatten_unchecked(ast);
}

}  // namespace scvar::syntax
