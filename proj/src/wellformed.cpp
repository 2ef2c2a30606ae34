#include <map>
#include <set>

#include "src/syntax_internal.hpp"

namespace scvar::syntax {
namespace {

void collect_states(const StateNode& node,
                    std::vector<const StateNode*>& all) {
  all.push_back(&node);
  for (const StateNode& child : node.children) collect_states(child, all);
}

}  // namespace

std::vector<Diagnostic> check_wellformed(const Ast& ast) {
  std::vector<Diagnostic> diags;
  auto report = [&diags](std::string code, std::string message) {
    diags.push_back({std::move(code), std::move(message)});
  };

  for (const std::string& p : ast.signature.problems()) {
    report("signature", p);
  }
  if (!is_valid_name(ast.chart_name)) {
    report("bad-name", "invalid chart name '" + ast.chart_name + "'");
  }

  std::vector<const StateNode*> all;
  for (const StateNode& s : ast.states) collect_states(s, all);

  std::set<std::string> state_names;
  bool structural_ok = true;
  for (const StateNode* node : all) {
    if (!is_valid_name(node->name)) {
      report("bad-name", "invalid state name '" + node->name + "'");
      structural_ok = false;
    }
    if (!state_names.insert(node->name).second) {
      report("duplicate-state",
             "state name '" + node->name + "' is declared more than once");
      structural_ok = false;
    }
  }

  auto is_child = [](const std::vector<StateNode>& children,
                     const std::string& name) {
    for (const StateNode& c : children) {
      if (c.name == name) return true;
    }
    return false;
  };

  if (!ast.root_initial.has_value()) {
    report("missing-initial", "chart declares no initial state");
    structural_ok = false;
  } else if (!is_child(ast.states, *ast.root_initial)) {
    report("unknown-initial", "initial state '" + *ast.root_initial +
                                  "' is not a top-level state");
    structural_ok = false;
  }
  for (const StateNode* node : all) {
    if (node->is_composite()) {
      if (!node->initial.has_value()) {
        report("missing-initial",
               "composite state '" + node->name + "' declares no initial child");
        structural_ok = false;
      } else if (!is_child(node->children, *node->initial)) {
        report("unknown-initial", "initial '" + *node->initial +
                                      "' of composite '" + node->name +
                                      "' is not one of its children");
        structural_ok = false;
      }
    } else if (node->initial.has_value()) {
      report("unknown-initial", "leaf state '" + node->name +
                                    "' declares an initial child");
      structural_ok = false;
    }
  }

  const std::uint32_t flag_count =
      static_cast<std::uint32_t>(ast.signature.flags.size());
  for (const Transition& t : ast.transitions) {
    if (!state_names.count(t.source)) {
      report("unknown-state",
             "transition source '" + t.source + "' is not a declared state");
      structural_ok = false;
    }
    if (!state_names.count(t.target)) {
      report("unknown-state",
             "transition target '" + t.target + "' is not a declared state");
      structural_ok = false;
    }
    if (ast.signature.event_index(t.event) < 0) {
      report("unknown-event",
             "transition event '" + t.event + "' is not declared");
      structural_ok = false;
    }
    if (t.guard.flag_count != flag_count) {
      report("guard-arity", "guard on (" + t.source + ", " + t.event +
                                ") ranges over " +
                                std::to_string(t.guard.flag_count) +
                                " flags, signature declares " +
                                std::to_string(flag_count));
      structural_ok = false;
    }
  }

  // Determinism is judged on the flattened form; only meaningful once the
  // structure is sound.
  if (structural_ok) {
    FlatAst flat = detail::flatten_unchecked(ast);
    std::set<std::pair<std::string, std::string>> reported;
    for (std::size_t i = 0; i < flat.transitions.size(); ++i) {
      for (std::size_t j = i + 1; j < flat.transitions.size(); ++j) {
        const Transition& a = flat.transitions[i];
        const Transition& b = flat.transitions[j];
        if (a.source != b.source || a.event != b.event) continue;
        if (a.target == b.target) continue;
        if (!a.guard.overlaps(b.guard)) continue;
        if (reported.insert({a.source, a.event}).second) {
          report("nondeterministic",
                 "determinism violation at (" + a.source + ", " + a.event +
                     "): overlapping guards lead to both '" + a.target +
                     "' and '" + b.target + "'");
        }
      }
    }
  }

  return diags;
}

}  // namespace scvar::syntax
