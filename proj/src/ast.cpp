#include <algorithm>
#include <cctype>

#include "scvar/syntax.hpp"

namespace scvar {

std::string to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::HierarchyDisabled: return "hierarchy-disabled";
    case ErrorCode::GuardLanguageViolation: return "guard-language-violation";
    case ErrorCode::UnknownFlag: return "unknown-flag";
    case ErrorCode::DomainTooLarge: return "domain-too-large";
    case ErrorCode::ScopeTooLarge: return "scope-too-large";
    case ErrorCode::ConflictingStereotype: return "conflicting-stereotype";
    case ErrorCode::IncomparableUniverses: return "incomparable-universes";
    case ErrorCode::UnknownConstraint: return "unknown-constraint";
    case ErrorCode::UnknownLeaf: return "unknown-leaf";
    case ErrorCode::UnknownState: return "unknown-state";
    case ErrorCode::IncompatibleVariants: return "incompatible-variants";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace scvar

namespace scvar::syntax {

bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name.substr(1)) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

int Signature::event_index(std::string_view name) const {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int Signature::flag_index(std::string_view name) const {
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::string> Signature::problems() const {
  std::vector<std::string> out;
  if (events.empty()) out.push_back("no events declared");
  auto check = [&out](const std::vector<std::string>& names,
                      const char* what) {
    std::set<std::string> seen;
    for (const std::string& n : names) {
      if (!is_valid_name(n)) out.push_back(std::string("invalid ") + what +
                                           " name '" + n + "'");
      if (!seen.insert(n).second) {
        out.push_back(std::string("duplicate ") + what + " name '" + n + "'");
      }
    }
  };
  check(events, "event");
  check(flags, "flag");
  return out;
}

namespace {

std::vector<Transition> sorted_unique(std::vector<Transition> ts) {
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

}  // namespace

bool Ast::operator==(const Ast& other) const {
  return chart_name == other.chart_name && stereotypes == other.stereotypes &&
         signature == other.signature && states == other.states &&
         root_initial == other.root_initial &&
         sorted_unique(transitions) == sorted_unique(other.transitions);
}

void FlatAst::normalize() {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  transitions = sorted_unique(std::move(transitions));
  std::sort(stereotypes.begin(), stereotypes.end());
  stereotypes.erase(std::unique(stereotypes.begin(), stereotypes.end()),
                    stereotypes.end());
}

bool is_reduced(const Ast& ast) {
  for (const StateNode& s : ast.states) {
    if (s.is_composite()) return false;
  }
  return true;
}

Ast to_ast(const FlatAst& flat) {
  Ast ast;
  ast.chart_name = flat.chart_name;
  ast.stereotypes = flat.stereotypes;
  ast.signature = flat.signature;
  for (const std::string& s : flat.states) {
    ast.states.push_back(StateNode{s, std::nullopt, {}});
  }
  ast.root_initial = flat.initial;
  ast.transitions = flat.transitions;
  return ast;
}

FlatAst to_flat(const Ast& ast) {
  FlatAst flat;
  flat.chart_name = ast.chart_name;
  flat.stereotypes = ast.stereotypes;
  flat.signature = ast.signature;
  for (const StateNode& s : ast.states) flat.states.push_back(s.name);
  flat.initial = ast.root_initial.value_or("");
  flat.transitions = ast.transitions;
  flat.normalize();
  return flat;
}

}  // namespace scvar::syntax
