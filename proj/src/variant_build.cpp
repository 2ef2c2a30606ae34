#include <cctype>

#include "scvar/variability.hpp"

namespace scvar::variability {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Applies one interpretable leaf to the variant under construction.
// Returns false if the leaf has no registered interpretation.
bool apply_leaf(const std::string& name, LanguageVariant& v) {
  if (name == kOptionFatArrow || name == kOptionInitialStar) {
    v.presentation_options.insert(name);
    return true;
  }
  if (name == "Hierarchy") {
    v.hierarchy_enabled = true;
    return true;
  }
  if (name == "Completion") {
    v.allowed_stereotypes["completion"] = StereotypeRule{{"chaos", "ignore"}};
    return true;
  }
  if (name == "GuardLiteral") {
    v.guard_language = GuardLanguage::Literal;
    return true;
  }
  if (name == "GuardProp") {
    v.guard_language = GuardLanguage::Propositional;
    return true;
  }
  if (name == "Chaos") {
    v.mapping = Mapping::Chaos;
    return true;
  }
  if (name == "Ignore") {
    v.mapping = Mapping::Ignore;
    return true;
  }
  if (name == "StatesEqualSyntactic" || name == "SelfLoopFreeInitial" ||
      name == "AllStatesReachable") {
    v.domain_variant = name;
    return true;
  }
  if (ConstraintSpec::from_id(name).ok()) {
    v.constraints.insert(name);
    return true;
  }
  return false;
}

}  // namespace

Result<LanguageVariant> build_variant(const FeatureModel& fm,
                                      const Configuration& cfg) {
  std::vector<ConfigViolation> violations = validate_configuration(fm, cfg);
  if (!violations.empty()) {
    return Error{ErrorCode::InvalidArgument,
                 "configuration is not valid against the feature model: " +
                     violations.front().message};
  }
  LanguageVariant v;
  for (const std::string& name : cfg.selected) {
    const FeatureNode* node = fm.find(name);
    if (node == nullptr) continue;  // unreachable after validation
    if (!node->is_leaf()) continue;  // structural features carry no meaning
    if (!apply_leaf(name, v)) {
      return Error{ErrorCode::UnknownLeaf,
                   "selected leaf feature '" + name +
                       "' has no registered interpretation"};
    }
  }
  return v;
}

bool check_stereotypes(const syntax::FlatAst& m, const LanguageVariant& v) {
  for (const syntax::Stereotype& s : m.stereotypes) {
    auto it = v.allowed_stereotypes.find(s.key);
    if (it == v.allowed_stereotypes.end()) return false;
    if (it->second.pins_values()) {
      if (!s.value || !it->second.values.count(*s.value)) return false;
    }
  }
  return true;
}

Result<ConstraintSpec> ConstraintSpec::from_id(std::string_view id) {
  ConstraintSpec spec;
  spec.id = std::string(id);
  if (id == "NoGuards") {
    spec.kind = Kind::NoGuards;
    return spec;
  }
  if (id == "Deterministic") {
    spec.kind = Kind::Deterministic;
    return spec;
  }
  constexpr std::string_view prefix = "MaxStates";
  if (id.size() > prefix.size() && id.substr(0, prefix.size()) == prefix &&
      all_digits(id.substr(prefix.size()))) {
    spec.kind = Kind::MaxStatesK;
    spec.k = std::stoi(std::string(id.substr(prefix.size())));
    if (spec.k >= 1) return spec;
  }
  return Error{ErrorCode::UnknownConstraint,
               "unknown constraint id '" + std::string(id) + "'"};
}

bool check_constraint(const syntax::FlatAst& m, const ConstraintSpec& c) {
  switch (c.kind) {
    case ConstraintSpec::Kind::NoGuards:
      for (const syntax::Transition& t : m.transitions) {
        if (!t.guard.is_full() && !t.guard.is_empty()) return false;
      }
      return true;
    case ConstraintSpec::Kind::MaxStatesK:
      return m.states.size() <= static_cast<std::size_t>(c.k);
    case ConstraintSpec::Kind::Deterministic:
      // Determinism is a base wellformedness rule; every FlatAst that
      // reaches a constraint check already satisfies it.
      return true;
  }
  return true;
}

bool passes_filters(const syntax::FlatAst& m, const LanguageVariant& v) {
  if (!check_stereotypes(m, v)) return false;
  for (const std::string& id : v.constraints) {
    Result<ConstraintSpec> spec = ConstraintSpec::from_id(id);
    if (!spec.ok()) return false;
    if (!check_constraint(m, spec.value())) return false;
  }
  if (v.guard_language == GuardLanguage::Literal) {
    for (const syntax::Transition& t : m.transitions) {
      if (!t.guard.is_full() && !t.guard.is_empty()) return false;
    }
  }
  return true;
}

}  // namespace scvar::variability
