#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

namespace scvar::variability {

/// Sub-language accepted inside transition guard brackets.
enum class GuardLanguage { Literal, Propositional };

/// Completion policy for (state, event, valuation) triples the model
/// leaves unspecified.
enum class Mapping { Chaos, Ignore };

inline const char* to_string(GuardLanguage g) {
  return g == GuardLanguage::Literal ? "Literal" : "Propositional";
}
inline const char* to_string(Mapping m) {
  return m == Mapping::Chaos ? "chaos" : "ignore";
}

/// Whitelist entry for one stereotype key. An empty `values` set means the
/// key is allowed with any value (or none); a non-empty set pins the value.
struct StereotypeRule {
  std::set<std::string> values;
  bool pins_values() const { return !values.empty(); }
  auto operator<=>(const StereotypeRule&) const = default;
};

/// A fully resolved bundle of syntax and semantics choices. Instances are
/// normally assembled from a feature-model configuration via build_variant,
/// but can be constructed directly in tests.
struct LanguageVariant {
  std::set<std::string> presentation_options;  // e.g. "FatArrow", "InitialStar"
  bool hierarchy_enabled = false;
  std::map<std::string, StereotypeRule> allowed_stereotypes;
  GuardLanguage guard_language = GuardLanguage::Propositional;
  std::set<std::string> constraints;  // constraint ids, see ConstraintSpec
  Mapping mapping = Mapping::Chaos;
  std::string domain_variant = "StatesEqualSyntactic";

  bool has_option(const std::string& id) const {
    return presentation_options.count(id) != 0;
  }

  /// The same variant with all presentation options removed.
  LanguageVariant without_presentation_options() const {
    LanguageVariant v = *this;
    v.presentation_options.clear();
    return v;
  }

  /// Equality on the syntax-defining fields only (everything except the
  /// semantic mapping and domain choices).
  bool same_syntax(const LanguageVariant& other) const {
    return presentation_options == other.presentation_options &&
           hierarchy_enabled == other.hierarchy_enabled &&
           allowed_stereotypes == other.allowed_stereotypes &&
           guard_language == other.guard_language &&
           constraints == other.constraints;
  }

  auto operator<=>(const LanguageVariant&) const = default;
};

inline constexpr const char* kOptionFatArrow = "FatArrow";
inline constexpr const char* kOptionInitialStar = "InitialStar";

}  // namespace scvar::variability
