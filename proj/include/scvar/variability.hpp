#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scvar/result.hpp"
#include "scvar/syntax.hpp"
#include "scvar/variant.hpp"

namespace scvar::variability {

/// Children of a feature are either directly attached (mandatory/optional)
/// or grouped (alternative: exactly one; or: at least one).
struct FeatureNode;

struct FeatureGroup {
  enum class Kind { Alternative, Or };
  Kind kind = Kind::Alternative;
  std::vector<FeatureNode> members;
};

struct FeatureNode {
  std::string name;
  std::vector<std::pair<bool /*mandatory*/, FeatureNode>> named_children;
  std::vector<FeatureGroup> groups;

  bool is_leaf() const { return named_children.empty() && groups.empty(); }
};

struct FeatureModel {
  FeatureNode root;

  std::vector<std::string> all_names() const;
  const FeatureNode* find(std::string_view name) const;
};

struct Configuration {
  std::set<std::string> selected;

  /// One feature name per line; '#' starts a comment.
  static Configuration from_text(std::string_view text);
};

struct ConfigViolation {
  std::string code;  // e.g. "alternative-cardinality"
  std::string feature;
  std::string message;
};

Result<FeatureModel, syntax::ParseErrors> parse_feature_model(
    std::string_view text);

/// Group semantics: root selected; parents of selected features selected;
/// mandatory children of selected features selected; alternative groups of
/// selected parents have exactly one selected member, or-groups at least one.
std::vector<ConfigViolation> validate_configuration(const FeatureModel& fm,
                                                    const Configuration& cfg);

/// Maps the selected leaves to a LanguageVariant. Unselected optional
/// subtrees yield base behavior. Selecting a leaf the registry does not know
/// is an error.
Result<LanguageVariant> build_variant(const FeatureModel& fm,
                                      const Configuration& cfg);

/// Syntactic filter: every stereotype on the chart is whitelisted by the
/// variant (keys, and values where the whitelist pins them).
bool check_stereotypes(const syntax::FlatAst& m, const LanguageVariant& v);

struct ConstraintSpec {
  enum class Kind { NoGuards, MaxStatesK, Deterministic };
  std::string id;
  Kind kind = Kind::Deterministic;
  int k = 0;

  static Result<ConstraintSpec> from_id(std::string_view id);
};

bool check_constraint(const syntax::FlatAst& m, const ConstraintSpec& c);

/// Membership test for the variant's reduced abstract syntax: stereotype
/// whitelist, all constraints, and expressibility of every guard in the
/// variant's guard language.
bool passes_filters(const syntax::FlatAst& m, const LanguageVariant& v);

}  // namespace scvar::variability
