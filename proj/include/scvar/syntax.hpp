#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scvar/result.hpp"
#include "scvar/variant.hpp"

namespace scvar::syntax {

using variability::GuardLanguage;
using variability::LanguageVariant;

bool is_valid_name(std::string_view name);

/// The alphabet a chart (and its machines) is built over: declared events,
/// declared boolean flags, and the stereotype key/value pairs in use.
struct Signature {
  std::vector<std::string> events;  // declaration order, expected unique
  std::vector<std::string> flags;   // declaration order, expected unique
  std::set<std::pair<std::string, std::string>> stereotype_vocabulary;

  std::uint32_t valuation_count() const {
    return std::uint32_t{1} << flags.size();
  }
  int event_index(std::string_view name) const;
  int flag_index(std::string_view name) const;

  /// Invariant violations (empty event set, duplicate or malformed names).
  std::vector<std::string> problems() const;

  auto operator<=>(const Signature&) const = default;
};

/// A guard in parameter-independent normal form: the exact set of flag
/// valuations that satisfy it. Valuations are bitmasks over the declared
/// flags, bit i corresponding to flag i of the signature.
struct Guard {
  std::uint32_t flag_count = 0;
  std::vector<std::uint32_t> sat;  // sorted, unique, each < 2^flag_count

  static Guard full(std::uint32_t flag_count);
  static Guard none(std::uint32_t flag_count);

  bool is_full() const { return sat.size() == (std::size_t{1} << flag_count); }
  bool is_empty() const { return sat.empty(); }
  bool contains(std::uint32_t valuation) const;

  Guard united(const Guard& other) const;
  Guard intersected(const Guard& other) const;
  Guard minus(const Guard& other) const;
  bool overlaps(const Guard& other) const;

  auto operator<=>(const Guard&) const = default;
};

/// Canonical text for a guard: "true", "false", or a disjunction of
/// conjunctions over the signature's flags.
std::string guard_to_text(const Guard& guard, const Signature& sig);

/// normalize_guard accepts guard text (with or without the surrounding
/// brackets) and produces the satisfying-valuation set. Under Literal only
/// `true` and `false` are admitted; Propositional adds !, &, |, parentheses
/// and declared flag names.
Result<Guard> normalize_guard(std::string_view text, const Signature& sig,
                              GuardLanguage language);

struct Stereotype {
  std::string key;
  std::optional<std::string> value;
  auto operator<=>(const Stereotype&) const = default;
};

/// A model in concrete syntax: just named text. Membership in the language
/// is decided by parse alone.
struct ConcreteModel {
  std::string source_name;
  std::string body;
};

struct Transition {
  std::string source;
  std::string event;
  Guard guard;
  std::string target;
  auto operator<=>(const Transition&) const = default;
};

/// One node of the state tree. A node with children is a composite and is
/// expected to declare which child is entered initially.
struct StateNode {
  std::string name;
  std::optional<std::string> initial;
  std::vector<StateNode> children;

  bool is_composite() const { return !children.empty(); }
  bool operator==(const StateNode&) const = default;
};

/// Abstract syntax of one chart. Transitions are kept in document order;
/// equality treats them as a set, so reparsing a pretty-printed chart (which
/// groups transitions under their source states) compares equal.
struct Ast {
  std::string chart_name;
  std::vector<Stereotype> stereotypes;  // sorted, unique
  Signature signature;
  std::vector<StateNode> states;  // top-level states, document order
  std::optional<std::string> root_initial;
  std::vector<Transition> transitions;

  bool operator==(const Ast& other) const;
};

/// Reduced abstract syntax: a flat chart. States and transitions are kept
/// sorted and duplicate-free so equality is plain structural equality.
struct FlatAst {
  std::string chart_name;
  std::vector<Stereotype> stereotypes;
  Signature signature;
  std::vector<std::string> states;  // sorted, unique
  std::string initial;
  std::vector<Transition> transitions;  // sorted, unique

  /// Restores the sortedness invariants after manual construction.
  void normalize();

  bool operator==(const FlatAst&) const = default;
};

struct SourcePos {
  int line = 0;
  int column = 0;
};

struct ParseError {
  SourcePos pos;
  std::string code;  // stable identifier, e.g. "disabled-presentation-option"
  std::string message;
  std::string token;
};
using ParseErrors = std::vector<ParseError>;

/// A wellformedness violation. check_wellformed reports every violation,
/// not just the first.
struct Diagnostic {
  std::string code;
  std::string message;
};

/// p (and its presentation variants p_v): maps concrete syntax to abstract
/// syntax. Syntactically invalid input, use of a disabled presentation
/// option, and guard-language violations are parse errors.
Result<Ast, ParseErrors> parse(const ConcreteModel& model,
                               const LanguageVariant& variant);

/// wellformed : AS -> bool, with the violations as evidence. Also rejects
/// charts whose flattened form would be nondeterministic.
std::vector<Diagnostic> check_wellformed(const Ast& ast);

/// Canonical concrete text for a well-formed chart. Round trip law:
/// parse(pretty_print(a, v), v) == a for every variant v. When a
/// presentation option is enabled the alternative notation is used, so the
/// output exercises the variant; the base variant yields base notation only.
ConcreteModel pretty_print(const Ast& ast, const LanguageVariant& variant);

/// t (and t_v): eliminates hierarchy. Composite-source transitions are
/// distributed over the contained leaves with inner-overrides-outer
/// priority; composite targets are redirected to their transitively
/// resolved initial leaf. Flat inputs are returned unchanged.
Result<FlatAst> flatten(const Ast& ast, const LanguageVariant& variant);

/// Membership test for the reduced abstract syntax: no composites.
bool is_reduced(const Ast& ast);

/// Embedding of a flat chart back into the full abstract syntax.
Ast to_ast(const FlatAst& flat);

/// View of an already-flat, well-formed chart as reduced abstract syntax.
FlatAst to_flat(const Ast& ast);

}  // namespace scvar::syntax
