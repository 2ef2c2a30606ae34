#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scvar/result.hpp"
#include "scvar/syntax.hpp"
#include "scvar/variant.hpp"

namespace scvar::semantics {

using syntax::FlatAst;
using syntax::Signature;
using variability::LanguageVariant;
using variability::Mapping;

inline constexpr std::uint64_t kDefaultMachineCap = 1'000'000;

/// The state set, initial state and signature every machine of one
/// semantics set is built over.
struct Universe {
  std::vector<std::string> states;  // sorted, unique
  std::string initial;
  Signature signature;

  static Universe of(const FlatAst& m);
  int state_index(std::string_view name) const;
  std::size_t delta_size() const {
    return states.size() * signature.events.size() *
           signature.valuation_count();
  }
  bool operator==(const Universe&) const = default;
};

/// One element of the semantic domain: a total deterministic machine.
/// delta is indexed by ((state * |events|) + event) * |valuations| +
/// valuation and stores the target state index.
struct Machine {
  std::vector<std::string> states;
  std::string initial;
  Signature signature;
  std::vector<std::uint16_t> delta;

  std::size_t index(std::size_t state, std::size_t event,
                    std::size_t valuation) const {
    return (state * signature.events.size() + event) *
               signature.valuation_count() +
           valuation;
  }
  /// States reachable from the initial state, as a bitmap by state index.
  std::vector<bool> reachable() const;

  friend bool operator==(const Machine& a, const Machine& b) {
    return a.states == b.states && a.initial == b.initial && a.delta == b.delta;
  }
  friend bool operator<(const Machine& a, const Machine& b) {
    if (a.states != b.states) return a.states < b.states;
    if (a.initial != b.initial) return a.initial < b.initial;
    return a.delta < b.delta;
  }
};

struct DomainVariant {
  enum class Kind { StatesEqualSyntactic, SelfLoopFreeInitial, AllStatesReachable };
  std::string id;
  Kind kind = Kind::StatesEqualSyntactic;

  static Result<DomainVariant> from_id(std::string_view id);
  bool holds(const Machine& s) const;
};

struct SemProvenance {
  std::string mapping_id;
  std::string domain_id;
  Universe universe;
};

/// A finite, duplicate-free, deterministically ordered subset of the
/// semantic domain together with where it came from.
struct SemSet {
  SemProvenance provenance;
  std::vector<Machine> machines;  // sorted

  bool contains(const Machine& s) const;
  std::size_t size() const { return machines.size(); }
};

struct PropertySpec {
  enum class Kind { Reachable, Unreachable, AllStatesReachable };
  Kind kind = Kind::Reachable;
  std::string state;  // unused for AllStatesReachable

  /// Accepts "reachable:<state>", "unreachable:<state>", "all-reachable".
  static Result<PropertySpec> parse(std::string_view text);
  std::string to_string() const;
};

/// All total deterministic machines over the universe that satisfy the
/// domain variant, in delta-lexicographic order.
Result<std::vector<Machine>> enumerate_domain(
    const Universe& universe, const DomainVariant& dv,
    std::uint64_t cap = kDefaultMachineCap);

/// sem (and its variants): every machine that agrees with the chart on all
/// specified (state, event, valuation) triples. Chaos leaves unspecified
/// triples unconstrained; Ignore completes them with self-loops. An empty
/// result is a legal outcome, not an error.
Result<SemSet> semantics_of(const FlatAst& m, Mapping mapping,
                            const DomainVariant& dv,
                            std::uint64_t cap = kDefaultMachineCap);

/// A «completion=...» stereotype on the model overrides the variant's
/// mapping choice.
Result<Mapping> resolve_mapping(const FlatAst& m, const LanguageVariant& v);

/// Name-independent normal form: states are renumbered in breadth-first
/// order from the initial state (events and valuations visited in sorted
/// order); unreachable states follow in name order. Isomorphic machines get
/// identical canonical forms and canonicalize is idempotent.
Machine canonicalize(const Machine& s);

/// Intersection of the given sets (composition of model semantics).
Result<SemSet> integrated_semantics(const std::vector<SemSet>& sets);

/// refined is a model refinement of original iff its semantics set is a
/// subset of the original's.
Result<bool> is_model_refinement(const SemSet& refined, const SemSet& original);

Result<bool> eval_property(const Machine& s, const PropertySpec& phi);

/// Conjunction of eval_property over the whole set; true on the empty set.
Result<bool> holds_universally(const SemSet& set, const PropertySpec& phi);

/// One machine as one line: `initial=<q0>; <q>,<e>,<val>-><q'>; ...`
/// with entries sorted by (state, event, valuation). Valuations print as a
/// bitstring in flag-declaration order (empty with no flags).
std::string machine_to_line(const Machine& s);

/// One machine per line, in set order.
std::string semset_to_text(const SemSet& set);

}  // namespace scvar::semantics
