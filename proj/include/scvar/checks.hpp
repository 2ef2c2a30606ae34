#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scvar/result.hpp"
#include "scvar/semantics.hpp"
#include "scvar/syntax.hpp"
#include "scvar/variability.hpp"

namespace scvar::checks {

using semantics::Machine;
using syntax::Ast;
using syntax::ConcreteModel;
using syntax::FlatAst;
using syntax::Signature;
using variability::LanguageVariant;

inline constexpr std::uint64_t kDefaultModelCap = 1'000'000;

/// Finitization of the "for all models" quantifiers: either every flat,
/// well-formed, deterministic chart over the signature with min..max states
/// (initial state fixed to the first), or a user-supplied corpus.
struct Scope {
  Signature signature;
  int min_states = 1;
  int max_states = 1;
  std::optional<std::vector<FlatAst>> corpus;
  std::uint64_t model_cap = kDefaultModelCap;
  std::uint64_t machine_cap = semantics::kDefaultMachineCap;

  bool enumerated() const { return !corpus.has_value(); }
  std::string describe() const;

  static Scope enumerated_scope(Signature sig, int min_states, int max_states);
  static Scope corpus_scope(std::vector<FlatAst> models);
};

enum class Verdict { Holds, Fails, HoldsUpToBound };
const char* to_string(Verdict v);

struct Counterexample {
  std::optional<FlatAst> model;
  std::string model_text;  // chart text, or the offending corpus text
  std::optional<Machine> witness;
  std::string note;
};

struct CheckStats {
  std::uint64_t models_checked = 0;
  std::uint64_t machines_enumerated = 0;
  std::uint64_t skipped = 0;
};

struct CheckReport {
  std::string condition;
  Verdict verdict = Verdict::Holds;
  std::optional<Counterexample> counterexample;
  std::string scope;
  CheckStats stats;
  std::vector<std::string> notes;
};

/// All models of the scope that lie in the variant's reduced abstract
/// syntax, in deterministic order (fewest states first, then
/// lexicographically by triple assignment, unspecified before targets).
Result<std::vector<FlatAst>> enumerate_models(const Scope& scope,
                                              const LanguageVariant& v);

/// Semantic language refinement: for every model in scope,
/// sem_v1(m) ⊇ sem_v2(m). v1 and v2 must agree on all syntax fields.
Result<CheckReport> check_semantic_refinement(const LanguageVariant& v1,
                                              const LanguageVariant& v2,
                                              const Scope& scope);

/// Presentation-option conditions over a corpus of concrete texts:
/// (1) both parsers agree on every text they both accept, and
/// (2) for every text the variant accepts, pretty-printing its abstract
/// syntax in the base variant yields a base text with the same abstract
/// syntax (the constructive existence witness).
CheckReport check_presentation_option(const LanguageVariant& base,
                                      const LanguageVariant& v,
                                      const std::vector<ConcreteModel>& corpus);

/// Same conditions with injectable parse/print functions; used to validate
/// the checker itself against deliberately broken parsers.
using ParseFn =
    std::function<Result<Ast, syntax::ParseErrors>(const ConcreteModel&)>;
using PrintFn = std::function<ConcreteModel(const Ast&)>;
CheckReport check_presentation_core(const ParseFn& parse_base,
                                    const ParseFn& parse_variant,
                                    const PrintFn& print_base,
                                    const std::vector<ConcreteModel>& corpus);

/// Abbreviation (hierarchy) conditions: t is the identity on flat charts,
/// t_v agrees with t on their shared domain, and every t_v image is the
/// t-image of some flat chart (witnessed by the image itself).
Result<CheckReport> check_abbreviation(const LanguageVariant& base,
                                       const LanguageVariant& v,
                                       const std::vector<Ast>& corpus,
                                       const Scope& scope);

enum class Direction { AsWritten, Converse };

/// Expressiveness preservation for a constraint/guard-language restriction.
/// AsWritten is the condition as stated (trivially discharged by m2 = m1);
/// Converse asks whether every base model has a semantics-equal model in the
/// constrained language, decided by canonicalized machine-set equality.
Result<CheckReport> check_expressiveness(const LanguageVariant& base,
                                         const LanguageVariant& constrained,
                                         const Scope& scope,
                                         Direction direction);

/// The property-preservation corollary of semantic refinement for one model
/// and one property: (∀s ∈ sem_v1(m) : ϕ(s)) ⟹ (∀s ∈ sem_v2(m) : ϕ(s)).
Result<CheckReport> check_property_preservation(
    const FlatAst& m, const LanguageVariant& v1, const LanguageVariant& v2,
    const semantics::PropertySpec& phi);

/// The built-in property sweep for a state universe: reachable and
/// unreachable for each state, plus all-reachable.
std::vector<semantics::PropertySpec> builtin_properties(
    const std::vector<std::string>& states);

}  // namespace scvar::checks
