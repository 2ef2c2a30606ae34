#include <algorithm>
#include <set>

#include "src/checks_internal.hpp"

namespace scvar::checks {
namespace {

// Name-independent key for a model's semantics: the sorted canonical forms
// of its machines, serialized.
Result<std::string> semantics_key(const FlatAst& m, const LanguageVariant& v,
                                  std::uint64_t cap,
                                  std::uint64_t& machines_seen) {
  Result<semantics::SemSet> sem = detail::semantics_under(m, v, cap);
  if (!sem.ok()) return sem.error();
  machines_seen += sem.value().size();
  std::vector<std::string> lines;
  lines.reserve(sem.value().size());
  for (const Machine& s : sem.value().machines) {
    lines.push_back(semantics::machine_to_line(semantics::canonicalize(s)));
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::string key;
  for (const std::string& line : lines) {
    key += line;
    key += '\n';
  }
  return key;
}

bool restricts(const LanguageVariant& base, const LanguageVariant& constrained) {
  if (base.presentation_options != constrained.presentation_options ||
      base.hierarchy_enabled != constrained.hierarchy_enabled ||
      base.allowed_stereotypes != constrained.allowed_stereotypes ||
      base.mapping != constrained.mapping ||
      base.domain_variant != constrained.domain_variant) {
    return false;
  }
  // Guard language may only shrink, constraints may only grow.
  if (base.guard_language == variability::GuardLanguage::Literal &&
      constrained.guard_language != variability::GuardLanguage::Literal) {
    return false;
  }
  return std::includes(constrained.constraints.begin(),
                       constrained.constraints.end(),
                       base.constraints.begin(), base.constraints.end());
}

}  // namespace

Result<CheckReport> check_expressiveness(const LanguageVariant& base,
                                         const LanguageVariant& constrained,
                                         const Scope& scope,
                                         Direction direction) {
  if (!restricts(base, constrained)) {
    return Error{ErrorCode::IncompatibleVariants,
                 "expressiveness check needs a variant that only adds "
                 "constraints or restricts the guard language"};
  }

  Result<std::vector<FlatAst>> base_models = enumerate_models(scope, base);
  if (!base_models.ok()) return base_models.error();

  CheckReport report;
  report.scope = scope.describe();

  if (direction == Direction::AsWritten) {
    report.condition = "expressiveness-as-written";
    // Every constrained model is a base model, so m2 = m1 always works.
    // Verified anyway by key lookup.
    std::set<std::string> base_keys;
    std::uint64_t seen = 0;
    for (const FlatAst& m : base_models.value()) {
      Result<std::string> key =
          semantics_key(m, base, scope.machine_cap, seen);
      if (!key.ok()) return key.error();
      base_keys.insert(std::move(key.value()));
    }
    for (const FlatAst& m : base_models.value()) {
      if (!variability::passes_filters(m, constrained)) continue;
      ++report.stats.models_checked;
      Result<std::string> key =
          semantics_key(m, base, scope.machine_cap, seen);
      if (!key.ok()) return key.error();
      if (!base_keys.count(key.value())) {
        report.verdict = Verdict::Fails;
        Counterexample cx;
        cx.model = m;
        cx.model_text = detail::model_text(m);
        cx.note = "constrained model without a base-language twin";
        report.counterexample = std::move(cx);
        return report;
      }
    }
    report.stats.machines_enumerated = seen;
    report.verdict = Verdict::Holds;
    report.notes.push_back(
        "condition is trivially discharged by choosing m2 = m1; the "
        "constrained language is a subset of the base language");
    return report;
  }

  report.condition = "expressiveness-converse";
  std::uint64_t seen = 0;
  std::set<std::string> constrained_keys;
  for (const FlatAst& m : base_models.value()) {
    if (!variability::passes_filters(m, constrained)) continue;
    Result<std::string> key =
        semantics_key(m, constrained, scope.machine_cap, seen);
    if (!key.ok()) return key.error();
    constrained_keys.insert(std::move(key.value()));
  }
  for (const FlatAst& m : base_models.value()) {
    ++report.stats.models_checked;
    Result<std::string> key = semantics_key(m, base, scope.machine_cap, seen);
    if (!key.ok()) return key.error();
    if (!constrained_keys.count(key.value())) {
      report.verdict = Verdict::Fails;
      Counterexample cx;
      cx.model = m;
      cx.model_text = detail::model_text(m);
      cx.note =
          "no model of the constrained language has the same semantics";
      report.counterexample = std::move(cx);
      report.stats.machines_enumerated = seen;
      return report;
    }
  }
  report.stats.machines_enumerated = seen;
  report.verdict =
      scope.enumerated() ? Verdict::HoldsUpToBound : Verdict::Holds;
  if (report.verdict == Verdict::HoldsUpToBound) {
    report.notes.push_back("search for matching models was bounded by the "
                           "enumerated scope");
  }
  return report;
}

}  // namespace scvar::checks
