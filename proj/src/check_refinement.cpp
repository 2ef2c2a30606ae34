#include <algorithm>

#include "src/checks_internal.hpp"

namespace scvar::checks {

namespace detail {

std::string model_text(const syntax::FlatAst& m) {
  return model_text(syntax::to_ast(m));
}

std::string model_text(const syntax::Ast& ast) {
  return syntax::pretty_print(ast, LanguageVariant{}).body;
}

Result<semantics::SemSet> semantics_under(const syntax::FlatAst& m,
                                          const LanguageVariant& v,
                                          std::uint64_t cap) {
  Result<semantics::Mapping> mapping = semantics::resolve_mapping(m, v);
  if (!mapping.ok()) return mapping.error();
  Result<semantics::DomainVariant> dv =
      semantics::DomainVariant::from_id(v.domain_variant);
  if (!dv.ok()) return dv.error();
  return semantics::semantics_of(m, mapping.value(), dv.value(), cap);
}

}  // namespace detail

Result<CheckReport> check_semantic_refinement(const LanguageVariant& v1,
                                              const LanguageVariant& v2,
                                              const Scope& scope) {
  if (!v1.same_syntax(v2)) {
    return Error{ErrorCode::IncompatibleVariants,
                 "refinement needs variants that differ only in mapping and "
                 "domain fields"};
  }
  Result<std::vector<FlatAst>> models = enumerate_models(scope, v1);
  if (!models.ok()) return models.error();

  CheckReport report;
  report.condition = "semantic-refinement";
  report.scope = scope.describe();
  for (const FlatAst& m : models.value()) {
    Result<semantics::SemSet> s1 = detail::semantics_under(m, v1,
                                                           scope.machine_cap);
    if (!s1.ok()) return s1.error();
    Result<semantics::SemSet> s2 = detail::semantics_under(m, v2,
                                                           scope.machine_cap);
    if (!s2.ok()) return s2.error();
    ++report.stats.models_checked;
    report.stats.machines_enumerated += s1.value().size() + s2.value().size();

    Result<bool> subset = semantics::is_model_refinement(s2.value(),
                                                         s1.value());
    if (!subset.ok()) return subset.error();
    if (!subset.value()) {
      std::vector<Machine> diff;
      std::set_difference(s2.value().machines.begin(),
                          s2.value().machines.end(),
                          s1.value().machines.begin(),
                          s1.value().machines.end(),
                          std::back_inserter(diff));
      report.verdict = Verdict::Fails;
      Counterexample cx;
      cx.model = m;
      cx.model_text = detail::model_text(m);
      cx.witness = diff.back();  // deterministic pick from the difference
      cx.note = "sem_v2 contains " + std::to_string(diff.size()) +
                " machines outside sem_v1";
      report.counterexample = std::move(cx);
      return report;
    }
  }
  report.verdict = Verdict::Holds;
  return report;
}

Result<CheckReport> check_property_preservation(
    const FlatAst& m, const LanguageVariant& v1, const LanguageVariant& v2,
    const semantics::PropertySpec& phi) {
  if (!v1.same_syntax(v2)) {
    return Error{ErrorCode::IncompatibleVariants,
                 "property preservation needs variants that differ only in "
                 "mapping and domain fields"};
  }
  Result<semantics::SemSet> s1 =
      detail::semantics_under(m, v1, semantics::kDefaultMachineCap);
  if (!s1.ok()) return s1.error();
  Result<semantics::SemSet> s2 =
      detail::semantics_under(m, v2, semantics::kDefaultMachineCap);
  if (!s2.ok()) return s2.error();

  Result<bool> antecedent = semantics::holds_universally(s1.value(), phi);
  if (!antecedent.ok()) return antecedent.error();
  Result<bool> consequent = semantics::holds_universally(s2.value(), phi);
  if (!consequent.ok()) return consequent.error();

  CheckReport report;
  report.condition = "property-preservation";
  report.scope = "model '" + m.chart_name + "', property " + phi.to_string();
  report.stats.models_checked = 1;
  report.stats.machines_enumerated = s1.value().size() + s2.value().size();
  report.notes.push_back(std::string("antecedent ") +
                         (antecedent.value() ? "holds" : "fails") +
                         ", consequent " +
                         (consequent.value() ? "holds" : "fails"));
  if (!antecedent.value() || consequent.value()) {
    report.verdict = Verdict::Holds;
    return report;
  }
  report.verdict = Verdict::Fails;
  Counterexample cx;
  cx.model = m;
  cx.model_text = detail::model_text(m);
  for (const Machine& s : s2.value().machines) {
    Result<bool> r = semantics::eval_property(s, phi);
    if (!r.ok()) return r.error();
    if (!r.value()) {
      cx.witness = s;
      break;
    }
  }
  cx.note = "property " + phi.to_string() +
            " holds over sem_v1 but not over sem_v2";
  report.counterexample = std::move(cx);
  return report;
}

std::vector<semantics::PropertySpec> builtin_properties(
    const std::vector<std::string>& states) {
  std::vector<semantics::PropertySpec> out;
  for (const std::string& s : states) {
    out.push_back({semantics::PropertySpec::Kind::Reachable, s});
    out.push_back({semantics::PropertySpec::Kind::Unreachable, s});
  }
  out.push_back({semantics::PropertySpec::Kind::AllStatesReachable, ""});
  return out;
}

}  // namespace scvar::checks
