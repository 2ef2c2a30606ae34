#include "src/checks_internal.hpp"

namespace scvar::checks {

Result<CheckReport> check_abbreviation(const LanguageVariant& base,
                                       const LanguageVariant& v,
                                       const std::vector<Ast>& corpus,
                                       const Scope& scope) {
  LanguageVariant base_flat = base;
  base_flat.hierarchy_enabled = false;
  LanguageVariant v_hier = v;
  v_hier.hierarchy_enabled = true;
  LanguageVariant v_as_flat = v_hier;
  v_as_flat.hierarchy_enabled = false;
  if (!base_flat.same_syntax(v_as_flat)) {
    return Error{ErrorCode::IncompatibleVariants,
                 "abbreviation check needs variants that differ only in the "
                 "hierarchy flag"};
  }

  CheckReport report;
  report.condition = "abbreviation";
  report.scope = scope.describe() + " plus corpus(" +
                 std::to_string(corpus.size()) + " charts)";

  auto fail = [&report](const std::string& text, std::string note) {
    report.verdict = Verdict::Fails;
    Counterexample cx;
    cx.model_text = text;
    cx.note = std::move(note);
    report.counterexample = std::move(cx);
  };

  // Identity on the reduced abstract syntax, over the enumerated scope.
  Result<std::vector<FlatAst>> flats = enumerate_models(scope, base_flat);
  if (!flats.ok()) return flats.error();
  for (const FlatAst& m : flats.value()) {
    ++report.stats.models_checked;
    Result<FlatAst> t = syntax::flatten(syntax::to_ast(m), base_flat);
    if (!t.ok()) return t.error();
    if (!(t.value() == m)) {
      fail(detail::model_text(m), "t is not the identity on a flat chart");
      return report;
    }
  }

  for (const Ast& ast : corpus) {
    ++report.stats.models_checked;
    bool flat = syntax::is_reduced(ast);

    // Agreement on dom(t_v) ∩ dom(t): with hierarchy disabled dom(t) holds
    // the flat charts only, so hierarchical corpus members are skipped.
    if (flat) {
      Result<FlatAst> t_base = syntax::flatten(ast, base_flat);
      Result<FlatAst> t_var = syntax::flatten(ast, v_hier);
      if (!t_base.ok()) return t_base.error();
      if (!t_var.ok()) return t_var.error();
      if (!(t_base.value() == t_var.value())) {
        fail(detail::model_text(ast),
             "t and t_v disagree on a chart in both domains");
        return report;
      }
      if (!(t_base.value() == syntax::to_flat(ast))) {
        fail(detail::model_text(ast), "t is not the identity on a flat chart");
        return report;
      }
    } else {
      ++report.stats.skipped;
    }

    // Existence: t_v(m) itself is a flat chart with t(t_v(m)) = t_v(m).
    Result<FlatAst> image = syntax::flatten(ast, v_hier);
    if (!image.ok()) return image.error();
    syntax::Ast embedded = syntax::to_ast(image.value());
    if (!syntax::is_reduced(embedded)) {
      fail(detail::model_text(ast), "flattened chart still has hierarchy");
      return report;
    }
    Result<FlatAst> again = syntax::flatten(embedded, base_flat);
    if (!again.ok()) return again.error();
    if (!(again.value() == image.value())) {
      fail(detail::model_text(ast),
           "t(t_v(m)) differs from t_v(m); no flat witness");
      return report;
    }
  }

  report.verdict = Verdict::Holds;
  report.notes.push_back(std::to_string(report.stats.skipped) +
                         " hierarchical charts outside dom(t) skipped for "
                         "the agreement condition");
  return report;
}

}  // namespace scvar::checks
