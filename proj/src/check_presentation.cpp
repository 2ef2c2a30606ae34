#include "src/checks_internal.hpp"

namespace scvar::checks {
namespace {

// m lies in dom(p) only if it parses and is well-formed.
std::optional<syntax::Ast> image_of(const ParseFn& parse,
                                    const ConcreteModel& m) {
  Result<syntax::Ast, syntax::ParseErrors> r = parse(m);
  if (!r.ok()) return std::nullopt;
  if (!syntax::check_wellformed(r.value()).empty()) return std::nullopt;
  return r.value();
}

}  // namespace

CheckReport check_presentation_core(const ParseFn& parse_base,
                                    const ParseFn& parse_variant,
                                    const PrintFn& print_base,
                                    const std::vector<ConcreteModel>& corpus) {
  CheckReport report;
  report.condition = "presentation-options";
  report.scope = "corpus(" + std::to_string(corpus.size()) + " texts)";

  std::uint64_t shared = 0, variant_only = 0;
  for (const ConcreteModel& m : corpus) {
    std::optional<syntax::Ast> base_ast = image_of(parse_base, m);
    std::optional<syntax::Ast> variant_ast = image_of(parse_variant, m);
    if (!variant_ast && !base_ast) {
      ++report.stats.skipped;
      continue;
    }
    ++report.stats.models_checked;

    // Condition 1: agreement on the shared part of the concrete syntax.
    if (base_ast && variant_ast) {
      ++shared;
      if (!(*base_ast == *variant_ast)) {
        report.verdict = Verdict::Fails;
        Counterexample cx;
        cx.model_text = m.body;
        cx.note = "base and variant parser disagree on '" + m.source_name + "'";
        report.counterexample = std::move(cx);
        return report;
      }
    }

    // Condition 2: a base-notation twin exists; the pretty-printer builds it.
    if (variant_ast) {
      ++variant_only;
      ConcreteModel witness = print_base(*variant_ast);
      std::optional<syntax::Ast> reparsed = image_of(parse_base, witness);
      if (!reparsed || !(*reparsed == *variant_ast)) {
        report.verdict = Verdict::Fails;
        Counterexample cx;
        cx.model_text = m.body;
        cx.note = "no base-notation witness: pretty-printed twin of '" +
                  m.source_name + "' does not reparse to the same chart";
        report.counterexample = std::move(cx);
        return report;
      }
    }
  }
  report.verdict = Verdict::Holds;
  report.notes.push_back(std::to_string(shared) +
                         " texts in both languages, " +
                         std::to_string(variant_only) +
                         " accepted by the variant");
  return report;
}

CheckReport check_presentation_option(
    const LanguageVariant& base, const LanguageVariant& v,
    const std::vector<ConcreteModel>& corpus) {
  ParseFn parse_base = [&base](const ConcreteModel& m) {
    return syntax::parse(m, base);
  };
  ParseFn parse_variant = [&v](const ConcreteModel& m) {
    return syntax::parse(m, v);
  };
  PrintFn print_base = [&base](const syntax::Ast& ast) {
    return syntax::pretty_print(ast, base);
  };
  CheckReport report =
      check_presentation_core(parse_base, parse_variant, print_base, corpus);
  if (!base.without_presentation_options()
           .same_syntax(v.without_presentation_options()) ||
      base.mapping != v.mapping || base.domain_variant != v.domain_variant) {
    report.notes.push_back(
        "warning: variants differ beyond presentation options");
  }
  return report;
}

}  // namespace scvar::checks
