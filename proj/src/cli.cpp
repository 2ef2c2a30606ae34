#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "scvar/cli.hpp"
#include "scvar/semantics.hpp"
#include "scvar/variability.hpp"
#include "src/checks_internal.hpp"

namespace scvar::cli {
namespace {

namespace fs = std::filesystem;
using checks::CheckReport;
using checks::Scope;
using syntax::Ast;
using syntax::ConcreteModel;
using syntax::FlatAst;
using variability::LanguageVariant;

constexpr int kExitOk = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;
constexpr int kExitCapExceeded = 3;

int exit_code_for(const Error& e) {
  return (e.code == ErrorCode::DomainTooLarge ||
          e.code == ErrorCode::ScopeTooLarge)
             ? kExitCapExceeded
             : kExitError;
}

int fail(std::ostream& err, const std::string& message,
         int code = kExitError) {
  err << "error: " << message << "\n";
  return code;
}

int fail(std::ostream& err, const Error& e) {
  return fail(err, e.message, exit_code_for(e));
}

Result<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return Error{ErrorCode::Io, "cannot open '" + path + "'"};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void print_parse_errors(std::ostream& err, const std::string& name,
                        const syntax::ParseErrors& errors) {
  for (const syntax::ParseError& e : errors) {
    err << name << ":" << e.pos.line << ":" << e.pos.column << ": "
        << e.message;
    if (!e.token.empty()) err << " (at '" << e.token << "')";
    err << "\n";
  }
}

/// Variant used when no feature model / configuration is given: hierarchy
/// and propositional guards on, completion stereotypes allowed.
LanguageVariant default_variant() {
  LanguageVariant v;
  v.hierarchy_enabled = true;
  v.allowed_stereotypes["completion"] =
      variability::StereotypeRule{{"chaos", "ignore"}};
  return v;
}

struct VariantArgs {
  std::string fm_path;
  std::string cfg_path;
};

Result<LanguageVariant> load_variant(const VariantArgs& args,
                                     std::ostream& err) {
  if (args.fm_path.empty() && args.cfg_path.empty()) {
    return default_variant();
  }
  if (args.fm_path.empty() || args.cfg_path.empty()) {
    return Error{ErrorCode::InvalidArgument,
                 "--fm and --cfg must be given together"};
  }
  Result<std::string> fm_text = read_file(args.fm_path);
  if (!fm_text.ok()) return fm_text.error();
  Result<variability::FeatureModel, syntax::ParseErrors> fm =
      variability::parse_feature_model(fm_text.value());
  if (!fm.ok()) {
    print_parse_errors(err, args.fm_path, fm.error());
    return Error{ErrorCode::InvalidArgument,
                 "feature model '" + args.fm_path + "' does not parse"};
  }
  Result<std::string> cfg_text = read_file(args.cfg_path);
  if (!cfg_text.ok()) return cfg_text.error();
  variability::Configuration cfg =
      variability::Configuration::from_text(cfg_text.value());
  std::vector<variability::ConfigViolation> violations =
      variability::validate_configuration(fm.value(), cfg);
  if (!violations.empty()) {
    for (const auto& v : violations) {
      err << args.cfg_path << ": " << v.message << "\n";
    }
    return Error{ErrorCode::InvalidArgument,
                 "configuration '" + args.cfg_path + "' is not valid"};
  }
  return variability::build_variant(fm.value(), cfg);
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Result<Ast> parse_and_check(const ConcreteModel& model,
                            const LanguageVariant& v, std::ostream& err) {
  Result<Ast, syntax::ParseErrors> ast = syntax::parse(model, v);
  if (!ast.ok()) {
    print_parse_errors(err, model.source_name, ast.error());
    return Error{ErrorCode::InvalidArgument,
                 "'" + model.source_name + "' does not parse"};
  }
  std::vector<syntax::Diagnostic> diags =
      syntax::check_wellformed(ast.value());
  if (!diags.empty()) {
    for (const syntax::Diagnostic& d : diags) {
      err << model.source_name << ": " << d.message << "\n";
    }
    return Error{ErrorCode::InvalidArgument,
                 "'" + model.source_name + "' is not well-formed"};
  }
  return ast.value();
}

struct ScopeArgs {
  std::string corpus_path;
  std::string events_csv;
  std::string flags_csv;
  int max_states = 0;
  int min_states = 0;  // 0: default to max_states
  std::uint64_t cap = checks::kDefaultModelCap;
};

Result<Scope> build_scope(const ScopeArgs& args, const LanguageVariant& v,
                          std::ostream& err) {
  if (!args.corpus_path.empty()) {
    Result<std::vector<ConcreteModel>> corpus = load_corpus(args.corpus_path);
    if (!corpus.ok()) return corpus.error();
    std::vector<FlatAst> models;
    for (const ConcreteModel& cm : corpus.value()) {
      Result<Ast> ast = parse_and_check(cm, v, err);
      if (!ast.ok()) return ast.error();
      Result<FlatAst> flat = syntax::flatten(ast.value(), v);
      if (!flat.ok()) return flat.error();
      models.push_back(std::move(flat.value()));
    }
    Scope scope = Scope::corpus_scope(std::move(models));
    scope.model_cap = args.cap;
    scope.machine_cap = args.cap;
    return scope;
  }
  if (args.events_csv.empty() || args.max_states < 1) {
    return Error{ErrorCode::InvalidArgument,
                 "an enumerated scope needs --events and --max-states "
                 "(or use --corpus)"};
  }
  syntax::Signature sig;
  sig.events = split_csv(args.events_csv);
  sig.flags = split_csv(args.flags_csv);
  int min_states = args.min_states > 0 ? args.min_states : args.max_states;
  Scope scope = Scope::enumerated_scope(sig, min_states, args.max_states);
  scope.model_cap = args.cap;
  scope.machine_cap = args.cap;
  return scope;
}

int finish_check(const CheckReport& report, ReportFormat format,
                 std::ostream& out) {
  out << emit_report(report, format);
  return report.verdict == checks::Verdict::Fails ? kExitFails : kExitOk;
}

int run_check(const std::string& kind, const VariantArgs& va,
              const VariantArgs& vb, const ScopeArgs& sa,
              const std::string& direction, const std::string& property,
              ReportFormat format, std::ostream& out, std::ostream& err) {
  Result<LanguageVariant> v1 = load_variant(va, err);
  if (!v1.ok()) return fail(err, v1.error());
  Result<LanguageVariant> v2 =
      vb.cfg_path.empty() ? v1 : load_variant(vb, err);
  if (!v2.ok()) return fail(err, v2.error());

  if (kind == "refinement") {
    Result<Scope> scope = build_scope(sa, v1.value(), err);
    if (!scope.ok()) return fail(err, scope.error());
    Result<CheckReport> report = checks::check_semantic_refinement(
        v1.value(), v2.value(), scope.value());
    if (!report.ok()) return fail(err, report.error());
    return finish_check(report.value(), format, out);
  }

  if (kind == "presentation") {
    std::vector<ConcreteModel> corpus;
    if (!sa.corpus_path.empty()) {
      Result<std::vector<ConcreteModel>> loaded =
          load_corpus(sa.corpus_path);
      if (!loaded.ok()) return fail(err, loaded.error());
      corpus = std::move(loaded.value());
    }
    if (!sa.events_csv.empty() && sa.max_states >= 1) {
      // Round-trip every enumerated chart through both notations so the
      // corpus exercises the variant even without model files.
      ScopeArgs enumerated = sa;
      enumerated.corpus_path.clear();
      Result<Scope> scope = build_scope(enumerated, v1.value(), err);
      if (!scope.ok()) return fail(err, scope.error());
      Result<std::vector<FlatAst>> models =
          checks::enumerate_models(scope.value(), v1.value());
      if (!models.ok()) return fail(err, models.error());
      for (const FlatAst& m : models.value()) {
        Ast ast = syntax::to_ast(m);
        corpus.push_back(syntax::pretty_print(ast, v1.value()));
        corpus.push_back(syntax::pretty_print(ast, v2.value()));
      }
    }
    if (corpus.empty()) {
      err << "warning: empty corpus, nothing to compare\n";
    }
    CheckReport report =
        checks::check_presentation_option(v1.value(), v2.value(), corpus);
    return finish_check(report, format, out);
  }

  if (kind == "abbreviation") {
    std::vector<Ast> corpus;
    if (!sa.corpus_path.empty()) {
      Result<std::vector<ConcreteModel>> loaded =
          load_corpus(sa.corpus_path);
      if (!loaded.ok()) return fail(err, loaded.error());
      for (const ConcreteModel& cm : loaded.value()) {
        Result<Ast> ast = parse_and_check(cm, v2.value(), err);
        if (!ast.ok()) return fail(err, ast.error());
        corpus.push_back(std::move(ast.value()));
      }
    }
    ScopeArgs enumerated = sa;
    enumerated.corpus_path.clear();
    Scope scope = Scope::corpus_scope({});
    if (!enumerated.events_csv.empty() && enumerated.max_states >= 1) {
      Result<Scope> built = build_scope(enumerated, v1.value(), err);
      if (!built.ok()) return fail(err, built.error());
      scope = built.value();
    }
    Result<CheckReport> report = checks::check_abbreviation(
        v1.value(), v2.value(), corpus, scope);
    if (!report.ok()) return fail(err, report.error());
    return finish_check(report.value(), format, out);
  }

  if (kind == "expressiveness") {
    Result<Scope> scope = build_scope(sa, v1.value(), err);
    if (!scope.ok()) return fail(err, scope.error());
    checks::Direction dir = direction == "as-written"
                                ? checks::Direction::AsWritten
                                : checks::Direction::Converse;
    Result<CheckReport> report = checks::check_expressiveness(
        v1.value(), v2.value(), scope.value(), dir);
    if (!report.ok()) return fail(err, report.error());
    return finish_check(report.value(), format, out);
  }

  if (kind == "preservation") {
    Result<Scope> scope = build_scope(sa, v1.value(), err);
    if (!scope.ok()) return fail(err, scope.error());
    Result<std::vector<FlatAst>> models =
        checks::enumerate_models(scope.value(), v1.value());
    if (!models.ok()) return fail(err, models.error());

    CheckReport summary;
    summary.condition = "property-preservation";
    summary.scope = scope.value().describe();
    for (const FlatAst& m : models.value()) {
      std::vector<semantics::PropertySpec> properties;
      if (!property.empty()) {
        Result<semantics::PropertySpec> spec =
            semantics::PropertySpec::parse(property);
        if (!spec.ok()) return fail(err, spec.error());
        properties.push_back(spec.value());
      } else {
        properties = checks::builtin_properties(m.states);
      }
      for (const semantics::PropertySpec& phi : properties) {
        Result<CheckReport> one = checks::check_property_preservation(
            m, v1.value(), v2.value(), phi);
        if (!one.ok()) return fail(err, one.error());
        summary.stats.models_checked += 1;
        summary.stats.machines_enumerated +=
            one.value().stats.machines_enumerated;
        if (one.value().verdict == checks::Verdict::Fails) {
          summary.verdict = checks::Verdict::Fails;
          summary.counterexample = one.value().counterexample;
          summary.notes = one.value().notes;
          return finish_check(summary, format, out);
        }
      }
    }
    summary.verdict = checks::Verdict::Holds;
    summary.notes.push_back(property.empty()
                                ? "swept all built-in properties"
                                : "checked property " + property);
    return finish_check(summary, format, out);
  }

  return fail(err, "unknown check kind '" + kind +
                       "' (expected refinement, presentation, abbreviation, "
                       "expressiveness or preservation)");
}

}  // namespace

Result<std::vector<ConcreteModel>> load_corpus(const std::string& path) {
  std::error_code ec;
  fs::file_status status = fs::status(path, ec);
  if (ec || status.type() == fs::file_type::not_found) {
    return Error{ErrorCode::Io, "no such file or directory: '" + path + "'"};
  }
  std::vector<std::string> files;
  if (fs::is_directory(status)) {
    for (const fs::directory_entry& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".sc") {
        files.push_back(entry.path().string());
      }
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<ConcreteModel> out;
  for (const std::string& file : files) {
    Result<std::string> text = read_file(file);
    if (!text.ok()) return text.error();
    out.push_back({fs::path(file).filename().string(), text.value()});
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"statechart language variability workbench"};
  app.require_subcommand(1);

  std::string format_name = "human";
  app.add_option("--format", format_name, "report format")
      ->check(CLI::IsMember({"human", "lines"}));

  // parse / flatten / semantics
  std::string model_path;
  VariantArgs single;
  std::string export_path;
  std::uint64_t cap = checks::kDefaultModelCap;

  CLI::App* cmd_parse = app.add_subcommand("parse", "parse one .sc file");
  cmd_parse->add_option("file", model_path)->required();
  cmd_parse->add_option("--fm", single.fm_path);
  cmd_parse->add_option("--cfg", single.cfg_path);

  CLI::App* cmd_flatten =
      app.add_subcommand("flatten", "parse and flatten one .sc file");
  cmd_flatten->add_option("file", model_path)->required();
  cmd_flatten->add_option("--fm", single.fm_path);
  cmd_flatten->add_option("--cfg", single.cfg_path);

  CLI::App* cmd_semantics = app.add_subcommand(
      "semantics", "enumerate the realizations of one .sc file");
  cmd_semantics->add_option("file", model_path)->required();
  cmd_semantics->add_option("--fm", single.fm_path);
  cmd_semantics->add_option("--cfg", single.cfg_path);
  cmd_semantics->add_option("--export", export_path,
                            "write the machine set to this file");
  cmd_semantics->add_option("--cap", cap, "enumeration cap");

  // check
  std::string kind, direction = "converse", property;
  VariantArgs va, vb;
  ScopeArgs sa;
  CLI::App* cmd_check =
      app.add_subcommand("check", "run a variability condition");
  cmd_check->add_option("kind", kind,
                        "refinement | presentation | abbreviation | "
                        "expressiveness | preservation")
      ->required();
  cmd_check->add_option("--fm", va.fm_path);
  cmd_check->add_option("--cfg-a", va.cfg_path);
  cmd_check->add_option("--cfg-b", vb.cfg_path);
  cmd_check->add_option("--corpus", sa.corpus_path);
  cmd_check->add_option("--events", sa.events_csv);
  cmd_check->add_option("--flags", sa.flags_csv);
  cmd_check->add_option("--max-states", sa.max_states);
  cmd_check->add_option("--min-states", sa.min_states);
  cmd_check->add_option("--cap", sa.cap);
  cmd_check->add_option("--direction", direction)
      ->check(CLI::IsMember({"as-written", "converse"}));
  cmd_check->add_option("--property", property);

  // fm-validate
  VariantArgs fv;
  CLI::App* cmd_fm = app.add_subcommand(
      "fm-validate", "validate a configuration against a feature model");
  cmd_fm->add_option("--fm", fv.fm_path)->required();
  cmd_fm->add_option("--cfg", fv.cfg_path)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  ReportFormat format =
      format_name == "lines" ? ReportFormat::Lines : ReportFormat::Human;

  try {
    if (cmd_parse->parsed() || cmd_flatten->parsed() ||
        cmd_semantics->parsed()) {
      Result<LanguageVariant> v = load_variant(single, err);
      if (!v.ok()) return fail(err, v.error());
      Result<std::vector<ConcreteModel>> models = load_corpus(model_path);
      if (!models.ok()) return fail(err, models.error());
      if (models.value().size() != 1) {
        return fail(err, "expected exactly one model file, got " +
                             std::to_string(models.value().size()));
      }
      Result<Ast> ast = parse_and_check(models.value().front(), v.value(),
                                        err);
      if (!ast.ok()) return fail(err, ast.error());

      if (cmd_parse->parsed()) {
        out << syntax::pretty_print(ast.value(),
                                    v.value().without_presentation_options())
                   .body;
        return kExitOk;
      }

      Result<FlatAst> flat = syntax::flatten(ast.value(), v.value());
      if (!flat.ok()) return fail(err, flat.error());

      if (cmd_flatten->parsed()) {
        out << syntax::pretty_print(
                   syntax::to_ast(flat.value()),
                   v.value().without_presentation_options())
                   .body;
        return kExitOk;
      }

      if (!variability::passes_filters(flat.value(), v.value())) {
        return fail(err, "'" + flat.value().chart_name +
                             "' is excluded by the variant's stereotype or "
                             "constraint filters");
      }
      Result<semantics::SemSet> sem =
          checks::detail::semantics_under(flat.value(), v.value(), cap);
      if (!sem.ok()) return fail(err, sem.error());
      out << "machines: " << sem.value().size() << " (mapping "
          << sem.value().provenance.mapping_id << ", domain "
          << sem.value().provenance.domain_id << ")\n";
      std::string text = semantics::semset_to_text(sem.value());
      if (!export_path.empty()) {
        std::ofstream file(export_path, std::ios::binary);
        if (!file) return fail(err, "cannot write '" + export_path + "'");
        file << text;
      } else {
        out << text;
      }
      return kExitOk;
    }

    if (cmd_check->parsed()) {
      return run_check(kind, va, vb, sa, direction, property, format, out,
                       err);
    }

    if (cmd_fm->parsed()) {
      Result<std::string> fm_text = read_file(fv.fm_path);
      if (!fm_text.ok()) return fail(err, fm_text.error());
      Result<variability::FeatureModel, syntax::ParseErrors> fm =
          variability::parse_feature_model(fm_text.value());
      if (!fm.ok()) {
        print_parse_errors(err, fv.fm_path, fm.error());
        return kExitError;
      }
      Result<std::string> cfg_text = read_file(fv.cfg_path);
      if (!cfg_text.ok()) return fail(err, cfg_text.error());
      variability::Configuration cfg =
          variability::Configuration::from_text(cfg_text.value());
      std::vector<variability::ConfigViolation> violations =
          variability::validate_configuration(fm.value(), cfg);
      if (violations.empty()) {
        out << "ok\n";
        return kExitOk;
      }
      for (const auto& violation : violations) {
        out << violation.code << ": " << violation.message << "\n";
      }
      return kExitError;
    }
  } catch (const std::exception& e) {
    return fail(err, std::string("internal error: ") + e.what());
  }
  return fail(err, "no subcommand given");
}

}  // namespace scvar::cli
