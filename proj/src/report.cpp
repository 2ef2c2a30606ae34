#include <sstream>

#include "scvar/cli.hpp"
#include "scvar/semantics.hpp"

namespace scvar::cli {
namespace {

std::string escape_line(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string emit_report(const checks::CheckReport& report,
                        ReportFormat format) {
  const checks::Counterexample* cx =
      report.counterexample ? &*report.counterexample : nullptr;
  if (format == ReportFormat::Lines) {
    std::ostringstream out;
    out << "condition=" << report.condition << "\n";
    out << "verdict=" << checks::to_string(report.verdict) << "\n";
    out << "models_checked=" << report.stats.models_checked << "\n";
    out << "counterexample_model="
        << (cx ? escape_line(cx->model_text) : "") << "\n";
    out << "counterexample_machine="
        << (cx && cx->witness ? semantics::machine_to_line(*cx->witness) : "")
        << "\n";
    out << "scope=" << escape_line(report.scope) << "\n";
    return std::move(out).str();
  }

  std::ostringstream out;
  out << report.condition << ": "
      << checks::to_string(report.verdict) << ", "
      << report.stats.models_checked << " models, "
      << report.stats.machines_enumerated << " machines enumerated";
  if (report.stats.skipped > 0) {
    out << ", " << report.stats.skipped << " skipped";
  }
  out << "\n";
  out << "scope: " << report.scope << "\n";
  for (const std::string& note : report.notes) {
    out << "note: " << note << "\n";
  }
  if (cx) {
    out << "counterexample";
    if (!cx->note.empty()) out << " (" << cx->note << ")";
    out << ":\n" << cx->model_text;
    if (!cx->model_text.empty() && cx->model_text.back() != '\n') out << "\n";
    if (cx->witness) {
      out << "witness machine: " << semantics::machine_to_line(*cx->witness)
          << "\n";
    }
  }
  return std::move(out).str();
}

}  // namespace scvar::cli
