#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scvar/checks.hpp"
#include "scvar/result.hpp"
#include "scvar/syntax.hpp"

namespace scvar::cli {

enum class ReportFormat { Human, Lines };

/// Renders a check report. The `lines` format emits exactly the keys
/// condition, verdict, models_checked, counterexample_model,
/// counterexample_machine and scope, one `key=value` per line, in that
/// order, with newlines in values escaped as \n.
std::string emit_report(const checks::CheckReport& report,
                        ReportFormat format);

/// Loads `*.sc` files from a file or directory (sorted by name). An empty
/// corpus is legal.
Result<std::vector<syntax::ConcreteModel>> load_corpus(
    const std::string& path);

/// Exit codes: 0 success or verdict holds, 1 check fails, 2 usage, parse or
/// configuration error, 3 enumeration cap exceeded.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace scvar::cli
