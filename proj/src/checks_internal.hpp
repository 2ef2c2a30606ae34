#pragma once

#include "scvar/checks.hpp"

namespace scvar::checks::detail {

// Canonical base-notation text for counterexample reporting.
std::string model_text(const syntax::FlatAst& m);
std::string model_text(const syntax::Ast& ast);

// Resolves mapping and domain variant for one model under one variant and
// computes its semantics set.
Result<semantics::SemSet> semantics_under(const syntax::FlatAst& m,
                                          const LanguageVariant& v,
                                          std::uint64_t cap);

}  // namespace scvar::checks::detail
