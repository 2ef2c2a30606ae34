#pragma once

#include "scvar/syntax.hpp"

namespace scvar::syntax::detail {

// Core of the hierarchy-eliminating transformation. Assumes the structural
// wellformedness checks have passed; determinism is not required (the
// wellformedness checker itself runs this to find determinism violations).
FlatAst flatten_unchecked(const Ast& ast);

}  // namespace scvar::syntax::detail
