#include <algorithm>
#include <sstream>

#include "scvar/checks.hpp"

namespace scvar::checks {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::HoldsUpToBound: return "holds_up_to_bound";
  }
  return "unknown";
}

Scope Scope::enumerated_scope(Signature sig, int min_states, int max_states) {
  Scope s;
  s.signature = std::move(sig);
  s.min_states = min_states;
  s.max_states = max_states;
  return s;
}

Scope Scope::corpus_scope(std::vector<FlatAst> models) {
  Scope s;
  if (!models.empty()) s.signature = models.front().signature;
  s.corpus = std::move(models);
  return s;
}

std::string Scope::describe() const {
  std::ostringstream out;
  if (corpus) {
    out << "corpus(" << corpus->size() << " models)";
    return std::move(out).str();
  }
  out << "enumerated(states " << min_states << ".." << max_states
      << ", events [";
  for (std::size_t i = 0; i < signature.events.size(); ++i) {
    if (i) out << " ";
    out << signature.events[i];
  }
  out << "], flags [";
  for (std::size_t i = 0; i < signature.flags.size(); ++i) {
    if (i) out << " ";
    out << signature.flags[i];
  }
  out << "])";
  return std::move(out).str();
}

namespace {

std::vector<std::string> state_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    names.push_back(std::string(1, static_cast<char>('A' + i)));
  }
  return names;
}

}  // namespace

Result<std::vector<FlatAst>> enumerate_models(const Scope& scope,
                                              const LanguageVariant& v) {
  if (scope.corpus) {
    std::vector<FlatAst> out;
    for (const FlatAst& m : *scope.corpus) {
      if (variability::passes_filters(m, v)) out.push_back(m);
    }
    return out;
  }

  if (scope.min_states < 1 || scope.max_states < scope.min_states) {
    return Error{ErrorCode::ScopeTooLarge,
                 "scope needs 1 <= min states <= max states, got " +
                     std::to_string(scope.min_states) + ".." +
                     std::to_string(scope.max_states)};
  }
  if (scope.max_states > 26) {
    return Error{ErrorCode::ScopeTooLarge,
                 "enumerated scopes support at most 26 states"};
  }

  // Total size check before any model is materialized.
  std::uint64_t total = 0;
  for (int n = scope.min_states; n <= scope.max_states; ++n) {
    std::uint64_t combos = 1;
    std::uint64_t slots = static_cast<std::uint64_t>(n) *
                          scope.signature.events.size() *
                          scope.signature.valuation_count();
    for (std::uint64_t i = 0; i < slots; ++i) {
      if (combos > scope.model_cap / (n + 1)) {
        return Error{ErrorCode::ScopeTooLarge,
                     "scope of (" + std::to_string(n + 1) + ")^" +
                         std::to_string(slots) + " models exceeds cap " +
                         std::to_string(scope.model_cap)};
      }
      combos *= n + 1;
    }
    total += combos;
    if (total > scope.model_cap) {
      return Error{ErrorCode::ScopeTooLarge,
                   "scope of " + std::to_string(total) +
                       "+ models exceeds cap " +
                       std::to_string(scope.model_cap)};
    }
  }

  const std::size_t n_events = scope.signature.events.size();
  const std::size_t n_vals = scope.signature.valuation_count();
  std::vector<FlatAst> out;
  for (int n = scope.min_states; n <= scope.max_states; ++n) {
    std::vector<std::string> states = state_names(n);
    const std::size_t slots =
        static_cast<std::size_t>(n) * n_events * n_vals;
    // Choice per (state, event, valuation) triple: 0 = unspecified,
    // k = target state k-1. The odometer runs last-triple-fastest, so the
    // all-unspecified chart comes first.
    std::vector<int> choice(slots, 0);
    while (true) {
      FlatAst m;
      m.chart_name = "M";
      m.signature = scope.signature;
      m.states = states;
      m.initial = states.front();
      for (std::size_t q = 0; q < static_cast<std::size_t>(n); ++q) {
        for (std::size_t e = 0; e < n_events; ++e) {
          // One transition per distinct target, guarded by the exact set of
          // valuations that pick it.
          for (int target = 0; target < n; ++target) {
            syntax::Guard g = syntax::Guard::none(
                static_cast<std::uint32_t>(scope.signature.flags.size()));
            for (std::size_t val = 0; val < n_vals; ++val) {
              if (choice[(q * n_events + e) * n_vals + val] == target + 1) {
                g.sat.push_back(static_cast<std::uint32_t>(val));
              }
            }
            if (!g.is_empty()) {
              m.transitions.push_back({states[q],
                                       scope.signature.events[e], g,
                                       states[target]});
            }
          }
        }
      }
      m.normalize();
      if (variability::passes_filters(m, v)) out.push_back(std::move(m));

      std::size_t i = slots;
      bool carried = false;
      while (i > 0) {
        --i;
        if (choice[i] < n) {
          ++choice[i];
          std::fill(choice.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                    choice.end(), 0);
          carried = true;
          break;
        }
      }
      if (!carried) break;
    }
  }
  return out;
}

}  // namespace scvar::checks
