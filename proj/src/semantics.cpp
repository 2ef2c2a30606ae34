#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "scvar/semantics.hpp"

namespace scvar::semantics {
namespace {

// -1 for unspecified, otherwise the target state index.
Result<std::vector<int>> specified_triples(const FlatAst& m,
                                           const Universe& u) {
  const std::size_t n_events = u.signature.events.size();
  const std::size_t n_vals = u.signature.valuation_count();
  std::vector<int> spec(u.delta_size(), -1);
  for (const syntax::Transition& t : m.transitions) {
    int q = u.state_index(t.source);
    int target = u.state_index(t.target);
    int e = u.signature.event_index(t.event);
    if (q < 0 || target < 0 || e < 0) {
      return Error{ErrorCode::InvalidArgument,
                   "transition (" + t.source + ", " + t.event + ", " +
                       t.target + ") does not fit the universe"};
    }
    for (std::uint32_t v : t.guard.sat) {
      std::size_t pos =
          (static_cast<std::size_t>(q) * n_events + e) * n_vals + v;
      if (spec[pos] != -1 && spec[pos] != target) {
        return Error{ErrorCode::InvalidArgument,
                     "chart is nondeterministic at (" + t.source + ", " +
                         t.event + ")"};
      }
      spec[pos] = target;
    }
  }
  return spec;
}

}  // namespace

Result<SemSet> semantics_of(const FlatAst& m, Mapping mapping,
                            const DomainVariant& dv, std::uint64_t cap) {
  Universe universe = Universe::of(m);
  if (universe.states.empty()) {
    return Error{ErrorCode::InvalidArgument,
                 "chart '" + m.chart_name + "' has no states"};
  }
  Result<std::vector<int>> spec = specified_triples(m, universe);
  if (!spec.ok()) return spec.error();

  SemSet set;
  set.provenance = {variability::to_string(mapping), dv.id, universe};

  Machine base;
  base.states = universe.states;
  base.initial = universe.initial;
  base.signature = universe.signature;
  base.delta.assign(universe.delta_size(), 0);

  if (mapping == Mapping::Ignore) {
    // Unspecified triples discard the event: self-loop completion.
    const std::size_t n_events = universe.signature.events.size();
    const std::size_t n_vals = universe.signature.valuation_count();
    for (std::size_t q = 0; q < universe.states.size(); ++q) {
      for (std::size_t e = 0; e < n_events; ++e) {
        for (std::size_t v = 0; v < n_vals; ++v) {
          std::size_t pos = base.index(q, e, v);
          int t = spec.value()[pos];
          base.delta[pos] =
              t >= 0 ? static_cast<std::uint16_t>(t)
                     : static_cast<std::uint16_t>(q);
        }
      }
    }
    if (dv.holds(base)) set.machines.push_back(std::move(base));
    return set;
  }

  // Chaos: every completion of the specified triples.
  std::vector<std::size_t> free_slots;
  for (std::size_t pos = 0; pos < spec.value().size(); ++pos) {
    int t = spec.value()[pos];
    if (t >= 0) {
      base.delta[pos] = static_cast<std::uint16_t>(t);
    } else {
      free_slots.push_back(pos);
    }
  }
  const std::uint64_t n = universe.states.size();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < free_slots.size(); ++i) {
    if (count > cap / n) {
      return Error{ErrorCode::DomainTooLarge,
                   "semantics of '" + m.chart_name + "' has " +
                       std::to_string(n) + "^" +
                       std::to_string(free_slots.size()) +
                       " machines, exceeding cap " + std::to_string(cap)};
    }
    count *= n;
  }

  std::vector<std::uint16_t> choice(free_slots.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < free_slots.size(); ++i) {
      base.delta[free_slots[i]] = choice[i];
    }
    if (dv.holds(base)) set.machines.push_back(base);
    std::size_t i = free_slots.size();
    bool carried = false;
    while (i > 0) {
      --i;
      if (choice[i] + 1u < n) {
        ++choice[i];
        std::fill(choice.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                  choice.end(), 0);
        carried = true;
        break;
      }
    }
    if (!carried) break;
  }
  // Generation order is delta-lexicographic already; assert-free sort keeps
  // the sortedness invariant robust against future generator changes.
  std::sort(set.machines.begin(), set.machines.end());
  return set;
}

Result<Mapping> resolve_mapping(const FlatAst& m, const LanguageVariant& v) {
  bool chaos = false, ignore = false;
  for (const syntax::Stereotype& s : m.stereotypes) {
    if (s.key != "completion") continue;
    if (s.value == "chaos") {
      chaos = true;
    } else if (s.value == "ignore") {
      ignore = true;
    } else {
      return Error{ErrorCode::InvalidArgument,
                   "stereotype completion=" + s.value.value_or("<none>") +
                       " names no known mapping"};
    }
  }
  if (chaos && ignore) {
    return Error{ErrorCode::ConflictingStereotype,
                 "chart '" + m.chart_name +
                     "' carries both completion=chaos and completion=ignore"};
  }
  if (chaos) return Mapping::Chaos;
  if (ignore) return Mapping::Ignore;
  return v.mapping;
}

Machine canonicalize(const Machine& s) {
  const std::size_t n = s.states.size();
  const std::size_t n_events = s.signature.events.size();
  const std::size_t n_vals = s.signature.valuation_count();

  // Events are visited in name order so the traversal does not depend on
  // declaration order.
  std::vector<std::size_t> event_order(n_events);
  std::iota(event_order.begin(), event_order.end(), 0);
  std::sort(event_order.begin(), event_order.end(),
            [&s](std::size_t a, std::size_t b) {
              return s.signature.events[a] < s.signature.events[b];
            });

  int initial = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (s.states[i] == s.initial) initial = static_cast<int>(i);
  }

  std::vector<int> new_index(n, -1);
  std::size_t next = 0;
  if (initial >= 0) {
    std::deque<std::size_t> queue;
    new_index[initial] = static_cast<int>(next++);
    queue.push_back(initial);
    while (!queue.empty()) {
      std::size_t q = queue.front();
      queue.pop_front();
      for (std::size_t e : event_order) {
        for (std::size_t v = 0; v < n_vals; ++v) {
          std::size_t t = s.delta[s.index(q, e, v)];
          if (new_index[t] < 0) {
            new_index[t] = static_cast<int>(next++);
            queue.push_back(t);
          }
        }
      }
    }
  }
  // Unreachable states keep their relative name order.
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (new_index[i] < 0) rest.push_back(i);
  }
  std::sort(rest.begin(), rest.end(), [&s](std::size_t a, std::size_t b) {
    return s.states[a] < s.states[b];
  });
  for (std::size_t i : rest) new_index[i] = static_cast<int>(next++);

  // Zero-padded names keep lexicographic order equal to numeric order, which
  // makes canonicalize idempotent.
  std::size_t width = std::to_string(n == 0 ? 0 : n - 1).size();
  auto name_of = [width](std::size_t idx) {
    std::string digits = std::to_string(idx);
    return "q" + std::string(width - digits.size(), '0') + digits;
  };

  Machine out;
  out.signature = s.signature;
  out.states.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.states[i] = name_of(i);
  out.initial = initial >= 0 ? name_of(new_index[initial]) : "";
  out.delta.assign(s.delta.size(), 0);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t e = 0; e < n_events; ++e) {
      for (std::size_t v = 0; v < n_vals; ++v) {
        std::size_t t = s.delta[s.index(q, e, v)];
        out.delta[out.index(new_index[q], e, v)] =
            static_cast<std::uint16_t>(new_index[t]);
      }
    }
  }
  return out;
}

namespace {

Result<bool> comparable(const SemSet& a, const SemSet& b) {
  if (a.provenance.universe == b.provenance.universe) return true;
  return Error{ErrorCode::IncomparableUniverses,
               "semantics sets range over different universes"};
}

}  // namespace

Result<SemSet> integrated_semantics(const std::vector<SemSet>& sets) {
  if (sets.empty()) {
    return Error{ErrorCode::InvalidArgument,
                 "integrated semantics of zero sets is undefined"};
  }
  SemSet out = sets.front();
  for (std::size_t i = 1; i < sets.size(); ++i) {
    Result<bool> cmp = comparable(out, sets[i]);
    if (!cmp.ok()) return cmp.error();
    std::vector<Machine> merged;
    std::set_intersection(out.machines.begin(), out.machines.end(),
                          sets[i].machines.begin(), sets[i].machines.end(),
                          std::back_inserter(merged));
    out.machines = std::move(merged);
    out.provenance.mapping_id += "&" + sets[i].provenance.mapping_id;
    out.provenance.domain_id += "&" + sets[i].provenance.domain_id;
  }
  return out;
}

Result<bool> is_model_refinement(const SemSet& refined,
                                 const SemSet& original) {
  Result<bool> cmp = comparable(refined, original);
  if (!cmp.ok()) return cmp.error();
  return std::includes(original.machines.begin(), original.machines.end(),
                       refined.machines.begin(), refined.machines.end());
}

Result<PropertySpec> PropertySpec::parse(std::string_view text) {
  PropertySpec spec;
  if (text == "all-reachable") {
    spec.kind = Kind::AllStatesReachable;
    return spec;
  }
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    std::string_view head = text.substr(0, colon);
    std::string_view state = text.substr(colon + 1);
    if (!state.empty() && (head == "reachable" || head == "unreachable")) {
      spec.kind = head == "reachable" ? Kind::Reachable : Kind::Unreachable;
      spec.state = std::string(state);
      return spec;
    }
  }
  return Error{ErrorCode::InvalidArgument,
               "cannot parse property '" + std::string(text) +
                   "' (expected reachable:<state>, unreachable:<state> or "
                   "all-reachable)"};
}

std::string PropertySpec::to_string() const {
  switch (kind) {
    case Kind::Reachable: return "reachable:" + state;
    case Kind::Unreachable: return "unreachable:" + state;
    case Kind::AllStatesReachable: return "all-reachable";
  }
  return "";
}

Result<bool> eval_property(const Machine& s, const PropertySpec& phi) {
  std::vector<bool> seen = s.reachable();
  switch (phi.kind) {
    case PropertySpec::Kind::AllStatesReachable:
      return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    case PropertySpec::Kind::Reachable:
    case PropertySpec::Kind::Unreachable: {
      int idx = -1;
      for (std::size_t i = 0; i < s.states.size(); ++i) {
        if (s.states[i] == phi.state) idx = static_cast<int>(i);
      }
      if (idx < 0) {
        return Error{ErrorCode::UnknownState,
                     "property mentions unknown state '" + phi.state + "'"};
      }
      bool r = seen[static_cast<std::size_t>(idx)];
      return phi.kind == PropertySpec::Kind::Reachable ? r : !r;
    }
  }
  return false;
}

Result<bool> holds_universally(const SemSet& set, const PropertySpec& phi) {
  for (const Machine& s : set.machines) {
    Result<bool> r = eval_property(s, phi);
    if (!r.ok()) return r;
    if (!r.value()) return false;
  }
  return true;
}

}  // namespace scvar::semantics
