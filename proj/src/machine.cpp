#include <algorithm>
#include <deque>
#include <sstream>

#include "scvar/semantics.hpp"

namespace scvar::semantics {

Universe Universe::of(const FlatAst& m) {
  return Universe{m.states, m.initial, m.signature};
}

int Universe::state_index(std::string_view name) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<bool> Machine::reachable() const {
  const std::size_t n_events = signature.events.size();
  const std::size_t n_vals = signature.valuation_count();
  std::vector<bool> seen(states.size(), false);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == initial) {
      seen[i] = true;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    std::size_t q = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < n_events; ++e) {
      for (std::size_t v = 0; v < n_vals; ++v) {
        std::size_t t = delta[index(q, e, v)];
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
      }
    }
  }
  return seen;
}

Result<DomainVariant> DomainVariant::from_id(std::string_view id) {
  DomainVariant dv;
  dv.id = std::string(id);
  if (id == "StatesEqualSyntactic") {
    dv.kind = Kind::StatesEqualSyntactic;
  } else if (id == "SelfLoopFreeInitial") {
    dv.kind = Kind::SelfLoopFreeInitial;
  } else if (id == "AllStatesReachable") {
    dv.kind = Kind::AllStatesReachable;
  } else {
    return Error{ErrorCode::InvalidArgument,
                 "unknown domain variant '" + std::string(id) + "'"};
  }
  return dv;
}

bool DomainVariant::holds(const Machine& s) const {
  switch (kind) {
    case Kind::StatesEqualSyntactic:
      // The machine's state set is the universe it was enumerated over,
      // which is the model's state set by construction.
      return true;
    case Kind::SelfLoopFreeInitial: {
      int init = -1;
      for (std::size_t i = 0; i < s.states.size(); ++i) {
        if (s.states[i] == s.initial) init = static_cast<int>(i);
      }
      if (init < 0) return false;
      const std::size_t n_events = s.signature.events.size();
      const std::size_t n_vals = s.signature.valuation_count();
      for (std::size_t e = 0; e < n_events; ++e) {
        for (std::size_t v = 0; v < n_vals; ++v) {
          if (s.delta[s.index(init, e, v)] == static_cast<std::size_t>(init)) {
            return false;
          }
        }
      }
      return true;
    }
    case Kind::AllStatesReachable: {
      std::vector<bool> seen = s.reachable();
      return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }
  }
  return true;
}

bool SemSet::contains(const Machine& s) const {
  return std::binary_search(machines.begin(), machines.end(), s);
}

Result<std::vector<Machine>> enumerate_domain(const Universe& universe,
                                              const DomainVariant& dv,
                                              std::uint64_t cap) {
  const std::size_t n = universe.states.size();
  if (n == 0) {
    return Error{ErrorCode::InvalidArgument, "universe has no states"};
  }
  const std::size_t slots = universe.delta_size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < slots; ++i) {
    if (total > cap / n) {
      return Error{ErrorCode::DomainTooLarge,
                   "domain of " + std::to_string(n) + "^" +
                       std::to_string(slots) + " machines exceeds cap " +
                       std::to_string(cap)};
    }
    total *= n;
  }

  std::vector<Machine> out;
  Machine m;
  m.states = universe.states;
  m.initial = universe.initial;
  m.signature = universe.signature;
  m.delta.assign(slots, 0);
  while (true) {
    if (dv.holds(m)) out.push_back(m);
    // Odometer over the delta vector, last slot fastest.
    std::size_t i = slots;
    while (i > 0) {
      --i;
      if (m.delta[i] + 1u < n) {
        ++m.delta[i];
        std::fill(m.delta.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                  m.delta.end(), 0);
        break;
      }
      if (i == 0) return out;
    }
    if (slots == 0) return out;  // single possible machine
  }
}

std::string machine_to_line(const Machine& s) {
  struct Entry {
    std::string state, event, val;
    std::string target;
  };
  std::vector<Entry> entries;
  const std::size_t n_events = s.signature.events.size();
  const std::size_t n_vals = s.signature.valuation_count();
  for (std::size_t q = 0; q < s.states.size(); ++q) {
    for (std::size_t e = 0; e < n_events; ++e) {
      for (std::size_t v = 0; v < n_vals; ++v) {
        std::string val;
        for (std::size_t f = 0; f < s.signature.flags.size(); ++f) {
          val += (v & (std::size_t{1} << f)) ? '1' : '0';
        }
        entries.push_back({s.states[q], s.signature.events[e], val,
                           s.states[s.delta[s.index(q, e, v)]]});
      }
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.state, a.event, a.val) < std::tie(b.state, b.event, b.val);
  });
  std::ostringstream out;
  out << "initial=" << s.initial;
  for (const Entry& e : entries) {
    out << "; " << e.state << "," << e.event << "," << e.val << "->"
        << e.target;
  }
  return std::move(out).str();
}

std::string semset_to_text(const SemSet& set) {
  std::string out;
  for (const Machine& m : set.machines) {
    out += machine_to_line(m);
    out += '\n';
  }
  return out;
}

}  // namespace scvar::semantics
