#include <sstream>

#include "scvar/syntax.hpp"

namespace scvar::syntax {
namespace {

class Printer {
 public:
  Printer(const Ast& ast, const LanguageVariant& variant)
      : ast_(ast),
        use_fat_arrow_(variant.has_option(variability::kOptionFatArrow)),
        use_initial_star_(variant.has_option(variability::kOptionInitialStar)) {
  }

  std::string run() {
    print_stereotypes();
    out_ << "statechart " << ast_.chart_name << " {\n";
    print_names("events", ast_.signature.events);
    print_names("flags", ast_.signature.flags);
    if (!use_initial_star_ && ast_.root_initial) {
      out_ << "  initial " << *ast_.root_initial << ";\n";
    }
    for (const StateNode& s : ast_.states) {
      print_state(s, 1, ast_.root_initial);
    }
    out_ << "}\n";
    return std::move(out_).str();
  }

 private:
  void print_stereotypes() {
    if (ast_.stereotypes.empty()) return;
    out_ << "<<";
    bool first = true;
    for (const Stereotype& s : ast_.stereotypes) {
      if (!first) out_ << ", ";
      first = false;
      out_ << s.key;
      if (s.value) out_ << "=" << *s.value;
    }
    out_ << ">> ";
  }

  void print_names(const char* keyword, const std::vector<std::string>& names) {
    if (names.empty()) return;
    out_ << "  " << keyword;
    for (const std::string& n : names) out_ << " " << n;
    out_ << ";\n";
  }

  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }

  void print_state(const StateNode& node, int depth,
                   const std::optional<std::string>& scope_initial) {
    indent(depth);
    if (use_initial_star_ && scope_initial == node.name) out_ << "*";
    out_ << "state " << node.name << " {";

    bool has_body = false;
    std::ostringstream body;
    std::swap(body, out_);
    if (!use_initial_star_ && node.initial) {
      indent(depth + 1);
      out_ << "initial " << *node.initial << ";\n";
      has_body = true;
    }
    for (const Transition& t : ast_.transitions) {
      if (t.source != node.name) continue;
      indent(depth + 1);
      out_ << "on " << t.event;
      if (!t.guard.is_full()) {
        out_ << " [" << guard_to_text(t.guard, ast_.signature) << "]";
      }
      out_ << (use_fat_arrow_ ? " => " : " -> ") << t.target << ";\n";
      has_body = true;
    }
    for (const StateNode& child : node.children) {
      print_state(child, depth + 1, node.initial);
      has_body = true;
    }
    std::swap(body, out_);

    if (has_body) {
      out_ << "\n" << body.str();
      indent(depth);
      out_ << "}\n";
    } else {
      out_ << " }\n";
    }
  }

  const Ast& ast_;
  bool use_fat_arrow_;
  bool use_initial_star_;
  std::ostringstream out_;
};

}  // namespace

ConcreteModel pretty_print(const Ast& ast, const LanguageVariant& variant) {
  return ConcreteModel{ast.chart_name + ".sc", Printer(ast, variant).run()};
}

}  // namespace scvar::syntax
