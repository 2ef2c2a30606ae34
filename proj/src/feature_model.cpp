#include <cctype>
#include <map>
#include <sstream>

#include "scvar/variability.hpp"

namespace scvar::variability {
namespace {

using syntax::ParseError;
using syntax::ParseErrors;
using syntax::SourcePos;

struct FmToken {
  enum class Kind { Ident, LBrace, RBrace, End } kind;
  std::string text;
  SourcePos pos;
};

std::vector<FmToken> lex_fm(std::string_view src, ParseErrors& errors) {
  std::vector<FmToken> tokens;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    SourcePos pos{line, column};
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c);
      ++i;
    } else if (c == '#' ||
               (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') {
        advance(src[i]);
        ++i;
      }
    } else if (c == '{') {
      tokens.push_back({FmToken::Kind::LBrace, "{", pos});
      advance(c);
      ++i;
    } else if (c == '}') {
      tokens.push_back({FmToken::Kind::RBrace, "}", pos});
      advance(c);
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) ||
              src[i] == '_')) {
        word += src[i];
        advance(src[i]);
        ++i;
      }
      tokens.push_back({FmToken::Kind::Ident, word, pos});
    } else {
      errors.push_back({pos, "lex",
                        std::string("unexpected character '") + c + "'",
                        std::string(1, c)});
      advance(c);
      ++i;
    }
  }
  tokens.push_back({FmToken::Kind::End, "", {line, column}});
  return tokens;
}

class FmParser {
 public:
  FmParser(std::vector<FmToken> tokens, ParseErrors& errors)
      : tokens_(std::move(tokens)), errors_(errors) {}

  FeatureNode run() {
    expect_keyword("feature");
    FeatureNode root = parse_feature(expect_name());
    if (cur().kind != FmToken::Kind::End) {
      error("expected end of input after the root feature");
    }
    return root;
  }

 private:
  const FmToken& cur() const { return tokens_[index_]; }
  const FmToken& advance() { return tokens_[index_++]; }
  bool at_ident(const char* word) const {
    return cur().kind == FmToken::Kind::Ident && cur().text == word;
  }

  void error(std::string message, std::string code = "syntax") {
    errors_.push_back({cur().pos, std::move(code), std::move(message),
                       cur().text});
  }

  void expect_keyword(const char* word) {
    if (at_ident(word)) {
      advance();
    } else {
      error(std::string("expected '") + word + "'");
    }
  }

  std::string expect_name() {
    if (cur().kind == FmToken::Kind::Ident) {
      std::string name = advance().text;
      if (!seen_.insert(name).second) {
        errors_.push_back({tokens_[index_ - 1].pos, "duplicate-feature",
                           "feature name '" + name +
                               "' is declared more than once",
                           name});
      }
      return name;
    }
    error("expected a feature name");
    return "";
  }

  // name already consumed; parses the optional braced body
  FeatureNode parse_feature(std::string name) {
    FeatureNode node;
    node.name = std::move(name);
    if (cur().kind != FmToken::Kind::LBrace) return node;
    advance();
    while (cur().kind != FmToken::Kind::RBrace &&
           cur().kind != FmToken::Kind::End) {
      if (at_ident("mandatory") || at_ident("optional")) {
        bool mandatory = cur().text == "mandatory";
        advance();
        node.named_children.emplace_back(mandatory,
                                         parse_feature(expect_name()));
      } else if (at_ident("alternative") || at_ident("or")) {
        FeatureGroup group;
        group.kind = cur().text == "or" ? FeatureGroup::Kind::Or
                                        : FeatureGroup::Kind::Alternative;
        SourcePos group_pos = cur().pos;
        advance();
        if (cur().kind == FmToken::Kind::LBrace) {
          advance();
          while (cur().kind == FmToken::Kind::Ident) {
            group.members.push_back(parse_feature(expect_name()));
          }
          if (cur().kind == FmToken::Kind::RBrace) {
            advance();
          } else {
            error("expected '}' closing the group");
            break;
          }
        } else {
          error("expected '{' after the group keyword");
        }
        if (group.members.empty()) {
          errors_.push_back({group_pos, "empty-group",
                             "alternative/or group has no members", ""});
        }
        node.groups.push_back(std::move(group));
      } else {
        error("expected 'mandatory', 'optional', 'alternative' or 'or'");
        advance();
      }
    }
    if (cur().kind == FmToken::Kind::RBrace) {
      advance();
    } else {
      error("expected '}' closing the feature body");
    }
    return node;
  }

  std::vector<FmToken> tokens_;
  ParseErrors& errors_;
  std::size_t index_ = 0;
  std::set<std::string> seen_;
};

void collect_names(const FeatureNode& node, std::vector<std::string>& out) {
  out.push_back(node.name);
  for (const auto& [mandatory, child] : node.named_children) {
    collect_names(child, out);
  }
  for (const FeatureGroup& g : node.groups) {
    for (const FeatureNode& m : g.members) collect_names(m, out);
  }
}

const FeatureNode* find_in(const FeatureNode& node, std::string_view name) {
  if (node.name == name) return &node;
  for (const auto& [mandatory, child] : node.named_children) {
    if (const FeatureNode* hit = find_in(child, name)) return hit;
  }
  for (const FeatureGroup& g : node.groups) {
    for (const FeatureNode& m : g.members) {
      if (const FeatureNode* hit = find_in(m, name)) return hit;
    }
  }
  return nullptr;
}

}  // namespace

std::vector<std::string> FeatureModel::all_names() const {
  std::vector<std::string> out;
  collect_names(root, out);
  return out;
}

const FeatureNode* FeatureModel::find(std::string_view name) const {
  return find_in(root, name);
}

Configuration Configuration::from_text(std::string_view text) {
  Configuration cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string name;
    while (fields >> name) cfg.selected.insert(name);
  }
  return cfg;
}

Result<FeatureModel, ParseErrors> parse_feature_model(std::string_view text) {
  ParseErrors errors;
  std::vector<FmToken> tokens = lex_fm(text, errors);
  FeatureModel fm;
  if (errors.empty()) {
    fm.root = FmParser(std::move(tokens), errors).run();
  }
  if (!errors.empty()) return errors;
  return fm;
}

std::vector<ConfigViolation> validate_configuration(const FeatureModel& fm,
                                                    const Configuration& cfg) {
  std::vector<ConfigViolation> out;
  std::map<std::string, std::string> parent_of;
  struct Walk {
    std::map<std::string, std::string>& parent_of;
    void operator()(const FeatureNode& node, const std::string& parent) {
      parent_of[node.name] = parent;
      for (const auto& [mandatory, child] : node.named_children) {
        (*this)(child, node.name);
      }
      for (const FeatureGroup& g : node.groups) {
        for (const FeatureNode& m : g.members) (*this)(m, node.name);
      }
    }
  };
  Walk{parent_of}(fm.root, "");

  auto selected = [&cfg](const std::string& name) {
    return cfg.selected.count(name) != 0;
  };

  for (const std::string& name : cfg.selected) {
    if (!parent_of.count(name)) {
      out.push_back({"unknown-feature", name,
                     "selected feature '" + name +
                         "' does not occur in the feature model"});
    }
  }
  if (!selected(fm.root.name)) {
    out.push_back({"root-unselected", fm.root.name,
                   "root feature '" + fm.root.name + "' is not selected"});
  }
  for (const auto& [name, parent] : parent_of) {
    if (selected(name) && !parent.empty() && !selected(parent)) {
      out.push_back({"parent-unselected", name,
                     "feature '" + name + "' is selected but its parent '" +
                         parent + "' is not"});
    }
  }

  struct Check {
    std::vector<ConfigViolation>& out;
    const std::set<std::string>& sel;
    void operator()(const FeatureNode& node) {
      bool node_selected = sel.count(node.name) != 0;
      for (const auto& [mandatory, child] : node.named_children) {
        if (node_selected && mandatory && !sel.count(child.name)) {
          out.push_back({"mandatory-unselected", child.name,
                         "mandatory feature '" + child.name + "' of '" +
                             node.name + "' is not selected"});
        }
        (*this)(child);
      }
      for (const FeatureGroup& g : node.groups) {
        if (node_selected) {
          int count = 0;
          for (const FeatureNode& m : g.members) {
            count += sel.count(m.name) != 0;
          }
          if (g.kind == FeatureGroup::Kind::Alternative && count != 1) {
            out.push_back({"alternative-cardinality", node.name,
                           "alternative group under '" + node.name +
                               "' needs exactly one selected member, found " +
                               std::to_string(count)});
          }
          if (g.kind == FeatureGroup::Kind::Or && count < 1) {
            out.push_back({"or-cardinality", node.name,
                           "or group under '" + node.name +
                               "' needs at least one selected member"});
          }
        }
        for (const FeatureNode& m : g.members) (*this)(m);
      }
    }
  };
  Check{out, cfg.selected}(fm.root);

  return out;
}

}  // namespace scvar::variability
