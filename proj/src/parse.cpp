#include <algorithm>
#include <cctype>

#include "scvar/syntax.hpp"

namespace scvar::syntax {
namespace {

enum class Tok {
  Ident,
  LBrace,
  RBrace,
  Semi,
  Comma,
  StereoOpen,   // <<
  StereoClose,  // >>
  Equals,
  Arrow,     // ->
  FatArrow,  // =>
  Star,
  GuardText,  // raw text between [ and ]
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  Lexer(std::string_view src, ParseErrors& errors)
      : src_(src), errors_(errors) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_trivia();
      SourcePos pos = here();
      if (at_end()) {
        tokens.push_back({Tok::End, "", pos});
        return tokens;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string word;
        while (!at_end() &&
               (std::isalnum(static_cast<unsigned char>(peek())) ||
                peek() == '_')) {
          word += take();
        }
        tokens.push_back({Tok::Ident, word, pos});
        continue;
      }
      switch (c) {
        case '{': take(); tokens.push_back({Tok::LBrace, "{", pos}); break;
        case '}': take(); tokens.push_back({Tok::RBrace, "}", pos}); break;
        case ';': take(); tokens.push_back({Tok::Semi, ";", pos}); break;
        case ',': take(); tokens.push_back({Tok::Comma, ",", pos}); break;
        case '*': take(); tokens.push_back({Tok::Star, "*", pos}); break;
        case '<':
          take();
          if (!at_end() && peek() == '<') {
            take();
            tokens.push_back({Tok::StereoOpen, "<<", pos});
          } else {
            error(pos, "stray '<'", "<");
          }
          break;
        case '>':
          take();
          if (!at_end() && peek() == '>') {
            take();
            tokens.push_back({Tok::StereoClose, ">>", pos});
          } else {
            error(pos, "stray '>'", ">");
          }
          break;
        case '-':
          take();
          if (!at_end() && peek() == '>') {
            take();
            tokens.push_back({Tok::Arrow, "->", pos});
          } else {
            error(pos, "stray '-'", "-");
          }
          break;
        case '=':
          take();
          if (!at_end() && peek() == '>') {
            take();
            tokens.push_back({Tok::FatArrow, "=>", pos});
          } else {
            tokens.push_back({Tok::Equals, "=", pos});
          }
          break;
        case '[': {
          take();
          std::string text;
          bool closed = false;
          while (!at_end()) {
            if (peek() == ']') {
              take();
              closed = true;
              break;
            }
            text += take();
          }
          if (!closed) {
            error(pos, "guard bracket '[' is never closed", "[");
          }
          tokens.push_back({Tok::GuardText, text, pos});
          break;
        }
        default:
          error(here(), std::string("unexpected character '") + c + "'",
                std::string(1, c));
          take();
          break;
      }
    }
  }

 private:
  bool at_end() const { return offset_ >= src_.size(); }
  char peek() const { return src_[offset_]; }
  char take() {
    char c = src_[offset_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }
  SourcePos here() const { return {line_, column_}; }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else if (c == '/' && offset_ + 1 < src_.size() &&
                 src_[offset_ + 1] == '/') {
        while (!at_end() && peek() != '\n') take();
      } else {
        return;
      }
    }
  }

  void error(SourcePos pos, std::string message, std::string token) {
    errors_.push_back({pos, "lex", std::move(message), std::move(token)});
  }

  std::string_view src_;
  ParseErrors& errors_;
  std::size_t offset_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct RawTransition {
  std::string source;
  std::string event;
  std::optional<std::string> guard_text;
  SourcePos guard_pos;
  std::string target;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const LanguageVariant& variant,
         ParseErrors& errors)
      : tokens_(std::move(tokens)), variant_(variant), errors_(errors) {}

  void run(Ast& ast, std::vector<RawTransition>& raw) {
    parse_stereotypes(ast);
    expect_keyword("statechart");
    ast.chart_name = expect_name("chart name");
    expect(Tok::LBrace, "'{'");
    parse_body(ast, raw, /*enclosing=*/nullptr, ast.root_initial);
    expect(Tok::End, "end of input");
  }

 private:
  const Token& cur() const { return tokens_[index_]; }
  const Token& advance() { return tokens_[index_++]; }
  bool at(Tok kind) const { return cur().kind == kind; }

  bool at_keyword(const char* word) const {
    return cur().kind == Tok::Ident && cur().text == word;
  }

  void error_here(std::string code, std::string message) {
    errors_.push_back({cur().pos, std::move(code), std::move(message),
                       cur().text});
  }

  void expect_keyword(const char* word) {
    if (at_keyword(word)) {
      advance();
    } else {
      error_here("syntax", std::string("expected '") + word + "'");
      recover();
    }
  }

  std::string expect_name(const char* what) {
    if (at(Tok::Ident)) return advance().text;
    error_here("syntax", std::string("expected ") + what);
    return "";
  }

  void expect(Tok kind, const char* what) {
    if (at(kind)) {
      advance();
    } else {
      error_here("syntax", std::string("expected ") + what);
      recover();
    }
  }

  // Panic-mode recovery: skip to the next ';' or '}' so later declarations
  // still get looked at.
  void recover() {
    while (!at(Tok::End) && !at(Tok::Semi) && !at(Tok::RBrace)) advance();
    if (at(Tok::Semi)) advance();
  }

  void parse_stereotypes(Ast& ast) {
    if (!at(Tok::StereoOpen)) return;
    advance();
    while (true) {
      std::string key = expect_name("stereotype key");
      std::optional<std::string> value;
      if (at(Tok::Equals)) {
        advance();
        value = expect_name("stereotype value");
      }
      if (!key.empty()) ast.stereotypes.push_back({key, value});
      if (at(Tok::Comma)) {
        advance();
        continue;
      }
      break;
    }
    expect(Tok::StereoClose, "'>>'");
  }

  // Parses the declarations of one scope (the chart body or a state body).
  // `enclosing` is the state whose body this is, or null for the chart body.
  void parse_body(Ast& ast, std::vector<RawTransition>& raw,
                  StateNode* enclosing,
                  std::optional<std::string>& scope_initial) {
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      if (at_keyword("events")) {
        advance();
        parse_name_list(ast.signature.events, "event");
      } else if (at_keyword("flags")) {
        advance();
        parse_name_list(ast.signature.flags, "flag");
      } else if (at_keyword("initial")) {
        SourcePos pos = cur().pos;
        advance();
        std::string name = expect_name("initial state name");
        expect(Tok::Semi, "';'");
        set_initial(scope_initial, name, pos);
      } else if (at(Tok::Star)) {
        SourcePos pos = cur().pos;
        advance();
        if (!variant_.has_option(variability::kOptionInitialStar)) {
          errors_.push_back({pos, "disabled-presentation-option",
                             "presentation option InitialStar is not enabled",
                             "*"});
        }
        if (!at_keyword("state")) {
          error_here("syntax", "expected 'state' after '*'");
          recover();
          continue;
        }
        std::string name = parse_state(ast, raw);
        set_initial(scope_initial, name, pos);
      } else if (at_keyword("state")) {
        parse_state(ast, raw);
      } else if (at_keyword("on")) {
        if (enclosing == nullptr) {
          error_here("syntax", "transition outside of a state body");
          recover();
          continue;
        }
        parse_transition(raw, enclosing->name);
      } else {
        error_here("syntax", "expected a declaration");
        recover();
      }
      // Children parsed by parse_state attach themselves via state_stack_.
      if (enclosing == nullptr) {
        attach_pending(ast.states);
      } else {
        attach_pending(enclosing->children);
      }
    }
    expect(Tok::RBrace, "'}'");
  }

  void attach_pending(std::vector<StateNode>& into) {
    for (StateNode& n : pending_) into.push_back(std::move(n));
    pending_.clear();
  }

  // Returns the parsed state's name. The node itself is left in pending_
  // for the caller's scope to attach.
  std::string parse_state(Ast& ast, std::vector<RawTransition>& raw) {
    advance();  // 'state'
    StateNode node;
    node.name = expect_name("state name");
    if (at(Tok::Semi)) {
      advance();
    } else if (at(Tok::LBrace)) {
      advance();
      std::vector<StateNode> saved_pending = std::move(pending_);
      pending_.clear();
      parse_body(ast, raw, &node, node.initial);
      pending_ = std::move(saved_pending);
    } else {
      error_here("syntax", "expected ';' or '{' after state name");
      recover();
    }
    std::string name = node.name;
    pending_.push_back(std::move(node));
    return name;
  }

  void parse_transition(std::vector<RawTransition>& raw,
                        const std::string& source) {
    advance();  // 'on'
    RawTransition t;
    t.source = source;
    t.event = expect_name("event name");
    if (at(Tok::GuardText)) {
      t.guard_pos = cur().pos;
      t.guard_text = advance().text;
    }
    if (at(Tok::FatArrow)) {
      if (!variant_.has_option(variability::kOptionFatArrow)) {
        error_here("disabled-presentation-option",
                   "presentation option FatArrow is not enabled");
      }
      advance();
    } else if (at(Tok::Arrow)) {
      advance();
    } else {
      error_here("syntax", "expected '->'");
      recover();
      return;
    }
    t.target = expect_name("target state name");
    expect(Tok::Semi, "';'");
    if (!t.event.empty() && !t.target.empty()) raw.push_back(std::move(t));
  }

  void parse_name_list(std::vector<std::string>& into, const char* what) {
    bool any = false;
    while (at(Tok::Ident)) {
      into.push_back(advance().text);
      any = true;
    }
    if (!any) error_here("syntax", std::string("expected at least one ") +
                                       what + " name");
    expect(Tok::Semi, "';'");
  }

  void set_initial(std::optional<std::string>& slot, const std::string& name,
                   SourcePos pos) {
    if (slot.has_value()) {
      errors_.push_back({pos, "duplicate-initial",
                         "initial state is declared more than once", name});
    } else if (!name.empty()) {
      slot = name;
    }
  }

  std::vector<Token> tokens_;
  const LanguageVariant& variant_;
  ParseErrors& errors_;
  std::size_t index_ = 0;
  std::vector<StateNode> pending_;
};

}  // namespace

Result<Ast, ParseErrors> parse(const ConcreteModel& model,
                               const LanguageVariant& variant) {
  ParseErrors errors;
  std::vector<Token> tokens = Lexer(model.body, errors).run();
  Ast ast;
  std::vector<RawTransition> raw;
  if (errors.empty()) {
    Parser(std::move(tokens), variant, errors).run(ast, raw);
  }

  // Guards can only be normalized once the whole signature is known, since
  // flag declarations may follow their first use.
  const std::uint32_t flag_count =
      static_cast<std::uint32_t>(ast.signature.flags.size());
  for (RawTransition& t : raw) {
    Guard guard = Guard::full(flag_count);
    if (t.guard_text) {
      Result<Guard> normalized =
          normalize_guard(*t.guard_text, ast.signature, variant.guard_language);
      if (!normalized.ok()) {
        errors.push_back({t.guard_pos, to_string(normalized.error().code),
                          normalized.error().message, *t.guard_text});
        continue;
      }
      guard = normalized.value();
    }
    ast.transitions.push_back(
        {std::move(t.source), std::move(t.event), std::move(guard),
         std::move(t.target)});
  }

  if (!errors.empty()) return errors;

  std::sort(ast.stereotypes.begin(), ast.stereotypes.end());
  ast.stereotypes.erase(
      std::unique(ast.stereotypes.begin(), ast.stereotypes.end()),
      ast.stereotypes.end());
  for (const Stereotype& s : ast.stereotypes) {
    ast.signature.stereotype_vocabulary.insert({s.key, s.value.value_or("")});
  }
  return ast;
}

}  // namespace scvar::syntax
