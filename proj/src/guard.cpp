#include <algorithm>
#include <cctype>

#include "scvar/syntax.hpp"

namespace scvar::syntax {

Guard Guard::full(std::uint32_t flag_count) {
  Guard g;
  g.flag_count = flag_count;
  g.sat.resize(std::size_t{1} << flag_count);
  for (std::uint32_t v = 0; v < g.sat.size(); ++v) g.sat[v] = v;
  return g;
}

Guard Guard::none(std::uint32_t flag_count) {
  Guard g;
  g.flag_count = flag_count;
  return g;
}

bool Guard::contains(std::uint32_t valuation) const {
  return std::binary_search(sat.begin(), sat.end(), valuation);
}

Guard Guard::united(const Guard& other) const {
  Guard g = Guard::none(flag_count);
  std::set_union(sat.begin(), sat.end(), other.sat.begin(), other.sat.end(),
                 std::back_inserter(g.sat));
  return g;
}

Guard Guard::intersected(const Guard& other) const {
  Guard g = Guard::none(flag_count);
  std::set_intersection(sat.begin(), sat.end(), other.sat.begin(),
                        other.sat.end(), std::back_inserter(g.sat));
  return g;
}

Guard Guard::minus(const Guard& other) const {
  Guard g = Guard::none(flag_count);
  std::set_difference(sat.begin(), sat.end(), other.sat.begin(),
                      other.sat.end(), std::back_inserter(g.sat));
  return g;
}

bool Guard::overlaps(const Guard& other) const {
  auto a = sat.begin();
  auto b = other.sat.begin();
  while (a != sat.end() && b != other.sat.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      return true;
    }
  }
  return false;
}

std::string guard_to_text(const Guard& guard, const Signature& sig) {
  if (guard.is_full()) return "true";
  if (guard.is_empty()) return "false";
  std::string out;
  for (std::uint32_t mask : guard.sat) {
    if (!out.empty()) out += " | ";
    for (std::size_t i = 0; i < sig.flags.size(); ++i) {
      if (i > 0) out += " & ";
      if ((mask & (std::uint32_t{1} << i)) == 0) out += "!";
      out += sig.flags[i];
    }
  }
  return out;
}

namespace {

// Minimal recursive-descent evaluator for guard expressions. Rather than
// building a syntax tree we evaluate the expression once per valuation;
// the valuation sets involved are tiny.
class GuardParser {
 public:
  GuardParser(std::string_view text, const Signature& sig,
              GuardLanguage language)
      : text_(text), sig_(sig), language_(language) {}

  Result<Guard> run() {
    Guard g = Guard::none(static_cast<std::uint32_t>(sig_.flags.size()));
    for (std::uint32_t v = 0; v < sig_.valuation_count(); ++v) {
      pos_ = 0;
      valuation_ = v;
      Result<bool> r = parse_or();
      if (!r.ok()) return r.error();
      skip_ws();
      if (pos_ != text_.size()) {
        return Error{ErrorCode::InvalidArgument,
                     "unexpected trailing text in guard: '" +
                         std::string(text_.substr(pos_)) + "'"};
      }
      if (r.value()) g.sat.push_back(v);
    }
    return g;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Result<bool> parse_or() {
    Result<bool> lhs = parse_and();
    if (!lhs.ok()) return lhs;
    bool value = lhs.value();
    while (eat('|')) {
      if (language_ == GuardLanguage::Literal) return literal_violation("|");
      Result<bool> rhs = parse_and();
      if (!rhs.ok()) return rhs;
      value = value || rhs.value();
    }
    return value;
  }

  Result<bool> parse_and() {
    Result<bool> lhs = parse_factor();
    if (!lhs.ok()) return lhs;
    bool value = lhs.value();
    while (eat('&')) {
      if (language_ == GuardLanguage::Literal) return literal_violation("&");
      Result<bool> rhs = parse_factor();
      if (!rhs.ok()) return rhs;
      value = value && rhs.value();
    }
    return value;
  }

  Result<bool> parse_factor() {
    if (eat('!')) {
      if (language_ == GuardLanguage::Literal) return literal_violation("!");
      Result<bool> inner = parse_factor();
      if (!inner.ok()) return inner;
      return !inner.value();
    }
    if (eat('(')) {
      if (language_ == GuardLanguage::Literal) return literal_violation("(");
      Result<bool> inner = parse_or();
      if (!inner.ok()) return inner;
      if (!eat(')')) {
        return Error{ErrorCode::InvalidArgument, "missing ')' in guard"};
      }
      return inner;
    }
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) {
      return Error{ErrorCode::InvalidArgument,
                   pos_ < text_.size()
                       ? "unexpected character in guard: '" +
                             std::string(1, text_[pos_]) + "'"
                       : std::string("guard expression is incomplete")};
    }
    std::string_view word = text_.substr(start, pos_ - start);
    if (word == "true") return true;
    if (word == "false") return false;
    if (language_ == GuardLanguage::Literal) {
      return literal_violation(std::string(word));
    }
    int idx = sig_.flag_index(word);
    if (idx < 0) {
      return Error{ErrorCode::UnknownFlag,
                   "guard mentions undeclared flag '" + std::string(word) +
                       "'"};
    }
    return (valuation_ & (std::uint32_t{1} << idx)) != 0;
  }

  Error literal_violation(const std::string& what) const {
    return Error{ErrorCode::GuardLanguageViolation,
                 "guard construct '" + what +
                     "' is not part of the Literal guard language"};
  }

  std::string_view text_;
  const Signature& sig_;
  GuardLanguage language_;
  std::size_t pos_ = 0;
  std::uint32_t valuation_ = 0;
};

}  // namespace

Result<Guard> normalize_guard(std::string_view text, const Signature& sig,
                              GuardLanguage language) {
  // Accept both "[expr]" and bare "expr".
  std::string_view body = text;
  while (!body.empty() &&
         std::isspace(static_cast<unsigned char>(body.front()))) {
    body.remove_prefix(1);
  }
  while (!body.empty() &&
         std::isspace(static_cast<unsigned char>(body.back()))) {
    body.remove_suffix(1);
  }
  if (!body.empty() && body.front() == '[' && body.back() == ']') {
    body = body.substr(1, body.size() - 2);
  }
  bool blank = true;
  for (char c : body) {
    if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
  }
  if (blank) {
    // An omitted guard means `true`.
    return Guard::full(static_cast<std::uint32_t>(sig.flags.size()));
  }
  return GuardParser(body, sig, language).run();
}

}  // namespace scvar::syntax
