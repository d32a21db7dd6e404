#include "dmod/parse.hpp"

#include <cctype>

namespace dmod {

namespace {

class Parser {
 public:
  Parser(const RingPtr& ring, std::string_view text) : ring_(ring), s_(text) {}

  WeylOperator parse_all() {
    WeylOperator r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  WeylOperator expr() {
    WeylOperator acc(ring_);
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    WeylOperator t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  WeylOperator term() {
    WeylOperator acc = factor();
    for (;;) {
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        WeylOperator d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc *= Rational(1) / d.terms()[0].second;
      } else {
        break;
      }
    }
    return acc;
  }

  WeylOperator factor() {
    if (eat('-')) return -factor();
    WeylOperator base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long k = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (k > 1000) fail("exponent too large");
      base = power(base, static_cast<unsigned>(k));
    }
    return base;
  }

  WeylOperator primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      WeylOperator r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return WeylOperator::constant(ring_, Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      auto name = s_.substr(start, pos_ - start);
      if (!ring_->index_of(name)) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return WeylOperator::variable(ring_, name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const RingPtr& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::vector<std::string_view> split_top_level(std::string_view text) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == ',' && depth == 0) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(text.substr(start));
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

WeylOperator parse_operator(const RingPtr& ring, std::string_view text) {
  if (trim(text).empty()) throw ParseError("empty operator");
  return Parser(ring, text).parse_all();
}

std::vector<WeylOperator> parse_operator_list(const RingPtr& ring, std::string_view text) {
  std::vector<WeylOperator> out;
  if (trim(text).empty()) return out;
  for (auto part : split_top_level(text)) out.push_back(parse_operator(ring, part));
  return out;
}

std::vector<std::string> parse_name_list(std::string_view text) {
  std::vector<std::string> out;
  for (auto part : split_top_level(text)) {
    auto name = trim(part);
    if (name.empty()) throw ParseError("empty name in list \"" + std::string(text) + "\"");
    if (!std::isalpha(static_cast<unsigned char>(name[0])))
      throw ParseError("bad variable name '" + std::string(name) + "'");
    for (char c : name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw ParseError("bad variable name '" + std::string(name) + "'");
    out.emplace_back(name);
  }
  return out;
}

Rational parse_rational(std::string_view text) {
  auto s = std::string(trim(text));
  if (s.empty()) throw ParseError("empty number");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  bool digit = false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] == '/' && !slash && digit) {
      slash = true;
      digit = false;
    } else if (std::isdigit(static_cast<unsigned char>(s[k]))) {
      digit = true;
    } else {
      throw ParseError("bad rational '" + s + "'");
    }
  }
  if (!digit) throw ParseError("bad rational '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational r(s);
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace dmod
