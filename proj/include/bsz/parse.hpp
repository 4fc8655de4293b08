#ifndef BSZ_PARSE_HPP
#define BSZ_PARSE_HPP

#include <cctype>
#include <string>
#include <string_view>

#include "bsz/mpoly.hpp"

namespace bsz {

namespace detail {

// expr := term (('+'|'-') term)*
// term := unary ('*' unary)*
// unary := '-' unary | power
// power := atom ('^' digits)?
// atom := digits ('/' digits)? | name | '(' expr ')'
class ExprParser {
public:
  ExprParser(std::string_view src, ContextPtr ctx) : src_(src), ctx_(std::move(ctx)) {}

  MPoly run() {
    MPoly r = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return r;
  }

private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression '" + std::string(src_) + "' at " + std::to_string(pos_) + ": " + msg);
  }
  std::string digits() {
    skip();
    std::size_t b = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (b == pos_) fail("expected digits");
    return std::string(src_.substr(b, pos_ - b));
  }

  MPoly expr() {
    MPoly acc = term();
    while (true) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }
  MPoly term() {
    MPoly acc = unary();
    while (eat('*')) acc = acc * unary();
    return acc;
  }
  MPoly unary() {
    if (eat('-')) return -unary();
    return power();
  }
  MPoly power() {
    MPoly base = atom();
    if (eat('^')) {
      std::string d = digits();
      if (d.size() > 4) fail("exponent too large");
      return pow(base, static_cast<unsigned>(std::stoul(d)));
    }
    return base;
  }
  MPoly atom() {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string n = digits();
      skip();
      // a '/' directly followed by digits is part of the literal
      if (pos_ + 1 < src_.size() && src_[pos_] == '/') {
        ++pos_;
        n += "/" + digits();
      }
      return MPoly(ctx_, parse_rational(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t b = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      std::string name(src_.substr(b, pos_ - b));
      if (!ctx_->find(name)) fail("unknown variable '" + name + "'");
      return MPoly::variable(ctx_, name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  ContextPtr ctx_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses "3/2*x^2*s - y + 1" style input over a context.
inline MPoly parse_mpoly(std::string_view text, const ContextPtr& ctx) {
  return detail::ExprParser(text, ctx).run();
}

}  // namespace bsz

#endif  // BSZ_PARSE_HPP
