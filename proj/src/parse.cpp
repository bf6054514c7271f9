#include "conslaw/parse.hpp"

#include <cctype>
#include <string>

#include "conslaw/errors.hpp"
#include "conslaw/symbols.hpp"

namespace conslaw {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const SymbolTable& symbols) : text_(text), symbols_(symbols) {}

  Expr run() {
    Expr e = expression();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expression() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+'))
        terms.push_back(term());
      else if (accept('-'))
        terms.push_back(-term());
      else
        break;
    }
    return Expr::sum(std::move(terms));
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*'))
        e = e * unary();
      else if (accept('/'))
        e = e / unary();
      else
        break;
    }
    return e;
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    skip_space();
    bool negative = false;
    if (accept('-'))
      negative = true;
    else
      accept('+');
    skip_space();
    bool parens = accept('(');
    if (parens) {
      skip_space();
      if (accept('-')) negative = !negative;
      skip_space();
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 6) fail_at("exponent too large", start);
    if (parens) expect(')');
    int n = std::stoi(digits);
    return Expr::power(base, negative ? -n : n);
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    try {
      return Expr(parse_rational(std::string(text_.substr(start, pos_ - start))));
    } catch (const std::exception&) {
      fail_at("malformed number", start);
    }
  }

  Expr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    std::string suffix;
    std::size_t suffix_pos = pos_;
    bool has_suffix = false;
    if (pos_ < text_.size() && text_[pos_] == '_') {
      has_suffix = true;
      ++pos_;
      suffix_pos = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      suffix = std::string(text_.substr(suffix_pos, pos_ - suffix_pos));
      if (suffix.empty()) fail_at("empty derivative suffix on '" + name + "'", suffix_pos);
    }

    if (name == "exp") {
      if (has_suffix) fail_at("derivative suffix on exp", suffix_pos);
      skip_space();
      if (!accept('(')) fail("expected '(' after exp");
      Expr arg = expression();
      expect(')');
      return Expr::exp(arg);
    }
    if (name == "t" || name == "x" || name == "Dint" || name == "Kint" || symbols_.is_parameter(name)) {
      if (has_suffix) fail_at("'" + name + "' takes no derivative suffix", suffix_pos);
      if (name == "t" || name == "x") return Expr(Indeterminate::independent(name));
      if (name == "Dint" || name == "Kint") return Expr(Indeterminate::antiderivative(name));
      return Expr(Indeterminate::parameter(name));
    }
    if (is_dependent_name(name)) {
      int a = 0, b = 0;
      for (std::size_t i = 0; i < suffix.size(); ++i) {
        if (suffix[i] == 't')
          ++a;
        else if (suffix[i] == 'x')
          ++b;
        else
          fail_at("malformed derivative suffix '" + suffix + "' on " + name, suffix_pos + i);
      }
      return Expr(Indeterminate::jet(name, a, b));
    }
    if (const FuncSym* f = symbols_.function(name)) {
      std::vector<int> index(f->args.size(), 0);
      for (std::size_t i = 0; i < suffix.size(); ++i) {
        std::size_t j = 0;
        while (j < f->args.size() && f->args[j] != std::string(1, suffix[i])) ++j;
        if (j == f->args.size())
          fail_at("malformed derivative suffix '" + suffix + "' on " + name, suffix_pos + i);
        ++index[j];
      }
      call_arguments(*f);
      return Expr(Indeterminate::function(f->name, f->args, index));
    }
    fail_at("unknown symbol '" + name + "'", start);
  }

  // Optional "(t,x)" after a function name; must repeat the declaration.
  void call_arguments(const FuncSym& f) {
    std::size_t save = pos_;
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '(') {
      pos_ = save;
      return;
    }
    std::size_t open = pos_;
    ++pos_;
    std::vector<std::string> args;
    for (;;) {
      skip_space();
      std::size_t s = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (s == pos_) fail("expected an argument name");
      args.emplace_back(text_.substr(s, pos_ - s));
      if (accept(',')) continue;
      expect(')');
      break;
    }
    if (args != f.args) {
      std::string want;
      for (const auto& a : f.args) want += (want.empty() ? "" : ",") + a;
      fail_at("arguments of " + f.name + " must be (" + want + ")", open);
    }
  }

  std::string_view text_;
  const SymbolTable& symbols_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const SymbolTable& symbols) { return Parser(text, symbols).run(); }

}  // namespace conslaw
