#include <algorithm>
#include <cctype>
#include <optional>

#include "conflab/errors.hpp"
#include "conflab/metric.hpp"

namespace conflab {

namespace {

enum class Tok { Number, Ident, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && digit_at(pos_ + 1))) {
        t.kind = Tok::Number;
        t.text = number();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          t.text += advance();
      } else if (std::string(";[],=+-*/^()").find(c) != std::string::npos) {
        t.kind = Tok::Symbol;
        t.text = std::string(1, advance());
      } else {
        throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool digit_at(std::size_t p) const { return p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p])); }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string number() {
    std::string s;
    while (digit_at(pos_)) s += advance();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      s += advance();
      while (digit_at(pos_)) s += advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (digit_at(p)) {
        while (pos_ < p) s += advance();
        while (digit_at(pos_)) s += advance();
      }
    }
    return s;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(Lexer(text).run()) {}

  void set_coords(std::vector<std::string> coords) { coords_ = std::move(coords); }

  Expr expression_only() {
    Expr e = expr();
    if (peek().kind != Tok::End) fail(peek(), "unexpected trailing input '" + peek().text + "'");
    return e;
  }

  MetricSpec metric() {
    std::optional<int> dim;
    std::optional<MetricSpec> spec;
    std::vector<std::vector<bool>> assigned;
    bool general = false;
    while (peek().kind != Tok::End) {
      const Token& kw = next();
      if (kw.kind != Tok::Ident) fail(kw, "expected a statement keyword, found '" + kw.text + "'");
      if (kw.text == "dim") {
        if (dim) fail(kw, "dimension declared twice");
        const Token& t = next();
        if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos)
          fail(t, "expected an integer dimension");
        int d = std::stoi(t.text);
        if (d < 3) fail(t, "dimension must be at least 3, got " + t.text);
        dim = d;
        expect(";");
      } else if (kw.text == "coords") {
        if (!dim) fail(kw, "coords before dim");
        if (spec) fail(kw, "coordinates declared twice");
        std::vector<std::string> names;
        while (peek().kind == Tok::Ident) {
          const Token& t = next();
          if (is_function_name(t.text)) fail(t, "'" + t.text + "' is a function name");
          if (std::find(names.begin(), names.end(), t.text) != names.end())
            fail(t, "coordinate '" + t.text + "' repeated");
          names.push_back(t.text);
        }
        if (static_cast<int>(names.size()) != *dim)
          fail(peek(), "expected " + std::to_string(*dim) + " coordinate names, got " + std::to_string(names.size()));
        expect(";");
        coords_ = names;
        spec = MetricSpec(Chart{*dim, names});
        assigned.assign(static_cast<std::size_t>(*dim), std::vector<bool>(static_cast<std::size_t>(*dim), false));
      } else if (kw.text == "g") {
        if (!spec) fail(kw, "metric component before coords");
        expect("[");
        int i = index(*dim);
        expect(",");
        int j = index(*dim);
        expect("]");
        const Token& eq = expect("=");
        Expr e = expr();
        expect(";");
        auto ui = static_cast<std::size_t>(std::min(i, j)), uj = static_cast<std::size_t>(std::max(i, j));
        if (assigned[ui][uj] && spec->g(i, j) != e)
          fail(eq, "g[" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                       "] reassigned with a different expression");
        assigned[ui][uj] = true;
        spec->set(i, j, e);
      } else if (kw.text == "signature") {
        const Token& t = next();
        if (t.kind != Tok::Ident || t.text != "any") fail(t, "expected 'any' after 'signature'");
        general = true;
        expect(";");
      } else {
        fail(kw, "unknown statement '" + kw.text + "'");
      }
    }
    if (!spec) fail(peek(), dim ? "missing coords statement" : "missing dim statement");
    spec->set_general_signature(general);
    return *spec;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.column, msg); }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  bool accept(const char* sym) {
    if (peek().kind == Tok::Symbol && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }
  const Token& expect(const char* sym) {
    const Token& t = peek();
    if (t.kind != Tok::Symbol || t.text != sym)
      fail(t, std::string("expected '") + sym + "', found '" + (t.kind == Tok::End ? "end of input" : t.text) + "'");
    return next();
  }

  int index(int dim) {
    const Token& t = next();
    if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos)
      fail(t, "expected a component index");
    int v = std::stoi(t.text);
    if (v < 1 || v > dim) fail(t, "index " + t.text + " out of range 1.." + std::to_string(dim));
    return v - 1;
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      if (accept("+")) e = e + term();
      else if (accept("-")) e = e - term();
      else return e;
    }
  }

  Expr term() {
    Expr e = unary();
    while (true) {
      if (accept("*")) {
        e = e * unary();
      } else if (peek().kind == Tok::Symbol && peek().text == "/") {
        const Token& t = next();
        Expr d = unary();
        if (d.is_num(0)) fail(t, "division by the constant 0");
        e = e / d;
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept("-")) return -unary();
    if (accept("+")) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (peek().kind == Tok::Symbol && peek().text == "^") {
      const Token& t = next();
      Expr ex = unary();
      if (!ex.is_num() || ex.value().get_den() != 1 || !ex.value().get_num().fits_sint_p())
        fail(t, "exponent must fold to an integer constant");
      const int k = static_cast<int>(ex.value().get_num().get_si());
      if (base.is_num(0) && k < 0) fail(t, "zero raised to a negative power");
      return pow(base, k);
    }
    return base;
  }

  Expr primary() {
    const Token& t = next();
    if (t.kind == Tok::Number) {
      try {
        return Expr::num(parse_rational(t.text));
      } catch (const Error& e) {
        fail(t, e.what());
      }
    }
    if (t.kind == Tok::Ident) {
      if (is_function_name(t.text)) {
        expect("(");
        Expr arg = expr();
        expect(")");
        return apply_function(t.text, arg);
      }
      auto it = std::find(coords_.begin(), coords_.end(), t.text);
      if (it == coords_.end()) fail(t, "unknown identifier '" + t.text + "'");
      return Expr::var(static_cast<int>(it - coords_.begin()), t.text);
    }
    if (t.kind == Tok::Symbol && t.text == "(") {
      Expr e = expr();
      expect(")");
      return e;
    }
    fail(t, t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> coords_;
};

}  // namespace

Expr parse_expr(const std::string& text, const std::vector<std::string>& coords) {
  Parser p(text);
  p.set_coords(coords);
  return p.expression_only();
}

MetricSpec parse_metric(const std::string& text) { return Parser(text).metric(); }

}  // namespace conflab
