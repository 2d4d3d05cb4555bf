#include "stlguard/parser.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "stlguard/error.hpp"

namespace stlguard::stl {
namespace {

enum class Tok {
  Ident,
  Number,
  Globally,
  Eventually,
  Until,
  True,
  False,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Bang,
  Amp,
  Pipe,
  Plus,
  Star,
  Ge,
  Gt,
  Le,
  Lt,
  End,
};

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, {}, pos_});
        return out;
      }
      out.push_back(next());
    }
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t offset) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  Token make(Tok k, std::size_t len) {
    Token t{k, src_.substr(pos_, len), pos_};
    pos_ += len;
    return t;
  }

  Token next() {
    const char c = src_[pos_];
    const char n = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';
    switch (c) {
      case '(': return make(Tok::LParen, 1);
      case ')': return make(Tok::RParen, 1);
      case '[': return make(Tok::LBracket, 1);
      case ']': return make(Tok::RBracket, 1);
      case ',': return make(Tok::Comma, 1);
      case '!': return make(Tok::Bang, 1);
      case '&': return make(Tok::Amp, 1);
      case '|': return make(Tok::Pipe, 1);
      case '+': return make(Tok::Plus, 1);
      case '*': return make(Tok::Star, 1);
      case '>': return n == '=' ? make(Tok::Ge, 2) : make(Tok::Gt, 1);
      case '<': return n == '=' ? make(Tok::Le, 2) : make(Tok::Lt, 1);
      default: break;
    }
    if (digit(c) || c == '.' || (c == '-' && (digit(n) || n == '.'))) return number();
    if (ident_start(c)) return word();

    std::size_t len = 1;
    while (pos_ + len < src_.size() && std::ispunct(static_cast<unsigned char>(src_[pos_ + len])) &&
           std::string_view("()[],").find(src_[pos_ + len]) == std::string_view::npos) {
      ++len;
    }
    fail("unknown operator '" + std::string(src_.substr(pos_, len)) + "'", pos_);
  }

  Token number() {
    std::size_t end = pos_;
    if (src_[end] == '-') ++end;
    while (end < src_.size() && digit(src_[end])) ++end;
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      while (end < src_.size() && digit(src_[end])) ++end;
    }
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t e = end + 1;
      if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
      if (e < src_.size() && digit(src_[e])) {
        end = e;
        while (end < src_.size() && digit(src_[end])) ++end;
      }
    }
    return make(Tok::Number, end - pos_);
  }

  Token word() {
    std::size_t len = 1;
    while (pos_ + len < src_.size() && ident_char(src_[pos_ + len])) ++len;
    const auto w = src_.substr(pos_, len);
    if (w == "G") return make(Tok::Globally, len);
    if (w == "F") return make(Tok::Eventually, len);
    if (w == "U") return make(Tok::Until, len);
    if (w == "true") return make(Tok::True, len);
    if (w == "false") return make(Tok::False, len);
    return make(Tok::Ident, len);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src), tokens_(lexer_.run()) {}

  Formula parse() {
    Formula f = until_expr();
    if (peek().kind != Tok::End) fail("unexpected '" + std::string(peek().text) + "'");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, peek()); }
  [[noreturn]] void fail_at(const std::string& msg, const Token& t) const {
    lexer_.fail(msg, t.offset);
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) {
      fail(std::string("expected ") + what + (peek().kind == Tok::End ? " before end of input"
                                                                       : ", found '" + std::string(peek().text) + "'"));
    }
    return take();
  }

  Formula until_expr() {
    Formula f = or_expr();
    while (accept(Tok::Until)) {
      Interval w = window();
      f = until(f, w, or_expr());
    }
    return f;
  }

  Formula or_expr() {
    Formula f = and_expr();
    while (accept(Tok::Pipe)) f = f | and_expr();
    return f;
  }

  Formula and_expr() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = f & unary();
    return f;
  }

  Formula unary() {
    if (accept(Tok::Bang)) return !unary();
    if (peek().kind == Tok::Globally || peek().kind == Tok::Eventually) {
      const bool is_g = take().kind == Tok::Globally;
      std::optional<Interval> w;
      if (peek().kind == Tok::LBracket) w = window();
      Formula body = unary();
      return is_g ? globally(w, body) : eventually(w, body);
    }
    return primary();
  }

  Formula primary() {
    if (accept(Tok::LParen)) {
      Formula f = until_expr();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (accept(Tok::True)) return truth(true);
    if (accept(Tok::False)) return truth(false);
    if (peek().kind == Tok::Ident || peek().kind == Tok::Number) return predicate();
    if (peek().kind == Tok::End) fail("unexpected end of input");
    fail("unexpected '" + std::string(peek().text) + "'");
  }

  Formula predicate() {
    const Token& start = peek();
    Coefficients coeffs;
    do {
      double c = 1.0;
      if (peek().kind == Tok::Number) {
        c = number(take());
        expect(Tok::Star, "'*'");
      }
      const Token& id = expect(Tok::Ident, "channel name");
      coeffs[std::string(id.text)] += c;
    } while (accept(Tok::Plus));

    Relation rel;
    switch (peek().kind) {
      case Tok::Ge: rel = Relation::GE; break;
      case Tok::Gt: rel = Relation::GT; break;
      case Tok::Le: rel = Relation::LE; break;
      case Tok::Lt: rel = Relation::LT; break;
      default: fail("expected relation (>=, >, <=, <)");
    }
    take();
    const double constant = number(expect(Tok::Number, "number"));
    try {
      return atom(Predicate(std::move(coeffs), rel, constant));
    } catch (const ConfigError& e) {
      fail_at(e.what(), start);
    }
  }

  double number(const Token& t) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      fail_at("malformed number '" + std::string(t.text) + "'", t);
    }
    return v;
  }

  std::size_t bound(const Token& t) const {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      fail_at("malformed interval: bound '" + std::string(t.text) + "' is not a non-negative integer", t);
    }
    return v;
  }

  Interval window() {
    const Token& open = expect(Tok::LBracket, "'['");
    const std::size_t lo = bound(expect(Tok::Number, "interval bound"));
    expect(Tok::Comma, "','");
    const std::size_t hi = bound(expect(Tok::Number, "interval bound"));
    expect(Tok::RBracket, "']'");
    if (hi < lo) {
      fail_at("malformed interval [" + std::to_string(lo) + "," + std::to_string(hi) +
                  "]: upper bound below lower bound",
              open);
    }
    return Interval(lo, hi);
  }

  Lexer lexer_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace stlguard::stl
