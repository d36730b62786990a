#include <cctype>
#include <unordered_set>

#include "qctl/logic.hpp"

namespace qctl {

namespace {

enum class tok {
  end,
  ident,
  nat,
  kw_true,
  kw_false,
  kw_E,
  kw_A,
  kw_X,
  kw_U,
  kw_F,
  kw_G,
  kw_exists,
  bang,
  amp,
  bar,
  arrow,
  lparen,
  rparen,
  caret_brace,  // ^{
  rbrace,
  comma,
  dot,
};

struct token {
  tok kind = tok::end;
  std::string text;
  int line = 1;
  int column = 1;
};

const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> k{"true", "false", "E", "A", "X", "U", "F", "G", "exists"};
  return k;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class lexer {
public:
  explicit lexer(std::string_view text) : text_(text) {}

  std::vector<token> run() {
    std::vector<token> out;
    for (;;) {
      skip_space();
      token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        t.kind = tok::end;
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
        t.text = std::string(text_.substr(start, pos_ - start));
        t.kind = keyword_kind(t.text);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        t.text = std::string(text_.substr(start, pos_ - start));
        t.kind = tok::nat;
      } else if (c == '"') {
        t.kind = tok::ident;
        t.text = quoted(t);
      } else {
        advance();
        switch (c) {
          case '!': t.kind = tok::bang; break;
          case '&': t.kind = tok::amp; break;
          case '|': t.kind = tok::bar; break;
          case '(': t.kind = tok::lparen; break;
          case ')': t.kind = tok::rparen; break;
          case '}': t.kind = tok::rbrace; break;
          case ',': t.kind = tok::comma; break;
          case '.': t.kind = tok::dot; break;
          case '-':
            if (pos_ < text_.size() && text_[pos_] == '>') {
              advance();
              t.kind = tok::arrow;
              break;
            }
            throw parse_error("expected '>' after '-'", t.line, t.column);
          case '^':
            if (pos_ < text_.size() && text_[pos_] == '{') {
              advance();
              t.kind = tok::caret_brace;
              break;
            }
            throw parse_error("expected '{' after '^'", t.line, t.column);
          default:
            throw parse_error(std::string("unexpected character '") + c + "'", t.line, t.column);
        }
      }
      out.push_back(t);
    }
  }

private:
  static tok keyword_kind(const std::string& s) {
    if (s == "true") return tok::kw_true;
    if (s == "false") return tok::kw_false;
    if (s == "E") return tok::kw_E;
    if (s == "A") return tok::kw_A;
    if (s == "X") return tok::kw_X;
    if (s == "U") return tok::kw_U;
    if (s == "F") return tok::kw_F;
    if (s == "G") return tok::kw_G;
    if (s == "exists") return tok::kw_exists;
    return tok::ident;
  }

  std::string quoted(const token& t) {
    advance();  // opening quote
    std::string out;
    for (;;) {
      if (pos_ >= text_.size()) throw parse_error("unterminated quoted identifier", t.line, t.column);
      char c = text_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        int l = line_, col = column_;
        advance();
        if (pos_ >= text_.size()) throw parse_error("unterminated escape", l, col);
        char e = text_[pos_];
        if (e != '"' && e != '\\') throw parse_error(std::string("unknown escape '\\") + e + "'", l, col);
        out += e;
        advance();
        continue;
      }
      out += c;
      advance();
    }
    if (out.empty()) throw parse_error("empty quoted identifier", t.line, t.column);
    return out;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

const char* describe(tok k) {
  switch (k) {
    case tok::end: return "end of input";
    case tok::ident: return "identifier";
    case tok::nat: return "number";
    case tok::kw_true: return "'true'";
    case tok::kw_false: return "'false'";
    case tok::kw_E: return "'E'";
    case tok::kw_A: return "'A'";
    case tok::kw_X: return "'X'";
    case tok::kw_U: return "'U'";
    case tok::kw_F: return "'F'";
    case tok::kw_G: return "'G'";
    case tok::kw_exists: return "'exists'";
    case tok::bang: return "'!'";
    case tok::amp: return "'&'";
    case tok::bar: return "'|'";
    case tok::arrow: return "'->'";
    case tok::lparen: return "'('";
    case tok::rparen: return "')'";
    case tok::caret_brace: return "'^{'";
    case tok::rbrace: return "'}'";
    case tok::comma: return "','";
    case tok::dot: return "'.'";
  }
  return "token";
}

// Parsed subformulas carry whether they are path formulas so that binary
// connectives know which context they are in.
struct parsed {
  formula_ptr f;
  bool path;  // contains X/U outside E
};

class parser {
public:
  explicit parser(std::vector<token> toks) : toks_(std::move(toks)) {}

  formula_ptr run() {
    if (peek().kind == tok::end) throw parse_error("empty formula", peek().line, peek().column);
    auto r = implies(false);
    if (peek().kind != tok::end) fail("unexpected " + std::string(describe(peek().kind)));
    return r.f;
  }

private:
  const token& peek() const { return toks_[pos_]; }
  token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, peek().line, peek().column); }

  void expect(tok k) {
    if (peek().kind != k)
      fail(std::string("expected ") + describe(k) + ", found " + describe(peek().kind));
    ++pos_;
  }

  // in_path: whether path operators are allowed here.
  parsed implies(bool in_path) {
    auto lhs = disjunction(in_path);
    if (peek().kind == tok::arrow) {
      take();
      auto rhs = implies(in_path);
      return {make_implies(lhs.f, rhs.f), lhs.path || rhs.path};
    }
    return lhs;
  }

  parsed disjunction(bool in_path) {
    auto lhs = conjunction(in_path);
    if (peek().kind == tok::bar) {
      take();
      auto rhs = disjunction(in_path);
      return {make_or(lhs.f, rhs.f), lhs.path || rhs.path};
    }
    return lhs;
  }

  parsed conjunction(bool in_path) {
    auto lhs = until(in_path);
    if (peek().kind == tok::amp) {
      take();
      auto rhs = conjunction(in_path);
      return {make_and(lhs.f, rhs.f), lhs.path || rhs.path};
    }
    return lhs;
  }

  parsed until(bool in_path) {
    auto lhs = unary(in_path);
    if (peek().kind == tok::kw_U) {
      if (!in_path) fail("path operator 'U' outside a path quantifier");
      take();
      auto rhs = until(in_path);
      return {make_until(lhs.f, rhs.f), true};
    }
    return lhs;
  }

  parsed unary(bool in_path) {
    const token& t = peek();
    switch (t.kind) {
      case tok::bang: {
        take();
        auto sub = unary(in_path);
        return {make_not(sub.f), sub.path};
      }
      case tok::kw_X:
      case tok::kw_F:
      case tok::kw_G: {
        if (!in_path) fail(std::string("path operator ") + describe(t.kind) + " outside a path quantifier");
        tok k = take().kind;
        auto sub = unary(true);
        if (k == tok::kw_X) return {make_next(sub.f), true};
        if (k == tok::kw_F) return {make_F(sub.f), true};
        return {make_G(sub.f), true};
      }
      case tok::kw_E:
      case tok::kw_A: {
        tok k = take().kind;
        auto sub = unary(true);
        return {k == tok::kw_E ? make_E(sub.f) : make_A(sub.f), false};
      }
      case tok::kw_exists:
        return quantifier();
      case tok::kw_true:
        take();
        return {make_true(), false};
      case tok::kw_false:
        take();
        return {make_false(), false};
      case tok::ident:
        return {make_prop(take().text), false};
      case tok::lparen: {
        take();
        auto inner = implies(in_path);
        expect(tok::rparen);
        return inner;
      }
      default:
        fail("unexpected " + std::string(describe(t.kind)));
    }
  }

  parsed quantifier() {
    take();  // exists
    if (peek().kind != tok::ident) fail("expected proposition after 'exists'");
    std::string prop = take().text;
    std::optional<observation> obs;
    if (peek().kind == tok::caret_brace) {
      const token open = take();
      std::vector<int> idx;
      if (peek().kind == tok::nat) {
        for (;;) {
          if (peek().kind != tok::nat) fail("expected observation index");
          const token n = take();
          long v = std::stol(n.text);
          if (v < 1) throw parse_error("observation indices start at 1", n.line, n.column);
          idx.push_back(static_cast<int>(v));
          if (peek().kind == tok::comma) {
            take();
            continue;
          }
          break;
        }
      }
      if (peek().kind != tok::rbrace) {
        if (peek().kind == tok::end)
          throw parse_error("unterminated observation", open.line, open.column);
        fail("expected ',' or '}' in observation");
      }
      take();
      obs = observation(std::move(idx));
    }
    expect(tok::dot);
    auto body = implies(false);
    return {obs ? make_exists(prop, *obs, body.f) : make_exists(prop, body.f), false};
  }

  std::vector<token> toks_;
  std::size_t pos_ = 0;
};

bool plain_identifier(const std::string& s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return !keywords().count(s);
}

std::string show_name(const std::string& s) {
  if (plain_identifier(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Binding strength used by the printer.
constexpr int lvl_quant = -1;
constexpr int lvl_or = 1;
constexpr int lvl_and = 2;
constexpr int lvl_until = 3;
constexpr int lvl_unary = 4;

int level(const formula& f) {
  switch (f.kind) {
    case op::disj: return lvl_or;
    case op::conj: return lvl_and;
    case op::until: return lvl_until;
    case op::exists_prop: return lvl_quant;
    default: return lvl_unary;
  }
}

void print(const formula& f, int min_level, std::string& out) {
  bool paren = level(f) < min_level;
  if (paren) out += "(";
  switch (f.kind) {
    case op::tt:
      out += "true";
      break;
    case op::prop:
      out += show_name(f.name);
      break;
    case op::neg:
      if (f.lhs->kind == op::tt) {
        out += "false";
      } else {
        out += "!";
        print(*f.lhs, lvl_unary, out);
      }
      break;
    case op::disj:
      print(*f.lhs, lvl_or + 1, out);
      out += " | ";
      print(*f.rhs, lvl_or, out);
      break;
    case op::conj:
      print(*f.lhs, lvl_and + 1, out);
      out += " & ";
      print(*f.rhs, lvl_and, out);
      break;
    case op::until:
      print(*f.lhs, lvl_until + 1, out);
      out += " U ";
      print(*f.rhs, lvl_until, out);
      break;
    case op::exists_path:
      out += "E ";
      print(*f.lhs, lvl_unary, out);
      break;
    case op::next:
      out += "X ";
      print(*f.lhs, lvl_unary, out);
      break;
    case op::exists_prop:
      out += "exists " + show_name(f.name);
      if (!f.full_obs) {
        out += "^{";
        for (std::size_t i = 0; i < f.obs.indices().size(); ++i) {
          if (i) out += ",";
          out += std::to_string(f.obs.indices()[i]);
        }
        out += "}";
      }
      out += ". ";
      print(*f.lhs, lvl_quant, out);
      break;
  }
  if (paren) out += ")";
}

}  // namespace

formula_ptr parse_formula(std::string_view text) {
  lexer lx(text);
  parser p(lx.run());
  return p.run();
}

std::string to_string(const formula& f) {
  std::string out;
  print(f, lvl_quant, out);
  return out;
}

}  // namespace qctl
