#include "dulac/parse.hpp"

#include <cctype>
#include <optional>
#include <string>

namespace dulac {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int column = 0;  // 1-based, relative to the line
};

struct Context {
  const std::map<std::string, Rat>* params = nullptr;
  ErrorKind unknown_kind = ErrorKind::UnknownIdentifier;
  int line = 1;
  int column_offset = 0;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, const Context& ctx) : text_(text), ctx_(ctx) { advance(); }

  Poly parse() {
    Poly p = expr();
    if (tok_.kind != Tok::End) fail(ErrorKind::Syntax, "unexpected '" + tok_.text + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(ErrorKind kind, const std::string& msg) const {
    throw ParseError(kind, msg, ctx_.line, ctx_.column_offset + tok_.column);
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.column = static_cast<int>(pos_) + 1;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      tok_.text = "end of input";
      return;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t look = pos_ + 1;
        if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
        if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
          pos_ = look;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
      }
      tok_.kind = Tok::Number;
      tok_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      tok_.kind = Tok::Ident;
      tok_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    ++pos_;
    tok_.text = std::string(1, c);
    switch (c) {
      case '+': tok_.kind = Tok::Plus; break;
      case '-': tok_.kind = Tok::Minus; break;
      case '*': tok_.kind = Tok::Star; break;
      case '/': tok_.kind = Tok::Slash; break;
      case '^': tok_.kind = Tok::Caret; break;
      case '(': tok_.kind = Tok::LParen; break;
      case ')': tok_.kind = Tok::RParen; break;
      default: fail(ErrorKind::Syntax, "unexpected character '" + tok_.text + "'");
    }
  }

  Poly expr() {
    Poly acc = term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const bool minus = tok_.kind == Tok::Minus;
      advance();
      Poly t = term();
      if (minus)
        acc -= t;
      else
        acc += t;
    }
    return acc;
  }

  Poly term() {
    Poly acc = unary();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      const bool divide = tok_.kind == Tok::Slash;
      const Token op = tok_;
      advance();
      Poly rhs = unary();
      if (!divide) {
        acc *= rhs;
        continue;
      }
      if (!rhs.is_constant()) {
        tok_ = op;
        fail(ErrorKind::NonPolynomial, "division by a nonconstant expression");
      }
      if (rhs.is_zero()) {
        tok_ = op;
        fail(ErrorKind::DivisionByZero, "division by zero");
      }
      acc *= CRat(1) / rhs.coeff(0, 0);
    }
    return acc;
  }

  Poly unary() {
    if (tok_.kind == Tok::Minus) {
      advance();
      return -unary();
    }
    if (tok_.kind == Tok::Plus) {
      advance();
      return unary();
    }
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (tok_.kind != Tok::Caret) return base;
    advance();
    const Token at = tok_;
    bool negative = false;
    if (tok_.kind == Tok::Minus) {
      negative = true;
      advance();
    }
    Poly e = atom();
    if (!e.is_constant() || !e.is_real()) {
      tok_ = at;
      fail(ErrorKind::NonPolynomial, "exponent must be a nonnegative integer");
    }
    Rat v = e.coeff(0, 0).re;
    if (negative) v = -v;
    if (v.get_den() != 1 || sgn(v) < 0 || v > 1000) {
      tok_ = at;
      fail(ErrorKind::NonPolynomial, "exponent must be a nonnegative integer");
    }
    return base.pow(static_cast<unsigned>(v.get_num().get_ui()));
  }

  Poly atom() {
    switch (tok_.kind) {
      case Tok::Number: {
        Rat v;
        try {
          v = parse_rat(tok_.text);
        } catch (const Error&) {
          fail(ErrorKind::Syntax, "malformed number '" + tok_.text + "'");
        }
        advance();
        return Poly(v);
      }
      case Tok::Ident: {
        const Token id = tok_;
        advance();
        if (tok_.kind == Tok::LParen) {
          tok_ = id;
          fail(ErrorKind::UnknownIdentifier, "unknown function '" + id.text + "'");
        }
        if (id.text == "x") return Poly::x();
        if (id.text == "y") return Poly::y();
        if (id.text == "I") return Poly(CRat(Rat(0), Rat(1)));
        if (ctx_.params) {
          if (auto it = ctx_.params->find(id.text); it != ctx_.params->end()) return Poly(it->second);
        }
        tok_ = id;
        fail(ctx_.unknown_kind, ctx_.unknown_kind == ErrorKind::UndefinedParameter
                                    ? "undefined parameter '" + id.text + "'"
                                    : "unknown identifier '" + id.text + "'");
      }
      case Tok::LParen: {
        advance();
        Poly inner = expr();
        if (tok_.kind != Tok::RParen) fail(ErrorKind::Syntax, "expected ')'");
        advance();
        return inner;
      }
      default:
        fail(ErrorKind::Syntax, "unexpected '" + tok_.text + "'");
    }
  }

  std::string_view text_;
  Context ctx_;
  std::size_t pos_ = 0;
  Token tok_;
};

std::string_view trim(std::string_view s, int* leading = nullptr) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (leading) *leading = static_cast<int>(b);
  return s.substr(b, e - b);
}

struct Assignment {
  std::string_view expr;
  int line = 0;
  int column = 0;  // column of the first expression character, 1-based
};

}  // namespace

Poly parse_poly(std::string_view text) {
  Context ctx;
  return ExprParser(text, ctx).parse();
}

std::vector<Poly> parse_poly_list(std::string_view text) {
  std::vector<Poly> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(";,", start);
    if (end == std::string_view::npos) end = text.size();
    auto piece = trim(text.substr(start, end - start));
    if (!piece.empty()) out.push_back(parse_poly(piece));
    start = end + 1;
  }
  return out;
}

VectorField parse_system(std::string_view text) {
  std::map<std::string, Rat> params;
  std::optional<Assignment> p_line, q_line;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    int lead = 0;
    std::string_view line = trim(raw, &lead);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(ErrorKind::Syntax, "expected 'P = ', 'Q = ' or 'param <name> = <number>'", line_no,
                       lead + 1);
    std::string_view lhs = trim(line.substr(0, eq));
    int rhs_lead = 0;
    std::string_view rhs = trim(line.substr(eq + 1), &rhs_lead);
    const int rhs_column = lead + static_cast<int>(eq) + 2 + rhs_lead;
    if (rhs.empty()) throw ParseError(ErrorKind::Syntax, "missing right-hand side", line_no, rhs_column);

    if (lhs == "P" || lhs == "Q") {
      auto& slot = lhs == "P" ? p_line : q_line;
      if (slot) throw ParseError(ErrorKind::Syntax, "duplicate definition of " + std::string(lhs), line_no, lead + 1);
      slot = Assignment{rhs, line_no, rhs_column};
      continue;
    }
    if (lhs.substr(0, 6) == "param " || lhs.substr(0, 6) == "param\t") {
      std::string name(trim(lhs.substr(6)));
      bool ok = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
      for (char c : name) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
      if (!ok || name == "x" || name == "y" || name == "I")
        throw ParseError(ErrorKind::Syntax, "invalid parameter name '" + name + "'", line_no, lead + 7);
      if (params.count(name))
        throw ParseError(ErrorKind::Syntax, "duplicate parameter '" + name + "'", line_no, lead + 7);
      try {
        params.emplace(name, parse_rat(rhs));
      } catch (const Error&) {
        throw ParseError(ErrorKind::Syntax, "parameter value must be a number", line_no, rhs_column);
      }
      continue;
    }
    throw ParseError(ErrorKind::Syntax, "unknown left-hand side '" + std::string(lhs) + "'", line_no, lead + 1);
  }
  if (!p_line) throw ParseError(ErrorKind::Syntax, "missing 'P = ' line", line_no, 1);
  if (!q_line) throw ParseError(ErrorKind::Syntax, "missing 'Q = ' line", line_no, 1);

  auto parse_at = [&params](const Assignment& a) {
    Context ctx;
    ctx.params = &params;
    ctx.unknown_kind = ErrorKind::UndefinedParameter;
    ctx.line = a.line;
    ctx.column_offset = a.column - 1;
    return ExprParser(a.expr, ctx).parse();
  };
  Poly p = parse_at(*p_line);
  Poly q = parse_at(*q_line);
  if (!p.is_real() || !q.is_real())
    throw ParseError(ErrorKind::ComplexCoefficients, "vector field must have real coefficients",
                     p.is_real() ? q_line->line : p_line->line, 1);
  VectorField X = make_field(std::move(p), std::move(q));
  X.params = std::move(params);
  X.source_text = std::string(text);
  return X;
}

}  // namespace dulac
