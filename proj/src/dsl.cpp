#include "octoslice/dsl.hpp"

#include <cctype>
#include <charconv>

#include "octoslice/error.hpp"

namespace octoslice {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SliceExpr parse() {
    skip();
    if (pos_ == text_.size()) fail(ErrorKind::SyntaxError, "empty expression", pos_, pos_);
    SliceExpr e = expr();
    skip();
    if (pos_ != text_.size()) fail(ErrorKind::SyntaxError, "unexpected trailing input", pos_, text_.size());
    return e;
  }

 private:
  [[noreturn]] void fail(ErrorKind kind, const std::string& msg, std::size_t b, std::size_t e) const {
    throw Error(kind, msg, Span{b, std::max(e, b + (b < text_.size() ? 1 : 0))});
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(ErrorKind::SyntaxError, std::string("expected '") + c + "'", pos_, pos_ + 1);
    ++pos_;
  }

  SliceExpr expr() {
    SliceExpr e = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        e = SliceExpr::add(e, term());
      } else if (peek('-')) {
        ++pos_;
        e = SliceExpr::sub(e, term());
      } else {
        return e;
      }
    }
  }

  SliceExpr term() {
    SliceExpr e = factor();
    while (peek('*')) {
      ++pos_;
      e = SliceExpr::mul(e, factor());
    }
    return e;
  }

  SliceExpr factor() {
    const std::size_t start = (skip(), pos_);
    SliceExpr b = base();
    if (peek('^')) {
      ++pos_;
      skip();
      const std::size_t ibegin = pos_;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
      int n = 0;
      const auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), n);
      if (res.ec != std::errc()) {
        fail(ErrorKind::SyntaxError, "expected an integer exponent", ibegin, ibegin + 1);
      }
      if (text_[ibegin] == '-') n = -n;
      pos_ = static_cast<std::size_t>(res.ptr - text_.data());
      if (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        fail(ErrorKind::SyntaxError, "exponent must be an integer", ibegin, pos_ + 1);
      }
      try {
        return SliceExpr::pow(b, n);
      } catch (const Error& err) {
        fail(ErrorKind::SyntaxError, err.what(), start, pos_);
      }
    }
    return b;
  }

  std::size_t word_end(std::size_t from) const {
    std::size_t e = from;
    while (e < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[e])) || text_[e] == '_')) ++e;
    return e;
  }

  Octonion bracketed_octonion(char close) {
    const std::size_t begin = pos_;
    const std::size_t end = text_.find(close, begin);
    if (end == std::string_view::npos) {
      fail(ErrorKind::SyntaxError, std::string("missing '") + close + "'", begin, text_.size());
    }
    Octonion v;
    try {
      v = parse_octonion(text_.substr(begin, end - begin));
    } catch (const Error& err) {
      Span s = err.span().value_or(Span{0, end - begin});
      throw Error(err.kind(), err.what(), Span{begin + s.begin, begin + s.end});
    }
    pos_ = end + 1;
    return v;
  }

  SliceExpr base() {
    skip();
    if (pos_ >= text_.size()) fail(ErrorKind::SyntaxError, "unexpected end of input", pos_, pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SliceExpr e = expr();
      expect(')');
      return e;
    }
    if (c == '[') {
      ++pos_;
      return SliceExpr::constant(bracketed_octonion(']'));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+') return literal();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t begin = pos_;
      const std::size_t end = word_end(begin);
      const std::string_view word = text_.substr(begin, end - begin);
      if (word == "x") {
        pos_ = end;
        return SliceExpr::variable();
      }
      if (word == "eta" || word == "conj" || word == "N" || word == "d") {
        pos_ = end;
        expect('(');
        if (word == "eta") {
          const std::size_t ubegin = pos_;
          const Octonion u = bracketed_octonion(')');
          try {
            return SliceExpr::eta(ImaginaryUnit(u));
          } catch (const Error& err) {
            fail(err.kind(), err.what(), ubegin, pos_ - 1);
          }
        }
        SliceExpr inner = expr();
        expect(')');
        if (word == "conj") return SliceExpr::conjugate(inner);
        if (word == "N") return SliceExpr::normal(inner);
        return SliceExpr::cderiv(inner);
      }
      fail(ErrorKind::UnknownToken, "unknown identifier '" + std::string(word) + "'", begin, end);
    }
    fail(ErrorKind::UnknownToken, std::string("unexpected character '") + c + "'", pos_, pos_ + 1);
  }

  SliceExpr literal() {
    const std::size_t begin = pos_;
    double sign = 1.0;
    if (text_[pos_] == '-' || text_[pos_] == '+') {
      sign = text_[pos_] == '-' ? -1.0 : 1.0;
      ++pos_;
    }
    if (pos_ >= text_.size() || !(std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      fail(ErrorKind::SyntaxError, "expected a numeric literal", begin, pos_ + 1);
    }
    double value = 0.0;
    const auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (res.ec != std::errc()) fail(ErrorKind::SyntaxError, "malformed number", begin, pos_ + 1);
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    std::size_t unit = 0;
    if (pos_ < text_.size() && text_[pos_] == 'l') {
      unit = 4;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == 'i' || text_[pos_] == 'j' || text_[pos_] == 'k')) {
        unit = 5 + static_cast<std::size_t>(text_[pos_] - 'i');
        ++pos_;
      }
    } else if (pos_ < text_.size() && (text_[pos_] == 'i' || text_[pos_] == 'j' || text_[pos_] == 'k')) {
      unit = 1 + static_cast<std::size_t>(text_[pos_] - 'i');
      ++pos_;
    }
    if (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      fail(ErrorKind::UnknownToken, "unknown unit suffix", begin, word_end(pos_));
    }
    Octonion v;
    v[unit] = sign * value;
    return SliceExpr::constant(v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

enum Level { kExpr = 0, kTerm = 1, kFactor = 2, kBase = 3 };

std::string number_text(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string render_const(const Octonion& c) {
  int nonzero = 0;
  std::size_t where = 0;
  for (std::size_t t = 0; t < 8; ++t) {
    if (c[t] != 0.0) {
      ++nonzero;
      where = t;
    }
  }
  if (nonzero == 0) return "0";
  if (nonzero == 1) return number_text(c[where]) + std::string(unit_suffix(where));
  return "[" + format_octonion(c) + "]";
}

std::string render(const SliceExpr& e, Level ctx) {
  using K = SliceExpr::Kind;
  const auto wrap = [ctx](Level own, std::string s) { return ctx > own ? "(" + s + ")" : s; };
  switch (e.kind()) {
    case K::Variable: return "x";
    case K::Const: return render_const(e.value());
    case K::Eta: return "eta(" + format_octonion(e.value()) + ")";
    case K::Add: return wrap(kExpr, render(e.lhs(), kExpr) + " + " + render(e.rhs(), kTerm));
    case K::Sub: return wrap(kExpr, render(e.lhs(), kExpr) + " - " + render(e.rhs(), kTerm));
    case K::SliceMul: return wrap(kTerm, render(e.lhs(), kTerm) + "*" + render(e.rhs(), kFactor));
    case K::Pow: return wrap(kFactor, render(e.lhs(), kBase) + "^" + std::to_string(e.exponent()));
    case K::Conj: return "conj(" + render(e.lhs(), kExpr) + ")";
    case K::Normal: return "N(" + render(e.lhs(), kExpr) + ")";
    case K::CDeriv: return "d(" + render(e.lhs(), kExpr) + ")";
  }
  return "";
}

}  // namespace

SliceExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string render_expr(const SliceExpr& e) { return render(e, kExpr); }

std::string caret_line(std::string_view text, std::size_t begin, std::size_t end) {
  std::string out(text);
  out += '\n';
  out += std::string(std::min(begin, text.size()), ' ');
  out += std::string(std::max<std::size_t>(1, end > begin ? end - begin : 1), '^');
  return out;
}

}  // namespace octoslice
