#include "octoslice/octonion.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "octoslice/error.hpp"

namespace octoslice {

namespace {

// One level of the doubling per type. Each struct stores an element as
// a + (unit) b over the previous level.
struct Cplx {
  double re = 0, im = 0;
};
Cplx operator+(Cplx a, Cplx b) { return {a.re + b.re, a.im + b.im}; }
Cplx operator-(Cplx a, Cplx b) { return {a.re - b.re, a.im - b.im}; }
Cplx operator*(Cplx a, Cplx b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cplx conj(Cplx a) { return {a.re, -a.im}; }

// q = a + j b, (a + j b)(c + j d) = ac - b^c d + j(a^c d + b c).
struct Quat {
  Cplx a, b;
};
Quat operator+(const Quat& x, const Quat& y) { return {x.a + y.a, x.b + y.b}; }
Quat operator-(const Quat& x, const Quat& y) { return {x.a - y.a, x.b - y.b}; }
Quat operator*(const Quat& x, const Quat& y) {
  return {x.a * y.a - conj(x.b) * y.b, conj(x.a) * y.b + x.b * y.a};
}
Quat conj(const Quat& x) { return {conj(x.a), Cplx{-x.b.re, -x.b.im}}; }

// Standard coordinates {1,i,j,k} with k = ij. Since j i = -k, the element
// a + j(b0 + b1 i) has coordinates (a.re, a.im, b0, -b1).
Quat quat_from(const double* q) { return {{q[0], q[1]}, {q[2], -q[3]}}; }
void quat_to(const Quat& x, double* q) {
  q[0] = x.a.re;
  q[1] = x.a.im;
  q[2] = x.b.re;
  q[3] = -x.b.im;
}

std::array<std::array<BasisProduct, 8>, 8> build_table() {
  std::array<std::array<BasisProduct, 8>, 8> table{};
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) {
      const Octonion p = Octonion::basis(a) * Octonion::basis(b);
      std::size_t hit = 8;
      for (std::size_t t = 0; t < 8; ++t) {
        if (p[t] != 0.0) {
          if (hit != 8 || std::abs(std::abs(p[t]) - 1.0) != 0.0) {
            throw std::logic_error("octonion basis product is not a signed basis element");
          }
          hit = t;
        }
      }
      if (hit == 8) throw std::logic_error("octonion basis product vanished");
      table[a][b] = {hit, p[hit]};
    }
  }
  return table;
}

void cross_check(const std::array<std::array<BasisProduct, 8>, 8>& table) {
  // Two fixed dense operands; the table product must reproduce the recursion.
  const Octonion x(std::array<double, 8>{0.5, -1.25, 2.0, 0.75, -0.5, 1.5, -2.25, 0.25});
  const Octonion y(std::array<double, 8>{-1.0, 0.5, 0.25, -1.75, 2.5, -0.75, 1.0, 1.25});
  Octonion via_table;
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) {
      via_table[table[a][b].index] += table[a][b].sign * x[a] * y[b];
    }
  }
  const Octonion diff = via_table - x * y;
  if (diff.norm() > 1e-24) throw std::logic_error("multiplication table disagrees with recursion");
}

constexpr std::array<std::string_view, 8> kSuffix = {"", "i", "j", "k", "l", "li", "lj", "lk"};

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotImaginary: return "NotImaginary";
    case ErrorKind::NotSkew: return "NotSkew";
    case ErrorKind::NotAComplexStructure: return "NotAComplexStructure";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::RealPoint: return "RealPoint";
    case ErrorKind::NotAZero: return "NotAZero";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::EmptyBox: return "EmptyBox";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::ExceptionalDirection: return "ExceptionalDirection";
    case ErrorKind::NoSquareRoot: return "NoSquareRoot";
    case ErrorKind::Antipode: return "Antipode";
    case ErrorKind::NotOnSphere: return "NotOnSphere";
    case ErrorKind::WingPresent: return "WingPresent";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DegenerateSphereUnsupported: return "DegenerateSphereUnsupported";
    case ErrorKind::NotLowerable: return "NotLowerable";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownToken: return "UnknownToken";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool Octonion::is_finite() const {
  for (double v : c_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Octonion operator*(const Octonion& x, const Octonion& y) {
  // x = a + l b, y = c + l d with a, b, c, d quaternions.
  const Quat a = quat_from(&x.c_[0]);
  const Quat b = quat_from(&x.c_[4]);
  const Quat c = quat_from(&y.c_[0]);
  const Quat d = quat_from(&y.c_[4]);
  const Quat lo = a * c - d * conj(b);
  const Quat hi = conj(a) * d + c * b;
  Octonion out;
  quat_to(lo, &out.c_[0]);
  quat_to(hi, &out.c_[4]);
  return out;
}

Octonion mul(const Octonion& a, const Octonion& b) { return a * b; }

const std::array<std::array<BasisProduct, 8>, 8>& multiplication_table() {
  static const std::array<std::array<BasisProduct, 8>, 8> table = [] {
    auto t = build_table();
    cross_check(t);
    return t;
  }();
  return table;
}

Octonion table_mul(const Octonion& x, const Octonion& y) {
  const auto& table = multiplication_table();
  Octonion out;
  for (std::size_t a = 0; a < 8; ++a) {
    if (x[a] == 0.0) continue;
    for (std::size_t b = 0; b < 8; ++b) {
      out[table[a][b].index] += table[a][b].sign * x[a] * y[b];
    }
  }
  return out;
}

double dot(const Octonion& a, const Octonion& b) {
  double s = 0.0;
  for (std::size_t t = 0; t < Octonion::kDim; ++t) s += a[t] * b[t];
  return s;
}

Octonion inverse(const Octonion& a) {
  const double n = a.norm();
  if (n == 0.0) throw Error(ErrorKind::DivisionByZero, "inverse of the zero octonion");
  return a.conj() / n;
}

Octonion associator(const Octonion& x, const Octonion& y, const Octonion& z) {
  return (x * y) * z - x * (y * z);
}

Octonion vector_product(const Octonion& v, const Octonion& w, double tol) {
  if (std::abs(v.real()) > tol * (1.0 + v.abs()) || std::abs(w.real()) > tol * (1.0 + w.abs())) {
    throw Error(ErrorKind::NotImaginary, "vector product needs imaginary arguments");
  }
  return (v.imag() * w.imag()).imag();
}

Octonion pow(const Octonion& x, int n) {
  if (n < 0) return pow(inverse(x), -n);
  Octonion out(1.0);
  for (int t = 0; t < n; ++t) out = out * x;
  return out;
}

std::string_view unit_suffix(std::size_t index) { return kSuffix.at(index); }

namespace {

std::string coeff_text(double v, int digits) {
  if (digits <= 0) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::string format_impl(const Octonion& x, int digits) {
  std::string out;
  for (std::size_t t = 0; t < 8; ++t) {
    const double v = x[t];
    if (v == 0.0) continue;
    std::string num = coeff_text(std::abs(v), digits);
    if (v < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    out += num;
    out += kSuffix[t];
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string format_octonion(const Octonion& x) { return format_impl(x, 0); }
std::string format_octonion(const Octonion& x, int significant_digits) {
  return format_impl(x, significant_digits);
}

std::ostream& operator<<(std::ostream& os, const Octonion& x) { return os << format_octonion(x); }

Octonion parse_octonion(std::string_view text) {
  Octonion out;
  std::size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip_ws();
  if (pos == text.size()) {
    throw Error(ErrorKind::SyntaxError, "empty octonion literal", Span{0, text.size()});
  }
  bool first = true;
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    double sign = 1.0;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1.0 : 1.0;
      ++pos;
      skip_ws();
    } else if (!first) {
      throw Error(ErrorKind::SyntaxError, "expected '+' or '-' between terms", Span{pos, pos + 1});
    }
    first = false;
    double coeff = 1.0;
    bool have_number = false;
    {
      const char* begin = text.data() + pos;
      const char* end = text.data() + text.size();
      double value = 0.0;
      auto res = std::from_chars(begin, end, value);
      if (res.ec == std::errc() && res.ptr != begin) {
        coeff = value;
        have_number = true;
        pos += static_cast<std::size_t>(res.ptr - begin);
      }
    }
    std::size_t unit = 0;
    if (pos < text.size() && text[pos] == 'l') {
      unit = 4;
      ++pos;
      if (pos < text.size() && (text[pos] == 'i' || text[pos] == 'j' || text[pos] == 'k')) {
        unit = 4 + static_cast<std::size_t>(text[pos] - 'i') + 1;
        ++pos;
      }
    } else if (pos < text.size() && (text[pos] == 'i' || text[pos] == 'j' || text[pos] == 'k')) {
      unit = static_cast<std::size_t>(text[pos] - 'i') + 1;
      ++pos;
    } else if (!have_number) {
      throw Error(ErrorKind::UnknownToken, "expected a number or unit token", Span{pos, pos + 1});
    }
    if (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
      std::size_t stop = pos;
      while (stop < text.size() && std::isalnum(static_cast<unsigned char>(text[stop]))) ++stop;
      throw Error(ErrorKind::UnknownToken, "unknown unit token", Span{pos, stop});
    }
    out[unit] += sign * coeff;
  }
  if (!out.is_finite()) throw Error(ErrorKind::SyntaxError, "non-finite coefficient", Span{0, text.size()});
  return out;
}

}  // namespace octoslice
