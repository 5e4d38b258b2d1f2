#include "wildfront/expression.hpp"

#include "wildfront/linalg.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wildfront {

namespace {

struct Dual {
  double v = 0.0;
  double d = 0.0;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }

enum Fn1 { kSin, kCos, kTan, kAsin, kAcos, kAtan, kExp, kLog, kSqrt, kAbs };
enum Fn2 { kAtan2, kPow, kMin, kMax };

constexpr std::array<std::string_view, 10> kFn1Names = {"sin", "cos", "tan", "asin", "acos",
                                                         "atan", "exp", "log", "sqrt", "abs"};
constexpr std::array<std::string_view, 4> kFn2Names = {"atan2", "pow", "min", "max"};

double apply1(int f, double x) {
  switch (f) {
    case kSin: return std::sin(x);
    case kCos: return std::cos(x);
    case kTan: return std::tan(x);
    case kAsin: return std::asin(x);
    case kAcos: return std::acos(x);
    case kAtan: return std::atan(x);
    case kExp: return std::exp(x);
    case kLog: return std::log(x);
    case kSqrt: return std::sqrt(x);
    default: return std::abs(x);
  }
}

Dual apply1(int f, Dual x) {
  switch (f) {
    case kSin: return {std::sin(x.v), std::cos(x.v) * x.d};
    case kCos: return {std::cos(x.v), -std::sin(x.v) * x.d};
    case kTan: {
      const double t = std::tan(x.v);
      return {t, (1.0 + t * t) * x.d};
    }
    case kAsin: return {std::asin(x.v), x.d / std::sqrt(1.0 - x.v * x.v)};
    case kAcos: return {std::acos(x.v), -x.d / std::sqrt(1.0 - x.v * x.v)};
    case kAtan: return {std::atan(x.v), x.d / (1.0 + x.v * x.v)};
    case kExp: {
      const double e = std::exp(x.v);
      return {e, e * x.d};
    }
    case kLog: return {std::log(x.v), x.d / x.v};
    case kSqrt: {
      const double r = std::sqrt(x.v);
      return {r, r > 0.0 ? 0.5 * x.d / r : 0.0};
    }
    default: return {std::abs(x.v), x.v < 0.0 ? -x.d : x.d};
  }
}

double apply2(int f, double a, double b) {
  switch (f) {
    case kAtan2: return std::atan2(a, b);
    case kPow: return std::pow(a, b);
    case kMin: return std::min(a, b);
    default: return std::max(a, b);
  }
}

Dual dual_pow(Dual a, Dual b) {
  const double p = std::pow(a.v, b.v);
  double d = 0.0;
  if (b.d == 0.0) {
    d = (a.v == 0.0 && b.v == 0.0) ? 0.0 : b.v * std::pow(a.v, b.v - 1.0) * a.d;
  } else {
    d = p * (b.d * std::log(a.v) + b.v * a.d / a.v);
  }
  return {p, d};
}

Dual apply2(int f, Dual a, Dual b) {
  switch (f) {
    case kAtan2: {
      const double r2 = a.v * a.v + b.v * b.v;
      return {std::atan2(a.v, b.v), (b.v * a.d - a.v * b.d) / r2};
    }
    case kPow: return dual_pow(a, b);
    case kMin: return a.v <= b.v ? a : b;
    default: return a.v >= b.v ? a : b;
  }
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  std::vector<Expression::Op> run(bool& uses_vars) {
    expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    uses_vars = uses_vars_;
    return std::move(out_);
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression \"" + std::string(s_) + "\": " + what, 1, static_cast<int>(pos_) + 1);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expr() {
    term();
    for (;;) {
      if (accept('+')) {
        term();
        out_.push_back({Op::Kind::Add});
      } else if (accept('-')) {
        term();
        out_.push_back({Op::Kind::Sub});
      } else {
        return;
      }
    }
  }

  void term() {
    unary();
    for (;;) {
      if (accept('*')) {
        unary();
        out_.push_back({Op::Kind::Mul});
      } else if (accept('/')) {
        unary();
        out_.push_back({Op::Kind::Div});
      } else {
        return;
      }
    }
  }

  void unary() {
    if (accept('-')) {
      unary();
      out_.push_back({Op::Kind::Neg});
    } else if (accept('+')) {
      unary();
    } else {
      power();
    }
  }

  // Right associative; binds tighter than unary minus on its left: -2^2 = -4.
  void power() {
    primary();
    if (accept('^')) {
      unary();
      out_.push_back({Op::Kind::Pow});
    }
  }

  void primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (accept('(')) {
      expr();
      if (!accept(')')) fail("expected ')'");
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      identifier();
      return;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  void number() {
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    out_.push_back({Op::Kind::Number, value});
  }

  void identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string_view name = s_.substr(start, pos_ - start);
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      call(name, start);
      return;
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) {
        out_.push_back({Op::Kind::Variable, 0.0, static_cast<int>(i)});
        uses_vars_ = true;
        return;
      }
    }
    if (name == "pi") {
      out_.push_back({Op::Kind::Number, std::numbers::pi});
      return;
    }
    if (name == "e") {
      out_.push_back({Op::Kind::Number, std::numbers::e});
      return;
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  void call(std::string_view name, std::size_t start) {
    for (std::size_t f = 0; f < kFn1Names.size(); ++f) {
      if (kFn1Names[f] == name) {
        expr();
        if (!accept(')')) fail("expected ')' after argument of " + std::string(name));
        out_.push_back({Op::Kind::Call1, 0.0, static_cast<int>(f)});
        return;
      }
    }
    for (std::size_t f = 0; f < kFn2Names.size(); ++f) {
      if (kFn2Names[f] == name) {
        expr();
        if (!accept(',')) fail("expected ',' in " + std::string(name));
        expr();
        if (!accept(')')) fail("expected ')' after arguments of " + std::string(name));
        out_.push_back({Op::Kind::Call2, 0.0, static_cast<int>(f)});
        return;
      }
    }
    pos_ = start;
    fail("unknown function '" + std::string(name) + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
  bool uses_vars_ = false;
  std::vector<Op> out_;
};

template <typename T, typename Load>
T run_program(const std::vector<Expression::Op>& program, Load load) {
  using Kind = Expression::Op::Kind;
  std::array<T, 64> stack{};
  std::size_t top = 0;
  for (const auto& op : program) {
    switch (op.kind) {
      case Kind::Number: stack[top++] = T{op.number}; break;
      case Kind::Variable: stack[top++] = load(op.index); break;
      case Kind::Neg: stack[top - 1] = T{} - stack[top - 1]; break;
      case Kind::Call1: stack[top - 1] = apply1(op.index, stack[top - 1]); break;
      default: {
        const T b = stack[--top];
        T& a = stack[top - 1];
        switch (op.kind) {
          case Kind::Add: a = a + b; break;
          case Kind::Sub: a = a - b; break;
          case Kind::Mul: a = a * b; break;
          case Kind::Div: a = a / b; break;
          case Kind::Pow:
            if constexpr (std::is_same_v<T, double>) a = std::pow(a, b);
            else a = dual_pow(a, b);
            break;
          default: a = apply2(op.index, a, b); break;
        }
      }
    }
  }
  return stack[0];
}

std::size_t max_depth(const std::vector<Expression::Op>& program) {
  using Kind = Expression::Op::Kind;
  std::size_t depth = 0, best = 0;
  for (const auto& op : program) {
    if (op.kind == Kind::Number || op.kind == Kind::Variable) ++depth;
    else if (op.kind != Kind::Neg && op.kind != Kind::Call1) --depth;
    best = std::max(best, depth);
  }
  return best;
}

}  // namespace

Expression::Expression() : text_("0"), program_{{Op::Kind::Number, 0.0}} {}

Expression Expression::parse(std::string_view text, std::vector<std::string> variables) {
  Expression e;
  e.text_ = std::string(text);
  e.variables_ = std::move(variables);
  Parser p(e.text_, e.variables_);
  e.program_ = p.run(e.uses_variables_);
  if (max_depth(e.program_) > 64)
    throw ParseError("expression \"" + e.text_ + "\" is nested too deeply", 1, 1);
  return e;
}

Expression Expression::constant(double value) {
  Expression e;
  e.text_ = format_number(value);
  e.program_ = {{Op::Kind::Number, value}};
  return e;
}

double Expression::eval(std::span<const double> vars) const {
  return run_program<double>(program_, [&](int i) {
    return static_cast<std::size_t>(i) < vars.size() ? vars[static_cast<std::size_t>(i)] : 0.0;
  });
}

std::pair<double, double> Expression::eval_with_derivative(std::span<const double> vars,
                                                           std::size_t wrt) const {
  const Dual r = run_program<Dual>(program_, [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    const double v = k < vars.size() ? vars[k] : 0.0;
    return Dual{v, k == wrt ? 1.0 : 0.0};
  });
  return {r.v, r.d};
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

}  // namespace wildfront
