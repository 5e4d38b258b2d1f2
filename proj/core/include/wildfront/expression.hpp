#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wildfront {

// Arithmetic expression over named real variables, e.g. "cos(s)*(cos(s)+6)/4".
// Supports + - * / ^, unary minus, parentheses, the constants pi and e, and
// sin cos tan asin acos atan atan2 exp log sqrt abs pow min max.
// Compiled to a postfix program; derivatives are exact (forward-mode duals).
class Expression {
 public:
  Expression();  // the constant 0

  static Expression parse(std::string_view text, std::vector<std::string> variables = {});
  static Expression constant(double value);

  double eval(std::span<const double> vars = {}) const;
  // Value and partial derivative with respect to variable `wrt`.
  std::pair<double, double> eval_with_derivative(std::span<const double> vars, std::size_t wrt) const;

  bool is_constant() const noexcept { return !uses_variables_; }
  const std::string& text() const noexcept { return text_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }

  struct Op {
    enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call1, Call2 } kind;
    double number = 0.0;
    int index = 0;  // variable index or function id
  };

 private:
  std::string text_;
  std::vector<std::string> variables_;
  std::vector<Op> program_;
  bool uses_variables_ = false;
};

// Formats a double so that parsing it back yields the same value.
std::string format_number(double value);

}  // namespace wildfront
