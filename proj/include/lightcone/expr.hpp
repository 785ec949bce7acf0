#ifndef LIGHTCONE_EXPR_HPP
#define LIGHTCONE_EXPR_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lightcone {

struct EvalDomainError : std::runtime_error {
  explicit EvalDomainError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"), offset(pos) {}
  std::size_t offset;
};

enum class Op : std::uint8_t {
  Const, Coord, Add, Sub, Mul, Div, Pow, Exp, Log, Sin, Cos, Sqrt
};

/// Immutable scalar expression over named chart coordinates.
/// Nodes live in a process-wide hash-consed pool, so structurally equal
/// subexpressions share one id and equality of ids implies equality of
/// expressions. Construction applies constant folding and 0/1 absorption
/// only; no other rewriting.
class Expr {
 public:
  Expr() : id_(0) {}  // zero

  static Expr constant(double v);
  static Expr coord(int index);
  static Expr pi();

  Expr pow(int exponent) const;

  double eval(std::span<const double> point) const;
  Expr diff(int coord) const;

  /// Largest coordinate index occurring in the expression, plus one.
  int arity() const;

  std::string str(const std::vector<std::string>& names) const;

  std::int32_t id() const { return id_; }
  friend bool operator==(Expr a, Expr b) { return a.id_ == b.id_; }
  bool is_zero() const { return id_ == 0; }

  friend Expr operator+(Expr a, Expr b);
  friend Expr operator-(Expr a, Expr b);
  friend Expr operator*(Expr a, Expr b);
  friend Expr operator/(Expr a, Expr b);
  friend Expr operator-(Expr a);
  friend Expr operator+(Expr a, double b) { return a + constant(b); }
  friend Expr operator+(double a, Expr b) { return constant(a) + b; }
  friend Expr operator-(Expr a, double b) { return a - constant(b); }
  friend Expr operator-(double a, Expr b) { return constant(a) - b; }
  friend Expr operator*(Expr a, double b) { return a * constant(b); }
  friend Expr operator*(double a, Expr b) { return constant(a) * b; }
  friend Expr operator/(Expr a, double b) { return a / constant(b); }
  friend Expr operator/(double a, Expr b) { return constant(a) / b; }

  static Expr from_id(std::int32_t id) { Expr e; e.id_ = id; return e; }

 private:
  std::int32_t id_;
};

Expr exp(Expr a);
Expr log(Expr a);
Expr sin(Expr a);
Expr cos(Expr a);
Expr sqrt(Expr a);

/// Evaluates several expressions at one point with a shared value cache.
class Evaluator {
 public:
  explicit Evaluator(std::span<const double> point);
  double operator()(Expr e);

 private:
  std::vector<double> point_;
  std::uint64_t epoch_;
};

/// |symbolic derivative - central difference| at `point`, relative where the
/// symbolic value exceeds 1 in magnitude. Throws EvalDomainError if any
/// stencil point is inadmissible.
double fd_crosscheck(Expr e, int coord, std::span<const double> point, double step = 1e-5);

/// Infix parser over the given coordinate names. Accepts numeric literals,
/// `pi`, + - * / ^ (integer exponent), exp, log, sin, cos, sqrt.
Expr parse_expr(const std::string& text, const std::vector<std::string>& names);

namespace pool {
/// Number of nodes interned so far (grows monotonically).
std::size_t size();
/// Node ids are dense in [0, size()); rebuild an Expr from a raw id.
Op op_of(std::int32_t id);
}  // namespace pool

}  // namespace lightcone

#endif
