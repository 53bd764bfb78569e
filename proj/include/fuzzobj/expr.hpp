#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fuzzobj/common.hpp"

namespace fuzzobj {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class UnaryFn { Sin, Cos, Sqrt, Neg };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberLit {
  double value = 0.0;
};

/// A name in a method body: a declared parameter or a property of the
/// owning specification, with an optional tuple component index.
struct NameRef {
  std::string name;
  std::optional<std::size_t> index;
};

struct UnaryExpr {
  UnaryFn fn;
  ExprPtr arg;
};

struct BinaryExpr {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  std::variant<NumberLit, NameRef, UnaryExpr, BinaryExpr> node;

  static ExprPtr number(double v);
  static ExprPtr ref(std::string name, std::optional<std::size_t> index = std::nullopt);
  static ExprPtr unary(UnaryFn fn, ExprPtr arg);
  static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// Parses the method-expression grammar (see docs/expressions.md).
/// Conventional precedence: ^ above * / above + -, all left-associative
/// except ^ which is right-associative; whitespace is insignificant.
/// Throws ParseError carrying line, column and the expected token set.
ExprPtr parse_expr(const std::string& text);

/// Canonical rendering; parse(to_string(e)) reproduces e node for node.
std::string to_string(const ExprPtr& expr);

/// One conjunct of a method guard: the named verification property must
/// equal the stated degree (within tolerance).
struct GuardAtom {
  std::string property;
  double degree = 0.0;
  bool operator==(const GuardAtom&) const = default;
};

/// Guard syntax: `name = degree` atoms joined with `and`.
std::vector<GuardAtom> parse_guard(const std::string& text);
std::string guard_to_string(const std::vector<GuardAtom>& guard);

enum class MethodKind { Exploiter, Modifier };

const char* method_kind_name(MethodKind kind);
MethodKind method_kind_from_name(const std::string& name);

struct MethodDef {
  std::string name;
  std::vector<std::string> params;
  ExprPtr body;
  std::vector<GuardAtom> guard;  // empty = always applicable
  MethodKind kind = MethodKind::Exploiter;

  bool operator==(const MethodDef& other) const;
};

/// True when the bodies coincide after renaming parameters by declaration
/// position, the guards match structurally and the kinds agree. Method
/// names play no part.
bool alpha_equivalent(const MethodDef& a, const MethodDef& b);

/// Calls `fn(ref)` for every name reference in the expression.
void for_each_ref(const ExprPtr& expr, const std::function<void(const NameRef&)>& fn);

}  // namespace fuzzobj
