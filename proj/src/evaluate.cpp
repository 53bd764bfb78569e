#include "fuzzobj/evaluate.hpp"

#include <algorithm>
#include <cmath>

namespace fuzzobj {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Unit {
  std::string base;  // empty = dimensionless
  int exp = 0;

  bool dimensionless() const { return base.empty() || exp == 0; }

  std::string render() const {
    if (dimensionless()) return "";
    if (exp == 1) return base;
    return base + "^" + std::to_string(exp);
  }
};

Unit combine_add(const Unit& a, const Unit& b) {
  if (a.dimensionless()) return b;
  if (b.dimensionless()) return a;
  if (a.base != b.base || a.exp != b.exp)
    throw Error(Errc::EvalError, "cannot add or subtract '" + a.render() + "' and '" + b.render() + "'");
  return a;
}

Unit combine_mul(const Unit& a, const Unit& b, bool divide) {
  if (a.dimensionless() && b.dimensionless()) return {};
  if (!a.dimensionless() && !b.dimensionless() && a.base != b.base)
    throw Error(Errc::EvalError, "mixed units '" + a.base + "' and '" + b.base + "'");
  Unit out;
  out.base = a.dimensionless() ? b.base : a.base;
  out.exp = (a.dimensionless() ? 0 : a.exp) + (divide ? -1 : 1) * (b.dimensionless() ? 0 : b.exp);
  return out;
}

struct Value {
  std::variant<double, Type1FuzzySet, Type2FuzzySet> v;
  Unit unit;

  bool is_crisp() const { return v.index() == 0; }
  double crisp() const { return std::get<double>(v); }
};

double fold(BinaryOp op, double a, double b) {
  double r = 0.0;
  switch (op) {
    case BinaryOp::Add: r = a + b; break;
    case BinaryOp::Sub: r = a - b; break;
    case BinaryOp::Mul: r = a * b; break;
    case BinaryOp::Div:
      if (b == 0.0) throw Error(Errc::EvalError, "division by zero");
      r = a / b;
      break;
    case BinaryOp::Pow: r = std::pow(a, b); break;
  }
  if (!std::isfinite(r)) throw Error(Errc::EvalError, "arithmetic produced a non-finite value");
  return r;
}

Value map_fuzzy(const Value& in, const std::function<double(double)>& f, Unit unit) {
  if (const auto* t1 = std::get_if<Type1FuzzySet>(&in.v)) return {map_unary(*t1, f), std::move(unit)};
  return {map_unary_type2(std::get<Type2FuzzySet>(in.v), f), std::move(unit)};
}

Value apply_binary(BinaryOp op, const Value& lhs, const Value& rhs) {
  if (!lhs.is_crisp() && !rhs.is_crisp())
    throw Error(Errc::MultiFuzzyOperands, "two fuzzy operands meet at one operator");

  Unit unit;
  switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Sub:
      unit = combine_add(lhs.unit, rhs.unit);
      break;
    case BinaryOp::Mul:
      unit = combine_mul(lhs.unit, rhs.unit, false);
      break;
    case BinaryOp::Div:
      unit = combine_mul(lhs.unit, rhs.unit, true);
      break;
    case BinaryOp::Pow: {
      if (!rhs.is_crisp()) {
        // fuzzy exponent: base must be a dimensionless crisp value
        if (!lhs.unit.dimensionless())
          throw Error(Errc::EvalError, "fuzzy exponent over a united base");
        unit = {};
        break;
      }
      if (!rhs.unit.dimensionless()) throw Error(Errc::EvalError, "exponent must be dimensionless");
      if (lhs.unit.dimensionless()) {
        unit = {};
      } else {
        double e = rhs.crisp();
        if (!approx_eq(e, std::round(e)))
          throw Error(Errc::EvalError, "united value raised to non-integer power");
        unit = {lhs.unit.base, lhs.unit.exp * static_cast<int>(std::llround(e))};
      }
      break;
    }
  }

  if (lhs.is_crisp() && rhs.is_crisp()) return {fold(op, lhs.crisp(), rhs.crisp()), unit};
  if (lhs.is_crisp()) {
    double a = lhs.crisp();
    return map_fuzzy(rhs, [op, a](double v) { return fold(op, a, v); }, unit);
  }
  double b = rhs.crisp();
  return map_fuzzy(lhs, [op, b](double v) { return fold(op, v, b); }, unit);
}

bool is_angle_unit(const std::string& base) { return base == "deg" || base == "\xc2\xb0"; }

Value apply_unary(UnaryFn fn, const Value& arg) {
  switch (fn) {
    case UnaryFn::Neg: {
      Value out = arg;
      if (out.is_crisp()) out.v = -out.crisp();
      else out = map_fuzzy(arg, [](double v) { return -v; }, arg.unit);
      return out;
    }
    case UnaryFn::Sqrt: {
      Unit unit;
      if (!arg.unit.dimensionless()) {
        if (arg.unit.exp % 2 != 0)
          throw Error(Errc::EvalError, "sqrt of '" + arg.unit.render() + "' has no integral unit");
        unit = {arg.unit.base, arg.unit.exp / 2};
      }
      auto f = [](double v) {
        if (v < 0.0) throw Error(Errc::EvalError, "sqrt of a negative value");
        return std::sqrt(v);
      };
      if (arg.is_crisp()) return {f(arg.crisp()), unit};
      return map_fuzzy(arg, f, unit);
    }
    case UnaryFn::Sin:
    case UnaryFn::Cos: {
      // Angle-united arguments are taken in degrees; anything else must be
      // dimensionless and is taken in radians.
      double scale = 1.0;
      if (!arg.unit.dimensionless()) {
        if (!is_angle_unit(arg.unit.base) || arg.unit.exp != 1)
          throw Error(Errc::EvalError,
                      "trigonometric argument must be an angle or dimensionless, got '" +
                          arg.unit.render() + "'");
        scale = kPi / 180.0;
      }
      auto f = [fn, scale](double v) { return fn == UnaryFn::Sin ? std::sin(v * scale) : std::cos(v * scale); };
      if (arg.is_crisp()) return {f(arg.crisp()), Unit{}};
      return map_fuzzy(arg, f, Unit{});
    }
  }
  throw Error(Errc::EvalError, "unknown unary function");
}

Value value_from_property(const PropertyValue& pv, const std::optional<std::size_t>& index,
                          const std::string& name) {
  switch (kind_of(pv)) {
    case PropertyKind::CrispScalar: {
      const auto& s = std::get<CrispScalarValue>(pv);
      if (index) throw Error(Errc::EvalError, "'" + name + "' is not a tuple");
      return {s.value, Unit{s.unit, s.unit.empty() ? 0 : 1}};
    }
    case PropertyKind::CrispTuple: {
      const auto& t = std::get<CrispTupleValue>(pv);
      if (!index) throw Error(Errc::EvalError, "tuple '" + name + "' needs a component index");
      if (*index >= t.values.size())
        throw Error(Errc::EvalError, "index " + std::to_string(*index) + " out of range for '" + name + "'");
      return {t.values[*index], Unit{t.unit, t.unit.empty() ? 0 : 1}};
    }
    case PropertyKind::Fuzzy1: {
      const auto& f = std::get<Fuzzy1Value>(pv);
      if (index) throw Error(Errc::EvalError, "'" + name + "' is not a tuple");
      return {f.set, Unit{f.unit, f.unit.empty() ? 0 : 1}};
    }
    case PropertyKind::Fuzzy2: {
      const auto& f = std::get<Fuzzy2Value>(pv);
      if (index) throw Error(Errc::EvalError, "'" + name + "' is not a tuple");
      return {f.set, Unit{f.unit, f.unit.empty() ? 0 : 1}};
    }
    case PropertyKind::FuzzyTuple: {
      const auto& ft = std::get<FuzzyTupleValue>(pv);
      if (!index) throw Error(Errc::EvalError, "tuple '" + name + "' needs a component index");
      if (*index >= ft.arity())
        throw Error(Errc::EvalError, "index " + std::to_string(*index) + " out of range for '" + name + "'");
      Unit unit{ft.unit, ft.unit.empty() ? 0 : 1};
      if (ft.is_type1()) return {std::get<0>(ft.sets)[*index], unit};
      return {std::get<1>(ft.sets)[*index], unit};
    }
    case PropertyKind::Verification:
      if (index) throw Error(Errc::EvalError, "'" + name + "' is not a tuple");
      return {std::get<VerificationValue>(pv).degree.value(), Unit{}};
  }
  throw Error(Errc::EvalError, "unhandled property kind");
}

struct Evaluator {
  const MethodDef& method;
  const FuzzyObject& subject;
  const Bindings& bindings;

  Value eval(const ExprPtr& e) const {
    if (const auto* n = std::get_if<NumberLit>(&e->node)) return {n->value, Unit{}};
    if (const auto* r = std::get_if<NameRef>(&e->node)) return resolve(*r);
    if (const auto* u = std::get_if<UnaryExpr>(&e->node)) return apply_unary(u->fn, eval(u->arg));
    const auto& b = std::get<BinaryExpr>(e->node);
    return apply_binary(b.op, eval(b.lhs), eval(b.rhs));
  }

  Value resolve(const NameRef& ref) const {
    bool is_param =
        std::find(method.params.begin(), method.params.end(), ref.name) != method.params.end();
    if (is_param) {
      auto it = bindings.find(ref.name);
      if (it == bindings.end())
        throw Error(Errc::UnboundParameter, "parameter '" + ref.name + "' is not bound");
      if (const auto* d = std::get_if<double>(&it->second)) {
        if (!std::isfinite(*d)) throw Error(Errc::EvalError, "non-finite binding for '" + ref.name + "'");
        return {*d, Unit{}};
      }
      return value_from_property(std::get<PropertyValue>(it->second), ref.index, ref.name);
    }
    const Property* p = subject.spec.find(ref.name);
    if (!p)
      throw Error(Errc::UnknownProperty,
                  "'" + ref.name + "' is neither a parameter nor a property of '" + subject.id + "'");
    return value_from_property(p->value, ref.index, ref.name);
  }
};

}  // namespace

void check_guard(const MethodDef& method, const FuzzyObject& subject) {
  for (const auto& atom : method.guard) {
    const Property* p = subject.spec.find(atom.property);
    if (!p)
      throw Error(Errc::GuardFailed, "method '" + method.name + "' is undefined for '" + subject.id +
                                         "': property '" + atom.property + "' is missing");
    const auto* v = std::get_if<VerificationValue>(&p->value);
    if (!v)
      throw Error(Errc::GuardFailed, "method '" + method.name + "' is undefined for '" + subject.id +
                                         "': '" + atom.property + "' is not a verification property");
    if (!approx_eq(v->degree.value(), atom.degree))
      throw Error(Errc::GuardFailed, "method '" + method.name + "' is undefined for '" + subject.id +
                                         "': guard needs " + atom.property + " = " +
                                         format_number(atom.degree) + ", observed " +
                                         format_number(v->degree.value()));
  }
}

bool guard_holds(const MethodDef& method, const FuzzyObject& subject) {
  for (const auto& atom : method.guard) {
    const Property* p = subject.spec.find(atom.property);
    if (!p) return false;
    const auto* v = std::get_if<VerificationValue>(&p->value);
    if (!v || !approx_eq(v->degree.value(), atom.degree)) return false;
  }
  return true;
}

PropertyValue evaluate(const MethodDef& method, const FuzzyObject& subject, const Bindings& bindings) {
  check_guard(method, subject);
  for (const auto& param : method.params)
    if (!bindings.count(param))
      throw Error(Errc::UnboundParameter, "parameter '" + param + "' is not bound");

  Value result = Evaluator{method, subject, bindings}.eval(method.body);
  std::string unit = result.unit.render();
  if (const auto* d = std::get_if<double>(&result.v)) return CrispScalarValue{*d, unit};
  if (const auto* t1 = std::get_if<Type1FuzzySet>(&result.v)) return Fuzzy1Value{*t1, unit};
  return Fuzzy2Value{std::get<Type2FuzzySet>(result.v), unit};
}

}  // namespace fuzzobj
