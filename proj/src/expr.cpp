#include "fuzzobj/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

namespace fuzzobj {

ExprPtr Expr::number(double v) { return std::make_shared<Expr>(Expr{NumberLit{v}}); }

ExprPtr Expr::ref(std::string name, std::optional<std::size_t> index) {
  return std::make_shared<Expr>(Expr{NameRef{std::move(name), index}});
}

ExprPtr Expr::unary(UnaryFn fn, ExprPtr arg) {
  return std::make_shared<Expr>(Expr{UnaryExpr{fn, std::move(arg)}});
}

ExprPtr Expr::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<Expr>(Expr{BinaryExpr{op, std::move(lhs), std::move(rhs)}});
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  if (const auto* n = std::get_if<NumberLit>(&a->node))
    return n->value == std::get<NumberLit>(b->node).value;
  if (const auto* r = std::get_if<NameRef>(&a->node)) {
    const auto& s = std::get<NameRef>(b->node);
    return r->name == s.name && r->index == s.index;
  }
  if (const auto* u = std::get_if<UnaryExpr>(&a->node)) {
    const auto& v = std::get<UnaryExpr>(b->node);
    return u->fn == v.fn && expr_equal(u->arg, v.arg);
  }
  const auto& x = std::get<BinaryExpr>(a->node);
  const auto& y = std::get<BinaryExpr>(b->node);
  return x.op == y.op && expr_equal(x.lhs, y.lhs) && expr_equal(x.rhs, y.rhs);
}

// ---------------------------------------------------------------------------
// Tokenizer / parser

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, Equals, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const Token& at, const std::string& expected) const {
    std::ostringstream os;
    os << "line " << at.line << ", col " << at.col << ": expected " << expected << ", got "
       << (at.kind == Tok::End ? std::string("end of input") : "'" + at.text + "'");
    throw Error(Errc::ParseError, os.str());
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) bump();
    current_ = Token{};
    current_.line = line_;
    current_.col = col_;
    if (pos_ >= text_.size()) {
      current_.kind = Tok::End;
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '+': single(Tok::Plus); return;
      case '-': single(Tok::Minus); return;
      case '*': single(Tok::Star); return;
      case '/': single(Tok::Slash); return;
      case '^': single(Tok::Caret); return;
      case '(': single(Tok::LParen); return;
      case ')': single(Tok::RParen); return;
      case '[': single(Tok::LBracket); return;
      case ']': single(Tok::RBracket); return;
      case '=': single(Tok::Equals); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        bump();
      current_.kind = Tok::Ident;
      current_.text = text_.substr(start, pos_ - start);
      return;
    }
    current_.text = std::string(1, c);
    fail(current_, "a token");
  }

  void lex_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) bump();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      bump();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        current_.text = text_.substr(start, pos_ - start);
        fail(current_, "a digit after '.'");
      }
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) bump();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      bump();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) bump();
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) bump();
      } else {
        pos_ = mark;  // the 'e' starts an identifier, not an exponent
      }
    }
    current_.kind = Tok::Number;
    current_.text = text_.substr(start, pos_ - start);
    current_.number = std::strtod(current_.text.c_str(), nullptr);
  }

  void single(Tok kind) {
    current_.kind = kind;
    current_.text = std::string(1, text_[pos_]);
    bump();
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (lex_.peek().kind != Tok::End) lex_.fail(lex_.peek(), "an operator or end of input");
    return e;
  }

  std::vector<GuardAtom> parse_guard_atoms() {
    std::vector<GuardAtom> atoms;
    atoms.push_back(atom());
    while (lex_.peek().kind == Tok::Ident && lex_.peek().text == "and") {
      lex_.take();
      atoms.push_back(atom());
    }
    if (lex_.peek().kind != Tok::End) lex_.fail(lex_.peek(), "'and' or end of input");
    return atoms;
  }

 private:
  GuardAtom atom() {
    Token name = expect(Tok::Ident, "a property name");
    expect(Tok::Equals, "'='");
    Token value = expect(Tok::Number, "a degree in [0,1]");
    if (!(value.number >= 0.0 && value.number <= 1.0)) lex_.fail(value, "a degree in [0,1]");
    return GuardAtom{name.text, value.number};
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      Tok op = lex_.take().kind;
      lhs = Expr::binary(op == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub, lhs, term());
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
      Tok op = lex_.take().kind;
      lhs = Expr::binary(op == Tok::Star ? BinaryOp::Mul : BinaryOp::Div, lhs, unary());
    }
    return lhs;
  }

  ExprPtr unary() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      return Expr::unary(UnaryFn::Neg, unary());
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      return Expr::binary(BinaryOp::Pow, base, unary());  // right-associative
    }
    return base;
  }

  ExprPtr primary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Number:
        return Expr::number(lex_.take().number);
      case Tok::LParen: {
        lex_.take();
        ExprPtr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        Token name = lex_.take();
        if (lex_.peek().kind == Tok::LParen) {
          UnaryFn fn;
          if (name.text == "sin") fn = UnaryFn::Sin;
          else if (name.text == "cos") fn = UnaryFn::Cos;
          else if (name.text == "sqrt") fn = UnaryFn::Sqrt;
          else if (name.text == "neg") fn = UnaryFn::Neg;
          else lex_.fail(name, "one of the functions sin, cos, sqrt, neg");
          lex_.take();
          ExprPtr arg = expr();
          expect(Tok::RParen, "')'");
          return Expr::unary(fn, arg);
        }
        std::optional<std::size_t> index;
        if (lex_.peek().kind == Tok::LBracket) {
          lex_.take();
          Token n = expect(Tok::Number, "a component index");
          if (n.text.find_first_not_of("0123456789") != std::string::npos)
            lex_.fail(n, "a non-negative integer index");
          index = static_cast<std::size_t>(n.number);
          expect(Tok::RBracket, "']'");
        }
        return Expr::ref(name.text, index);
      }
      default:
        lex_.fail(t, "a number, name or '('");
    }
  }

  Token expect(Tok kind, const std::string& what) {
    if (lex_.peek().kind != kind) lex_.fail(lex_.peek(), what);
    return lex_.take();
  }

  Lexer lex_;
};

}  // namespace

ExprPtr parse_expr(const std::string& text) {
  if (text.empty()) throw Error(Errc::ParseError, "empty expression");
  return Parser(text).parse();
}

std::vector<GuardAtom> parse_guard(const std::string& text) {
  if (text.empty()) return {};
  return Parser(text).parse_guard_atoms();
}

std::string guard_to_string(const std::vector<GuardAtom>& guard) {
  std::string out;
  for (const auto& atom : guard) {
    if (!out.empty()) out += " and ";
    out += atom.property + " = " + format_number(atom.degree);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence used for minimal parenthesization: + - (1), * / (2),
// unary minus (3), ^ (4), atoms (9).
int precedence(const Expr& e) {
  if (std::holds_alternative<BinaryExpr>(e.node)) {
    switch (std::get<BinaryExpr>(e.node).op) {
      case BinaryOp::Add:
      case BinaryOp::Sub: return 1;
      case BinaryOp::Mul:
      case BinaryOp::Div: return 2;
      case BinaryOp::Pow: return 4;
    }
  }
  if (const auto* u = std::get_if<UnaryExpr>(&e.node))
    return u->fn == UnaryFn::Neg ? 3 : 9;
  if (const auto* n = std::get_if<NumberLit>(&e.node))
    return n->value < 0 ? 3 : 9;
  return 9;
}

void print(std::string& out, const ExprPtr& e, int min_prec) {
  bool parens = precedence(*e) < min_prec;
  if (parens) out += '(';
  if (const auto* n = std::get_if<NumberLit>(&e->node)) {
    out += format_number(n->value);
  } else if (const auto* r = std::get_if<NameRef>(&e->node)) {
    out += r->name;
    if (r->index) out += "[" + std::to_string(*r->index) + "]";
  } else if (const auto* u = std::get_if<UnaryExpr>(&e->node)) {
    switch (u->fn) {
      case UnaryFn::Neg:
        out += '-';
        print(out, u->arg, 3);
        break;
      case UnaryFn::Sin:
      case UnaryFn::Cos:
      case UnaryFn::Sqrt:
        out += u->fn == UnaryFn::Sin ? "sin(" : u->fn == UnaryFn::Cos ? "cos(" : "sqrt(";
        print(out, u->arg, 1);
        out += ')';
        break;
    }
  } else {
    const auto& b = std::get<BinaryExpr>(e->node);
    switch (b.op) {
      case BinaryOp::Add:
        print(out, b.lhs, 1); out += '+'; print(out, b.rhs, 2);
        break;
      case BinaryOp::Sub:
        print(out, b.lhs, 1); out += '-'; print(out, b.rhs, 2);
        break;
      case BinaryOp::Mul:
        print(out, b.lhs, 2); out += '*'; print(out, b.rhs, 3);
        break;
      case BinaryOp::Div:
        print(out, b.lhs, 2); out += '/'; print(out, b.rhs, 3);
        break;
      case BinaryOp::Pow:
        print(out, b.lhs, 9); out += '^'; print(out, b.rhs, 3);
        break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const ExprPtr& expr) {
  std::string out;
  print(out, expr, 1);
  return out;
}

// ---------------------------------------------------------------------------
// Method definitions

const char* method_kind_name(MethodKind kind) {
  return kind == MethodKind::Exploiter ? "exploiter" : "modifier";
}

MethodKind method_kind_from_name(const std::string& name) {
  if (name == "exploiter") return MethodKind::Exploiter;
  if (name == "modifier") return MethodKind::Modifier;
  throw Error(Errc::SchemaError, "unknown method kind '" + name + "'");
}

bool MethodDef::operator==(const MethodDef& other) const {
  return name == other.name && params == other.params && guard == other.guard &&
         kind == other.kind && expr_equal(body, other.body);
}

namespace {

int param_index(const std::vector<std::string>& params, const std::string& name) {
  auto it = std::find(params.begin(), params.end(), name);
  return it == params.end() ? -1 : static_cast<int>(it - params.begin());
}

bool alpha_equal_rec(const ExprPtr& a, const std::vector<std::string>& pa, const ExprPtr& b,
                     const std::vector<std::string>& pb) {
  if (a->node.index() != b->node.index()) return false;
  if (const auto* n = std::get_if<NumberLit>(&a->node))
    return n->value == std::get<NumberLit>(b->node).value;
  if (const auto* r = std::get_if<NameRef>(&a->node)) {
    const auto& s = std::get<NameRef>(b->node);
    if (r->index != s.index) return false;
    int ia = param_index(pa, r->name);
    int ib = param_index(pb, s.name);
    if (ia >= 0 || ib >= 0) return ia == ib;  // parameters unify by position
    return r->name == s.name;                 // property references by name
  }
  if (const auto* u = std::get_if<UnaryExpr>(&a->node)) {
    const auto& v = std::get<UnaryExpr>(b->node);
    return u->fn == v.fn && alpha_equal_rec(u->arg, pa, v.arg, pb);
  }
  const auto& x = std::get<BinaryExpr>(a->node);
  const auto& y = std::get<BinaryExpr>(b->node);
  return x.op == y.op && alpha_equal_rec(x.lhs, pa, y.lhs, pb) &&
         alpha_equal_rec(x.rhs, pa, y.rhs, pb);
}

}  // namespace

bool alpha_equivalent(const MethodDef& a, const MethodDef& b) {
  if (a.kind != b.kind) return false;
  if (a.params.size() != b.params.size()) return false;
  if (a.guard.size() != b.guard.size()) return false;
  for (std::size_t i = 0; i < a.guard.size(); ++i) {
    if (a.guard[i].property != b.guard[i].property) return false;
    if (!approx_eq(a.guard[i].degree, b.guard[i].degree)) return false;
  }
  return alpha_equal_rec(a.body, a.params, b.body, b.params);
}

void for_each_ref(const ExprPtr& expr, const std::function<void(const NameRef&)>& fn) {
  if (const auto* r = std::get_if<NameRef>(&expr->node)) {
    fn(*r);
  } else if (const auto* u = std::get_if<UnaryExpr>(&expr->node)) {
    for_each_ref(u->arg, fn);
  } else if (const auto* b = std::get_if<BinaryExpr>(&expr->node)) {
    for_each_ref(b->lhs, fn);
    for_each_ref(b->rhs, fn);
  }
}

}  // namespace fuzzobj
