#ifndef BRAKET_DSL_HPP
#define BRAKET_DSL_HPP

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "braket/error.hpp"
#include "braket/functional.hpp"
#include "braket/matrix.hpp"
#include "braket/model.hpp"
#include "braket/observable.hpp"
#include "braket/permutation.hpp"
#include "braket/tensor.hpp"

// A small Dirac-notation expression language:
//   |a>            ket of the bound vector a
//   <a|            bra of a
//   <a|b>          bra-ket contraction (lowered to an application)
//   f x            application by juxtaposition
//   a (x) b        tensor product ((x) always accepted, U+2297 too)
//   x'             dagger (also U+2020)
//   2 * x, x + y   scaling and sums; numbers take an i suffix: 0.5i
// Precedence, tightest first: dagger, application, (x), *, +/-.
namespace braket::dsl {

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

class parse_error : public error {
public:
  parse_error(const std::string &what, Span span)
      : error(what + " (at offset " + std::to_string(span.begin) + ")"), span_(span) {}
  Span span() const { return span_; }

private:
  Span span_;
};

class eval_error : public error {
public:
  eval_error(const std::string &what, Span span)
      : error(what + " (at offset " + std::to_string(span.begin) + ")"), span_(span) {}
  Span span() const { return span_; }

private:
  Span span_;
};

enum class TokKind { Ket, Bra, Ident, Number, LParen, RParen, Plus, Minus, Star, Tensor, Dagger, End };

struct Token {
  TokKind kind = TokKind::End;
  Span span;
  std::string text;       // identifier or ket/bra name
  double number = 0.0;    // Number payload
  bool imaginary = false; // Number had an i suffix
};

// ---------------------------------------------------------------------------
// Lexer

namespace detail {

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline std::size_t scan_ident(std::string_view text, std::size_t pos) {
  std::size_t end = pos;
  while (end < text.size() && ident_char(text[end])) ++end;
  return end;
}

inline std::size_t scan_number(std::string_view text, std::size_t pos) {
  std::size_t end = pos;
  while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
  if (end < text.size() && text[end] == '.') {
    ++end;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
  }
  if (end < text.size() && (text[end] == 'e' || text[end] == 'E')) {
    std::size_t exp = end + 1;
    if (exp < text.size() && (text[exp] == '+' || text[exp] == '-')) ++exp;
    std::size_t digits = exp;
    while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits]))) ++digits;
    if (digits > exp) end = digits;
  }
  return end;
}

} // namespace detail

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  auto push = [&](TokKind kind, std::size_t begin, std::size_t end, std::string name = "") {
    Token t;
    t.kind = kind;
    t.span = Span{begin, end};
    t.text = std::move(name);
    tokens.push_back(std::move(t));
  };
  while (pos < text.size()) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (c == '|') {
      // |name>
      const std::size_t begin = pos;
      std::size_t p = pos + 1;
      if (p >= text.size() || !detail::ident_start(text[p])) {
        throw parse_error("unterminated ket: expected a name after '|'", Span{begin, begin + 1});
      }
      const std::size_t name_end = detail::scan_ident(text, p);
      if (name_end >= text.size() || text[name_end] != '>') {
        throw parse_error("unterminated ket: expected '>'", Span{begin, name_end});
      }
      push(TokKind::Ket, begin, name_end + 1, std::string(text.substr(p, name_end - p)));
      pos = name_end + 1;
      continue;
    }
    if (c == '<') {
      // <name|  with the <a|b> contraction sharing the middle bar
      const std::size_t begin = pos;
      std::size_t p = pos + 1;
      if (p >= text.size() || !detail::ident_start(text[p])) {
        throw parse_error("unterminated bra: expected a name after '<'", Span{begin, begin + 1});
      }
      const std::size_t name_end = detail::scan_ident(text, p);
      if (name_end >= text.size() || text[name_end] != '|') {
        throw parse_error("unterminated bra: expected '|'", Span{begin, name_end});
      }
      push(TokKind::Bra, begin, name_end + 1, std::string(text.substr(p, name_end - p)));
      pos = name_end + 1;
      if (pos < text.size() && detail::ident_start(text[pos])) {
        const std::size_t ket_end = detail::scan_ident(text, pos);
        if (ket_end < text.size() && text[ket_end] == '>') {
          push(TokKind::Ket, pos, ket_end + 1, std::string(text.substr(pos, ket_end - pos)));
          pos = ket_end + 1;
        }
      }
      continue;
    }
    if (c == '(') {
      if (text.substr(pos, 3) == "(x)") {
        push(TokKind::Tensor, pos, pos + 3);
        pos += 3;
      } else {
        push(TokKind::LParen, pos, pos + 1);
        ++pos;
      }
      continue;
    }
    if (c == ')') {
      push(TokKind::RParen, pos, pos + 1);
      ++pos;
      continue;
    }
    if (c == '+') {
      push(TokKind::Plus, pos, pos + 1);
      ++pos;
      continue;
    }
    if (c == '-') {
      push(TokKind::Minus, pos, pos + 1);
      ++pos;
      continue;
    }
    if (c == '*') {
      push(TokKind::Star, pos, pos + 1);
      ++pos;
      continue;
    }
    if (c == '\'') {
      push(TokKind::Dagger, pos, pos + 1);
      ++pos;
      continue;
    }
    if (text.substr(pos, 3) == "\xE2\x8A\x97") { // U+2297 circled times
      push(TokKind::Tensor, pos, pos + 3);
      pos += 3;
      continue;
    }
    if (text.substr(pos, 3) == "\xE2\x80\xA0") { // U+2020 dagger
      push(TokKind::Dagger, pos, pos + 3);
      pos += 3;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t begin = pos;
      std::size_t end = detail::scan_number(text, pos);
      Token t;
      t.kind = TokKind::Number;
      t.number = std::stod(std::string(text.substr(begin, end - begin)));
      if (end < text.size() && text[end] == 'i') {
        t.imaginary = true;
        ++end;
      }
      t.span = Span{begin, end};
      tokens.push_back(std::move(t));
      pos = end;
      continue;
    }
    if (detail::ident_start(c)) {
      const std::size_t end = detail::scan_ident(text, pos);
      push(TokKind::Ident, pos, end, std::string(text.substr(pos, end - pos)));
      pos = end;
      continue;
    }
    throw parse_error("illegal character '" + std::string(1, c) + "'", Span{pos, pos + 1});
  }
  push(TokKind::End, text.size(), text.size());
  return tokens;
}

// ---------------------------------------------------------------------------
// AST

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
  enum class Kind { KetLeaf, BraLeaf, OpLeaf, Scalar, Tensor, Apply, Add, Scale, Dagger };

  Kind kind;
  Span span;
  std::string id; // leaves
  Cplx value{0.0, 0.0};
  AstPtr lhs;
  AstPtr rhs;

  static AstPtr leaf(Kind kind, Span span, std::string id) {
    auto node = std::make_shared<Ast>();
    node->kind = kind;
    node->span = span;
    node->id = std::move(id);
    return node;
  }
  static AstPtr scalar(Span span, Cplx value) {
    auto node = std::make_shared<Ast>();
    node->kind = Kind::Scalar;
    node->span = span;
    node->value = value;
    return node;
  }
  static AstPtr binary(Kind kind, Span span, AstPtr lhs, AstPtr rhs) {
    auto node = std::make_shared<Ast>();
    node->kind = kind;
    node->span = span;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
  }
  static AstPtr dagger(Span span, AstPtr operand) {
    auto node = std::make_shared<Ast>();
    node->kind = Kind::Dagger;
    node->span = span;
    node->lhs = std::move(operand);
    return node;
  }
};

inline bool ast_equal(const Ast &a, const Ast &b) {
  if (a.kind != b.kind || a.id != b.id || a.value != b.value) return false;
  if ((a.lhs == nullptr) != (b.lhs == nullptr)) return false;
  if ((a.rhs == nullptr) != (b.rhs == nullptr)) return false;
  if (a.lhs && !ast_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !ast_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace detail {

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  AstPtr run() {
    AstPtr expr = parse_add();
    if (peek().kind != TokKind::End) {
      throw parse_error("unexpected token after expression", peek().span);
    }
    return expr;
  }

private:
  const Token &peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token &advance() { return tokens_[pos_++]; }
  bool at(TokKind kind) const { return peek().kind == kind; }

  static bool atom_start(TokKind kind) {
    switch (kind) {
      case TokKind::Ket:
      case TokKind::Bra:
      case TokKind::Ident:
      case TokKind::Number:
      case TokKind::LParen:
        return true;
      default:
        return false;
    }
  }

  static Span merge(Span a, Span b) { return Span{a.begin, b.end}; }

  AstPtr parse_add() {
    AstPtr lhs = parse_add_operand();
    while (at(TokKind::Plus) || at(TokKind::Minus)) {
      const Token op = advance();
      AstPtr rhs = parse_add_operand();
      if (op.kind == TokKind::Minus) {
        rhs = Ast::binary(Ast::Kind::Scale, rhs->span, Ast::scalar(op.span, Cplx{-1.0, 0.0}), rhs);
      }
      lhs = Ast::binary(Ast::Kind::Add, merge(lhs->span, rhs->span), lhs, rhs);
    }
    return lhs;
  }

  // One operand of +/-; handles prefix minus, folding it into the
  // literal when a number follows directly.
  AstPtr parse_add_operand() {
    if (at(TokKind::Minus)) {
      const Token minus = advance();
      if (at(TokKind::Number)) {
        const Token num = advance();
        AstPtr first = Ast::scalar(merge(minus.span, num.span),
                                   num.imaginary ? Cplx{0.0, -num.number} : Cplx{-num.number, 0.0});
        return parse_mul(parse_postfix_chain(std::move(first)));
      }
      AstPtr operand = parse_add_operand();
      return Ast::binary(Ast::Kind::Scale, merge(minus.span, operand->span),
                         Ast::scalar(minus.span, Cplx{-1.0, 0.0}), operand);
    }
    return parse_mul(nullptr);
  }

  AstPtr parse_mul(AstPtr first) {
    AstPtr lhs = first ? first : parse_tensor(nullptr);
    while (at(TokKind::Star)) {
      advance();
      AstPtr rhs = parse_tensor(nullptr);
      lhs = Ast::binary(Ast::Kind::Scale, merge(lhs->span, rhs->span), lhs, rhs);
    }
    return lhs;
  }

  AstPtr parse_tensor(AstPtr first) {
    AstPtr lhs = first ? first : parse_apply();
    while (at(TokKind::Tensor)) {
      advance();
      AstPtr rhs = parse_apply();
      lhs = Ast::binary(Ast::Kind::Tensor, merge(lhs->span, rhs->span), lhs, rhs);
    }
    return lhs;
  }

  // Juxtaposition: f x means Apply(f, x), left-associative.
  AstPtr parse_apply() {
    AstPtr lhs = parse_dagger();
    while (atom_start(peek().kind)) {
      AstPtr rhs = parse_dagger();
      lhs = Ast::binary(Ast::Kind::Apply, merge(lhs->span, rhs->span), lhs, rhs);
    }
    return lhs;
  }

  AstPtr parse_dagger() { return parse_dagger_tail(parse_atom()); }

  AstPtr parse_dagger_tail(AstPtr operand) {
    while (at(TokKind::Dagger)) {
      const Token dag = advance();
      operand = Ast::dagger(merge(operand->span, dag.span), operand);
    }
    return operand;
  }

  // Continues an already-parsed atom through the postfix/apply levels,
  // used by the negative-literal fold.
  AstPtr parse_postfix_chain(AstPtr atom) {
    AstPtr lhs = parse_dagger_tail(std::move(atom));
    while (atom_start(peek().kind)) {
      AstPtr rhs = parse_dagger();
      lhs = Ast::binary(Ast::Kind::Apply, merge(lhs->span, rhs->span), lhs, rhs);
    }
    while (at(TokKind::Tensor)) {
      advance();
      AstPtr rhs = parse_apply();
      lhs = Ast::binary(Ast::Kind::Tensor, merge(lhs->span, rhs->span), lhs, rhs);
    }
    return lhs;
  }

  AstPtr parse_atom() {
    const Token &t = peek();
    switch (t.kind) {
      case TokKind::Ket:
        advance();
        return Ast::leaf(Ast::Kind::KetLeaf, t.span, t.text);
      case TokKind::Bra:
        advance();
        return Ast::leaf(Ast::Kind::BraLeaf, t.span, t.text);
      case TokKind::Ident:
        advance();
        return Ast::leaf(Ast::Kind::OpLeaf, t.span, t.text);
      case TokKind::Number:
        advance();
        return Ast::scalar(t.span, t.imaginary ? Cplx{0.0, t.number} : Cplx{t.number, 0.0});
      case TokKind::LParen: {
        advance();
        AstPtr inner = parse_add();
        if (!at(TokKind::RParen)) throw parse_error("expected ')'", peek().span);
        advance();
        return inner;
      }
      default:
        throw parse_error("expected an expression", t.span);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

} // namespace detail

inline AstPtr parse(std::vector<Token> tokens) { return detail::Parser(std::move(tokens)).run(); }
inline AstPtr parse(std::string_view text) { return parse(tokenize(text)); }

// Canonical fully parenthesized text; parse(pretty(ast)) is
// structurally identical to ast.
inline std::string pretty(const Ast &node) {
  switch (node.kind) {
    case Ast::Kind::KetLeaf: return "|" + node.id + ">";
    case Ast::Kind::BraLeaf: return "<" + node.id + "|";
    case Ast::Kind::OpLeaf: return node.id;
    case Ast::Kind::Scalar: {
      const Cplx v = node.value;
      if (v.imag() == 0.0) return detail::format_number(v.real());
      if (v.real() == 0.0) return detail::format_number(v.imag()) + "i";
      return "(" + detail::format_number(v.real()) + " + " + detail::format_number(v.imag()) + "i)";
    }
    case Ast::Kind::Tensor: return "(" + pretty(*node.lhs) + " (x) " + pretty(*node.rhs) + ")";
    case Ast::Kind::Apply: return "(" + pretty(*node.lhs) + " " + pretty(*node.rhs) + ")";
    case Ast::Kind::Add: return "(" + pretty(*node.lhs) + " + " + pretty(*node.rhs) + ")";
    case Ast::Kind::Scale: return "(" + pretty(*node.lhs) + " * " + pretty(*node.rhs) + ")";
    case Ast::Kind::Dagger: return pretty(*node.lhs) + "'";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Evaluation

struct OperatorValue {
  enum class Kind { Matrix, Projector, Perm };
  Kind kind = Kind::Matrix;
  CMatrix matrix;                    // Kind::Matrix
  SymmetrizerKind projector_kind = SymmetrizerKind::Sym;
  std::optional<Permutation> perm;   // Kind::Perm
};

using Value = std::variant<Cplx, TensorVector, Functional, OperatorValue>;

// Name resolution environment. Builtins P_sym, P_asym, A_hat and the
// permutation family U_<one-based images> (e.g. U_21 swaps two slots)
// are reserved.
struct Bindings {
  ModelConfig config;
  std::map<std::string, HilbertVector, std::less<>> vectors;
  std::map<std::string, TensorVector, std::less<>> tensor_vectors;
  std::map<std::string, CMatrix, std::less<>> operators;
  std::optional<CMatrix> composite; // bound as A_hat

  static bool reserved(std::string_view name) {
    if (name == "P_sym" || name == "P_asym" || name == "A_hat") return true;
    if (name.size() > 2 && name.substr(0, 2) == "U_") {
      for (char c : name.substr(2)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      }
      return true;
    }
    return false;
  }
};

namespace detail {

inline std::optional<Permutation> builtin_permutation(std::string_view name) {
  if (name.size() <= 2 || name.substr(0, 2) != "U_") return std::nullopt;
  std::vector<std::size_t> map;
  for (char c : name.substr(2)) {
    if (c < '1' || c > '9') return std::nullopt;
    map.push_back(static_cast<std::size_t>(c - '1'));
  }
  for (std::size_t image : map) {
    if (image >= map.size()) return std::nullopt;
  }
  std::vector<bool> seen(map.size(), false);
  for (std::size_t image : map) {
    if (seen[image]) return std::nullopt;
    seen[image] = true;
  }
  return Permutation(std::move(map));
}

class Evaluator {
public:
  Evaluator(const Bindings &bindings) : b_(bindings) {}

  Value eval(const Ast &node) {
    switch (node.kind) {
      case Ast::Kind::Scalar: return node.value;
      case Ast::Kind::KetLeaf: return Functional(FunctionalKind::Ket, leaf_vector(node));
      case Ast::Kind::BraLeaf: return Functional(FunctionalKind::Bra, leaf_vector(node));
      case Ast::Kind::OpLeaf: return op_leaf(node);
      case Ast::Kind::Add: return add(node);
      case Ast::Kind::Scale: return scale_node(node);
      case Ast::Kind::Tensor: return tensor(node);
      case Ast::Kind::Apply: return apply(node);
      case Ast::Kind::Dagger: return dagger(node);
    }
    throw eval_error("corrupt syntax tree", node.span);
  }

private:
  TensorVector leaf_vector(const Ast &node) {
    if (auto it = b_.vectors.find(node.id); it != b_.vectors.end()) {
      return as_tensor(it->second);
    }
    if (auto it = b_.tensor_vectors.find(node.id); it != b_.tensor_vectors.end()) {
      return it->second;
    }
    throw eval_error("unbound vector name '" + node.id + "'", node.span);
  }

  Value op_leaf(const Ast &node) {
    if (node.id == "P_sym" || node.id == "P_asym") {
      OperatorValue op;
      op.kind = OperatorValue::Kind::Projector;
      op.projector_kind = node.id == "P_sym" ? SymmetrizerKind::Sym : SymmetrizerKind::Antisym;
      return op;
    }
    if (node.id == "A_hat") {
      if (!b_.composite) {
        throw eval_error("A_hat: the model binds no composite observable", node.span);
      }
      OperatorValue op;
      op.matrix = *b_.composite;
      return op;
    }
    if (auto perm = builtin_permutation(node.id)) {
      OperatorValue op;
      op.kind = OperatorValue::Kind::Perm;
      op.perm = std::move(perm);
      return op;
    }
    if (auto it = b_.operators.find(node.id); it != b_.operators.end()) {
      OperatorValue op;
      op.matrix = it->second;
      return op;
    }
    if (auto it = b_.vectors.find(node.id); it != b_.vectors.end()) {
      return as_tensor(it->second);
    }
    if (auto it = b_.tensor_vectors.find(node.id); it != b_.tensor_vectors.end()) {
      return it->second;
    }
    throw eval_error("unbound identifier '" + node.id + "'", node.span);
  }

  Value add(const Ast &node) {
    Value l = eval(*node.lhs);
    Value r = eval(*node.rhs);
    if (auto *ls = std::get_if<Cplx>(&l)) {
      if (auto *rs = std::get_if<Cplx>(&r)) return *ls + *rs;
    }
    if (auto *lt = std::get_if<TensorVector>(&l)) {
      if (auto *rt = std::get_if<TensorVector>(&r)) {
        if (!lt->same_space(*rt)) throw eval_error("sum of vectors from different spaces", node.span);
        return *lt + *rt;
      }
    }
    if (auto *lf = std::get_if<Functional>(&l)) {
      if (auto *rf = std::get_if<Functional>(&r)) {
        if (lf->kind() != rf->kind()) throw eval_error("cannot add a bra and a ket", node.span);
        if (!lf->rep().same_space(rf->rep())) {
          throw eval_error("sum of functionals over different spaces", node.span);
        }
        return *lf + *rf;
      }
    }
    if (auto *lo = std::get_if<OperatorValue>(&l)) {
      if (auto *ro = std::get_if<OperatorValue>(&r)) {
        if (lo->kind == OperatorValue::Kind::Matrix && ro->kind == OperatorValue::Kind::Matrix &&
            lo->matrix.rows() == ro->matrix.rows() && lo->matrix.cols() == ro->matrix.cols()) {
          OperatorValue op;
          op.matrix = lo->matrix + ro->matrix;
          return op;
        }
      }
    }
    throw eval_error("'+' needs two values of the same type", node.span);
  }

  Value scale_node(const Ast &node) {
    Value l = eval(*node.lhs);
    Value r = eval(*node.rhs);
    const Cplx *ls = std::get_if<Cplx>(&l);
    const Cplx *rs = std::get_if<Cplx>(&r);
    if (ls && rs) return (*ls) * (*rs);
    if (ls) return scaled(*ls, r, node.span);
    if (rs) return scaled(*rs, l, node.span);
    throw eval_error("'*' needs a scalar operand", node.span);
  }

  Value scaled(Cplx s, const Value &v, Span span) {
    if (auto *t = std::get_if<TensorVector>(&v)) return *t * s;
    if (auto *f = std::get_if<Functional>(&v)) return scale(s, *f);
    if (auto *o = std::get_if<OperatorValue>(&v)) {
      if (o->kind == OperatorValue::Kind::Matrix) {
        OperatorValue op;
        op.matrix = s * o->matrix;
        return op;
      }
    }
    throw eval_error("cannot scale this value", span);
  }

  Value tensor(const Ast &node) {
    Value l = eval(*node.lhs);
    Value r = eval(*node.rhs);
    if (auto *lt = std::get_if<TensorVector>(&l)) {
      if (auto *rt = std::get_if<TensorVector>(&r)) {
        check_arity(lt->factor_count() + rt->factor_count(), node.span);
        return tensor_product(*lt, *rt);
      }
    }
    if (auto *lf = std::get_if<Functional>(&l)) {
      if (auto *rf = std::get_if<Functional>(&r)) {
        if (lf->kind() != rf->kind()) {
          throw eval_error("tensor product of a bra with a ket", node.span);
        }
        check_arity(lf->factor_count() + rf->factor_count(), node.span);
        return Functional(lf->kind(), tensor_product(lf->rep(), rf->rep()));
      }
    }
    throw eval_error("'(x)' needs two vectors or two functionals of one kind", node.span);
  }

  void check_arity(std::size_t factors, Span span) {
    if (factors > b_.config.factors) {
      throw eval_error("space-arity mismatch: " + std::to_string(factors) +
                           " tensor factors in a " + std::to_string(b_.config.factors) +
                           "-factor model",
                       span);
    }
  }

  Value apply(const Ast &node) {
    Value f = eval(*node.lhs);
    Value x = eval(*node.rhs);
    if (auto *func = std::get_if<Functional>(&f)) return apply_functional(*func, x, node.span);
    if (auto *op = std::get_if<OperatorValue>(&f)) return apply_operator(*op, x, node.span);
    throw eval_error("only functionals and operators can be applied", node.span);
  }

  Value apply_functional(const Functional &f, const Value &x, Span span) {
    if (auto *t = std::get_if<TensorVector>(&x)) {
      if (!f.rep().same_space(*t)) {
        throw eval_error("functional and argument live on different spaces", span);
      }
      return f(*t);
    }
    if (auto *g = std::get_if<Functional>(&x)) {
      if (f.kind() == FunctionalKind::Ket && g->kind() == FunctionalKind::Ket) {
        throw eval_error("cannot apply a ket to a ket", span);
      }
      if (f.kind() == FunctionalKind::Bra && g->kind() == FunctionalKind::Ket) {
        if (!f.rep().same_space(g->rep())) {
          throw eval_error("bra and ket live on different spaces", span);
        }
        return f(g->rep());
      }
      throw eval_error("cannot apply a functional to a functional of this kind", span);
    }
    throw eval_error("a functional applies to a vector or a ket", span);
  }

  // FactorObservable-sized matrices lift to their Kronecker sum when
  // applied to a full-arity object.
  CMatrix resolve_matrix(const CMatrix &m, std::size_t dim, std::size_t factors, Span span) {
    const std::size_t size = checked_dense_size(dim, factors);
    if (m.rows() == size && m.cols() == size) return m;
    if (m.rows() == dim && m.cols() == dim && factors > 1) {
      std::vector<FactorObservable> ops;
      for (std::size_t k = 0; k < factors; ++k) ops.emplace_back(m);
      return CompositeObservable(std::move(ops)).dense();
    }
    throw eval_error("operator shape does not match the argument's space", span);
  }

  Value apply_operator(const OperatorValue &op, const Value &x, Span span) {
    if (auto *t = std::get_if<TensorVector>(&x)) {
      switch (op.kind) {
        case OperatorValue::Kind::Matrix: {
          const CMatrix m = resolve_matrix(op.matrix, t->dim(), t->factor_count(), span);
          return TensorVector::from_dense(t->dim(), t->factor_count(), m.apply(t->dense()));
        }
        case OperatorValue::Kind::Projector:
          return projector(op.projector_kind, *t);
        case OperatorValue::Kind::Perm:
          if (op.perm->degree() != t->factor_count()) {
            throw eval_error("permutation degree does not match the tensor arity", span);
          }
          return apply_permutation(*op.perm, *t);
      }
    }
    if (auto *f = std::get_if<Functional>(&x)) {
      switch (op.kind) {
        case OperatorValue::Kind::Matrix: {
          const CMatrix m = resolve_matrix(op.matrix, f->rep().dim(), f->factor_count(), span);
          try {
            return extend_operator(m, *f);
          } catch (const error &e) {
            throw eval_error(e.what(), span);
          }
        }
        case OperatorValue::Kind::Projector:
          return dual_projector(op.projector_kind, *f);
        case OperatorValue::Kind::Perm:
          if (op.perm->degree() != f->factor_count()) {
            throw eval_error("permutation degree does not match the functional arity", span);
          }
          return dual_permutation(*op.perm, *f);
      }
    }
    throw eval_error("operators apply to vectors or functionals", span);
  }

  Value dagger(const Ast &node) {
    Value v = eval(*node.lhs);
    if (auto *s = std::get_if<Cplx>(&v)) return std::conj(*s);
    if (auto *f = std::get_if<Functional>(&v)) return conjugate(*f);
    if (auto *t = std::get_if<TensorVector>(&v)) return composite_bra(*t);
    if (auto *o = std::get_if<OperatorValue>(&v)) {
      switch (o->kind) {
        case OperatorValue::Kind::Matrix: {
          OperatorValue op;
          op.matrix = o->matrix.adjoint();
          return op;
        }
        case OperatorValue::Kind::Projector:
          return *o; // self-adjoint
        case OperatorValue::Kind::Perm: {
          OperatorValue op;
          op.kind = OperatorValue::Kind::Perm;
          op.perm = o->perm->inverse();
          return op;
        }
      }
    }
    throw eval_error("cannot take the dagger of this value", node.span);
  }

  const Bindings &b_;
};

} // namespace detail

inline Value evaluate(const Ast &ast, const Bindings &bindings) {
  try {
    return detail::Evaluator(bindings).eval(ast);
  } catch (const eval_error &) {
    throw;
  } catch (const error &e) {
    throw eval_error(e.what(), ast.span);
  }
}

inline Value evaluate(std::string_view text, const Bindings &bindings) {
  const AstPtr ast = parse(text);
  return evaluate(*ast, bindings);
}

// Human-readable rendering used by the eval subcommand.
inline std::string describe(const Value &value, double tol = kExactTol) {
  struct Visitor {
    double tol;
    std::string operator()(const Cplx &s) const {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", s.real(), s.imag());
      return buf;
    }
    std::string operator()(const TensorVector &t) const {
      std::string out = "vector[";
      for (std::size_t i = 0; i < t.dense_size(); ++i) {
        if (i) out += ", ";
        out += (*this)(t.dense()[i]);
      }
      return out + "]";
    }
    std::string operator()(const Functional &f) const {
      if (f.is_zero(tol)) return "zero functional";
      std::string out = std::string(to_string(f.kind())) + " with representing ";
      return out + (*this)(f.rep());
    }
    std::string operator()(const OperatorValue &op) const {
      switch (op.kind) {
        case OperatorValue::Kind::Matrix:
          return "operator " + std::to_string(op.matrix.rows()) + "x" +
                 std::to_string(op.matrix.cols());
        case OperatorValue::Kind::Projector:
          return std::string("projector P_") + to_string(op.projector_kind);
        case OperatorValue::Kind::Perm: {
          std::string out = "permutation [";
          for (std::size_t k = 0; k < op.perm->degree(); ++k) {
            if (k) out += ",";
            out += std::to_string((*op.perm)(k) + 1);
          }
          return out + "]";
        }
      }
      return "operator";
    }
  };
  return std::visit(Visitor{tol}, value);
}

} // namespace braket::dsl

#endif
