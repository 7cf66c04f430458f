#include "ginibre/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "ginibre/common.hpp"

namespace ginibre {

struct Expression::Node {
  enum Op { Num, Var, Add, Sub, Mul, Div, Pow, Neg, Exp, Log } op;
  double num = 0;
  std::shared_ptr<const Node> l, r;

  double eval(double x) const {
    switch (op) {
      case Num: return num;
      case Var: return x;
      case Add: return l->eval(x) + r->eval(x);
      case Sub: return l->eval(x) - r->eval(x);
      case Mul: return l->eval(x) * r->eval(x);
      case Div: return l->eval(x) / r->eval(x);
      case Pow: return std::pow(l->eval(x), r->eval(x));
      case Neg: return -l->eval(x);
      case Exp: return std::exp(l->eval(x));
      case Log: return std::log(l->eval(x));
    }
    return NAN;
  }
};

namespace {

using NodeP = std::shared_ptr<const Expression::Node>;
using N = Expression::Node;

NodeP mk(N::Op op, NodeP l = nullptr, NodeP r = nullptr, double v = 0) {
  auto n = std::make_shared<N>();
  n->op = op;
  n->l = std::move(l);
  n->r = std::move(r);
  n->num = v;
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodeP run() {
    auto e = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("expression: " + why + " at position " + std::to_string(i_) + " in '" + s_ + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  NodeP sum() {
    auto a = product();
    for (;;) {
      if (eat('+')) a = mk(N::Add, a, product());
      else if (eat('-')) a = mk(N::Sub, a, product());
      else return a;
    }
  }
  NodeP product() {
    auto a = unary();
    for (;;) {
      if (eat('*')) a = mk(N::Mul, a, unary());
      else if (eat('/')) a = mk(N::Div, a, unary());
      else return a;
    }
  }
  NodeP unary() {
    if (eat('-')) return mk(N::Neg, unary());
    if (eat('+')) return unary();
    return power();
  }
  NodeP power() {
    auto b = atom();
    if (eat('^')) return mk(N::Pow, b, unary());
    return b;
  }
  NodeP atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      auto e = sum();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + i_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      i_ += static_cast<std::size_t>(end - begin);
      return mk(N::Num, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isalnum(static_cast<unsigned char>(s_[j]))) ++j;
      const std::string id = s_.substr(i_, j - i_);
      i_ = j;
      if (id == "r") return mk(N::Var);
      if (id == "exp" || id == "log") {
        if (!eat('(')) fail("expected '(' after " + id);
        auto e = sum();
        if (!eat(')')) fail("missing ')'");
        return mk(id == "exp" ? N::Exp : N::Log, e);
      }
      fail("unknown identifier '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.root_ = Parser(text).run();
  e.text_ = text;
  return e;
}

double Expression::operator()(double r) const { return root_->eval(r); }

}  // namespace ginibre
