#pragma once

#include <memory>
#include <string>

namespace ginibre {

// Tiny arithmetic language in one variable r:
//   numbers, r, + - * / ^ (right assoc), unary -, exp(), log(), parentheses.
class Expression {
 public:
  static Expression parse(const std::string& text);
  double operator()(double r) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace ginibre
