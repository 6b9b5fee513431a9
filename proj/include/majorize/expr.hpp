#ifndef MAJORIZE_EXPR_HPP
#define MAJORIZE_EXPR_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace majorize::expr {

enum class NodeKind { constant, variable, negate, binary, call };
enum class BinaryOp { add, sub, mul, div, pow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind = NodeKind::constant;
  double value = 0.0;         // constant
  std::string name;           // variable or function name
  BinaryOp op = BinaryOp::add;
  std::vector<NodePtr> args;  // operands / call arguments
  std::size_t offset = 0;     // 1-based source position, 0 if synthesized
};

NodePtr make_constant(double value);
NodePtr make_variable(std::string name);
NodePtr make_negate(NodePtr operand);
NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs);
NodePtr make_call(std::string name, std::vector<NodePtr> args);

// Structural equality; source offsets are ignored.
bool same_tree(const Node& a, const Node& b);

bool is_function_name(std::string_view name);
int function_arity(std::string_view name);
// "t" or "x1", "x2", ...
bool is_variable_name(std::string_view name);

using Bindings = std::map<std::string, double, std::less<>>;

/// An immutable parsed arithmetic expression.
///
/// Grammar, loosest to tightest: `+ -` (left), `* /` (left), unary `-`,
/// `^` (right). Calls draw from {exp, log, abs, sqrt, max, min}. Evaluation
/// never returns NaN or infinity: domain violations throw majorize::Error.
class Expr {
 public:
  explicit Expr(NodePtr root);

  static Expr parse(std::string_view src);

  double eval(const Bindings& bindings) const;
  // Binds x1..xN to values[0..N-1].
  double eval_indexed(std::span<const double> values) const;
  // Binds the single variable t.
  double operator()(double t) const;

  // Fully parenthesized form; parse(to_string()) reproduces the tree.
  std::string to_string() const;

  const Node& root() const { return *root_; }
  const std::string& source() const { return source_; }

  // Sorted, deduplicated variable names referenced by the tree.
  std::vector<std::string> variables() const;

 private:
  NodePtr root_;
  std::string source_;
};

std::string to_string(const Node& node);

}  // namespace majorize::expr

#endif
