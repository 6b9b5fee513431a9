#include "majorize/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <utility>

#include "majorize/error.hpp"

namespace majorize::expr {

namespace {

struct FunctionEntry {
  std::string_view name;
  int arity;
};

constexpr std::array<FunctionEntry, 6> kFunctions{{
    {"exp", 1},
    {"log", 1},
    {"abs", 1},
    {"sqrt", 1},
    {"max", 2},
    {"min", 2},
}};

std::string at(std::size_t offset) {
  return " at offset " + std::to_string(offset);
}

[[noreturn]] void syntax_error(const std::string& msg, std::size_t offset) {
  throw Error(ErrorCode::parse, msg + at(offset), offset);
}

[[noreturn]] void domain_error(const std::string& msg, const Node& node) {
  throw Error(ErrorCode::domain, "domain error: " + msg + at(node.offset),
              node.offset);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr run() {
    skip_space();
    if (pos_ == src_.size()) syntax_error("empty expression", pos_ + 1);
    NodePtr root = sum();
    skip_space();
    if (pos_ != src_.size()) {
      syntax_error(std::string("unexpected character '") + src_[pos_] + "'",
                   pos_ + 1);
    }
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::size_t here() const { return pos_ + 1; }

  static std::shared_ptr<Node> node(NodeKind kind, std::size_t offset) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->offset = offset;
    return n;
  }

  NodePtr binary(BinaryOp op, NodePtr lhs, NodePtr rhs, std::size_t offset) {
    auto n = node(NodeKind::binary, offset);
    n->op = op;
    n->args = {std::move(lhs), std::move(rhs)};
    return n;
  }

  NodePtr sum() {
    NodePtr lhs = product();
    for (;;) {
      skip_space();
      std::size_t off = here();
      if (accept('+')) {
        lhs = binary(BinaryOp::add, lhs, product(), off);
      } else if (accept('-')) {
        lhs = binary(BinaryOp::sub, lhs, product(), off);
      } else {
        return lhs;
      }
    }
  }

  NodePtr product() {
    NodePtr lhs = unary();
    for (;;) {
      skip_space();
      std::size_t off = here();
      if (accept('*')) {
        lhs = binary(BinaryOp::mul, lhs, unary(), off);
      } else if (accept('/')) {
        lhs = binary(BinaryOp::div, lhs, unary(), off);
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    skip_space();
    std::size_t off = here();
    if (accept('-')) {
      auto n = node(NodeKind::negate, off);
      n->args = {unary()};
      return n;
    }
    return power();
  }

  // The exponent may itself carry a unary minus: 2^-1.
  NodePtr power() {
    NodePtr base = primary();
    skip_space();
    std::size_t off = here();
    if (accept('^')) return binary(BinaryOp::pow, base, unary(), off);
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ == src_.size()) syntax_error("unexpected end of input", here());
    char c = src_[pos_];
    if (c == '(') {
      std::size_t open = here();
      ++pos_;
      NodePtr inner = sum();
      expect_close(open);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return identifier();
    }
    syntax_error(std::string("unexpected character '") + c + "'", here());
  }

  void expect_close(std::size_t open) {
    skip_space();
    if (pos_ == src_.size()) {
      (void)open;
      syntax_error("unclosed parenthesis", here());
    }
    if (src_[pos_] != ')') {
      syntax_error(std::string("expected ')' but found '") + src_[pos_] + "'",
                   here());
    }
    ++pos_;
  }

  NodePtr number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          ++pos_;
        }
      } else {
        pos_ = save;
      }
    }
    std::string_view text = src_.substr(start, pos_ - start);
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                     value);
    if (ec != std::errc() || end != text.data() + text.size() ||
        !std::isfinite(value)) {
      syntax_error("malformed number '" + std::string(text) + "'", start + 1);
    }
    auto n = node(NodeKind::constant, start + 1);
    n->value = value;
    return n;
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(src_.substr(start, pos_ - start));
    skip_space();
    bool call = pos_ < src_.size() && src_[pos_] == '(';
    if (!call) {
      if (is_variable_name(name)) {
        auto n = node(NodeKind::variable, start + 1);
        n->name = std::move(name);
        return n;
      }
      if (is_function_name(name)) {
        syntax_error("expected '(' after function '" + name + "'", here());
      }
      syntax_error("unknown identifier '" + name + "'", start + 1);
    }
    if (!is_function_name(name)) {
      syntax_error("unknown function '" + name + "'", start + 1);
    }
    std::size_t open = here();
    ++pos_;
    auto n = node(NodeKind::call, start + 1);
    n->name = name;
    if (!accept(')')) {
      n->args.push_back(sum());
      while (accept(',')) n->args.push_back(sum());
      expect_close(open);
    }
    int arity = function_arity(name);
    if (static_cast<int>(n->args.size()) != arity) {
      syntax_error("function '" + name + "' expects " + std::to_string(arity) +
                       " argument(s), got " + std::to_string(n->args.size()),
                   start + 1);
    }
    return n;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double checked(double v, const Node& node) {
  if (!std::isfinite(v)) domain_error("non-finite result", node);
  return v;
}

template <class Lookup>
double evaluate(const Node& n, const Lookup& lookup) {
  switch (n.kind) {
    case NodeKind::constant:
      return n.value;
    case NodeKind::variable:
      return lookup(n);
    case NodeKind::negate:
      return -evaluate(*n.args[0], lookup);
    case NodeKind::binary: {
      double a = evaluate(*n.args[0], lookup);
      double b = evaluate(*n.args[1], lookup);
      switch (n.op) {
        case BinaryOp::add:
          return checked(a + b, n);
        case BinaryOp::sub:
          return checked(a - b, n);
        case BinaryOp::mul:
          return checked(a * b, n);
        case BinaryOp::div:
          if (b == 0.0) domain_error("division by zero", n);
          return checked(a / b, n);
        case BinaryOp::pow:
          if (a == 0.0 && b == 0.0) return 1.0;
          if (a == 0.0 && b < 0.0) domain_error("zero to a negative power", n);
          if (a < 0.0 && b != std::trunc(b)) {
            domain_error("negative base with non-integer exponent", n);
          }
          return checked(std::pow(a, b), n);
      }
      break;
    }
    case NodeKind::call: {
      double a = evaluate(*n.args[0], lookup);
      if (n.name == "exp") return checked(std::exp(a), n);
      if (n.name == "log") {
        if (a <= 0.0) domain_error("log of nonpositive argument", n);
        return std::log(a);
      }
      if (n.name == "abs") return std::abs(a);
      if (n.name == "sqrt") {
        if (a < 0.0) domain_error("sqrt of negative argument", n);
        return std::sqrt(a);
      }
      double b = evaluate(*n.args[1], lookup);
      if (n.name == "max") return std::max(a, b);
      if (n.name == "min") return std::min(a, b);
      break;
    }
  }
  throw Error(ErrorCode::invalid_argument, "malformed expression tree");
}

[[noreturn]] void unbound(const Node& n) {
  throw Error(ErrorCode::invalid_argument,
              "unbound variable '" + n.name + "'" + at(n.offset), n.offset);
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return '+';
    case BinaryOp::sub: return '-';
    case BinaryOp::mul: return '*';
    case BinaryOp::div: return '/';
    case BinaryOp::pow: return '^';
  }
  return '?';
}

void print(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::constant: {
      std::array<char, 64> buf{};
      auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(),
                                     n.value);
      (void)ec;
      out.append(buf.data(), end);
      return;
    }
    case NodeKind::variable:
      out += n.name;
      return;
    case NodeKind::negate:
      out += "(-";
      print(*n.args[0], out);
      out += ')';
      return;
    case NodeKind::binary:
      out += '(';
      print(*n.args[0], out);
      out += op_char(n.op);
      print(*n.args[1], out);
      out += ')';
      return;
    case NodeKind::call:
      out += n.name;
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ',';
        print(*n.args[i], out);
      }
      out += ')';
      return;
  }
}

void collect(const Node& n, std::set<std::string>& names) {
  if (n.kind == NodeKind::variable) names.insert(n.name);
  for (const auto& a : n.args) collect(*a, names);
}

}  // namespace

NodePtr make_constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::constant;
  n->value = value;
  return n;
}

NodePtr make_variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::variable;
  n->name = std::move(name);
  return n;
}

NodePtr make_negate(NodePtr operand) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::negate;
  n->args = {std::move(operand)};
  return n;
}

NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::binary;
  n->op = op;
  n->args = {std::move(lhs), std::move(rhs)};
  return n;
}

NodePtr make_call(std::string name, std::vector<NodePtr> args) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::call;
  n->name = std::move(name);
  n->args = std::move(args);
  return n;
}

bool same_tree(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case NodeKind::constant:
      if (a.value != b.value) return false;
      break;
    case NodeKind::variable:
    case NodeKind::call:
      if (a.name != b.name) return false;
      break;
    case NodeKind::binary:
      if (a.op != b.op) return false;
      break;
    case NodeKind::negate:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!same_tree(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

bool is_function_name(std::string_view name) {
  return function_arity(name) > 0;
}

int function_arity(std::string_view name) {
  for (const auto& f : kFunctions) {
    if (f.name == name) return f.arity;
  }
  return 0;
}

bool is_variable_name(std::string_view name) {
  if (name == "t") return true;
  if (name.size() < 2 || name[0] != 'x' || name[1] == '0') return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

Expr::Expr(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw Error(ErrorCode::invalid_argument, "null expression tree");
}

Expr Expr::parse(std::string_view src) {
  Expr e(Parser(src).run());
  e.source_ = std::string(src);
  return e;
}

double Expr::eval(const Bindings& bindings) const {
  return evaluate(*root_, [&](const Node& n) {
    auto it = bindings.find(n.name);
    if (it == bindings.end()) unbound(n);
    return it->second;
  });
}

double Expr::eval_indexed(std::span<const double> values) const {
  return evaluate(*root_, [&](const Node& n) {
    if (n.name.size() < 2 || n.name[0] != 'x') unbound(n);
    std::size_t index = 0;
    std::from_chars(n.name.data() + 1, n.name.data() + n.name.size(), index);
    if (index == 0 || index > values.size()) unbound(n);
    return values[index - 1];
  });
}

double Expr::operator()(double t) const {
  return evaluate(*root_, [&](const Node& n) {
    if (n.name != "t") unbound(n);
    return t;
  });
}

std::string Expr::to_string() const { return expr::to_string(*root_); }

std::vector<std::string> Expr::variables() const {
  std::set<std::string> names;
  collect(*root_, names);
  return {names.begin(), names.end()};
}

std::string to_string(const Node& node) {
  std::string out;
  print(node, out);
  return out;
}

}  // namespace majorize::expr
