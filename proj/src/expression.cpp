#include "vhrd/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <vector>

#include "vhrd/errors.hpp"

namespace vhrd {

namespace {

struct Node {
  virtual ~Node() = default;
  virtual double eval(double x, double t) const = 0;
};

using NodePtr = std::shared_ptr<const Node>;

struct Constant : Node {
  explicit Constant(double v) : value(v) {}
  double eval(double, double) const override { return value; }
  double value;
};

struct VarX : Node {
  double eval(double x, double) const override { return x; }
};

struct VarT : Node {
  double eval(double, double t) const override { return t; }
};

struct Unary : Node {
  Unary(char op, NodePtr a) : op(op), a(std::move(a)) {}
  double eval(double x, double t) const override {
    double v = a->eval(x, t);
    switch (op) {
      case '-': return -v;
      case 'c': return std::cos(v);
      case 's': return std::sin(v);
      default: return v;
    }
  }
  char op;
  NodePtr a;
};

struct Binary : Node {
  Binary(char op, NodePtr a, NodePtr b) : op(op), a(std::move(a)), b(std::move(b)) {}
  double eval(double x, double t) const override {
    double u = a->eval(x, t);
    double v = b->eval(x, t);
    switch (op) {
      case '+': return u + v;
      case '-': return u - v;
      case '*': return u * v;
      case '/': return u / v;
      case '^': return std::pow(u, v);
      default: return u;
    }
  }
  char op;
  NodePtr a, b;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected trailing input");
    return e;
  }

 private:
  NodePtr expr() {
    NodePtr a = term();
    for (;;) {
      skip_ws();
      if (accept('+'))
        a = std::make_shared<Binary>('+', a, term());
      else if (accept('-'))
        a = std::make_shared<Binary>('-', a, term());
      else
        return a;
    }
  }

  NodePtr term() {
    NodePtr a = unary();
    for (;;) {
      skip_ws();
      if (accept('*'))
        a = std::make_shared<Binary>('*', a, unary());
      else if (accept('/'))
        a = std::make_shared<Binary>('/', a, unary());
      else
        return a;
    }
  }

  NodePtr unary() {
    skip_ws();
    if (accept('-'))
      return std::make_shared<Unary>('-', unary());
    if (accept('+'))
      return unary();
    return power();
  }

  NodePtr power() {
    NodePtr a = atom();
    skip_ws();
    if (accept('^'))
      return std::make_shared<Binary>('^', a, unary());
    return a;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size())
      fail("unexpected end of expression");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return number();
    if (std::isalpha(static_cast<unsigned char>(c)))
      return word();
    if (accept('(')) {
      NodePtr e = expr();
      expect(')');
      return e;
    }
    fail(std::string("unexpected character '") + c + "'");
    return nullptr;
  }

  NodePtr number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin)
      fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return std::make_shared<Constant>(v);
  }

  NodePtr word() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string w = text_.substr(start, pos_ - start);
    if (w == "x") return std::make_shared<VarX>();
    if (w == "t") return std::make_shared<VarT>();
    if (w == "pi") return std::make_shared<Constant>(M_PI);
    if (w == "cos" || w == "sin") {
      expect('(');
      NodePtr e = expr();
      expect(')');
      return std::make_shared<Unary>(w[0], e);
    }
    fail("unknown identifier '" + w + "'");
    return nullptr;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("expression error at position " + std::to_string(pos_) +
                      ": " + why + " in \"" + text_ + "\"");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::function<double(double, double)> compile_expression(const std::string& text) {
  Parser parser(text);
  NodePtr root = parser.parse();
  return [root](double x, double t) { return root->eval(x, t); };
}

}  // namespace vhrd
