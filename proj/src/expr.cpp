#include "isomono/expr.hpp"

#include <cctype>

#include "isomono/errors.hpp"

namespace isomono::expr {

bool operator==(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.value != b.value || a.name != b.name || a.exponent != b.exponent ||
      a.kids.size() != b.kids.size())
    return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!(*a.kids[i] == *b.kids[i])) return false;
  return true;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Tree run() {
    Tree t = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static Tree make(Node::Kind k, std::size_t off, std::vector<Tree> kids) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->offset = off;
    n->kids = std::move(kids);
    return n;
  }

  Tree expression() {
    Tree lhs = term();
    for (;;) {
      skip();
      std::size_t off = pos_;
      if (accept('+'))
        lhs = make(Node::Kind::add, off, {lhs, term()});
      else if (accept('-'))
        lhs = make(Node::Kind::sub, off, {lhs, term()});
      else
        return lhs;
    }
  }

  Tree term() {
    Tree lhs = unary();
    for (;;) {
      skip();
      std::size_t off = pos_;
      if (accept('*'))
        lhs = make(Node::Kind::mul, off, {lhs, unary()});
      else if (accept('/'))
        lhs = make(Node::Kind::div, off, {lhs, unary()});
      else
        return lhs;
    }
  }

  Tree unary() {
    skip();
    std::size_t off = pos_;
    if (accept('-')) return make(Node::Kind::neg, off, {unary()});
    return power();
  }

  Tree power() {
    Tree base = primary();
    skip();
    std::size_t off = pos_;
    if (!accept('^')) return base;
    bool paren = accept('(');
    bool negative = accept('-');
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer exponent");
    mpz_class e = digits();
    if (paren && !accept(')')) fail("expected ')'");
    if (!e.fits_slong_p()) fail("exponent too large");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::pow;
    n->offset = off;
    n->exponent = negative ? -e.get_si() : e.get_si();
    n->kids = {base};
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') fail("chained exponent needs parentheses");
    return n;
  }

  mpz_class digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Tree primary() {
    skip();
    std::size_t off = pos_;
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Tree inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::integer;
      n->offset = off;
      n->value = digits();
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::identifier;
      n->offset = off;
      n->name = std::string(s_.substr(off, pos_ - off));
      return n;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

int precedence(Node::Kind k) {
  switch (k) {
    case Node::Kind::add:
    case Node::Kind::sub:
      return 1;
    case Node::Kind::mul:
    case Node::Kind::div:
      return 2;
    case Node::Kind::neg:
      return 3;
    case Node::Kind::pow:
      return 4;
    default:
      return 5;
  }
}

void print_into(const Tree& t, std::string& out);

void print_child(const Tree& t, bool parens, std::string& out) {
  if (parens) out += '(';
  print_into(t, out);
  if (parens) out += ')';
}

void print_into(const Tree& t, std::string& out) {
  int p = precedence(t->kind);
  switch (t->kind) {
    case Node::Kind::integer:
      out += t->value.get_str();
      return;
    case Node::Kind::identifier:
      out += t->name;
      return;
    case Node::Kind::neg:
      out += '-';
      print_child(t->kids[0], precedence(t->kids[0]->kind) < p, out);
      return;
    case Node::Kind::pow:
      print_child(t->kids[0], precedence(t->kids[0]->kind) < 5, out);
      out += '^';
      out += std::to_string(t->exponent);
      return;
    default: {
      const char* op = t->kind == Node::Kind::add   ? " + "
                       : t->kind == Node::Kind::sub ? " - "
                       : t->kind == Node::Kind::mul ? "*"
                                                    : "/";
      print_child(t->kids[0], precedence(t->kids[0]->kind) < p, out);
      out += op;
      // Left associativity: an equal-precedence right operand needs parens.
      int rp = precedence(t->kids[1]->kind);
      print_child(t->kids[1], rp <= p && t->kids[1]->kind != Node::Kind::neg, out);
      return;
    }
  }
}

}  // namespace

Tree parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Tree& tree) {
  std::string out;
  print_into(tree, out);
  return out;
}

RationalFunction evaluate(const Tree& t, const Resolver& resolve) {
  switch (t->kind) {
    case Node::Kind::integer:
      return RationalFunction(Q(t->value));
    case Node::Kind::identifier:
      return resolve(t->name);
    case Node::Kind::neg:
      return -evaluate(t->kids[0], resolve);
    case Node::Kind::pow:
      return pow(evaluate(t->kids[0], resolve), static_cast<int>(t->exponent));
    case Node::Kind::add:
      return evaluate(t->kids[0], resolve) + evaluate(t->kids[1], resolve);
    case Node::Kind::sub:
      return evaluate(t->kids[0], resolve) - evaluate(t->kids[1], resolve);
    case Node::Kind::mul:
      return evaluate(t->kids[0], resolve) * evaluate(t->kids[1], resolve);
    case Node::Kind::div:
      return evaluate(t->kids[0], resolve) / evaluate(t->kids[1], resolve);
  }
  throw std::logic_error("unreachable expression kind");
}

RationalFunction resolve_registered(const std::string& name) {
  auto v = VariableRegistry::global().find(name);
  if (!v) throw UnknownIdentifier(name);
  return RationalFunction::variable(*v);
}

RationalFunction parse_rf(std::string_view text, const Resolver& resolve) { return evaluate(parse(text), resolve); }

}  // namespace isomono::expr
