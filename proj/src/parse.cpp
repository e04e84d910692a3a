#include <cctype>
#include <cstdlib>

#include "montrep/tangle.hpp"

namespace montrep {

TangleExprPtr TangleExpr::make_leaf(BasicTangle b) {
  auto e = std::make_unique<TangleExpr>();
  e->kind = Kind::leaf;
  e->leaf = b;
  return e;
}

TangleExprPtr TangleExpr::compose(TangleExpr::Kind k, TangleExprPtr l, TangleExprPtr r) {
  auto e = std::make_unique<TangleExpr>();
  e->kind = k;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

TangleExprPtr twist_expr(i64 k, bool horizontal) {
  if (k == 0) return TangleExpr::make_leaf(horizontal ? BasicTangle::zero : BasicTangle::infinity);
  BasicTangle b = k > 0 ? BasicTangle::one : BasicTangle::minus_one;
  i64 n = k > 0 ? k : -k;
  TangleExprPtr e = TangleExpr::make_leaf(b);
  for (i64 i = 1; i < n; ++i)
    e = TangleExpr::compose(horizontal ? TangleExpr::Kind::horizontal : TangleExpr::Kind::vertical,
                            std::move(e), TangleExpr::make_leaf(b));
  return e;
}

TangleExprPtr rational_expr(const ContinuedFraction& ks) {
  if (ks.empty()) fail(Errc::invalid_fraction, "empty expansion");
  TangleExprPtr e = twist_expr(ks[0], true);
  for (size_t j = 1; j < ks.size(); ++j) {
    bool vertical = (j % 2 == 1);
    e = TangleExpr::compose(vertical ? TangleExpr::Kind::vertical : TangleExpr::Kind::horizontal,
                            std::move(e), twist_expr(ks[j], !vertical));
  }
  return e;
}

int leaf_count(const TangleExpr& e) {
  if (e.kind == TangleExpr::Kind::leaf) return 1;
  return leaf_count(*e.lhs) + leaf_count(*e.rhs);
}

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;

  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void err(const std::string& msg) {
    fail(Errc::parse_error, msg + " at position " + std::to_string(i));
  }

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) err(std::string("expected '") + c + "'");
  }

  bool peek(char c) {
    skip_ws();
    return i < s.size() && s[i] == c;
  }

  bool done() {
    skip_ws();
    return i >= s.size();
  }

  i64 integer() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      ++digits;
    }
    if (digits == 0) {
      i = start;
      err("expected integer");
    }
    return std::strtoll(s.c_str() + start, nullptr, 10);
  }

  Fraction fraction() {
    i64 p = integer();
    i64 q = 1;
    if (eat('/')) q = integer();
    if (q == 0) fail(Errc::invalid_fraction, "zero denominator in tangle fraction");
    if (p == 0) fail(Errc::invalid_fraction, "zero numerator in tangle fraction");
    return Fraction(p, q);
  }

  ParsedMontesinos montesinos() {
    expect('M');
    expect('(');
    ParsedMontesinos m;
    m.fractions.push_back(fraction());
    while (eat(',')) m.fractions.push_back(fraction());
    expect(')');
    if (!done()) err("trailing input");
    m.text = s;
    return m;
  }

  // "[k]", "[p/q]" (only 1/k and k/1 are twist regions), "[[k1,...]]"
  ParsedTangle basic() {
    expect('[');
    ParsedTangle out;
    if (eat('[')) {
      ContinuedFraction ks;
      ks.push_back(integer());
      while (eat(',')) ks.push_back(integer());
      expect(']');
      expect(']');
      for (i64 k : ks)
        if (k == 0) fail(Errc::invalid_fraction, "zero digit in rational tangle");
      out.rational_ks = ks;
      out.fraction = tangle_fraction(ks);
      out.expr = rational_expr(ks);
      return out;
    }
    i64 a = integer();
    if (eat('/')) {
      i64 b = integer();
      expect(']');
      if (a == 1 && b == 0) {
        out.expr = TangleExpr::make_leaf(BasicTangle::infinity);
        return out;
      }
      if (a == 1) {
        out.expr = twist_expr(b, false);
        out.rational_ks = cf_expand(Fraction(1, b));
        out.fraction = Fraction(1, b);
        return out;
      }
      if (b == 1) {
        out.expr = twist_expr(a, true);
        out.rational_ks = ContinuedFraction{a};
        out.fraction = Fraction(a, 1);
        return out;
      }
      err("only [k], [1/k] and [[...]] tangle brackets are supported");
    }
    expect(']');
    out.expr = twist_expr(a, true);
    if (a != 0) {
      out.rational_ks = ContinuedFraction{a};
      out.fraction = Fraction(a, 1);
    }
    return out;
  }

  ParsedTangle term() {
    if (eat('(')) {
      ParsedTangle e = expr();
      expect(')');
      e.rational_ks.reset();
      e.fraction.reset();
      return e;
    }
    if (peek('[')) return basic();
    err("expected tangle term");
  }

  ParsedTangle expr() {
    ParsedTangle acc = term();
    for (;;) {
      if (eat('*')) {
        ParsedTangle rhs = term();
        acc.expr = TangleExpr::compose(TangleExpr::Kind::horizontal, std::move(acc.expr),
                                       std::move(rhs.expr));
        acc.rational_ks.reset();
        acc.fraction.reset();
      } else if (eat('|')) {
        ParsedTangle rhs = term();
        acc.expr = TangleExpr::compose(TangleExpr::Kind::vertical, std::move(acc.expr),
                                       std::move(rhs.expr));
        acc.rational_ks.reset();
        acc.fraction.reset();
      } else {
        break;
      }
    }
    return acc;
  }
};

}  // namespace

ParseResult parse_tangle(const std::string& text) {
  Parser p(text);
  p.skip_ws();
  if (p.peek('M')) return p.montesinos();
  ParsedTangle e = p.expr();
  if (!p.done()) p.err("trailing input");
  return e;
}

}  // namespace montrep
