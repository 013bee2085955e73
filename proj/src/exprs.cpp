#include "sjg/exprs.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sjg {

namespace {

struct Parser {
  const std::string& s;
  const ExprEnv& env;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool accept(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error("expression error at position " + std::to_string(pos) +
                             " in '" + s + "': " + msg);
  }

  cplx expr() {
    cplx v = term();
    for (;;) {
      if (accept('+')) v += term();
      else if (accept('-')) v -= term();
      else return v;
    }
  }
  cplx term() {
    cplx v = unary();
    for (;;) {
      if (accept('*')) v *= unary();
      else if (accept('/')) v /= unary();
      else return v;
    }
  }
  cplx unary() {
    if (accept('-')) return -unary();
    return power();
  }
  cplx power() {
    cplx base = primary();
    if (accept('^')) {
      cplx e = unary();
      if (e.imag() == 0.0 && e.real() == std::round(e.real()) && std::abs(e.real()) <= 16) {
        int n = int(e.real());
        cplx r = 1.0;
        for (int i = 0; i < std::abs(n); ++i) r *= base;
        return n >= 0 ? r : 1.0 / r;
      }
      return std::pow(base, e);
    }
    return base;
  }
  cplx primary() {
    skip();
    if (pos >= s.size()) fail("unexpected end");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      cplx v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t used = 0;
      double d = std::stod(s.substr(pos), &used);
      pos += used;
      return cplx(d);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      if (peek() == '(') {
        ++pos;
        cplx v = expr();
        if (!accept(')')) fail("expected ')'");
        if (name == "conj") return std::conj(v);
        if (name == "re") return cplx(v.real());
        if (name == "im") return cplx(v.imag());
        fail("unknown function '" + name + "'");
      }
      auto it = env.find(name);
      if (it == env.end()) fail("unknown variable '" + name + "'");
      return it->second;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

cplx eval_expr(const std::string& s, const ExprEnv& env) {
  Parser p{s, env};
  cplx v = p.expr();
  p.skip();
  if (p.pos != s.size()) p.fail("trailing input");
  return v;
}

std::vector<ChristoffelFixture> load_christoffel_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture table " + path);
  std::vector<ChristoffelFixture> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    ChristoffelFixture f;
    std::string eq;
    if (!(ls >> f.up >> f.lo1 >> f.lo2 >> eq)) continue;
    if (eq != "=") throw std::runtime_error("bad fixture line in " + path + ": " + line);
    std::getline(ls, f.expr);
    if (f.expr.empty()) throw std::runtime_error("empty expression in " + path + ": " + line);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace sjg
