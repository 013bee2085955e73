// Arithmetic expression evaluator for the plain-text fixture tables under
// data/.  Grammar: + - * / ^ with the usual precedence, parentheses, unary
// minus, numbers, named variables, and the function conj().
#ifndef SJG_EXPRS_HPP
#define SJG_EXPRS_HPP

#include <map>
#include <string>
#include <vector>

#include "sjg/jet.hpp"

namespace sjg {

using ExprEnv = std::map<std::string, cplx>;

cplx eval_expr(const std::string& s, const ExprEnv& env);

// one line of a Christoffel table: up lo1 lo2 = expression
struct ChristoffelFixture {
  std::string up, lo1, lo2;
  std::string expr;
};

std::vector<ChristoffelFixture> load_christoffel_table(const std::string& path);

}  // namespace sjg

#endif
