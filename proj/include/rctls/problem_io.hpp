#pragma once

#include <iosfwd>
#include <string>

#include "rctls/problems.hpp"

namespace rctls {

// Plain-text problem container. Header lines start with '#':
//   # rctls-problem v1
//   # name <string>
//   # rows <m> cols <n>
//   # param <key>=<value>        (repeated)
// followed by sections, each introduced by a '# <section> <count...>' line
// with whitespace-separated entries (row-major, 17 significant digits):
//   # matrix <m> <n>        dense operator entries, or
//   # kron-left <p> <q> / # kron-right <r> <s>
//   # rhs <m>
//   # xtrue <n>
// Round trips are bit exact.
void export_problem(const TestProblem& p, std::ostream& out);
void export_problem(const TestProblem& p, const std::string& path);

TestProblem import_problem(std::istream& in);
TestProblem import_problem(const std::string& path);

} // namespace rctls
