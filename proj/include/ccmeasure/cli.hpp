#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ccmeasure/curves.hpp"
#include "ccmeasure/rectifiability.hpp"
#include "ccmeasure/spaces.hpp"

namespace ccm::cli {

// "euclidean:N", "heisenberg" or "engel".
MetricSpaceModel parse_space(const std::string& spec, const SolverConfig& cfg);

// Curve specifications:
//   vertical                     t -> (0,0,t) in the Heisenberg group
//   segment:v1,...,vn            t -> t v (euclidean)
//   hsegment:v1,v2,v3            t -> t v (Heisenberg)
//   engel_z | engel_w            coordinate axes of the Engel group
//   weierstrass:alpha=A,beta=B,N=N,phi=c0;c1;...
//   poly:c0;c1;...|c0;c1;...     one polynomial per coordinate
//   polyline:PATH[,modulus=M]    rows "t x1 ... xn"
//   doubled:v1,...,vn            0 -> v -> 0, a doubled-back segment
//   point:x1,...,xn
// An optional "@a:b+c:d" suffix lists parameter subsets (rect check).
// `domain` replaces the default [0,1] when given.
RectifiablePiece parse_curve(const std::string& spec, const std::vector<double>& domain);

std::vector<double> parse_list(const std::string& text, char sep = ',');

// Entry point shared by the executable and the tests. Exit codes: 0 success,
// 1 verdict failure, 2 input or solver error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccm::cli
