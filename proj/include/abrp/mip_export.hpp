#pragma once

#include <string>

#include "abrp/geometry.hpp"

namespace abrp {

// Writes the exact routing-and-scheduling problem for the instance in CPLEX LP
// format, suitable for any off-the-shelf MIP solver. Variables:
//   y_i_k   customer i served by route k (binary; y_0_k covers the depot legs)
//   x_i_j_k arc i -> j used by route k (binary, ordered pairs, depot included)
//   A_i     arrival time of customer i
//   t_k     duration of route k
//   u_i     visit position of node i (MTZ subtour elimination)
// Constraints: each customer on exactly one route, route loads within
// capacity, route duration as the sum of its arc lengths, arrival of a rider
// on route k no earlier than t_1 + ... + t_k (big-M linking), arc flow in and
// out of a node matching its assignment, and MTZ ordering. The objective
// maximizes a*n - b * sum_i A_i. Supported for n <= 50.
std::string export_mip(const Instance& inst);

void save_mip(const Instance& inst, const std::string& path);

}  // namespace abrp
