#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "abrp/allocation.hpp"

namespace abrp {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double dist(const Point& a, const Point& b);

// A geometric problem instance. Customers are numbered 1..n in request order;
// nodes[i] holds the coordinates of customer i+1. The depot is node 0 and sits
// at the center of the sqrt(area) x sqrt(area) square.
struct Instance {
    int n = 0;
    double area = 1.0;
    std::uint64_t seed = 0;
    std::optional<long long> capacity;
    SatisfactionParams params;
    double beta = 0.72;
    Point depot;
    std::vector<Point> nodes;
};

// n i.i.d. uniform points on the square of the given area, depot at its center.
// Deterministic for a fixed seed. params.kappa is set to beta * sqrt(area).
Instance generate_instance(int n, double area, std::uint64_t seed,
                           std::optional<long long> capacity = std::nullopt,
                           SatisfactionParams params = {}, double beta = 0.72);

// Asymptotic tour-length estimate beta * sqrt(n * area).
double bhh_estimate(double n, double area, double beta = 0.72);

// Closed depot-anchored tour over a customer subset (1-based ids). sequence
// lists the customers in visit order (depot implicit at both ends); length is
// the Euclidean round-trip. Exact dynamic program for |subset| <= 12; nearest
// neighbor + first-improvement 2-opt interleaved with segment relocation
// (lengths 1..3) to joint local optimality above that.
struct Tour {
    std::vector<int> sequence;
    double length = 0.0;
};

Tour build_tour(const Instance& inst, const std::vector<int>& subset);

// A fully realized plan: routes partition customers 1..n into consecutive
// index blocks (service order follows request order), every route is a closed
// depot tour, and all riders of route k share arrival time T_k.
struct RealizedPlan {
    std::vector<std::vector<int>> routes;  // customer ids in visit order
    std::vector<double> tour_durations;    // t_k
    std::vector<double> completion_times;  // T_k = t_1 + ... + t_k
    std::vector<double> arrival;           // arrival[i] = A_{i+1} for customer i+1
    double objective = 0.0;                // sum_i S(A_i), S(t) = a - b t
};

// Realizes an integer allocation on an instance: assigns consecutive blocks of
// the given sizes to routes 1..k, builds each tour, and evaluates the plan.
// Throws if the allocation does not sum to n or violates the capacity.
RealizedPlan realize(const Instance& inst, const IntAllocation& alloc);

// Globally optimal plan by exhaustive enumeration, for n <= 9. With fairness,
// routes are consecutive index blocks (compositions of n); without it, any
// ordered partition of the customers is considered. Tours are exact.
RealizedPlan brute_force_abrp(const Instance& inst, bool fairness);

}  // namespace abrp
