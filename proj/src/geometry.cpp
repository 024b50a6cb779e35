#include "abrp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace abrp {

double dist(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

Instance generate_instance(int n, double area, std::uint64_t seed,
                           std::optional<long long> capacity,
                           SatisfactionParams params, double beta) {
    if (n < 1) throw std::invalid_argument("generate_instance: n must be >= 1");
    if (!(area > 0.0)) {
        throw std::invalid_argument("generate_instance: area must be positive");
    }
    if (!(beta > 0.0)) {
        throw std::invalid_argument("generate_instance: beta must be positive");
    }
    if (capacity && *capacity < 1) {
        throw std::invalid_argument("generate_instance: capacity must be >= 1");
    }

    Instance inst;
    inst.n = n;
    inst.area = area;
    inst.seed = seed;
    inst.capacity = capacity;
    inst.params = params;
    inst.params.kappa = beta * std::sqrt(area);
    inst.beta = beta;

    const double side = std::sqrt(area);
    inst.depot = {side / 2.0, side / 2.0};

    // Fixed 53-bit construction instead of uniform_real_distribution, whose
    // output is implementation-defined: identical seeds must reproduce
    // identical coordinates on every toolchain.
    std::mt19937_64 gen(seed);
    auto uniform = [&gen]() {
        return static_cast<double>(gen() >> 11) * 0x1.0p-53;
    };
    inst.nodes.resize(static_cast<std::size_t>(n));
    for (auto& p : inst.nodes) {
        p.x = uniform() * side;
        p.y = uniform() * side;
    }
    return inst;
}

double bhh_estimate(double n, double area, double beta) {
    return beta * std::sqrt(n * area);
}

namespace {

std::vector<Point> gather(const Instance& inst, const std::vector<int>& subset) {
    std::vector<char> seen(static_cast<std::size_t>(inst.n) + 1, 0);
    std::vector<Point> pts;
    pts.reserve(subset.size());
    for (int id : subset) {
        if (id < 1 || id > inst.n) {
            throw std::invalid_argument("build_tour: customer id " +
                                        std::to_string(id) + " out of range");
        }
        if (seen[static_cast<std::size_t>(id)]++) {
            throw std::invalid_argument("build_tour: duplicate customer id " +
                                        std::to_string(id));
        }
        pts.push_back(inst.nodes[static_cast<std::size_t>(id - 1)]);
    }
    return pts;
}

double closed_length(const Point& depot, const std::vector<Point>& pts,
                     const std::vector<int>& order) {
    if (order.empty()) return 0.0;
    double len = dist(depot, pts[static_cast<std::size_t>(order.front())]);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        len += dist(pts[static_cast<std::size_t>(order[i])],
                    pts[static_cast<std::size_t>(order[i + 1])]);
    }
    len += dist(pts[static_cast<std::size_t>(order.back())], depot);
    return len;
}

// Exact tour over up to 12 points: depot-anchored path dynamic program over
// visited-set bitmasks, with parent links for reconstruction. Ties resolve to
// the first minimizer in scan order, so the result is deterministic.
std::vector<int> exact_order(const Point& depot, const std::vector<Point>& pts) {
    const int m = static_cast<int>(pts.size());
    const int full = (1 << m) - 1;
    std::vector<std::vector<double>> dp(
        static_cast<std::size_t>(full) + 1,
        std::vector<double>(static_cast<std::size_t>(m),
                            std::numeric_limits<double>::infinity()));
    std::vector<std::vector<int>> parent(
        static_cast<std::size_t>(full) + 1,
        std::vector<int>(static_cast<std::size_t>(m), -1));

    std::vector<std::vector<double>> d(
        static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                dist(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
        }
    }

    for (int i = 0; i < m; ++i) {
        dp[static_cast<std::size_t>(1 << i)][static_cast<std::size_t>(i)] =
            dist(depot, pts[static_cast<std::size_t>(i)]);
    }
    for (int mask = 1; mask <= full; ++mask) {
        for (int i = 0; i < m; ++i) {
            if (!(mask & (1 << i))) continue;
            const double cur = dp[static_cast<std::size_t>(mask)][static_cast<std::size_t>(i)];
            if (!(cur < std::numeric_limits<double>::infinity())) continue;
            for (int j = 0; j < m; ++j) {
                if (mask & (1 << j)) continue;
                const int next = mask | (1 << j);
                const double cand =
                    cur + d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (cand <
                    dp[static_cast<std::size_t>(next)][static_cast<std::size_t>(j)]) {
                    dp[static_cast<std::size_t>(next)][static_cast<std::size_t>(j)] = cand;
                    parent[static_cast<std::size_t>(next)][static_cast<std::size_t>(j)] = i;
                }
            }
        }
    }

    int last = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        const double cand = dp[static_cast<std::size_t>(full)][static_cast<std::size_t>(i)] +
                            dist(pts[static_cast<std::size_t>(i)], depot);
        if (cand < best) {
            best = cand;
            last = i;
        }
    }

    std::vector<int> order(static_cast<std::size_t>(m));
    int mask = full;
    int node = last;
    for (int pos = m - 1; pos >= 0; --pos) {
        order[static_cast<std::size_t>(pos)] = node;
        const int prev = parent[static_cast<std::size_t>(mask)][static_cast<std::size_t>(node)];
        mask ^= 1 << node;
        node = prev;
    }
    return order;
}

std::vector<int> nearest_neighbor_order(const Point& depot,
                                        const std::vector<Point>& pts) {
    const int m = static_cast<int>(pts.size());
    std::vector<char> used(static_cast<std::size_t>(m), 0);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(m));
    Point cur = depot;
    for (int step = 0; step < m; ++step) {
        int pick = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            const double cand = dist(cur, pts[static_cast<std::size_t>(i)]);
            if (cand < best) {
                best = cand;
                pick = i;
            }
        }
        used[static_cast<std::size_t>(pick)] = 1;
        order.push_back(pick);
        cur = pts[static_cast<std::size_t>(pick)];
    }
    return order;
}

constexpr double kMoveTol = 1e-12;

// Applies the first 2-opt move (segment reversal) that shortens the closed
// tour. Returns false at local optimality.
bool apply_first_two_opt(const Point& depot, const std::vector<Point>& pts,
                         std::vector<int>& t) {
    const int m = static_cast<int>(t.size());
    for (int i = 0; i < m; ++i) {
        const Point& a = (i == 0) ? depot : pts[static_cast<std::size_t>(t[static_cast<std::size_t>(i - 1)])];
        for (int j = i + 1; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;  // whole-tour reversal: no-op
            const Point& b =
                (j == m - 1) ? depot : pts[static_cast<std::size_t>(t[static_cast<std::size_t>(j + 1)])];
            const Point& pi = pts[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
            const Point& pj = pts[static_cast<std::size_t>(t[static_cast<std::size_t>(j)])];
            const double delta =
                dist(a, pj) + dist(pi, b) - dist(a, pi) - dist(pj, b);
            if (delta < -kMoveTol) {
                std::reverse(t.begin() + i, t.begin() + j + 1);
                return true;
            }
        }
    }
    return false;
}

// Applies the first segment relocation (lengths 1..3, either orientation)
// that shortens the closed tour. Returns false when none exists.
bool apply_first_or_opt(const Point& depot, const std::vector<Point>& pts,
                        std::vector<int>& t) {
    const int m = static_cast<int>(t.size());
    for (int L = 1; L <= 3 && L < m; ++L) {
        for (int i = 0; i + L <= m; ++i) {
            const Point& a = (i == 0) ? depot : pts[static_cast<std::size_t>(t[static_cast<std::size_t>(i - 1)])];
            const Point& b =
                (i + L == m) ? depot : pts[static_cast<std::size_t>(t[static_cast<std::size_t>(i + L)])];
            const Point& sf = pts[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
            const Point& sb = pts[static_cast<std::size_t>(t[static_cast<std::size_t>(i + L - 1)])];
            const double gain = dist(a, sf) + dist(sb, b) - dist(a, b);
            if (gain <= kMoveTol) continue;

            const int reduced = m - L;
            auto reduced_at = [&](int x) -> const Point& {
                const int idx = x < i ? x : x + L;
                return pts[static_cast<std::size_t>(t[static_cast<std::size_t>(idx)])];
            };
            for (int g = 0; g <= reduced; ++g) {
                const Point& u = (g == 0) ? depot : reduced_at(g - 1);
                const Point& v = (g == reduced) ? depot : reduced_at(g);
                const double base = dist(u, v);
                const double add_fwd = dist(u, sf) + dist(sb, v) - base;
                const double add_rev = dist(u, sb) + dist(sf, v) - base;
                const bool fwd = add_fwd - gain < -kMoveTol;
                const bool rev = add_rev - gain < -kMoveTol;
                if (!fwd && !rev) continue;

                std::vector<int> seg(t.begin() + i, t.begin() + i + L);
                if (!fwd || (rev && add_rev < add_fwd)) {
                    std::reverse(seg.begin(), seg.end());
                }
                t.erase(t.begin() + i, t.begin() + i + L);
                t.insert(t.begin() + g, seg.begin(), seg.end());
                return true;
            }
        }
    }
    return false;
}

std::vector<int> heuristic_order(const Point& depot, const std::vector<Point>& pts) {
    std::vector<int> t = nearest_neighbor_order(depot, pts);
    while (true) {
        if (apply_first_two_opt(depot, pts, t)) continue;
        if (apply_first_or_opt(depot, pts, t)) continue;
        break;
    }
    return t;
}

}  // namespace

Tour build_tour(const Instance& inst, const std::vector<int>& subset) {
    Tour tour;
    if (subset.empty()) return tour;
    const std::vector<Point> pts = gather(inst, subset);

    std::vector<int> order;
    if (pts.size() <= 12) {
        order = exact_order(inst.depot, pts);
    } else {
        order = heuristic_order(inst.depot, pts);
    }

    tour.sequence.reserve(order.size());
    for (int idx : order) {
        tour.sequence.push_back(subset[static_cast<std::size_t>(idx)]);
    }
    tour.length = closed_length(inst.depot, pts, order);
    return tour;
}

RealizedPlan realize(const Instance& inst, const IntAllocation& alloc) {
    long long total = 0;
    for (long long s : alloc.sizes) {
        if (s < 1) {
            throw std::invalid_argument("realize: route sizes must be >= 1");
        }
        if (alloc.capacity && s > *alloc.capacity) {
            throw std::invalid_argument("realize: route exceeds allocation capacity");
        }
        if (inst.capacity && s > *inst.capacity) {
            throw std::invalid_argument("realize: route exceeds instance capacity");
        }
        total += s;
    }
    if (total != inst.n) {
        throw std::invalid_argument("realize: sizes sum to " + std::to_string(total) +
                                    " but the instance has " + std::to_string(inst.n) +
                                    " customers");
    }

    RealizedPlan plan;
    plan.arrival.assign(static_cast<std::size_t>(inst.n), 0.0);
    double elapsed = 0.0;
    long long start = 0;
    for (long long s : alloc.sizes) {
        std::vector<int> block;
        block.reserve(static_cast<std::size_t>(s));
        for (long long i = 1; i <= s; ++i) {
            block.push_back(static_cast<int>(start + i));
        }
        Tour tour = build_tour(inst, block);
        elapsed += tour.length;
        plan.routes.push_back(std::move(tour.sequence));
        plan.tour_durations.push_back(tour.length);
        plan.completion_times.push_back(elapsed);
        for (long long i = 1; i <= s; ++i) {
            plan.arrival[static_cast<std::size_t>(start + i - 1)] = elapsed;
        }
        start += s;
    }

    double objective = 0.0;
    for (double a_i : plan.arrival) {
        objective += inst.params.a - inst.params.b * a_i;
    }
    plan.objective = objective;
    return plan;
}

namespace {

// Per-subset exact tours, keyed by customer bitmask (bit i = customer i+1).
class TourCache {
  public:
    explicit TourCache(const Instance& inst)
        : inst_(inst), cache_(static_cast<std::size_t>(1) << inst.n) {}

    const Tour& get(int mask) {
        Tour& slot = cache_[static_cast<std::size_t>(mask)];
        if (slot.sequence.empty() && mask != 0) {
            std::vector<int> ids;
            for (int i = 0; i < inst_.n; ++i) {
                if (mask & (1 << i)) ids.push_back(i + 1);
            }
            slot = build_tour(inst_, ids);
        }
        return slot;
    }

  private:
    const Instance& inst_;
    std::vector<Tour> cache_;
};

}  // namespace

RealizedPlan brute_force_abrp(const Instance& inst, bool fairness) {
    if (inst.n < 1 || inst.n > 9) {
        throw std::invalid_argument("brute_force_abrp: supported for 1 <= n <= 9");
    }
    if (inst.capacity && *inst.capacity < 1) {
        throw std::invalid_argument("brute_force_abrp: capacity must be >= 1");
    }
    const int n = inst.n;
    const long long cap = inst.capacity ? *inst.capacity : n;
    TourCache tours(inst);
    const double a = inst.params.a;
    const double b = inst.params.b;

    // Starting a block of plans one time unit later costs exactly b per rider
    // it contains, so the best continuation from a customer set is its best
    // value at time zero minus b * t * |set|. That collapses the search over
    // route sequences to one pass over subsets (or suffixes, under fairness).
    std::vector<std::vector<int>> routes;  // chosen blocks, in service order

    if (fairness) {
        // Suffix DP over consecutive index blocks.
        std::vector<double> g(static_cast<std::size_t>(n) + 1, 0.0);
        std::vector<int> pick(static_cast<std::size_t>(n) + 1, 0);
        for (int i = n - 1; i >= 0; --i) {
            double best = -std::numeric_limits<double>::infinity();
            int best_len = 0;
            const int remaining = n - i;
            for (int len = 1; len <= remaining && len <= cap; ++len) {
                int mask = 0;
                for (int j = i; j < i + len; ++j) mask |= 1 << j;
                const double t = tours.get(mask).length;
                const double value = len * a - b * t * remaining +
                                     g[static_cast<std::size_t>(i + len)];
                if (value > best) {
                    best = value;
                    best_len = len;
                }
            }
            g[static_cast<std::size_t>(i)] = best;
            pick[static_cast<std::size_t>(i)] = best_len;
        }
        int i = 0;
        while (i < n) {
            const int len = pick[static_cast<std::size_t>(i)];
            std::vector<int> block;
            for (int j = i; j < i + len; ++j) block.push_back(j + 1);
            routes.push_back(std::move(block));
            i += len;
        }
    } else {
        // Subset DP over ordered partitions: any customer set may ride first.
        const int full = (1 << n) - 1;
        std::vector<double> g(static_cast<std::size_t>(full) + 1, 0.0);
        std::vector<int> pick(static_cast<std::size_t>(full) + 1, 0);
        for (int mask = 1; mask <= full; ++mask) {
            double best = -std::numeric_limits<double>::infinity();
            int best_sub = 0;
            const int count = __builtin_popcount(static_cast<unsigned>(mask));
            for (int sub = mask; sub; sub = (sub - 1) & mask) {
                if (__builtin_popcount(static_cast<unsigned>(sub)) > cap) continue;
                const double t = tours.get(sub).length;
                const double value = __builtin_popcount(static_cast<unsigned>(sub)) * a -
                                     b * t * count +
                                     g[static_cast<std::size_t>(mask ^ sub)];
                if (value > best) {
                    best = value;
                    best_sub = sub;
                }
            }
            g[static_cast<std::size_t>(mask)] = best;
            pick[static_cast<std::size_t>(mask)] = best_sub;
        }
        int mask = full;
        while (mask) {
            const int sub = pick[static_cast<std::size_t>(mask)];
            std::vector<int> block;
            for (int i = 0; i < n; ++i) {
                if (sub & (1 << i)) block.push_back(i + 1);
            }
            routes.push_back(std::move(block));
            mask ^= sub;
        }
    }

    RealizedPlan plan;
    plan.arrival.assign(static_cast<std::size_t>(n), 0.0);
    double elapsed = 0.0;
    for (const auto& block : routes) {
        int mask = 0;
        for (int id : block) mask |= 1 << (id - 1);
        const Tour& tour = tours.get(mask);
        elapsed += tour.length;
        plan.routes.push_back(tour.sequence);
        plan.tour_durations.push_back(tour.length);
        plan.completion_times.push_back(elapsed);
        for (int id : block) {
            plan.arrival[static_cast<std::size_t>(id - 1)] = elapsed;
        }
    }
    double objective = 0.0;
    for (double a_i : plan.arrival) objective += a - b * a_i;
    plan.objective = objective;
    return plan;
}

}  // namespace abrp
