#include "abrp/mip_export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace abrp {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// One LP row with wrapping: solvers cap physical line lengths, so long sums
// continue on indented lines.
void emit_row(std::ostream& out, const std::string& name,
              const std::vector<std::pair<double, std::string>>& terms,
              const std::string& rel, double rhs) {
    std::string line = " " + name + ":";
    bool first = true;
    for (const auto& [coef, var] : terms) {
        std::string piece;
        const double mag = std::fabs(coef);
        const char* sign = coef < 0.0 ? "-" : (first ? "" : "+");
        if (mag == 1.0) {
            piece = std::string(" ") + sign + (first && coef >= 0.0 ? "" : " ") + var;
        } else {
            piece = std::string(" ") + sign + (first && coef >= 0.0 ? "" : " ") +
                    num(mag) + " " + var;
        }
        if (line.size() + piece.size() > 200) {
            out << line << "\n";
            line = "  ";
        }
        line += piece;
        first = false;
    }
    out << line << " " << rel << " " << num(rhs) << "\n";
}

}  // namespace

std::string export_mip(const Instance& inst) {
    if (inst.n < 1 || inst.n > 50) {
        throw std::invalid_argument("export_mip: supported for 1 <= n <= 50");
    }
    const int n = inst.n;
    const int K = n;  // routes never outnumber customers

    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n) + 1);
    pts.push_back(inst.depot);
    for (const auto& p : inst.nodes) pts.push_back(p);
    auto d = [&pts](int i, int j) {
        return dist(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
    };
    double maxd = 0.0;
    for (int i = 0; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) maxd = std::max(maxd, d(i, j));
    }
    // Upper bound on any arrival time: n routes of at most n arcs each.
    const double big_m = static_cast<double>(n) * maxd * static_cast<double>(n);

    auto y = [](int i, int k) {
        return "y_" + std::to_string(i) + "_" + std::to_string(k);
    };
    auto x = [](int i, int j, int k) {
        return "x_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
               std::to_string(k);
    };
    auto A = [](int i) { return "A_" + std::to_string(i); };
    auto t = [](int k) { return "t_" + std::to_string(k); };
    auto u = [](int i) { return "u_" + std::to_string(i); };

    std::ostringstream out;
    out << "\\ Exact dispatch model: pick a route for every customer, route each\n";
    out << "\\ vehicle from the depot and back, and maximize total satisfaction\n";
    out << "\\ a*n - b * sum of arrival times. Arrival of a rider on route k is\n";
    out << "\\ the sum of the first k route durations (buses leave in sequence).\n";
    out << "\\ n = " << n << ", seed = " << inst.seed << ", big-M = " << num(big_m)
        << " (n * max distance * n).\n";

    out << "Maximize\n";
    {
        std::vector<std::pair<double, std::string>> terms;
        for (int i = 1; i <= n; ++i) terms.emplace_back(-inst.params.b, A(i));
        std::string line = " obj: " + num(inst.params.a * n);
        for (const auto& [coef, var] : terms) {
            std::string piece = " - " + num(std::fabs(coef)) + " " + var;
            if (line.size() + piece.size() > 200) {
                out << line << "\n";
                line = "  ";
            }
            line += piece;
        }
        out << line << "\n";
    }

    out << "Subject To\n";

    // Every customer rides exactly one bus.
    for (int i = 1; i <= n; ++i) {
        std::vector<std::pair<double, std::string>> terms;
        for (int k = 1; k <= K; ++k) terms.emplace_back(1.0, y(i, k));
        emit_row(out, "visit_" + std::to_string(i), terms, "=", 1.0);
    }

    // Seats per bus.
    if (inst.capacity) {
        for (int k = 1; k <= K; ++k) {
            std::vector<std::pair<double, std::string>> terms;
            for (int i = 1; i <= n; ++i) terms.emplace_back(1.0, y(i, k));
            emit_row(out, "cap_" + std::to_string(k), terms, "<=",
                     static_cast<double>(*inst.capacity));
        }
    }

    // Route duration equals the length of its arcs.
    for (int k = 1; k <= K; ++k) {
        std::vector<std::pair<double, std::string>> terms;
        terms.emplace_back(1.0, t(k));
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                if (i == j) continue;
                terms.emplace_back(-d(i, j), x(i, j, k));
            }
        }
        emit_row(out, "tour_" + std::to_string(k), terms, "=", 0.0);
    }

    // A rider on bus k arrives once buses 1..k have all come back.
    for (int i = 1; i <= n; ++i) {
        for (int k = 1; k <= K; ++k) {
            std::vector<std::pair<double, std::string>> terms;
            terms.emplace_back(1.0, A(i));
            for (int h = 1; h <= k; ++h) terms.emplace_back(-1.0, t(h));
            terms.emplace_back(-big_m, y(i, k));
            emit_row(out, "arr_" + std::to_string(i) + "_" + std::to_string(k),
                     terms, ">=", -big_m);
        }
    }

    // A bus enters and leaves exactly the nodes it serves (depot included).
    for (int i = 0; i <= n; ++i) {
        for (int k = 1; k <= K; ++k) {
            std::vector<std::pair<double, std::string>> outgoing;
            std::vector<std::pair<double, std::string>> incoming;
            for (int j = 0; j <= n; ++j) {
                if (j == i) continue;
                outgoing.emplace_back(1.0, x(i, j, k));
                incoming.emplace_back(1.0, x(j, i, k));
            }
            outgoing.emplace_back(-1.0, y(i, k));
            incoming.emplace_back(-1.0, y(i, k));
            emit_row(out, "flowout_" + std::to_string(i) + "_" + std::to_string(k),
                     outgoing, "=", 0.0);
            emit_row(out, "flowin_" + std::to_string(i) + "_" + std::to_string(k),
                     incoming, "=", 0.0);
        }
    }

    // Visit positions rise along every used arc between customers, which rules
    // out cycles that avoid the depot.
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            for (int k = 1; k <= K; ++k) {
                std::vector<std::pair<double, std::string>> terms;
                terms.emplace_back(1.0, u(j));
                terms.emplace_back(-1.0, u(i));
                terms.emplace_back(-static_cast<double>(n), x(i, j, k));
                emit_row(out,
                         "mtz_" + std::to_string(i) + "_" + std::to_string(j) +
                             "_" + std::to_string(k),
                         terms, ">=", 1.0 - static_cast<double>(n));
            }
        }
    }

    out << "Bounds\n";
    out << " " << u(0) << " = 1\n";
    for (int i = 1; i <= n; ++i) {
        out << " 2 <= " << u(i) << " <= " << (n + 1) << "\n";
    }

    out << "Binary\n";
    for (int i = 0; i <= n; ++i) {
        for (int k = 1; k <= K; ++k) out << " " << y(i, k) << "\n";
    }
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            if (i == j) continue;
            for (int k = 1; k <= K; ++k) out << " " << x(i, j, k) << "\n";
        }
    }
    out << "End\n";
    return out.str();
}

void save_mip(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << export_mip(inst);
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace abrp
