#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "abrp/allocation.hpp"
#include "abrp/geometry.hpp"
#include "abrp/golden.hpp"
#include "abrp/instance_io.hpp"
#include "abrp/mip_export.hpp"
#include "abrp/relaxation.hpp"

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}
std::string fmt4(double v) { return fmt("%.4f", v); }
std::string fmt6(double v) { return fmt("%.6f", v); }

template <typename T>
std::string int_list(const std::vector<T>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(xs[i]);
    }
    return out + "]";
}

std::string num_list(const std::vector<double>& xs, const char* spec = "%.4f") {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += fmt(spec, xs[i]);
    }
    return out + "]";
}

// One table cell carrying both its JSON form and its display form; a missing
// value renders as null / — / empty depending on the output format.
struct Cell {
    std::string json;
    std::string text;
    bool missing = false;

    static Cell number(const std::string& s) { return {s, s, false}; }
    static Cell raw(const std::string& json, const std::string& text) {
        return {json, text, false};
    }
    static Cell none() { return {"null", "—", true}; }
};

std::string render_table(const std::vector<std::string>& keys,
                         const std::vector<std::string>& headers,
                         const std::vector<std::vector<Cell>>& rows,
                         const std::string& format) {
    std::ostringstream out;
    if (format == "json") {
        out << "[";
        for (std::size_t r = 0; r < rows.size(); ++r) {
            out << (r ? ",\n " : "\n ") << "{";
            for (std::size_t c = 0; c < keys.size(); ++c) {
                if (c) out << ",";
                out << "\"" << keys[c] << "\":" << rows[r][c].json;
            }
            out << "}";
        }
        out << "\n]\n";
    } else if (format == "csv") {
        for (std::size_t c = 0; c < keys.size(); ++c) {
            if (c) out << ",";
            out << keys[c];
        }
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out << ",";
                if (!row[c].missing) out << row[c].text;
            }
            out << "\n";
        }
    } else {  // markdown
        std::vector<std::size_t> width(headers.size());
        for (std::size_t c = 0; c < headers.size(); ++c) width[c] = headers[c].size();
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                width[c] = std::max(width[c], row[c].text.size());
            }
        }
        auto pad = [](const std::string& s, std::size_t w) {
            return s + std::string(w - s.size(), ' ');
        };
        out << "|";
        for (std::size_t c = 0; c < headers.size(); ++c) {
            out << " " << pad(headers[c], width[c]) << " |";
        }
        out << "\n|";
        for (std::size_t c = 0; c < headers.size(); ++c) {
            out << std::string(width[c] + 2, '-') << "|";
        }
        out << "\n";
        for (const auto& row : rows) {
            out << "|";
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << " " << pad(row[c].text, width[c]) << " |";
            }
            out << "\n";
        }
    }
    return out.str();
}

std::string render_object(const std::vector<std::pair<std::string, Cell>>& fields,
                          const std::string& format) {
    std::ostringstream out;
    if (format == "json") {
        out << "{";
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out << ",";
            out << "\"" << fields[i].first << "\":" << fields[i].second.json;
        }
        out << "}\n";
    } else if (format == "csv") {
        out << "field,value\n";
        for (const auto& [key, cell] : fields) {
            out << key << ",";
            if (!cell.missing) out << cell.text;
            out << "\n";
        }
    } else {
        std::vector<std::string> keys{"field", "value"};
        std::vector<std::vector<Cell>> rows;
        for (const auto& [key, cell] : fields) {
            rows.push_back({Cell::raw("\"" + key + "\"", key), cell});
        }
        out << render_table(keys, keys, rows, "markdown");
    }
    return out.str();
}

std::optional<long long> parse_capacity(const std::string& text) {
    if (text.empty() || text == "none") return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (errno != 0 || end == text.c_str() || *end != '\0') {
        throw std::invalid_argument("--c expects an integer or 'none', got '" +
                                    text + "'");
    }
    return v;
}

unsigned long long node_budget_from_env() {
    const char* s = std::getenv("ABRP_NODE_BUDGET");
    if (!s || !*s) return 100000000ULL;
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (errno != 0 || end == s || *end != '\0' || v == 0) {
        throw std::invalid_argument(
            "ABRP_NODE_BUDGET must be a positive integer");
    }
    return v;
}

Cell capacity_cell(const std::optional<long long>& c) {
    return c ? Cell::number(std::to_string(*c)) : Cell::none();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::FILE* f = std::fopen(out_path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + out_path + " for writing");
    std::fputs(text.c_str(), f);
    std::fclose(f);
}

int cmd_table1(double tol, const std::string& format) {
    // tol is validated against the limit routine's contract even though the
    // table itself is the fixed k = 2..10 block.
    abrp::eta1_limit(tol);
    std::vector<std::vector<Cell>> rows;
    for (int k = 2; k <= 10; ++k) {
        const abrp::RatioTable t = abrp::nu_chain(k);
        std::vector<Cell> row;
        row.push_back(Cell::number(std::to_string(k)));
        row.push_back(Cell::number(fmt6(t.eta1)));
        row.push_back(Cell::number(fmt6(1.0 / t.nu_front(1))));
        row.push_back(k >= 3 ? Cell::number(fmt6(1.0 / t.nu_front(2)))
                             : Cell::none());
        rows.push_back(std::move(row));
    }
    std::cout << render_table({"k", "eta1", "inv_nu1", "inv_nu2"},
                              {"k", "eta1", "1/nu1", "1/nu2"}, rows, format);
    return 0;
}

int cmd_table2(const std::string& format) {
    const unsigned long long budget = node_budget_from_env();
    const abrp::SatisfactionParams params;  // a=1, b=0.01, kappa=1
    const std::vector<std::optional<long long>> caps = {16, 18, 20, std::nullopt};
    const std::vector<long long> ns = {20, 40, 100};
    std::vector<std::vector<Cell>> rows;
    for (const auto& c : caps) {
        for (long long n : ns) {
            const abrp::GapReport g = abrp::gap_report(n, c, params, budget);
            std::vector<Cell> row;
            row.push_back(capacity_cell(c));
            row.push_back(Cell::number(std::to_string(n)));
            row.push_back(Cell::number(fmt4(g.exact_z)));
            row.push_back(Cell::raw(int_list(g.exact_alloc.sizes),
                                    int_list(g.exact_alloc.sizes)));
            row.push_back(Cell::number(fmt4(g.gr_z)));
            row.push_back(Cell::raw(int_list(g.gr_alloc.sizes),
                                    int_list(g.gr_alloc.sizes)));
            rows.push_back(std::move(row));
        }
    }
    std::cout << render_table(
        {"c", "n", "exact_z", "exact_alloc", "gr_z", "gr_alloc"},
        {"C", "N", "exact z", "exact alloc", "GR z", "GR alloc"}, rows, format);
    return 0;
}

int cmd_bench(const std::string& c_text, long long n_min, long long n_max,
              long long step, const std::string& format) {
    const std::optional<long long> c = parse_capacity(c_text);
    if (n_min < 1 || n_max < n_min || step < 1) {
        throw std::invalid_argument("bench: need 1 <= n-min <= n-max and step >= 1");
    }
    const unsigned long long budget = node_budget_from_env();
    const abrp::SatisfactionParams params;
    std::vector<std::vector<Cell>> rows;
    double gap_sum = 0.0;
    long long matches = 0;
    long long count = 0;
    for (long long n = n_min; n <= n_max; n += step) {
        const abrp::IntAllocation gr = abrp::gr_heuristic(n, c);
        const abrp::ExactResult exact = abrp::exact_integer(n, c, budget);
        const double gr_z = abrp::satisfaction(gr, params);
        const double exact_z = abrp::satisfaction(exact.alloc, params);
        const double rel_gap = (exact_z - gr_z) / exact_z;
        const bool match = gr.sizes == exact.alloc.sizes;
        gap_sum += rel_gap;
        matches += match ? 1 : 0;
        ++count;
        std::vector<Cell> row;
        row.push_back(Cell::number(std::to_string(n)));
        row.push_back(capacity_cell(c));
        row.push_back(Cell::number(fmt4(gr_z)));
        row.push_back(Cell::number(fmt4(exact_z)));
        row.push_back(Cell::number(fmt("%.6f", 100.0 * rel_gap)));
        row.push_back(Cell::number(match ? "1" : "0"));
        row.push_back(Cell::number(std::to_string(exact.nodes)));
        rows.push_back(std::move(row));
    }
    const std::string table = render_table(
        {"n", "c", "gr_z", "exact_z", "rel_gap_pct", "alloc_match", "nodes"},
        {"N", "C", "GR z", "exact z", "gap %", "match", "nodes"}, rows, format);
    if (format == "json") {
        std::cout << "{\"rows\":" << table.substr(0, table.size() - 1)
                  << ",\"avg_rel_gap_pct\":"
                  << fmt("%.6f", 100.0 * gap_sum / static_cast<double>(count))
                  << ",\"alloc_matches\":" << matches << "}\n";
    } else if (format == "csv") {
        std::cout << table;
    } else {
        std::cout << table << "\navg gap "
                  << fmt("%.6f", 100.0 * gap_sum / static_cast<double>(count))
                  << "% | " << matches << "/" << count << " allocations match\n";
    }
    return 0;
}

int cmd_solve(long long n, const std::string& c_text, double eta,
              const abrp::SatisfactionParams& params, const std::string& in_path,
              const std::string& format) {
    if (!in_path.empty()) {
        const abrp::Instance inst = abrp::load_instance(in_path);
        const abrp::IntAllocation alloc = abrp::gr_heuristic(inst.n, inst.capacity, eta);
        const abrp::RealizedPlan plan = abrp::realize(inst, alloc);
        std::cout << render_object(
            {{"alloc", Cell::raw(int_list(alloc.sizes), int_list(alloc.sizes))},
             {"z", Cell::number(fmt4(abrp::satisfaction(alloc, inst.params)))},
             {"realized_objective", Cell::number(fmt4(plan.objective))},
             {"completion_times",
              Cell::raw(num_list(plan.completion_times),
                        num_list(plan.completion_times))}},
            format);
        return 0;
    }
    const abrp::IntAllocation alloc =
        abrp::gr_heuristic(n, parse_capacity(c_text), eta);
    std::cout << render_object(
        {{"alloc", Cell::raw(int_list(alloc.sizes), int_list(alloc.sizes))},
         {"z", Cell::number(fmt4(abrp::satisfaction(alloc, params)))}},
        format);
    return 0;
}

int cmd_exact(long long n, const std::string& c_text,
              const abrp::SatisfactionParams& params, const std::string& format) {
    const abrp::ExactResult result =
        abrp::exact_integer(n, parse_capacity(c_text), node_budget_from_env());
    std::cout << render_object(
        {{"alloc",
          Cell::raw(int_list(result.alloc.sizes), int_list(result.alloc.sizes))},
         {"z", Cell::number(fmt4(abrp::satisfaction(result.alloc, params)))},
         {"nodes", Cell::number(std::to_string(result.nodes))}},
        format);
    return 0;
}

int cmd_relax(double n, int k, bool k_given, const std::string& c_text,
              const abrp::SatisfactionParams& params, const std::string& format) {
    const std::optional<long long> c = parse_capacity(c_text);
    if (!k_given) k = abrp::default_route_count(n);
    const abrp::RealAllocation alloc =
        c ? abrp::solve_capacitated(n, static_cast<double>(*c), k)
          : abrp::solve_uncapacitated(n, k);
    std::cout << render_object(
        {{"n", Cell::number(fmt("%.17g", n))},
         {"k", Cell::number(std::to_string(k))},
         {"c", capacity_cell(c)},
         {"sizes", Cell::raw(num_list(alloc.sizes), num_list(alloc.sizes))},
         {"cost", Cell::number(fmt4(abrp::aabrp_cost(alloc)))},
         {"z", Cell::number(fmt4(abrp::satisfaction(alloc, params)))}},
        format);
    return 0;
}

int cmd_gen(long long n, double area, std::uint64_t seed, const std::string& c_text,
            double a, double b, double beta, const std::string& out_path) {
    abrp::SatisfactionParams params;
    params.a = a;
    params.b = b;
    const abrp::Instance inst =
        abrp::generate_instance(static_cast<int>(n), area, seed,
                                parse_capacity(c_text), params, beta);
    emit(abrp::instance_to_json(inst), out_path);
    return 0;
}

int cmd_brute(const std::string& in_path, bool fairness, const std::string& format) {
    const abrp::Instance inst = abrp::load_instance(in_path);
    const abrp::RealizedPlan plan = abrp::brute_force_abrp(inst, fairness);
    std::string routes = "[";
    for (std::size_t r = 0; r < plan.routes.size(); ++r) {
        if (r) routes += ",";
        routes += int_list(plan.routes[r]);
    }
    routes += "]";
    std::cout << render_object(
        {{"fairness", Cell::number(fairness ? "true" : "false")},
         {"objective", Cell::number(fmt4(plan.objective))},
         {"routes", Cell::raw(routes, routes)},
         {"tour_durations", Cell::raw(num_list(plan.tour_durations),
                                      num_list(plan.tour_durations))},
         {"completion_times", Cell::raw(num_list(plan.completion_times),
                                        num_list(plan.completion_times))}},
        format);
    return 0;
}

int cmd_export_mip(const std::string& in_path, const std::string& out_path) {
    const abrp::Instance inst = abrp::load_instance(in_path);
    emit(abrp::export_mip(inst), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ambulance-bus allocation toolkit: golden-ratio route splits, "
                 "exact integer search, and geometric routing"};
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "markdown"}))
        ->capture_default_str();

    long long n = 0;
    std::string c_text;
    int k = 0;
    double a = 1.0, b = 0.01, kappa = 1.0, beta = 0.72, tol = 1e-6, eta = 0.867;
    double area = 1.0;
    double n_real = 0.0;
    std::uint64_t seed = 0;
    long long n_min = 10, n_max = 100, step = 2;
    bool fairness = true;
    std::string in_path, out_path;

    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--a", a, "Satisfaction intercept")->capture_default_str();
        sub->add_option("--b", b, "Satisfaction slope per unit time")
            ->capture_default_str();
        sub->add_option("--kappa", kappa, "Travel-time scale per sqrt(group size)")
            ->capture_default_str();
    };

    CLI::App* solve = app.add_subcommand(
        "solve", "Golden-ratio heuristic allocation (reads --n/--c or --in)");
    solve->add_option("--n", n, "Number of individuals");
    solve->add_option("--c", c_text, "Bus capacity or 'none'");
    solve->add_option("--eta", eta, "Leading-route fraction")->capture_default_str();
    solve->add_option("--in", in_path, "Instance file: solve and realize on it");
    add_params(solve);

    CLI::App* exact = app.add_subcommand(
        "exact", "Provably optimal integer allocation (branch and bound)");
    exact->add_option("--n", n, "Number of individuals")->required();
    exact->add_option("--c", c_text, "Bus capacity or 'none'");
    add_params(exact);

    CLI::App* relax = app.add_subcommand(
        "relax", "Closed-form continuous allocation");
    relax->add_option("--n", n_real, "Total mass to split")->required();
    CLI::Option* k_opt = relax->add_option("--k", k, "Route count (default: cost-minimizing)");
    relax->add_option("--c", c_text, "Bus capacity or 'none'");
    add_params(relax);

    CLI::App* table1 = app.add_subcommand(
        "table1", "Leading fraction and ratio columns for k = 2..10");
    table1->add_option("--tol", tol, "Limit tolerance (validated)")
        ->capture_default_str();

    app.add_subcommand("table2",
                       "Exact vs heuristic on the 12 benchmark configurations");

    CLI::App* gen = app.add_subcommand("gen", "Generate a random instance");
    gen->add_option("--n", n, "Number of customers")->required();
    gen->add_option("--area", area, "Service-region area")->capture_default_str();
    gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
    gen->add_option("--c", c_text, "Bus capacity or 'none'");
    gen->add_option("--a", a, "Satisfaction intercept")->capture_default_str();
    gen->add_option("--b", b, "Satisfaction slope per unit time")
        ->capture_default_str();
    gen->add_option("--beta", beta, "Tour-length coefficient")->capture_default_str();
    gen->add_option("--out", out_path, "Write to file instead of stdout");

    CLI::App* brute = app.add_subcommand(
        "brute", "Exhaustive geometric optimum for small instances");
    brute->add_option("--in", in_path, "Instance file")->required();
    brute->add_flag("--fairness,!--no-fairness", fairness,
                    "Serve customers in request order (default on)");

    CLI::App* export_mip = app.add_subcommand(
        "export-mip", "Write the exact routing model in LP format");
    export_mip->add_option("--in", in_path, "Instance file")->required();
    export_mip->add_option("--out", out_path, "Write to file instead of stdout");

    CLI::App* bench = app.add_subcommand(
        "bench", "Heuristic-vs-exact sweep over a range of N");
    bench->add_option("--c", c_text, "Bus capacity or 'none'");
    bench->add_option("--n-min", n_min, "Smallest N")->capture_default_str();
    bench->add_option("--n-max", n_max, "Largest N")->capture_default_str();
    bench->add_option("--step", step, "N increment")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    abrp::SatisfactionParams params;
    params.a = a;
    params.b = b;
    params.kappa = kappa;

    try {
        if (app.got_subcommand(solve)) {
            if (in_path.empty() && solve->count("--n") == 0) {
                throw std::invalid_argument("solve: provide --n or --in");
            }
            return cmd_solve(n, c_text, eta, params, in_path, format);
        }
        if (app.got_subcommand(exact)) return cmd_exact(n, c_text, params, format);
        if (app.got_subcommand(relax)) {
            return cmd_relax(n_real, k, k_opt->count() > 0, c_text, params, format);
        }
        if (app.got_subcommand(table1)) return cmd_table1(tol, format);
        if (app.got_subcommand("table2")) return cmd_table2(format);
        if (app.got_subcommand(gen)) {
            return cmd_gen(n, area, seed, c_text, a, b, beta, out_path);
        }
        if (app.got_subcommand(brute)) return cmd_brute(in_path, fairness, format);
        if (app.got_subcommand(export_mip)) return cmd_export_mip(in_path, out_path);
        if (app.got_subcommand(bench)) {
            return cmd_bench(c_text, n_min, n_max, step, format);
        }
        throw std::invalid_argument("no command dispatched");
    } catch (const abrp::NodeBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " (budget " << e.budget() << ")\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
