#include "abrp/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace abrp {

namespace {

// 17 significant digits: the shortest count that survives a text round trip
// for every double, so a written instance reloads bit-for-bit.
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"n\": " << inst.n << ",\n";
    out << "  \"area\": " << num(inst.area) << ",\n";
    out << "  \"seed\": " << inst.seed << ",\n";
    out << "  \"capacity\": ";
    if (inst.capacity) {
        out << *inst.capacity;
    } else {
        out << "null";
    }
    out << ",\n";
    out << "  \"a\": " << num(inst.params.a) << ",\n";
    out << "  \"b\": " << num(inst.params.b) << ",\n";
    out << "  \"beta\": " << num(inst.beta) << ",\n";
    out << "  \"depot\": [" << num(inst.depot.x) << ", " << num(inst.depot.y)
        << "],\n";
    out << "  \"nodes\": [";
    for (std::size_t i = 0; i < inst.nodes.size(); ++i) {
        if (i) out << ",";
        out << "\n    [" << num(inst.nodes[i].x) << ", " << num(inst.nodes[i].y)
            << "]";
    }
    out << "\n  ]\n";
    out << "}\n";
    return out.str();
}

Instance instance_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("instance parse failed: ") + e.what());
    }

    Instance inst;
    try {
        inst.n = j.at("n").get<int>();
        inst.area = j.at("area").get<double>();
        inst.seed = j.at("seed").get<std::uint64_t>();
        if (!j.at("capacity").is_null()) {
            inst.capacity = j.at("capacity").get<long long>();
        }
        inst.params.a = j.at("a").get<double>();
        inst.params.b = j.at("b").get<double>();
        inst.beta = j.at("beta").get<double>();
        const auto& depot = j.at("depot");
        inst.depot = {depot.at(0).get<double>(), depot.at(1).get<double>()};
        for (const auto& node : j.at("nodes")) {
            inst.nodes.push_back({node.at(0).get<double>(), node.at(1).get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("instance fields invalid: ") + e.what());
    }

    if (static_cast<std::size_t>(inst.n) != inst.nodes.size()) {
        throw std::runtime_error("instance invalid: n does not match node count");
    }
    if (!(inst.area > 0.0) || !(inst.beta > 0.0)) {
        throw std::runtime_error("instance invalid: area and beta must be positive");
    }
    if (inst.capacity && *inst.capacity < 1) {
        throw std::runtime_error("instance invalid: capacity must be >= 1");
    }
    inst.params.kappa = inst.beta * std::sqrt(inst.area);
    return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << instance_to_json(inst);
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return instance_from_json(buffer.str());
}

}  // namespace abrp
