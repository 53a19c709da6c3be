#include "wll/potential_io.hpp"

#include <fstream>

namespace wll {

namespace {

mpq_class part_from_json(const json& j) {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (j.is_string()) {
        mpq_class q;
        if (q.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("bad rational '" + j.get<std::string>() + "'");
        q.canonicalize();
        return q;
    }
    throw std::invalid_argument("coefficient parts must be integers or \"p/q\" strings");
}

QPoly poly_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of coefficients");
    std::vector<QI> c;
    for (const auto& e : j) {
        if (e.is_array()) {
            if (e.size() != 2) throw std::invalid_argument("coefficient must be [re, im]");
            c.emplace_back(part_from_json(e[0]), part_from_json(e[1]));
        } else {
            c.emplace_back(part_from_json(e), mpq_class(0));
        }
    }
    return QPoly(c);
}

json poly_to_json(const QPoly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back({c.re().get_str(), c.im().get_str()});
    return a;
}

RF get_fn(const json& j, const std::string& name) {
    if (!j.contains(name)) throw std::invalid_argument("builder is missing function '" + name + "'");
    return rational_from_json(j.at(name));
}

}  // namespace

RF rational_from_json(const json& j) {
    if (!j.is_object() || !j.contains("num")) throw std::invalid_argument("rational function needs a \"num\" field");
    QPoly num = poly_from_json(j.at("num"));
    QPoly den = j.contains("den") ? poly_from_json(j.at("den")) : QPoly(QI(1));
    return RF(num, den);
}

json rational_to_json(const RF& f) { return {{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}}; }

NormalizedPotential potential_from_json(const json& j) {
    if (j.contains("builder")) {
        const auto b = j.at("builder").get<std::string>();
        if (b == "example") return example_potential();
        if (b == "s6_case1") return s6_case1(get_fn(j, "h13"), get_fn(j, "h33"), get_fn(j, "h20"), get_fn(j, "h30"), get_fn(j, "h40"));
        if (b == "s6_case2") return s6_case2(get_fn(j, "h1"), get_fn(j, "h2"), get_fn(j, "h10"), get_fn(j, "h30_hat"), get_fn(j, "h40_hat"));
        if (b == "s6_case3") return s6_case3(get_fn(j, "h1"), get_fn(j, "h2"), get_fn(j, "h10"), get_fn(j, "h30"), get_fn(j, "h40"));
        if (b == "s5") return s5_builder(get_fn(j, "h0"), get_fn(j, "h1"), get_fn(j, "h2"), get_fn(j, "h0_hat"));
        if (b == "s4_case1") return s4_case1(get_fn(j, "h1"), get_fn(j, "h2"), get_fn(j, "h10"), get_fn(j, "h20"));
        if (b == "s4_case2") return s4_case2(get_fn(j, "h1"), get_fn(j, "h2"), get_fn(j, "h10"));
        throw std::invalid_argument("unknown builder '" + b + "'");
    }
    if (!j.contains("m") || !j.contains("pairs")) throw std::invalid_argument("potential needs \"m\" and \"pairs\" (or \"builder\")");
    const auto m = j.at("m").get<std::size_t>();
    const auto& pj = j.at("pairs");
    if (m < 3 || pj.size() + 2 != m) throw std::invalid_argument("potential must have m-2 pairs with m >= 3");
    std::vector<ColumnPair> pairs;
    for (const auto& e : pj) {
        const auto k = e.at("kind").get<std::string>();
        if (k != "i" && k != "ii") throw std::invalid_argument("pair kind must be \"i\" or \"ii\"");
        std::map<std::string, RF> fns;
        for (const auto& [name, f] : e.at("functions").items()) fns[name] = rational_from_json(f);
        pairs.push_back(ColumnPair::from_functions(k == "i" ? PairKind::i : PairKind::ii, fns));
    }
    return assemble(pairs, j.value("label", ""));
}

json potential_to_json(const NormalizedPotential& p) {
    json pairs = json::array();
    for (const auto& c : p.pairs) {
        json fns = json::object();
        for (const auto& [name, f] : c.functions()) fns[name] = rational_to_json(f);
        pairs.push_back({{"kind", kind_name(c.kind())}, {"functions", fns}});
    }
    return {{"m", p.m}, {"label", p.label}, {"pairs", pairs}};
}

NormalizedPotential load_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open potential file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    return potential_from_json(j);
}

}  // namespace wll
