#include "wll/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wll/canonical_elements.hpp"
#include "wll/lie_algebra.hpp"
#include "wll/minkowski.hpp"
#include "wll/potential_io.hpp"

namespace wll {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

CriterionResult start(int id, std::string name) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    return r;
}

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
}

const std::vector<cplx>& criterion_lambdas() {
    static const std::vector<cplx> l = parse_lambdas("1,i,deg:60");
    return l;
}

bool b1_isotropic_exact(const RMat& b) { return (b.transpose() * MetricSignature{4}.matrix<RF>() * b).is_zero(); }

json report_max(const SurfaceReport& r) {
    json j = json::object();
    for (const auto& [k, v] : r.max) j[k] = v;
    return j;
}

}  // namespace

CriterionResult criterion_canonical_count(const AcceptanceOptions&) {
    auto r = start(1, "canonical-element count");
    const auto t0 = Clock::now();
    bool ok = true;
    for (std::size_t m = 3; m <= 6; ++m) {
        const auto xs = enumerate_canonical(m);
        std::set<std::vector<long>> got;
        for (const auto& x : xs) got.insert(x.coeffs);
        const auto bf = brute_force_canonical(m);
        const bool same = got == std::set<std::vector<long>>(bf.begin(), bf.end());
        r.metrics["count"][std::to_string(m)] = xs.size();
        r.metrics["agrees_with_brute_force"][std::to_string(m)] = same;
        ok = ok && same && xs.size() == (m - 1) * (m - 1) && got.size() == xs.size();
    }
    r.seconds = since(t0);
    r.pass = ok && r.seconds < 10;
    r.detail = "counts " + r.metrics["count"].dump() + ", " + std::to_string(r.seconds).substr(0, 5) + " s";
    return r;
}

CriterionResult criterion_heights(const AcceptanceOptions&) {
    auto r = start(2, "height claims");
    const auto t0 = Clock::now();
    std::size_t violations = 0;
    std::map<std::string, int> max_height;
    for (std::size_t m = 4; m <= 6; ++m) {
        // r(xi_hat_l) = 1
        for (std::size_t l = 1; l <= m; ++l)
            if (grade(TorusElement::unit(l, m)).height != 1) ++violations;
        for (const auto& x : enumerate_canonical(m)) {
            const int h = grade(x.torus()).height;
            if (h != x.height) ++violations;
            bool ok = true;
            switch (x.family) {
                case Family::A: ok = h == 2; break;
                case Family::B: ok = h <= 4; break;
                case Family::C: case Family::Cp: ok = h == 5; break;
                case Family::D: case Family::Dp: ok = h <= 8; break;
                case Family::E: ok = h == 2; break;
                case Family::F: case Family::Fp: ok = h == 3; break;
                case Family::G: case Family::Gp: ok = h <= 6; break;
            }
            violations += ok ? 0 : 1;
            auto& mh = max_height[family_name(x.family)];
            mh = std::max(mh, h);
        }
    }
    r.metrics["violations"] = violations;
    r.metrics["max_height_by_family"] = max_height;
    r.seconds = since(t0);
    r.pass = violations == 0;
    r.detail = std::to_string(violations) + " violations over m = 4..6";
    return r;
}

CriterionResult criterion_nilpotent_spans(const AcceptanceOptions&) {
    auto r = start(3, "nilpotent span equality");
    const auto t0 = Clock::now();
    std::size_t total = 0, matched = 0;
    for (std::size_t m = 4; m <= 5; ++m)
        for (const auto& x : enumerate_canonical(m)) {
            ++total;
            const auto nb = nilpotent_basis(x);
            if (!nb.match) continue;
            const auto gens = permute_blocks(template_generators(nb.match->tpl, m, nb.match->l, nb.match->t), nb.match->perm);
            matched += same_span(realize(gens, m), nb.odd_part_basis) ? 1 : 0;
        }
    r.metrics["elements"] = total;
    r.metrics["matched"] = matched;
    r.seconds = since(t0);
    r.pass = total > 0 && matched == total;
    r.detail = std::to_string(matched) + "/" + std::to_string(total) + " odd parts equal their template span";
    return r;
}

CriterionResult criterion_potential_isotropy(const AcceptanceOptions& opt) {
    auto r = start(4, "potential isotropy");
    const auto t0 = Clock::now();
    std::mt19937_64 rng(opt.seed);
    std::size_t checked = 0, failed = 0;
    for (std::size_t m = 3; m <= 5; ++m)
        for (int type = 1; type <= static_cast<int>(m) - 1; ++type)
            for (int k = 0; k < 100; ++k) {
                const NormalizedPotential p = random_potential(m, type, rng);
                ++checked;
                if (p.type_tag != type || check_isotropy(p.pairs) || !b1_isotropic_exact(p.b1)) ++failed;
            }
    const RF z = RF::z(), one(1);
    std::size_t builders = 0;
    for (const NormalizedPotential& p : {s6_case1(z, z * z, RF(), RF(), RF()), s6_case2(z, one, z, one, RF(2)),
                                         s6_case3(z, RF(), one, one, z), s5_builder(z, z, z * z, z), example_potential()})
        builders += b1_isotropic_exact(p.b1) ? 1 : 0;
    // corrupt one generator of the second pair; the violation must name that pair (block index 4)
    std::size_t located = 0, corrupted = 0;
    for (std::size_t m : {4u, 5u}) {
        auto pairs = random_potential(m, static_cast<int>(m) - 1, rng).pairs;
        auto fns = pairs[1].functions();
        fns.begin()->second += one;
        pairs[1] = ColumnPair::from_functions(pairs[1].kind(), fns);
        ++corrupted;
        try {
            assemble(pairs);
        } catch (const IsotropyError& e) {
            const auto& v = e.violation();
            located += (v.j == 4 || v.l == 4) && !v.value.is_zero() ? 1 : 0;
        }
    }
    r.metrics["random_checked"] = checked;
    r.metrics["random_failed"] = failed;
    r.metrics["builders_isotropic"] = builders;
    r.metrics["corruptions_located"] = located;
    r.seconds = since(t0);
    r.pass = failed == 0 && builders == 5 && located == corrupted;
    r.detail = std::to_string(checked - failed) + "/" + std::to_string(checked) + " random, " + std::to_string(builders) +
               "/5 builders, " + std::to_string(located) + "/" + std::to_string(corrupted) + " corruptions located";
    return r;
}

CriterionResult criterion_dpw_oracle(const AcceptanceOptions& opt) {
    auto r = start(5, "end-to-end DPW oracle");
    PipelineOptions po;
    po.threads = opt.threads;
    const ExampleVerification v = verify_example(parse_grid("disk:1.5:20"), criterion_lambdas(), po);
    r.metrics["raw_deviation"] = v.raw_deviation;
    r.metrics["fitted_deviation"] = v.fitted_deviation;
    r.metrics["gram_deviation_i"] = v.gram_deviation_i;
    r.metrics["points"] = v.points;
    r.metrics["quarantined"] = v.quarantined;
    r.seconds = v.seconds;
    r.pass = v.quarantined == 0 && v.fitted_deviation <= 1e-8 && v.seconds < 300;
    r.detail = "fitted deviation " + sci(v.fitted_deviation) + " over " + std::to_string(v.points) + " points x 3 lambdas";
    return r;
}

CriterionResult criterion_surface_predicates(const AcceptanceOptions&) {
    auto r = start(6, "surface predicates on the example");
    const auto t0 = Clock::now();
    const auto grid = parse_grid("disk:1.5:20");
    bool ok = true;
    double min_swillmore = INFINITY, min_fullness = INFINITY;
    int min_rank = 99, max_rank = 0;
    json per = json::object();
    for (cplx l : criterion_lambdas()) {
        const SurfaceReport s = verify_surface(example_surface(l), grid);
        ok = ok && s.quarantine.empty();
        ok = ok && s.max.at("unit_norm") <= 1e-12 && s.max.at("conformality") <= 1e-9 && s.max.at("willmore") <= 1e-6 &&
             s.max.at("isotropy") <= 1e-6 && s.max.at("b1_condition") <= 1e-6 && s.max.at("invariants") <= 1e-9;
        min_swillmore = std::min(min_swillmore, s.min.at("s_willmore"));
        min_rank = std::min(min_rank, static_cast<int>(s.min.at("b1_rank")));
        max_rank = std::max(max_rank, static_cast<int>(s.max.at("b1_rank")));
        Eigen::MatrixXd cloud(7, static_cast<Eigen::Index>(grid.size()));
        for (std::size_t k = 0; k < grid.size(); ++k) cloud.col(static_cast<Eigen::Index>(k)) = closed_form_example(grid[k], l);
        min_fullness = std::min(min_fullness, fullness_proxy(cloud));
        per[std::to_string(std::arg(l))] = report_max(s);
    }
    r.metrics["max_by_lambda_arg"] = per;
    r.metrics["min_s_willmore_defect"] = min_swillmore;
    r.metrics["b1_rank_min"] = min_rank;
    r.metrics["b1_rank_max"] = max_rank;
    r.metrics["fullness"] = min_fullness;
    r.seconds = since(t0);
    r.pass = ok && min_swillmore >= 0.1 && min_rank == 2 && max_rank == 2 && min_fullness > 1e-3;
    r.detail = "min S-Willmore defect " + sci(min_swillmore) + ", rank(B1) = " + std::to_string(min_rank) + ", fullness " +
               sci(min_fullness);
    return r;
}

CriterionResult criterion_structure_equations(const AcceptanceOptions&) {
    auto r = start(7, "structure-equation identities");
    const auto t0 = Clock::now();
    const auto grid = parse_grid("disk:1.5:8");
    double worst = 0;
    bool ok = true;
    for (const SurfaceMap& m : {example_surface(1.0), round_sphere(4), perturbed_sphere(0.3)}) {
        const SurfaceReport s = verify_surface(m, grid);
        ok = ok && s.quarantine.empty();
        const double w = std::max({s.max.at("gauss"), s.max.at("codazzi"), s.max.at("ricci")});
        r.metrics["integrability_max"][m.name] = w;
        worst = std::max(worst, w);
    }
    JetOptions bad;
    bad.omega_scale = 1.01;
    const SurfaceReport mis = verify_surface(example_surface(1.0), grid, bad);
    const double fired = mis.min.at("gauss");
    r.metrics["mis_scaled_gauss_min"] = fired;
    r.seconds = since(t0);
    r.pass = ok && worst < 1e-6 && fired > 1e-4;
    r.detail = "max residual " + sci(worst) + ", mis-scaled lift Gauss residual >= " + sci(fired);
    return r;
}

CriterionResult criterion_energy(const AcceptanceOptions&) {
    auto r = start(8, "Willmore-energy convergence");
    const auto t0 = Clock::now();
    const EnergyEstimate sphere = willmore_energy(round_sphere(4), inverted_chart(round_sphere(4)), {4, 8});
    const EnergyEstimate ex = willmore_energy(example_surface(1.0), example_surface_at_infinity(1.0));
    const EnergyEstimate sc =
        willmore_energy(rescaled(example_surface(1.0), 2.0), rescaled(example_surface_at_infinity(1.0), 0.5));
    const double tol = std::max(ex.error, sc.error);
    r.metrics["sphere"] = sphere.value;
    r.metrics["example"] = ex.value;
    r.metrics["example_by_panels"] = ex.values;
    r.metrics["observed_order"] = ex.observed_order;
    r.metrics["rescaled"] = sc.value;
    r.metrics["rescale_difference"] = std::abs(sc.value - ex.value);
    r.metrics["quadrature_error"] = tol;
    r.seconds = since(t0);
    r.pass = std::abs(sphere.value) <= 1e-10 && ex.value > 0 && ex.observed_order >= 2 && std::abs(sc.value - ex.value) <= tol;
    std::ostringstream os;
    os << "W(example) = " << std::setprecision(10) << ex.value << ", order " << std::setprecision(3) << ex.observed_order
       << ", rescaled diff " << sci(std::abs(sc.value - ex.value)) << " <= " << sci(tol);
    r.detail = os.str();
    return r;
}

CriterionResult criterion_loop_invariants(const AcceptanceOptions& opt) {
    auto r = start(9, "loop invariants");
    const auto t0 = Clock::now();
    std::mt19937_64 rng(opt.seed);
    std::vector<std::pair<NormalizedPotential, std::string>> cases{{example_potential(), "disk:1.5:20"}};
    for (int type = 1; type <= 3; ++type) cases.emplace_back(random_potential(4, type, rng), "disk:0.5:4");
    std::size_t frames = 0, untwisted = 0, failed = 0;
    double group = 0, reality = 0;
    const auto circle = unit_circle_samples(16);
    for (const auto& [p, grid] : cases) {
        const FrameEvaluator ev(p);
        for (cplx z : parse_grid(grid)) {
            const FramePoint fp = ev.at(z);
            ++frames;
            if (!fp.iwasawa.ok) {
                ++failed;
                continue;
            }
            untwisted += fp.iwasawa.frame.is_twisted() ? 0 : 1;
            std::vector<cplx> ls = circle;
            ls.insert(ls.end(), criterion_lambdas().begin(), criterion_lambdas().end());
            group = std::max(group, fp.iwasawa.frame.group_residual(ls));
            reality = std::max(reality, fp.iwasawa.frame.reality_residual(ls));
        }
    }
    std::size_t exact = 0, polynomial = 0;
    const RF zf = RF::z(), one(1);
    std::vector<NormalizedPotential> exact_cases{s6_case2(zf, one, zf, one, RF(2)), s6_case3(zf, RF(), one, one, zf),
                                                 s5_builder(zf, zf, zf * zf, zf), s4_case2(zf, one, zf)};
    for (const auto& [p, grid] : cases) exact_cases.push_back(p);
    for (const auto& p : exact_cases) {
        if (!p.is_polynomial()) continue;
        ++polynomial;
        exact += integrate_potential_exact(p).maurer_cartan_exact() ? 1 : 0;
    }
    r.metrics["frames"] = frames;
    r.metrics["failed"] = failed;
    r.metrics["untwisted"] = untwisted;
    r.metrics["group_residual"] = group;
    r.metrics["reality_residual"] = reality;
    r.metrics["maurer_cartan_exact"] = std::to_string(exact) + "/" + std::to_string(polynomial);
    r.seconds = since(t0);
    r.pass = failed == 0 && untwisted == 0 && group <= 1e-10 && reality <= 1e-10 && polynomial > 0 && exact == polynomial;
    r.detail = std::to_string(frames) + " frames, group " + sci(group) + ", reality " + sci(reality) +
               ", exact Maurer-Cartan " + std::to_string(exact) + "/" + std::to_string(polynomial);
    return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, const AcceptanceOptions& opt) {
    using Fn = CriterionResult (*)(const AcceptanceOptions&);
    static const Fn all[] = {criterion_canonical_count,   criterion_heights,          criterion_nilpotent_spans,
                             criterion_potential_isotropy, criterion_dpw_oracle,       criterion_surface_predicates,
                             criterion_structure_equations, criterion_energy,          criterion_loop_invariants};
    std::vector<int> todo = ids;
    if (todo.empty())
        for (int k = 1; k <= 9; ++k) todo.push_back(k);
    std::vector<CriterionResult> out;
    for (int id : todo) {
        if (id < 1 || id > 9) throw std::invalid_argument("acceptance: criterion ids are 1..9");
        try {
            out.push_back(all[id - 1](opt));
        } catch (const std::exception& e) {
            CriterionResult r = start(id, "criterion " + std::to_string(id));
            r.detail = std::string("exception: ") + e.what();
            out.push_back(r);
        }
    }
    return out;
}

json to_json(const CriterionResult& r) {
    return json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"metrics", r.metrics}, {"seconds", r.seconds}};
}

json acceptance_report(const std::vector<CriterionResult>& results) {
    json j{{"version", kReportVersion}, {"criteria", json::array()}};
    bool all = true;
    for (const auto& r : results) {
        j["criteria"].push_back(to_json(r));
        all = all && r.pass;
    }
    j["pass"] = all;
    return j;
}

namespace {

void flatten(const json& j, const std::string& prefix, std::map<std::string, json>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "." + std::to_string(k), out);
    } else {
        out[prefix] = j;
    }
}

std::map<std::string, json> report_fields(const json& report) {
    std::map<std::string, json> out;
    for (const auto& c : report.at("criteria")) {
        const std::string id = std::to_string(c.at("id").get<int>());
        out[id + ".pass"] = c.at("pass");
        flatten(c.at("metrics"), id + ".metrics", out);
    }
    return out;
}

}  // namespace

std::vector<GoldenDiff> golden_compare(const json& golden, const json& report) {
    std::vector<GoldenDiff> diffs;
    if (golden.value("version", std::string()) != kReportVersion)
        diffs.push_back({"version", "golden version " + golden.value("version", std::string("?")) + " != " + kReportVersion});
    const auto actual = report_fields(report);
    for (auto it = golden.at("fields").begin(); it != golden.at("fields").end(); ++it) {
        const auto found = actual.find(it.key());
        if (found == actual.end()) {
            diffs.push_back({it.key(), "missing from report"});
            continue;
        }
        const json& want = it.value().at("value");
        const json& got = found->second;
        if (want.is_number() && got.is_number()) {
            const double tol = it.value().value("tol", 0.0);
            const double d = std::abs(got.get<double>() - want.get<double>());
            if (!(d <= tol))
                diffs.push_back({it.key(), "got " + got.dump() + ", golden " + want.dump() + " +- " + json(tol).dump()});
        } else if (want != got) {
            diffs.push_back({it.key(), "got " + got.dump() + ", golden " + want.dump()});
        }
    }
    return diffs;
}

json golden_snapshot(const json& report, double relative_tol) {
    json g{{"version", kReportVersion}, {"fields", json::object()}};
    for (const auto& [k, v] : report_fields(report)) {
        if (v.is_number_float()) {
            const double x = v.get<double>();
            // residual-sized values regress against a fixed floor, the rest relatively
            const double tol = std::abs(x) < 1e-6 ? 1e-9 : relative_tol * std::abs(x);
            g["fields"][k] = {{"value", std::abs(x) < 1e-6 ? 0.0 : x}, {"tol", tol}};
        } else {
            g["fields"][k] = {{"value", v}};
        }
    }
    return g;
}

json classification_json(std::size_t m) {
    json out{{"m", m}, {"elements", json::array()}};
    for (const auto& x : enumerate_canonical(m)) {
        const auto g = grade(x.torus());
        const auto nb = nilpotent_basis(x);
        json grades = json::object();
        for (const auto& [j, basis] : g.spaces) grades[std::to_string(j)] = basis.size();
        json e{{"label", x.label()}, {"coefficients", x.coeffs}, {"family", family_name(x.family)},
               {"height", x.height}, {"odd_part_dim", nb.odd_part_basis.size()}, {"grade_dims", grades}};
        if (nb.match) e["template"] = template_name(nb.match->tpl);
        out["elements"].push_back(e);
    }
    out["count"] = out["elements"].size();
    return out;
}

std::string classification_table(std::size_t m) {
    const json j = classification_json(m);
    std::ostringstream os;
    os << std::left << std::setw(22) << "coefficients" << std::setw(8) << "family" << std::setw(8) << "r(xi)"
       << std::setw(10) << "odd dim" << "grade dims (j:dim)\n";
    for (const auto& e : j["elements"]) {
        std::string grades;
        for (auto it = e["grade_dims"].begin(); it != e["grade_dims"].end(); ++it)
            grades += it.key() + ":" + it.value().dump() + " ";
        os << std::setw(22) << e["coefficients"].dump() << std::setw(8) << e["family"].get<std::string>() << std::setw(8)
           << e["height"].get<int>() << std::setw(10) << e["odd_part_dim"].get<std::size_t>() << grades << "\n";
    }
    return os.str();
}

NormalizedPotential potential_from_source(const std::string& source) {
    if (source == "builtin:example") return example_potential();
    return load_potential(source);
}

json potential_validate(const json& doc) {
    try {
        const NormalizedPotential p = potential_from_json(doc);
        return json{{"valid", true}, {"m", p.m}, {"pairs", p.pairs.size()}, {"type", p.type_tag}};
    } catch (const IsotropyError& e) {
        const auto& v = e.violation();
        return json{{"valid", false},
                    {"violation", {{"pair_j", v.j}, {"pair_l", v.l}, {"condition", v.condition}, {"value", rational_to_json(v.value)}}}};
    } catch (const DegeneratePotential& e) {
        return json{{"valid", false}, {"degenerate", e.what()}};
    }
}

json potential_rank(const json& doc) {
    const NormalizedPotential p = potential_from_json(doc);
    const std::size_t r = generic_rank(p);
    return json{{"rank", r}, {"s_willmore", r == 1}};
}

json potential_classify(const json& doc) {
    const NormalizedPotential p = potential_from_json(doc);
    const std::size_t r = generic_rank(p);
    json poles = json::array();
    for (const auto& pole : p.poles)
        poles.push_back({{"re", pole.location.real()}, {"im", pole.location.imag()}, {"exact", pole.exact}});
    return json{{"m", p.m}, {"type", p.type_tag}, {"label", p.label}, {"rank", r}, {"s_willmore", r == 1},
                {"polynomial", p.is_polynomial()}, {"poles", poles}};
}

json dpw_run(const NormalizedPotential& p, const std::string& grid, const std::string& lambdas, const std::string& csv_path,
             const PipelineOptions& opt) {
    const auto t0 = Clock::now();
    const PipelineResult res = run_pipeline(p, parse_grid(grid), parse_lambdas(lambdas), opt);
    if (!csv_path.empty()) {
        std::ofstream os(csv_path);
        if (!os) throw std::runtime_error("dpw run: cannot write " + csv_path);
        os << std::setprecision(17) << "re_z,im_z,lambda_index";
        for (std::size_t k = 0; k + 1 < 2 * p.m; ++k) os << ",x" << k;
        os << ",reality,group,reconstruction,lightlike,ambiguous\n";
        for (const auto& s : res.points) {
            if (!s.ok) continue;
            for (std::size_t l = 0; l < s.x.size(); ++l) {
                os << s.z.real() << ',' << s.z.imag() << ',' << l;
                for (Eigen::Index k = 0; k < s.x[l].size(); ++k) os << ',' << s.x[l](k);
                os << ',' << s.reality << ',' << s.group << ',' << s.reconstruction << ',' << s.lightlike << ','
                   << (s.ambiguous ? 1 : 0) << '\n';
            }
        }
    }
    json q = json::array();
    for (std::size_t i : res.quarantine)
        q.push_back({{"re", res.points[i].z.real()}, {"im", res.points[i].z.imag()}, {"reason", res.points[i].failure}});
    return json{{"grid", grid}, {"lambdas", lambdas}, {"points", res.points.size()}, {"quarantine", q},
                {"constant_lightlike", res.constant_lightlike}, {"max_reality", res.max_reality},
                {"max_group", res.max_group}, {"max_reconstruction", res.max_reconstruction},
                {"max_lightlike", res.max_lightlike}, {"seconds", since(t0)}, {"csv", csv_path}};
}

SurfaceMap lattice_samples(const std::string& csv_path, std::size_t lambda_index, double& spacing, std::vector<cplx>& interior,
                           int margin) {
    std::ifstream is(csv_path);
    if (!is) throw std::runtime_error("surface: cannot read " + csv_path);
    std::string line;
    std::getline(is, line);
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    std::size_t ncoords = 0;
    while (3 + ncoords < header.size() && header[3 + ncoords] == "x" + std::to_string(ncoords)) ++ncoords;
    if (header.size() < 3 || header[0] != "re_z" || ncoords < 5) throw std::runtime_error("surface: not a dpw run CSV");
    std::vector<std::pair<cplx, Eigen::VectorXd>> rows;
    while (std::getline(is, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() < 3 + ncoords || static_cast<std::size_t>(v[2]) != lambda_index) continue;
        Eigen::VectorXd x(static_cast<Eigen::Index>(ncoords));
        for (std::size_t k = 0; k < ncoords; ++k) x(static_cast<Eigen::Index>(k)) = v[3 + k];
        rows.emplace_back(cplx(v[0], v[1]), x);
    }
    if (rows.size() < 4) throw std::runtime_error("surface: too few samples in " + csv_path);
    std::set<double> xs;
    for (const auto& r : rows) xs.insert(r.first.real());
    if (xs.size() < 2) throw std::runtime_error("surface: samples are not on a lattice");
    spacing = *std::next(xs.begin()) - *xs.begin();
    const cplx origin(*xs.begin(), std::min_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
                                       return a.first.imag() < b.first.imag();
                                   })->first.imag());
    auto key = [origin, spacing](cplx z) {
        const cplx q = (z - origin) / spacing;
        return std::pair<long, long>(std::lround(q.real()), std::lround(q.imag()));
    };
    auto table = std::make_shared<std::map<std::pair<long, long>, Eigen::VectorXd>>();
    for (const auto& [z, x] : rows) (*table)[key(z)] = x;
    for (const auto& [z, x] : rows) {
        const auto [a, b] = key(z);
        bool inside = true;
        for (int da = -margin; da <= margin && inside; ++da)
            for (int db = -margin; db <= margin && inside; ++db) inside = table->count({a + da, b + db}) > 0;
        if (inside) interior.push_back(z);
    }
    SurfaceMap m;
    m.name = csv_path;
    m.dim = ncoords;
    m.sample = [table, key, origin, spacing](cplx z) {
        const auto k = key(z);
        const cplx node = origin + spacing * cplx(static_cast<double>(k.first), static_cast<double>(k.second));
        const auto it = table->find(k);
        if (it == table->end() || std::abs(node - z) > 1e-6 * spacing)
            throw std::runtime_error("surface: stencil point is not a lattice sample");
        return it->second;
    };
    return m;
}

SurfaceInput surface_input(const std::string& input, const std::string& grid, cplx lambda) {
    SurfaceInput in;
    in.provenance = input;
    if (!grid.empty()) in.grid = parse_grid(grid);
    if (input == "builtin:example") {
        in.map = example_surface(lambda);
        in.chart_at_infinity = example_surface_at_infinity(lambda);
    } else if (input == "builtin:sphere") {
        in.map = round_sphere(4);
        in.chart_at_infinity = inverted_chart(in.map);
    } else if (input == "builtin:perturbed-sphere") {
        in.map = perturbed_sphere(0.3);
        in.chart_at_infinity = inverted_chart(in.map);
    } else if (input == "builtin:torus" || input == "builtin:clifford-torus") {
        in.map = cmc_torus(input == "builtin:torus" ? 0.6 : 1 / std::sqrt(2.0));
    } else if (input.rfind("potential:", 0) == 0) {
        in.map = dpw_surface(potential_from_source(input.substr(10)), lambda);
    } else if (input.size() > 4 && input.substr(input.size() - 4) == ".csv") {
        double h = 0;
        std::vector<cplx> interior;
        // order-5 jets use central stencils of half-width 5
        in.map = lattice_samples(input, 0, h, interior, 5);
        in.jet.fixed_step = true;
        in.jet.h = h;
        in.jet.conformal_tol = 1e-4;
        in.grid = interior;
        in.provenance += " (lattice spacing " + std::to_string(h) + ", " + std::to_string(interior.size()) + " interior nodes)";
    } else {
        throw std::invalid_argument("surface: unknown input " + input);
    }
    if (in.grid.empty()) throw std::invalid_argument("surface: empty grid");
    return in;
}

json surface_verify(const SurfaceInput& in, const std::vector<std::string>& checks) {
    static const std::set<std::string> known{"conformal", "willmore", "isotropy", "swillmore", "energy", "integrability", "frame"};
    for (const auto& c : checks)
        if (!known.count(c)) throw std::invalid_argument("surface: unknown check " + c);
    const auto t0 = Clock::now();
    const SurfaceReport rep = verify_surface(in.map, in.grid, in.jet);
    const bool exact = static_cast<bool>(in.map.jet);
    const double inv_tol = exact ? 1e-9 : 1e-6;
    json out{{"input", in.provenance}, {"map", in.map.name}, {"exact_jets", exact}, {"points", rep.points},
             {"quarantined", rep.quarantine.size()}, {"checks", json::object()}};
    json reasons = json::array();
    for (std::size_t k = 0; k < rep.quarantine.size(); ++k)
        reasons.push_back({{"index", rep.quarantine[k]}, {"reason", rep.quarantine_reasons[k]}});
    out["quarantine"] = reasons;
    auto mx = [&](const std::string& k) { return rep.max.count(k) ? rep.max.at(k) : NAN; };
    auto mn = [&](const std::string& k) { return rep.min.count(k) ? rep.min.at(k) : NAN; };
    bool all = rep.quarantine.size() < rep.points;
    for (const auto& c : checks) {
        json j;
        if (c == "conformal") {
            const double tol = exact ? 1e-9 : in.jet.conformal_tol;
            j = {{"max_residual", mx("conformality")}, {"tolerance", tol}, {"pass", mx("conformality") <= tol},
                 {"invariants_max", mx("invariants")}, {"invariants_tolerance", inv_tol}};
            j["pass"] = j["pass"].get<bool>() && mx("invariants") <= inv_tol;
        } else if (c == "willmore") {
            j = {{"max_residual", mx("willmore")}, {"tolerance", 1e-6}, {"pass", mx("willmore") <= 1e-6},
                 {"harmonicity_max", mx("harmonicity")}};
        } else if (c == "isotropy") {
            j = {{"max_defect", mx("isotropy")}, {"tolerance", 1e-6}, {"isotropic", mx("isotropy") <= 1e-6}, {"pass", true}};
        } else if (c == "swillmore") {
            j = {{"min_defect", mn("s_willmore")}, {"max_defect", mx("s_willmore")}, {"b1_rank_min", mn("b1_rank")},
                 {"b1_rank_max", mx("b1_rank")}, {"pass", true}};
            // with D_zbar kappa at rounding level the normalized wedge is noise; rank(B_1) = 1 decides then
            j["s_willmore"] = mx("s_willmore") <= 1e-6 || mx("b1_rank") <= 1;
        } else if (c == "integrability") {
            const double w = std::max({mx("gauss"), mx("codazzi"), mx("ricci")});
            j = {{"gauss", mx("gauss")}, {"codazzi", mx("codazzi")}, {"ricci", mx("ricci")}, {"tolerance", 1e-6}, {"pass", w < 1e-6}};
        } else if (c == "frame") {
            j = {{"b1_condition", mx("b1_condition")}, {"b1_shape", mx("b1_shape")}, {"harmonicity", mx("harmonicity")},
                 {"tolerance", 1e-6}, {"pass", mx("b1_condition") <= 1e-6 && mx("b1_shape") <= 1e-6}};
        } else if (c == "energy") {
            if (!in.chart_at_infinity.sample) {
                j = {{"skipped", "needs a closed-form map with a chart at infinity"}, {"pass", true}};
            } else {
                const EnergyEstimate e = willmore_energy(in.map, in.chart_at_infinity);
                j = {{"value", e.value}, {"by_panels", e.values}, {"panels", e.panels}, {"error", e.error},
                     {"observed_order", e.observed_order}, {"pass", e.observed_order >= 2 || e.error <= 1e-10},
                     {"convention", "W = 4 * integral of <kappa, conj kappa> du dv >= 0"}};
            }
        }
        all = all && j["pass"].get<bool>();
        out["checks"][c] = j;
    }
    out["pass"] = all;
    out["seconds"] = since(t0);
    return out;
}

}  // namespace wll
