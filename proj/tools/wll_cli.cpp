#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "wll/harness.hpp"
#include "wll/potential_io.hpp"

using namespace wll;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

json read_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot read " + path);
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

json potential_doc(const std::string& source) {
    if (source == "builtin:example") return potential_to_json(example_potential());
    return read_json(source);
}

void write_json(const std::string& path, const json& j) {
    if (path.empty()) return;
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot write " + path);
    os << j.dump(2) << '\n';
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void print_checks(const json& report) {
    for (auto it = report["checks"].begin(); it != report["checks"].end(); ++it)
        std::cout << std::left << std::setw(14) << it.key() << (it.value()["pass"].get<bool>() ? "pass  " : "FAIL  ")
                  << it.value().dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loop-group classification and verification of Willmore two-spheres"};
    app.require_subcommand(1);
    bool as_json = false;
    int threads = 0;
    app.add_flag("--json", as_json, "machine-readable output on stdout");
    app.add_option("--threads", threads, "worker threads (default WLL_THREADS or all cores)");

    auto* classify = app.add_subcommand("classify", "canonical elements and their gradings");
    std::size_t m = 4;
    std::string format = "table";
    classify->add_option("--m", m, "number of 2x2 blocks")->required()->check(CLI::Range(3, 10));
    classify->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

    auto* potential = app.add_subcommand("potential", "normalized potential files");
    potential->require_subcommand(1);
    std::string pfile;
    auto* validate = potential->add_subcommand("validate", "exact isotropy check");
    auto* rank = potential->add_subcommand("rank", "generic rank of B_1");
    auto* pclass = potential->add_subcommand("classify", "type, rank and poles");
    for (auto* s : {validate, rank, pclass}) s->add_option("file", pfile, "potential JSON or builtin:example")->required();

    auto* dpw = app.add_subcommand("dpw", "potential to surface");
    dpw->require_subcommand(1);
    std::string source = "builtin:example", grid = "disk:1.5:20", lambdas = "1,i,deg:60", out;
    auto* run = dpw->add_subcommand("run", "run the pipeline and write CSV samples");
    run->add_option("--potential", source, "potential JSON or builtin:example");
    run->add_option("--grid", grid, "disk:R:N | rect:x0:x1:y0:y1:N | point:re:im");
    run->add_option("--lambda", lambdas, "comma list of 1, -1, i, -i, deg:<angle>");
    run->add_option("--out", out, "CSV path");
    auto* verify_ex = dpw->add_subcommand("verify-example", "compare with the closed-form example");
    verify_ex->add_option("--grid", grid);
    verify_ex->add_option("--lambda", lambdas);

    auto* surface = app.add_subcommand("surface", "geometric predicates of a surface");
    surface->require_subcommand(1);
    auto* sverify = surface->add_subcommand("verify", "run surface checks");
    std::string input = "builtin:example", checks = "conformal,willmore,isotropy,swillmore", sgrid = "disk:1.5:20", slambda = "1";
    sverify->add_option("--input", input, "builtin:example|sphere|perturbed-sphere|torus|clifford-torus, potential:<file>, or a dpw run CSV on a rect grid");
    sverify->add_option("--checks", checks, "conformal,willmore,isotropy,swillmore,energy,integrability,frame");
    sverify->add_option("--grid", sgrid);
    sverify->add_option("--lambda", slambda);
    sverify->add_option("--out", out, "report JSON path");

    auto* golden = app.add_subcommand("golden", "acceptance suite and golden regression files");
    golden->require_subcommand(1);
    auto* grun = golden->add_subcommand("run", "run the acceptance suite and compare with the golden file");
    std::string golden_file = "golden/acceptance.json", out_dir = "reports", criteria;
    bool update = false;
    grun->add_option("--golden", golden_file);
    grun->add_option("--out-dir", out_dir, "reports are written to <out-dir>/v<version>/");
    grun->add_option("--criteria", criteria, "comma list of criterion ids (default all)");
    grun->add_flag("--update", update, "rewrite the golden file from this run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        if (*classify) {
            if (format == "json" || as_json)
                std::cout << classification_json(m).dump(2) << '\n';
            else
                std::cout << classification_table(m);
            return kPass;
        }
        if (*potential) {
            const json doc = potential_doc(pfile);
            json r;
            bool ok = true;
            if (*validate) {
                r = potential_validate(doc);
                ok = r["valid"].get<bool>();
            } else if (*rank) {
                r = potential_rank(doc);
            } else {
                r = potential_classify(doc);
            }
            std::cout << (as_json ? r.dump(2) : r.dump()) << '\n';
            return ok ? kPass : kFail;
        }
        PipelineOptions po;
        po.threads = threads;
        if (*run) {
            const json r = dpw_run(potential_from_source(source), grid, lambdas, out, po);
            std::cout << (as_json ? r.dump(2) : r.dump()) << '\n';
            return r["quarantine"].empty() ? kPass : kFail;
        }
        if (*verify_ex) {
            const ExampleVerification v = verify_example(parse_grid(grid), parse_lambdas(lambdas), po);
            const bool ok = v.quarantined == 0 && v.fitted_deviation < 1e-8;
            const json r{{"grid", grid}, {"lambdas", lambdas}, {"raw_deviation", v.raw_deviation},
                         {"fitted_deviation", v.fitted_deviation}, {"gram_deviation_i", v.gram_deviation_i},
                         {"points", v.points}, {"quarantined", v.quarantined}, {"seconds", v.seconds},
                         {"tolerance", 1e-8}, {"pass", ok}};
            if (as_json)
                std::cout << r.dump(2) << '\n';
            else
                std::cout << "max deviation " << v.fitted_deviation << " (raw " << v.raw_deviation << ") over " << v.points
                          << " points, " << v.quarantined << " quarantined, " << v.seconds << " s\n";
            return ok ? kPass : kFail;
        }
        if (*sverify) {
            const auto ls = parse_lambdas(slambda);
            if (ls.size() != 1) throw std::invalid_argument("surface verify takes one lambda");
            const SurfaceInput in = surface_input(input, input.ends_with(".csv") ? "" : sgrid, ls.front());
            json r = surface_verify(in, split_list(checks));
            r["grid"] = input.ends_with(".csv") ? "csv lattice" : sgrid;
            r["lambda"] = slambda;
            write_json(out, r);
            if (as_json)
                std::cout << r.dump(2) << '\n';
            else
                print_checks(r);
            return r["pass"].get<bool>() ? kPass : kFail;
        }
        if (*grun) {
            std::vector<int> ids;
            for (const auto& s : split_list(criteria)) ids.push_back(std::stoi(s));
            AcceptanceOptions ao;
            ao.threads = threads;
            const auto results = run_acceptance(ids, ao);
            const json report = acceptance_report(results);
            const std::filesystem::path dir = std::filesystem::path(out_dir) / (std::string("v") + kReportVersion);
            std::filesystem::create_directories(dir);
            write_json((dir / "acceptance.json").string(), report);
            if (update) write_json(golden_file, golden_snapshot(report, 1e-6));
            const json g = read_json(golden_file);
            json fields = json::object();
            // restrict the golden comparison to the criteria that ran
            for (auto it = g["fields"].begin(); it != g["fields"].end(); ++it)
                for (const auto& r : results)
                    if (it.key().rfind(std::to_string(r.id) + ".", 0) == 0) fields[it.key()] = it.value();
            json sub = g;
            sub["fields"] = fields;
            const auto diffs = golden_compare(sub, report);
            json dj = json::array();
            for (const auto& d : diffs) dj.push_back({{"field", d.field}, {"message", d.message}});
            if (as_json) {
                std::cout << json{{"report", report}, {"golden_diffs", dj}}.dump(2) << '\n';
            } else {
                for (const auto& r : results)
                    std::cout << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << " - " << r.detail << '\n';
                for (const auto& d : diffs) std::cout << "golden diff " << d.field << ": " << d.message << '\n';
                std::cout << "report: " << (dir / "acceptance.json").string() << '\n';
            }
            return report["pass"].get<bool>() && diffs.empty() ? kPass : kFail;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
