#pragma once
// Acceptance criteria, reports and golden-file regression comparison shared by the CLI and the test binaries.

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

#include "wll/dpw.hpp"
#include "wll/surface_geometry.hpp"

namespace wll {

using json = nlohmann::json;

inline constexpr const char* kReportVersion = "1";

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    json metrics = json::object();
    double seconds = 0;
};

struct AcceptanceOptions {
    int threads = 0;
    std::uint64_t seed = 2024;
};

CriterionResult criterion_canonical_count(const AcceptanceOptions& opt = {});
CriterionResult criterion_heights(const AcceptanceOptions& opt = {});
CriterionResult criterion_nilpotent_spans(const AcceptanceOptions& opt = {});
CriterionResult criterion_potential_isotropy(const AcceptanceOptions& opt = {});
CriterionResult criterion_dpw_oracle(const AcceptanceOptions& opt = {});
CriterionResult criterion_surface_predicates(const AcceptanceOptions& opt = {});
CriterionResult criterion_structure_equations(const AcceptanceOptions& opt = {});
CriterionResult criterion_energy(const AcceptanceOptions& opt = {});
CriterionResult criterion_loop_invariants(const AcceptanceOptions& opt = {});

// ids empty: all nine, in order
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {}, const AcceptanceOptions& opt = {});
json to_json(const CriterionResult& r);
json acceptance_report(const std::vector<CriterionResult>& results);

// Golden files: {"version", "fields": {"<criterion id>.<metric path>": {"value": v, "tol": t}}}.
// Numbers compare with |actual - value| <= tol; other JSON values compare exactly.
struct GoldenDiff {
    std::string field;
    std::string message;
};
std::vector<GoldenDiff> golden_compare(const json& golden, const json& report);
// Snapshot of every scalar metric in `report` with the given default tolerance per field kind.
json golden_snapshot(const json& report, double relative_tol);

// classify
json classification_json(std::size_t m);
std::string classification_table(std::size_t m);

// potential subcommands
json potential_validate(const json& doc);
json potential_rank(const json& doc);
json potential_classify(const json& doc);
NormalizedPotential potential_from_source(const std::string& source);  // "builtin:example" or a JSON path

// dpw run: CSV rows re(z), im(z), lambda index, x_0.., residuals
json dpw_run(const NormalizedPotential& p, const std::string& grid, const std::string& lambdas,
             const std::string& csv_path, const PipelineOptions& opt);

// surface verify
struct SurfaceInput {
    SurfaceMap map;
    SurfaceMap chart_at_infinity;  // empty sample when the energy check is unavailable
    std::vector<cplx> grid;
    JetOptions jet;
    std::string provenance;
};
// builtin:example|sphere|perturbed-sphere|torus|clifford-torus, potential:<json>, or a CSV from `dpw run`
SurfaceInput surface_input(const std::string& input, const std::string& grid, cplx lambda);
SurfaceMap lattice_samples(const std::string& csv_path, std::size_t lambda_index, double& spacing,
                           std::vector<cplx>& interior, int margin);
json surface_verify(const SurfaceInput& in, const std::vector<std::string>& checks);

}  // namespace wll
