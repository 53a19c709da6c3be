#pragma once
// Loop frame of a normalized potential, loop Iwasawa splitting and projection to the sphere.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wll/loop_matrix.hpp"
#include "wll/potentials.hpp"

namespace wll {

using QPolyMat = Mat<QPoly>;

class NonTerminatingSeries : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PoleOnPath : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// F_- = sum_k lambda^{-k} terms[k](z) for a polynomial potential, computed by exact iterated integration.
struct ExactLoopFrame {
    std::size_t n = 0;
    QI z0;
    QPolyMat eta;                  // coefficient of lambda^{-1} dz
    std::vector<QPolyMat> terms;   // terms[0] = identity

    int depth() const { return static_cast<int>(terms.size()) - 1; }
    // d terms[k]/dz == terms[k-1] eta for all k, and terms[depth] eta == 0, in exact arithmetic.
    bool maurer_cartan_exact() const;
    LoopMatrix eval(cplx z) const;
};

QPolyMat polynomial_matrix(const RMat& m);  // throws std::invalid_argument on a non-polynomial entry

ExactLoopFrame integrate_potential_exact(const NormalizedPotential& p, const QI& z0 = QI(0));

// Largest k with a nonzero product eta(z_1)...eta(z_k) at random sample points.
int nilpotency_depth(const NormalizedPotential& p, std::uint64_t seed = 7);

// RK4 along the segment z0 -> z; throws PoleOnPath if the segment passes within 1e-6 of a pole.
LoopMatrix integrate_potential_numeric(const NormalizedPotential& p, cplx z0, cplx z, int depth, double step = 2e-3);

// z -> F_-(z, .) with F_-(z0) = identity
using LoopFrameSource = std::function<LoopMatrix(cplx)>;
LoopFrameSource make_loop_frame_source(const NormalizedPotential& p, cplx z0 = 0.0);

struct SNormalization {
    bool ok = false;
    std::string failure;
    CMat s;      // element of the solvable subgroup
    RMatD k;     // real, with b0 * k = s
};

// b0 block-diagonal in SO(1,3,C) x SO(n,C).
SNormalization s_normalize(const CMat& b0);
bool in_solvable_subgroup(const CMat& b0, double tol = 1e-9);

struct IwasawaOptions {
    std::uint64_t seed = 20240917;
    double tol_real = 1e-10;
    double tol_grp = 1e-10;
    double null_gap = 1e-8;  // relative singular-value gap required around the null space
};

struct IwasawaResult {
    bool ok = false;
    std::string failure;
    LoopMatrix frame;   // F, real on the unit circle
    LoopMatrix plus;    // F_+, powers 0..K, F_+(0) in the solvable subgroup
    double reality_residual = 0;
    double group_residual = 0;
    double reconstruction_residual = 0;
    double null_gap = 0;  // smallest ratio sigma_kept / sigma_discarded over columns
    bool twisted = false;
};

IwasawaResult iwasawa_at_point(const LoopMatrix& fminus, const IwasawaOptions& opt = {});

class ProjectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// projectivize(phi_1 - phi_2) after making the 0-th entry positive.
Eigen::VectorXd project_surface(const RMatD& frame, double tol = 1e-8);

// Real gauge diag(R, I) with R in SO+(1,3) fixing e_0 so that the first two columns of F R
// give the lightlike direction annihilated by B_1.
struct AdaptedGauge {
    bool ok = false;
    std::string failure;
    RMatD gauge;
    Eigen::Vector4d direction;     // real lightlike kernel vector, 0-th entry 1
    double kernel_sigma = 0;       // smallest singular value of [Re; Im](B_1^t I)
    double next_sigma = 0;         // second smallest
    bool ambiguous = false;        // real kernel of dimension >= 2 (rank one B_1)
    std::vector<Eigen::Vector4d> candidates;  // lightlike kernel directions when ambiguous
};

AdaptedGauge adapted_gauge(const CMat& eta_minus1, const CMat& b0, double tol = 1e-8);
// O(3) rotation in the 1..3 block taking e_1 to minus the spatial part of a lightlike direction
RMatD lightlike_gauge(Eigen::Index n, const Eigen::Vector4d& direction);

Eigen::VectorXd closed_form_example(cplx z, cplx lambda);

struct FramePoint {
    cplx z;
    IwasawaResult iwasawa;
    AdaptedGauge gauge;
    CMat eta;
    RMatD frame_at(cplx lambda) const;            // normalized frame F
    RMatD adapted_frame_at(cplx lambda) const;    // F times the adapted gauge
};

class FrameEvaluator {
public:
    FrameEvaluator(const NormalizedPotential& p, cplx z0 = 0.0, IwasawaOptions opt = {});
    FramePoint at(cplx z) const;
    const NormalizedPotential& potential() const { return p_; }
    cplx base_point() const { return z0_; }

private:
    NormalizedPotential p_;
    cplx z0_;
    IwasawaOptions opt_;
    LoopFrameSource source_;
};

std::vector<cplx> parse_grid(const std::string& spec);      // disk:R:N | rect:x0:x1:y0:y1:N | point:re:im
std::vector<cplx> parse_lambdas(const std::string& list);   // comma list of 1, -1, i, -i, deg:<angle>

struct PointSample {
    cplx z;
    bool ok = false;
    std::string failure;
    std::vector<Eigen::VectorXd> x;   // one per lambda
    double reality = 0, group = 0, reconstruction = 0, lightlike = 0;
    bool ambiguous = false;
    std::vector<std::vector<Eigen::VectorXd>> branches;  // per lambda, both candidates when ambiguous
};

struct PipelineOptions {
    cplx z0 = 0.0;
    IwasawaOptions iwasawa;
    int threads = 0;  // 0: WLL_THREADS or hardware concurrency
};

struct PipelineResult {
    std::vector<cplx> lambdas;
    std::vector<PointSample> points;
    std::vector<std::size_t> quarantine;
    bool constant_lightlike = false;   // one branch of every ambiguous point is the same fixed point
    double max_reality = 0, max_group = 0, max_reconstruction = 0, max_lightlike = 0;
};

PipelineResult run_pipeline(const NormalizedPotential& p, const std::vector<cplx>& grid,
                            const std::vector<cplx>& lambdas, const PipelineOptions& opt = {});

int resolve_threads(int requested);

// Best block-orthogonal O(a) x O(b) fit of cloud `from` onto `to` (columns are points, split after row a).
struct BlockFit {
    Eigen::MatrixXd rotation;
    double max_deviation = 0;
};
BlockFit block_procrustes(const Eigen::MatrixXd& from, const Eigen::MatrixXd& to, Eigen::Index a);

// max |G_1 - G_2| for Gram matrices of two clouds
double gram_deviation(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct ExampleVerification {
    double raw_deviation = 0;      // before fitting
    double fitted_deviation = 0;   // after the O(3) x O(4) fit
    double gram_deviation_i = 0;   // lambda = i cloud vs lambda = 1 cloud
    std::size_t points = 0, quarantined = 0;
    double seconds = 0;
};
ExampleVerification verify_example(const std::vector<cplx>& grid, const std::vector<cplx>& lambdas,
                                   const PipelineOptions& opt = {});

}  // namespace wll
