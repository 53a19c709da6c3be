#pragma once
// Canonical lift, structure quantities and geometric predicates of conformal maps into spheres.

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wll/dpw.hpp"
#include "wll/jet.hpp"

namespace wll {

// A conformal map into the unit sphere of R^dim. `jet` evaluates it on Taylor jets of (z, zbar)
// (exact differentiation); maps given only by samples leave it empty and use finite differences.
struct SurfaceMap {
    std::string name;
    std::size_t dim = 0;
    std::function<VJet(const Jet2& z, const Jet2& zbar)> jet;
    std::function<Eigen::VectorXd(cplx)> sample;
};

SurfaceMap example_surface(cplx lambda);                     // the explicit S^6 family
SurfaceMap example_surface_at_infinity(cplx lambda);         // the same family in the chart w = 1/z
SurfaceMap round_sphere(std::size_t dim = 4);                // inverse stereographic chart, in S^(dim-1)
SurfaceMap perturbed_sphere(double eps = 0.3);               // graph of eps (z^2 + z^3/3) in R^4, lifted to S^4
SurfaceMap cmc_torus(double r1 = 0.6);                       // flat torus in S^3, Willmore only when r1^2 = 1/2
SurfaceMap rescaled(const SurfaceMap& m, cplx a, cplx b = 0.0); // z -> a z + b
SurfaceMap inverted_chart(const SurfaceMap& m);              // w -> m(1/w)
SurfaceMap sampled(const SurfaceMap& m);                     // forget the exact jets
// Stereographic image in R^(dim-1) extended by eps (Re h, Im h), h = z^2 + z^3/3, lifted back to S^(dim+1).
// Conformal for every eps; used as a small non-Willmore perturbation.
SurfaceMap holomorphic_graph(const SurfaceMap& m, double eps);
// Surface of a normalized potential at a fixed lambda, sampled from the DPW pipeline; at points with two
// lightlike kernel directions `branch` selects one of them.
SurfaceMap dpw_surface(const NormalizedPotential& p, cplx lambda, std::size_t branch = 0, cplx z0 = 0.0);

class NonConformal : public std::runtime_error {
public:
    NonConformal(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

class BranchPoint : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct JetOptions {
    int order = 5;
    double h = 1e-3;             // smallest finite-difference step
    bool fixed_step = false;     // use h for every derivative order (samples on a lattice of spacing h)
    double omega_scale = 1.0;    // != 1 gives a deliberately mis-scaled lift
    double conformal_tol = 1e-6;
    double immersion_tol = 1e-10;
};

struct SurfaceJet {
    cplx z;
    std::size_t dim = 0;
    bool exact = false;
    double conformality = 0;  // |<y_z, y_z>| / <y_z, y_zbar>
    VJet y, Y, Yz, Yzb, Yzz, Yzzb, N, kappa;
    Jet2 s;
    std::vector<VJet> normal_frame;  // real orthonormal sections of the normal bundle
};

SurfaceJet jet_from_map(const SurfaceMap& m, cplx z, const JetOptions& opt = {});

// Tangential-normal projection onto the normal bundle.
VJet normal_part(const SurfaceJet& j, const VJet& v);

std::map<std::string, double> jet_invariants(const SurfaceJet& j);
double max_invariant_residual(const SurfaceJet& j);

double willmore_residual(const SurfaceJet& j);

struct IntegrabilityResiduals {
    double gauss = 0, codazzi = 0, ricci = 0;
};
IntegrabilityResiduals integrability_residuals(const SurfaceJet& j);

struct IsotropyReport {
    double isotropy = 0;     // |<kappa, kappa>|
    double s_willmore = 0;   // |kappa ^ D_zbar kappa| / (|kappa| |D_zbar kappa| + 1e-14)
};
IsotropyReport isotropy_and_swillmore(const SurfaceJet& j);

struct GaussMapValue {
    Eigen::MatrixXd frame;        // columns (Y+N)/sqrt2, (-Y+N)/sqrt2, Y_u, Y_v, psi_1..psi_n
    Eigen::MatrixXd projector;    // Lorentz-orthogonal projector onto span(Y, Y_u, Y_v, N)
    Eigen::MatrixXcd b1;          // upper-right block of F^{-1} F_z
    double frame_residual = 0;    // |F^t I F - I|
    double b1_condition = 0;      // |B_1^t I_{1,3} B_1|
    double b1_shape = 0;          // rows 1,2 opposite and row 4 = i row 3
    double b1_isotropy = 0;       // |B_1 B_1^t I_{1,3}|, zero iff kappa is isotropic
    double harmonicity = 0;       // |d_zbar a'_p + [a''_k, a'_p]|
    int b1_rank = 0;
};
GaussMapValue conformal_gauss_map(const SurfaceJet& j);

struct EnergyEstimate {
    std::vector<int> panels;
    std::vector<double> values;
    double value = 0;          // finest estimate
    double error = 0;          // |finest - previous|
    double observed_order = 0; // log2 of successive difference ratio
};
// Integrates 4 <kappa, conj kappa> du dv over |z| <= 1 of both charts.
EnergyEstimate willmore_energy(const SurfaceMap& chart, const SurfaceMap& chart_at_infinity,
                               const std::vector<int>& panels = {4, 8, 16});

// smallest eigenvalue of the trace-normalized Gram matrix of the point cloud (columns are points)
double fullness_proxy(const Eigen::MatrixXd& cloud);

struct SurfaceReport {
    std::size_t points = 0;
    std::vector<std::size_t> quarantine;
    std::vector<std::string> quarantine_reasons;
    std::map<std::string, double> max;       // per check, over accepted points
    std::map<std::string, double> min;       // per check, over accepted points
    std::vector<double> s_willmore_field;
    std::vector<int> b1_rank_field;
};
SurfaceReport verify_surface(const SurfaceMap& m, const std::vector<cplx>& grid, const JetOptions& opt = {});

}  // namespace wll
