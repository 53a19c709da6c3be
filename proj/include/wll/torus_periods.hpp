#pragma once
// Period diagnostic for the six nested integrals attached to a type-(3)
// potential on a torus: h1, h2, h1 h0, h2 h0 and the two second-level primitives.

#include <array>
#include <functional>
#include <string>

#include "wll/potentials.hpp"

namespace wll {

using ComplexFn = std::function<cplx(cplx)>;

struct ContourPath {
    std::function<cplx(double)> point;       // t in [0, 1]
    std::function<cplx(double)> derivative;  // dz/dt

    static ContourPath segment(cplx a, cplx b);
    static ContourPath circle(cplx center, double radius);
};

struct TorusPeriodReport {
    static constexpr std::array<const char*, 6> kNames = {"h1", "h2", "h10", "h20", "h31", "h32"};
    std::array<cplx, 6> periods{};
    double max_abs() const;
};

// Integrates the nested primitives along the path with classical RK4 and returns
// their increments. Throws std::domain_error when an integrand is not finite.
TorusPeriodReport torus_integral_check(const ComplexFn& h0, const ComplexFn& h1, const ComplexFn& h2,
                                       const ContourPath& path, int steps = 4000);

TorusPeriodReport torus_integral_check(const RF& h0, const RF& h1, const RF& h2, const ContourPath& path, int steps = 4000);

ComplexFn as_function(const RF& f);

}  // namespace wll
