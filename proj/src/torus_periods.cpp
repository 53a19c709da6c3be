#include "wll/torus_periods.hpp"

#include <cmath>
#include <numbers>

namespace wll {

ContourPath ContourPath::segment(cplx a, cplx b) {
    return {[a, b](double t) { return a + t * (b - a); }, [a, b](double) { return b - a; }};
}

ContourPath ContourPath::circle(cplx center, double radius) {
    constexpr double tau = 2 * std::numbers::pi;
    return {[=](double t) { return center + radius * std::exp(cplx(0, tau * t)); },
            [=](double t) { return cplx(0, tau) * radius * std::exp(cplx(0, tau * t)); }};
}

double TorusPeriodReport::max_abs() const {
    double m = 0;
    for (const auto& p : periods) m = std::max(m, std::abs(p));
    return m;
}

ComplexFn as_function(const RF& f) {
    return [f](cplx z) { return f.eval(z); };
}

TorusPeriodReport torus_integral_check(const ComplexFn& h0, const ComplexFn& h1, const ComplexFn& h2,
                                       const ContourPath& path, int steps) {
    using State = std::array<cplx, 6>;
    auto rhs = [&](double t, const State& y) {
        const cplx z = path.point(t), dz = path.derivative(t);
        const cplx a0 = h0(z), a1 = h1(z), a2 = h2(z);
        for (cplx v : {a0, a1, a2})
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::domain_error("torus_integral_check: integrand not finite near z = " + std::to_string(z.real()) + "+" +
                                        std::to_string(z.imag()) + "i");
        State d;
        d[0] = a1 * dz;
        d[1] = a2 * dz;
        d[2] = a1 * a0 * dz;
        d[3] = a2 * a0 * dz;
        d[4] = (-y[2] * a2 + y[0] * a2 * a0) * dz;
        d[5] = (-y[1] * a1 * a0 + y[3] * a1) * dz;
        return d;
    };
    State y{};
    const double h = 1.0 / steps;
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        auto axpy = [](const State& a, const State& b, double s) {
            State r;
            for (std::size_t i = 0; i < 6; ++i) r[i] = a[i] + s * b[i];
            return r;
        };
        State k1 = rhs(t, y);
        State k2 = rhs(t + h / 2, axpy(y, k1, h / 2));
        State k3 = rhs(t + h / 2, axpy(y, k2, h / 2));
        State k4 = rhs(t + h, axpy(y, k3, h));
        for (std::size_t i = 0; i < 6; ++i) y[i] += h / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    TorusPeriodReport r;
    r.periods = y;
    return r;
}

TorusPeriodReport torus_integral_check(const RF& h0, const RF& h1, const RF& h2, const ContourPath& path, int steps) {
    return torus_integral_check(as_function(h0), as_function(h1), as_function(h2), path, steps);
}

}  // namespace wll
