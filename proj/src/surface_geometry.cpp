#include "wll/surface_geometry.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace wll {

namespace {

using Eigen::Index;
const cplx I_(0, 1);

Jet2 re(const Jet2& a, const Jet2& b) { return (a + b) * cplx(0.5, 0); }       // (z + zbar)/2
Jet2 im(const Jet2& a, const Jet2& b) { return (a - b) / (2.0 * I_); }          // (z - zbar)/2i

Eigen::VectorXd values_real(const VJet& v) {
    Eigen::VectorXd out(static_cast<Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Index>(k)) = v[k].value().real();
    return out;
}

Eigen::VectorXcd values(const VJet& v) {
    Eigen::VectorXcd out(static_cast<Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Index>(k)) = v[k].value();
    return out;
}

cplx lorentz_value(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return (a.array() * b.array()).sum() - 2.0 * a(0) * b(0);
}

// sqrt <v, conj v> for a spacelike (normal) complex vector
double hermitian_norm(const Eigen::VectorXcd& v) {
    return std::sqrt(std::max(0.0, lorentz_value(v, v.conjugate()).real()));
}

SurfaceMap from_jet_fn(std::string name, std::size_t dim, std::function<VJet(const Jet2&, const Jet2&)> fn) {
    SurfaceMap m;
    m.name = std::move(name);
    m.dim = dim;
    m.jet = fn;
    m.sample = [fn](cplx z) {
        return values_real(fn(Jet2(0, z), Jet2(0, std::conj(z))));
    };
    return m;
}

double factorial(int n) {
    double f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// Finite-difference weights for derivatives 0..m at offsets x (Fornberg's recursion); w[d][k].
std::vector<std::vector<double>> fd_weights(const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size());
    std::vector<std::vector<double>> c(static_cast<std::size_t>(m) + 1, std::vector<double>(static_cast<std::size_t>(n), 0.0));
    double c1 = 1, c4 = x[0];
    c[0][0] = 1;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1;
        const double c5 = c4;
        c4 = x[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) {
            const double c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

// Jets of a sampled map from central differences, order-4 accurate in each derivative.
VJet finite_difference_jet(const std::function<Eigen::VectorXd(cplx)>& f, cplx z0, int order, double h, bool fixed) {
    const Eigen::VectorXd f0 = f(z0);
    const auto dim = static_cast<std::size_t>(f0.size());
    VJet out(dim, Jet2(order, 0.0));
    for (std::size_t c = 0; c < dim; ++c) out[c].coeff(0, 0) = f0(static_cast<Index>(c));
    for (int k = 1; k <= order; ++k) {
        const int p = (k + 1) / 2 + 2;
        const double hk = fixed ? h : std::max(h, std::pow(2.2e-16, 1.0 / (k + 4)));
        std::vector<double> x;
        for (int s = -p; s <= p; ++s) x.push_back(s);
        const auto w = fd_weights(x, k);
        const int side = 2 * p + 1;
        std::vector<Eigen::VectorXd> grid(static_cast<std::size_t>(side * side));
        for (int a = 0; a < side; ++a)
            for (int b = 0; b < side; ++b) grid[static_cast<std::size_t>(a * side + b)] = f(z0 + cplx(a - p, b - p) * hk);
        // mixed partials d_u^a d_v^(k-a)
        std::vector<Eigen::VectorXd> mixed;
        for (int a = 0; a <= k; ++a) {
            Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Index>(dim));
            for (int s = 0; s < side; ++s)
                for (int t = 0; t < side; ++t) {
                    const double wt = w[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)] *
                                      w[static_cast<std::size_t>(k - a)][static_cast<std::size_t>(t)];
                    if (wt != 0) acc += wt * grid[static_cast<std::size_t>(s * side + t)];
                }
            mixed.push_back(acc / std::pow(hk, k));
        }
        for (int i = 0; i <= k; ++i) {
            const int j = k - i;
            Eigen::VectorXcd d = Eigen::VectorXcd::Zero(static_cast<Index>(dim));
            for (int al = 0; al <= i; ++al)
                for (int be = 0; be <= j; ++be)
                    d += binomial(i, al) * binomial(j, be) * std::pow(-I_, i - al) * std::pow(I_, j - be) *
                         mixed[static_cast<std::size_t>(al + be)].cast<cplx>();
            d /= std::pow(2.0, k) * factorial(i) * factorial(j);
            for (std::size_t c = 0; c < dim; ++c) out[c].coeff(i, j) = d(static_cast<Index>(c));
        }
    }
    return out;
}

VJet constant_vector(std::size_t dim, std::size_t axis, int order) {
    VJet v(dim, Jet2(order, 0.0));
    v[axis] = Jet2(order, 1.0);
    return v;
}

using JetMatrix = std::vector<std::vector<Jet2>>;  // [row][col]

}  // namespace

SurfaceMap example_surface(cplx lambda) {
    return from_jet_fn("example", 7, [lambda](const Jet2& z, const Jet2& zb) {
        const cplx li = 1.0 / lambda;
        const Jet2 r2 = z * zb, r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4;
        const Jet2 den = 1.0 + r2 + r4 * (5.0 / 4) + r6 * (4.0 / 9) + r8 * (1.0 / 36);
        const Jet2 inv = inverse(den);
        const Jet2 a = 1.0 + r6 * (1.0 / 9), b = 1.0 - r4 * (1.0 / 12), c = r2 * 0.5 * (1.0 + r2 * (4.0 / 3));
        VJet x(7);
        x[0] = (1.0 - r2 - r4 * 0.75 + r6 * (4.0 / 9) - r8 * (1.0 / 36)) * inv;
        x[1] = -I_ * (z - zb) * a * inv;
        x[2] = (z + zb) * a * inv;
        x[3] = -I_ * (li * z * z - lambda * zb * zb) * b * inv;
        x[4] = (li * z * z + lambda * zb * zb) * b * inv;
        x[5] = -I_ * c * (li * z - lambda * zb) * inv;
        x[6] = c * (li * z + lambda * zb) * inv;
        return x;
    });
}

SurfaceMap example_surface_at_infinity(cplx lambda) {
    // example(1/w) with numerator and denominator multiplied by |w|^8
    return from_jet_fn("example_at_infinity", 7, [lambda](const Jet2& w, const Jet2& wb) {
        const cplx li = 1.0 / lambda;
        const Jet2 p2 = w * wb, p4 = p2 * p2, p6 = p4 * p2, p8 = p4 * p4;
        const Jet2 inv = inverse(p8 + p6 + p4 * (5.0 / 4) + p2 * (4.0 / 9) + 1.0 / 36);
        const Jet2 a = p6 + 1.0 / 9, b = p4 - 1.0 / 12, c = 0.5 * (p2 + 4.0 / 3) * p2;
        VJet x(7);
        x[0] = (p8 - p6 - p4 * 0.75 + p2 * (4.0 / 9) - 1.0 / 36) * inv;
        x[1] = -I_ * (wb - w) * a * inv;
        x[2] = (wb + w) * a * inv;
        x[3] = -I_ * (li * wb * wb - lambda * w * w) * b * inv;
        x[4] = (li * wb * wb + lambda * w * w) * b * inv;
        x[5] = -I_ * c * (li * wb - lambda * w) * inv;
        x[6] = c * (li * wb + lambda * w) * inv;
        return x;
    });
}

SurfaceMap round_sphere(std::size_t dim) {
    if (dim < 4) throw std::invalid_argument("round_sphere: target must be at least S^3");
    return from_jet_fn("round_sphere", dim, [dim](const Jet2& z, const Jet2& zb) {
        const Jet2 r2 = z * zb, inv = inverse(1.0 + r2);
        VJet y(dim, Jet2(z.order(), 0.0));
        y[0] = (z + zb) * inv;
        y[1] = (z - zb) / I_ * inv;
        y[2] = (r2 - 1.0) * inv;
        return y;
    });
}

SurfaceMap perturbed_sphere(double eps) {
    return from_jet_fn("perturbed_sphere", 5, [eps](const Jet2& z, const Jet2& zb) {
        const Jet2 f = z * z + z * z * z * (1.0 / 3), fb = zb * zb + zb * zb * zb * (1.0 / 3);
        const VJet p{re(z, zb), im(z, zb), eps * re(f, fb), eps * im(f, fb)};
        const Jet2 p2 = euclid(p, p), inv = inverse(1.0 + p2);
        VJet y(5);
        for (std::size_t k = 0; k < 4; ++k) y[k] = 2.0 * p[k] * inv;
        y[4] = (p2 - 1.0) * inv;
        return y;
    });
}

SurfaceMap cmc_torus(double r1) {
    const double r2 = std::sqrt(1 - r1 * r1);
    return from_jet_fn("cmc_torus", 4, [r1, r2](const Jet2& z, const Jet2& zb) {
        const Jet2 u = re(z, zb), v = im(z, zb);
        return VJet{r1 * cos(u / r1), r1 * sin(u / r1), r2 * cos(v / r2), r2 * sin(v / r2)};
    });
}

SurfaceMap rescaled(const SurfaceMap& m, cplx a, cplx b) {
    SurfaceMap out = m;
    out.name = m.name + "_rescaled";
    if (m.jet)
        out.jet = [f = m.jet, a, b](const Jet2& z, const Jet2& zb) { return f(a * z + b, std::conj(a) * zb + std::conj(b)); };
    out.sample = [f = m.sample, a, b](cplx z) { return f(a * z + b); };
    return out;
}

SurfaceMap inverted_chart(const SurfaceMap& m) {
    SurfaceMap out = m;
    out.name = m.name + "_inverted";
    if (m.jet) out.jet = [f = m.jet](const Jet2& w, const Jet2& wb) { return f(inverse(w), inverse(wb)); };
    out.sample = [f = m.sample](cplx w) { return f(1.0 / w); };
    return out;
}

SurfaceMap sampled(const SurfaceMap& m) {
    SurfaceMap out = m;
    out.name = m.name + "_sampled";
    out.jet = nullptr;
    return out;
}

SurfaceMap holomorphic_graph(const SurfaceMap& m, double eps) {
    // stereographic projection from -e_0, valid away from y_0 = -1
    auto lift = [eps](const VJet& y, const Jet2& h, const Jet2& hb) {
        const Jet2 inv_den = inverse(1.0 + y[0]);
        VJet f;
        for (std::size_t k = 1; k < y.size(); ++k) f.push_back(y[k] * inv_den);
        f.push_back(eps * re(h, hb));
        f.push_back(eps * im(h, hb));
        const Jet2 f2 = euclid(f, f), inv = inverse(1.0 + f2);
        VJet out{(1.0 - f2) * inv};
        for (const auto& c : f) out.push_back(2.0 * c * inv);
        return out;
    };
    auto poly = [](const Jet2& z) { return z * z + z * z * z * (1.0 / 3); };
    SurfaceMap out;
    out.name = m.name + "_graph";
    out.dim = m.dim + 2;
    if (m.jet)
        out.jet = [f = m.jet, lift, poly](const Jet2& z, const Jet2& zb) { return lift(f(z, zb), poly(z), poly(zb)); };
    out.sample = [f = m.sample, lift, poly](cplx z) {
        const Eigen::VectorXd y = f(z);
        VJet yj;
        for (Index k = 0; k < y.size(); ++k) yj.emplace_back(0, y(k));
        return values_real(lift(yj, poly(Jet2(0, z)), poly(Jet2(0, std::conj(z)))));
    };
    return out;
}

SurfaceMap dpw_surface(const NormalizedPotential& p, cplx lambda, std::size_t branch, cplx z0) {
    auto ev = std::make_shared<FrameEvaluator>(p, z0);
    SurfaceMap out;
    out.name = p.label.empty() ? "dpw" : p.label;
    out.dim = 2 * p.m - 1;
    out.sample = [ev, lambda, branch](cplx z) {
        const FramePoint fp = ev->at(z);
        if (!fp.iwasawa.ok) throw std::runtime_error(fp.iwasawa.failure);
        if (!fp.gauge.ok) throw std::runtime_error(fp.gauge.failure);
        if (!fp.gauge.ambiguous || fp.gauge.candidates.size() < 2) return project_surface(fp.adapted_frame_at(lambda));
        const auto& c = fp.gauge.candidates.at(std::min(branch, fp.gauge.candidates.size() - 1));
        return project_surface(fp.frame_at(lambda) * lightlike_gauge(fp.frame_at(lambda).rows(), c));
    };
    return out;
}

SurfaceJet jet_from_map(const SurfaceMap& m, cplx z, const JetOptions& opt) {
    if (m.dim < 4) throw std::invalid_argument("jet_from_map: target must be at least S^3");
    SurfaceJet j;
    j.z = z;
    j.dim = m.dim;
    j.exact = static_cast<bool>(m.jet);
    j.y = j.exact ? m.jet(Jet2::variable_z(opt.order, z), Jet2::variable_zbar(opt.order, z))
                  : finite_difference_jet(m.sample, z, opt.order, opt.h, opt.fixed_step);
    const VJet yz = dz(j.y), yzb = dzbar(j.y);
    const Jet2 e2w = 2.0 * euclid(yz, yzb);
    const double metric = e2w.value().real();
    if (!(metric > opt.immersion_tol)) throw BranchPoint("jet_from_map: |y_z| vanishes (branch point)");
    j.conformality = std::abs(euclid(yz, yz).value()) / (metric / 2);
    if (j.conformality > opt.conformal_tol)
        throw NonConformal("jet_from_map: map is not conformal at this point", j.conformality);

    const Jet2 scale = exp(log(e2w) * cplx(-0.5 * opt.omega_scale, 0));
    j.Y.push_back(scale);
    for (const auto& c : j.y) j.Y.push_back(scale * c);
    j.Yz = dz(j.Y);
    j.Yzb = dzbar(j.Y);
    j.Yzz = dz(j.Yz);
    j.Yzzb = dzbar(j.Yz);
    const Jet2 kk = lorentz(j.Yzzb, j.Yzzb);
    j.N = 2.0 * j.Yzzb + (2.0 * kk) * j.Y;
    j.s = 2.0 * lorentz(j.Yzz, j.N);
    j.kappa = j.Yzz + (j.s * cplx(0.5, 0)) * j.Y;

    // Greedy Gram-Schmidt of the projected ambient axes.
    const std::size_t amb = m.dim + 1, nn = m.dim - 3;
    const int fo = order(j.N);
    std::vector<bool> used(amb, false);
    for (std::size_t step = 0; step < nn; ++step) {
        double best = -1;
        std::size_t pick = 0;
        VJet best_q;
        for (std::size_t a = 0; a < amb; ++a) {
            if (used[a]) continue;
            VJet q = normal_part(j, constant_vector(amb, a, fo));
            for (const auto& psi : j.normal_frame) q = q - lorentz(q, psi) * psi;
            const double nq = lorentz(q, q).value().real();
            if (nq > best) {
                best = nq;
                pick = a;
                best_q = q;
            }
        }
        used[pick] = true;
        j.normal_frame.push_back(inverse(sqrt(lorentz(best_q, best_q))) * best_q);
    }
    return j;
}

VJet normal_part(const SurfaceJet& j, const VJet& v) {
    const Jet2 a = -lorentz(v, j.N), b = 2.0 * lorentz(v, j.Yzb), c = 2.0 * lorentz(v, j.Yz), d = -lorentz(v, j.Y);
    return v - a * j.Y - b * j.Yz - c * j.Yzb - d * j.N;
}

std::map<std::string, double> jet_invariants(const SurfaceJet& j) {
    auto val = [](const VJet& a, const VJet& b) { return lorentz(a, b).value(); };
    std::map<std::string, double> r;
    r["<Y,Y>"] = std::abs(val(j.Y, j.Y));
    r["<Y,Yz>"] = std::abs(val(j.Y, j.Yz));
    r["<Yz,Yz>"] = std::abs(val(j.Yz, j.Yz));
    r["<Yz,Yzb>-1/2"] = std::abs(val(j.Yz, j.Yzb) - 0.5);
    r["<N,Y>+1"] = std::abs(val(j.N, j.Y) + 1.0);
    r["<N,N>"] = std::abs(val(j.N, j.N));
    r["<N,Yz>"] = std::abs(val(j.N, j.Yz));
    r["<k,Y>"] = std::abs(val(j.kappa, j.Y));
    r["<k,Yz>"] = std::abs(val(j.kappa, j.Yz));
    r["<k,Yzb>"] = std::abs(val(j.kappa, j.Yzb));
    r["<k,N>"] = std::abs(val(j.kappa, j.N));
    return r;
}

double max_invariant_residual(const SurfaceJet& j) {
    double m = 0;
    for (const auto& [k, v] : jet_invariants(j)) m = std::max(m, v);
    return m;
}

namespace {

Eigen::VectorXcd willmore_vector(const SurfaceJet& j) {
    const VJet dk = normal_part(j, dzbar(j.kappa));
    const VJet ddk = normal_part(j, dzbar(dk));
    return values(ddk) + std::conj(j.s.value()) / 2.0 * values(j.kappa);
}

}  // namespace

double willmore_residual(const SurfaceJet& j) { return hermitian_norm(willmore_vector(j)); }

IntegrabilityResiduals integrability_residuals(const SurfaceJet& j) {
    IntegrabilityResiduals r;
    const VJet kb = conj(j.kappa);
    const VJet dzk = normal_part(j, dz(j.kappa)), dzkb = normal_part(j, dz(kb));
    const cplx lhs = 0.5 * j.s.dzbar().value();
    const cplx rhs = 3.0 * lorentz(j.kappa, dzkb).value() + lorentz(dzk, kb).value();
    r.gauss = std::abs(lhs - rhs);
    const Eigen::VectorXcd w = willmore_vector(j);
    r.codazzi = hermitian_norm((w - w.conjugate()) / (2.0 * I_));
    const Eigen::VectorXcd k = values(j.kappa), kc = k.conjugate();
    for (const auto& psi : j.normal_frame) {
        const VJet dpsi = normal_part(j, dz(psi)), dbpsi = normal_part(j, dzbar(psi));
        const Eigen::VectorXcd curv = values(normal_part(j, dzbar(dpsi))) - values(normal_part(j, dz(dbpsi)));
        const Eigen::VectorXcd p = values(psi);
        const Eigen::VectorXcd rhs_r = 2.0 * lorentz_value(p, k) * kc - 2.0 * lorentz_value(p, kc) * k;
        r.ricci = std::max(r.ricci, hermitian_norm(curv - rhs_r));
    }
    return r;
}

IsotropyReport isotropy_and_swillmore(const SurfaceJet& j) {
    IsotropyReport r;
    const Eigen::VectorXcd k = values(j.kappa);
    const Eigen::VectorXcd d = values(normal_part(j, dzbar(j.kappa)));
    r.isotropy = std::abs(lorentz_value(k, k));
    const double nk = hermitian_norm(k), nd = hermitian_norm(d);
    const double cross = std::abs(lorentz_value(k, d.conjugate()));
    const double wedge = std::sqrt(std::max(0.0, nk * nk * nd * nd - cross * cross));
    r.s_willmore = wedge / (nk * nd + 1e-14);
    return r;
}

GaussMapValue conformal_gauss_map(const SurfaceJet& j) {
    GaussMapValue g;
    const std::size_t amb = j.dim + 1;
    const double r2 = 1 / std::sqrt(2.0);
    std::vector<VJet> cols{r2 * (j.Y + j.N), r2 * (j.N - j.Y), j.Yz + j.Yzb, I_ * (j.Yz - j.Yzb)};
    for (const auto& psi : j.normal_frame) cols.push_back(psi);
    const int fo = 2;
    JetMatrix f(amb, std::vector<Jet2>(amb)), finv(amb, std::vector<Jet2>(amb));
    for (std::size_t r = 0; r < amb; ++r)
        for (std::size_t c = 0; c < amb; ++c) {
            f[r][c] = cols[c][r].truncated(fo);
            // F^{-1} = I F^t I
            const double sign = ((r == 0) != (c == 0)) ? -1.0 : 1.0;
            finv[c][r] = sign * f[r][c];
        }
    auto mc_form = [&](bool along_z) {
        JetMatrix a(amb, std::vector<Jet2>(amb, Jet2(fo - 1, 0.0)));
        for (std::size_t r = 0; r < amb; ++r)
            for (std::size_t c = 0; c < amb; ++c)
                for (std::size_t k = 0; k < amb; ++k)
                    a[r][c] += finv[r][k] * (along_z ? f[k][c].dz() : f[k][c].dzbar());
        return a;
    };
    const JetMatrix az = mc_form(true), azb = mc_form(false);
    const auto n = static_cast<Index>(amb);
    g.frame.resize(n, n);
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c) g.frame(r, c) = f[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].value().real();
    Eigen::MatrixXd metric = Eigen::MatrixXd::Identity(n, n);
    metric(0, 0) = -1;
    g.frame_residual = (g.frame.transpose() * metric * g.frame - metric).cwiseAbs().maxCoeff();
    const Eigen::MatrixXd basis = g.frame.leftCols(4);
    g.projector = basis * (basis.transpose() * metric * basis).inverse() * basis.transpose() * metric;

    g.b1.resize(4, n - 4);
    for (Index r = 0; r < 4; ++r)
        for (Index c = 4; c < n; ++c) g.b1(r, c - 4) = az[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].value();
    Eigen::Matrix4cd i13 = Eigen::Vector4cd(-1, 1, 1, 1).asDiagonal();
    g.b1_condition = (g.b1.transpose() * i13 * g.b1).cwiseAbs().maxCoeff();
    g.b1_shape = std::max((g.b1.row(0) + g.b1.row(1)).cwiseAbs().maxCoeff(),
                          (g.b1.row(3) - I_ * g.b1.row(2)).cwiseAbs().maxCoeff());
    g.b1_isotropy = (g.b1 * g.b1.transpose() * i13).cwiseAbs().maxCoeff();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g.b1);
    const Eigen::VectorXd sv = svd.singularValues();
    for (Index k = 0; k < sv.size(); ++k) g.b1_rank += (sv(0) > 1e-12 && sv(k) > 1e-6 * sv(0)) ? 1 : 0;

    // harmonic map equation: d_zbar a'_p + [a''_k, a'_p] = 0
    auto in_k = [](std::size_t r, std::size_t c) { return (r < 4) == (c < 4); };
    Eigen::MatrixXcd ap = Eigen::MatrixXcd::Zero(n, n), dap = ap, akb = ap;
    for (std::size_t r = 0; r < amb; ++r)
        for (std::size_t c = 0; c < amb; ++c) {
            const auto ri = static_cast<Index>(r), ci = static_cast<Index>(c);
            if (in_k(r, c)) {
                akb(ri, ci) = azb[r][c].value();
            } else {
                ap(ri, ci) = az[r][c].value();
                dap(ri, ci) = az[r][c].dzbar().value();
            }
        }
    g.harmonicity = (dap + akb * ap - ap * akb).cwiseAbs().maxCoeff();
    return g;
}

EnergyEstimate willmore_energy(const SurfaceMap& chart, const SurfaceMap& chart_at_infinity, const std::vector<int>& panels) {
    EnergyEstimate e;
    JetOptions opt;
    opt.order = 3;
    const double g = 1 / std::sqrt(3.0);
    auto disk = [&](const SurfaceMap& m, int np) {
        const int na = 8 * np;
        double total = 0;
        for (int p = 0; p < np; ++p)
            for (double node : {-g, g}) {
                const double r = (p + 0.5 + 0.5 * node) / np;
                double ring = 0;
                for (int a = 0; a < na; ++a) {
                    const SurfaceJet j = jet_from_map(m, std::polar(r, 2 * std::numbers::pi * a / na), opt);
                    const Eigen::VectorXcd k = values(j.kappa);
                    ring += 4 * lorentz_value(k, k.conjugate()).real();
                }
                total += ring * (2 * std::numbers::pi / na) * r * (0.5 / np);
            }
        return total;
    };
    for (int np : panels) {
        e.panels.push_back(np);
        e.values.push_back(disk(chart, np) + disk(chart_at_infinity, np));
    }
    const std::size_t n = e.values.size();
    e.value = e.values.back();
    if (n >= 2) e.error = std::abs(e.values[n - 1] - e.values[n - 2]);
    if (n >= 3) {
        const double d1 = std::abs(e.values[n - 2] - e.values[n - 3]);
        e.observed_order = e.error > 0 ? std::log2(d1 / e.error) : std::numeric_limits<double>::infinity();
    }
    return e;
}

double fullness_proxy(const Eigen::MatrixXd& cloud) {
    const Eigen::MatrixXd g = cloud * cloud.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g / g.trace());
    return es.eigenvalues().minCoeff();
}

SurfaceReport verify_surface(const SurfaceMap& m, const std::vector<cplx>& grid, const JetOptions& opt) {
    SurfaceReport rep;
    rep.points = grid.size();
    auto upd = [&](const std::string& k, double v) {
        auto it = rep.max.find(k);
        if (it == rep.max.end()) {
            rep.max[k] = v;
            rep.min[k] = v;
        } else {
            it->second = std::max(it->second, v);
            rep.min[k] = std::min(rep.min[k], v);
        }
    };
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            const SurfaceJet j = jet_from_map(m, grid[i], opt);
            upd("unit_norm", std::abs(values_real(j.y).norm() - 1));
            upd("conformality", j.conformality);
            upd("invariants", max_invariant_residual(j));
            upd("willmore", willmore_residual(j));
            const auto integ = integrability_residuals(j);
            upd("gauss", integ.gauss);
            upd("codazzi", integ.codazzi);
            upd("ricci", integ.ricci);
            const auto iso = isotropy_and_swillmore(j);
            upd("isotropy", iso.isotropy);
            upd("s_willmore", iso.s_willmore);
            rep.s_willmore_field.push_back(iso.s_willmore);
            const auto gm = conformal_gauss_map(j);
            upd("frame", gm.frame_residual);
            upd("b1_condition", gm.b1_condition);
            upd("b1_shape", gm.b1_shape);
            upd("b1_isotropy", gm.b1_isotropy);
            upd("harmonicity", gm.harmonicity);
            upd("b1_rank", gm.b1_rank);
            rep.b1_rank_field.push_back(gm.b1_rank);
        } catch (const std::exception& e) {
            rep.quarantine.push_back(i);
            rep.quarantine_reasons.emplace_back(e.what());
        }
    }
    return rep;
}

}  // namespace wll
