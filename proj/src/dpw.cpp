#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <thread>

#include "wll/dpw.hpp"

namespace wll {

namespace {

using Eigen::Index;

double lorentz_square(const Eigen::VectorXd& v) { return v.squaredNorm() - 2 * v(0) * v(0); }

Eigen::Matrix3d rotation_taking_e1_to(const Eigen::Vector3d& u) {
    const Eigen::Vector3d e1(1, 0, 0);
    const double c = e1.dot(u);
    if (c > 1 - 1e-15) return Eigen::Matrix3d::Identity();
    if (c < -1 + 1e-15) return Eigen::Vector3d(-1, 1, -1).asDiagonal();
    const Eigen::Vector3d v = e1.cross(u);
    Eigen::Matrix3d vx;
    vx << 0, -v(2), v(1), v(2), 0, -v(0), -v(1), v(0), 0;
    return Eigen::Matrix3d::Identity() + vx + vx * vx / (1 + c);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad number '" + s + "' in " + what);
    }
}

CMat eta_at(const RMat& eta, cplx z) {
    const Mat<cplx> e = eval_matrix(eta, z);
    CMat out(static_cast<Index>(e.rows()), static_cast<Index>(e.cols()));
    for (std::size_t i = 0; i < e.rows(); ++i)
        for (std::size_t j = 0; j < e.cols(); ++j) out(static_cast<Index>(i), static_cast<Index>(j)) = e(i, j);
    return out;
}

Eigen::VectorXd projectivize_column(const Eigen::VectorXd& y) {
    const Eigen::VectorXd v = y(0) < 0 ? Eigen::VectorXd(-y) : y;
    return v.tail(v.size() - 1) / v(0);
}

}  // namespace

Eigen::VectorXd project_surface(const RMatD& frame, double tol) {
    const Eigen::VectorXd v = frame.col(0) - frame.col(1);
    const double nv = v.squaredNorm();
    if (std::abs(v(0)) <= tol * std::sqrt(nv))
        throw ProjectionError("project_surface: point at infinity of the affine chart");
    if (std::abs(lorentz_square(v)) > tol * nv) throw ProjectionError("project_surface: phi_1 - phi_2 is not lightlike");
    return projectivize_column(v);
}

AdaptedGauge adapted_gauge(const CMat& eta_minus1, const CMat& b0, double tol) {
    AdaptedGauge g;
    const Index n = b0.rows();
    const CMat alpha = b0.inverse() * eta_minus1 * b0;
    Eigen::Matrix4d i13 = Eigen::Vector4d(-1, 1, 1, 1).asDiagonal();
    const CMat mc = alpha.topRightCorner(4, n - 4).transpose() * i13;
    Eigen::MatrixXd stacked(2 * mc.rows(), 4);
    stacked << mc.real(), mc.imag();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
    Eigen::VectorXd sv = Eigen::VectorXd::Zero(4);
    sv.head(svd.singularValues().size()) = svd.singularValues();
    const double top = sv(0);
    if (top < tol) {
        g.failure = "adapted_gauge: B_1 vanishes";
        return g;
    }
    g.kernel_sigma = sv(3) / top;
    g.next_sigma = sv(2) / top;
    const Eigen::Matrix4d v = svd.matrixV();
    auto normalized = [](Eigen::Vector4d c) { return Eigen::Vector4d(c / c(0)); };
    Eigen::Index kdim = 0;
    for (Eigen::Index i = 0; i < 4; ++i) kdim += sv(i) / top < tol ? 1 : 0;
    if (kdim >= 2) {
        g.ambiguous = true;
        // lightlike directions of the kernel from the restricted form
        const Eigen::MatrixXd basis = v.rightCols(kdim);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(basis.transpose() * i13 * basis);
        const Eigen::VectorXd w = es.eigenvalues();
        const Eigen::MatrixXd u = es.eigenvectors();
        std::vector<Eigen::Vector4d> raw;
        Eigen::Index flat = 0;
        for (Eigen::Index i = 0; i < kdim; ++i) flat += std::abs(w(i)) < 1e-8 ? 1 : 0;
        if (flat == 1 && w.minCoeff() > -1e-8) {
            for (Eigen::Index i = 0; i < kdim; ++i)
                if (std::abs(w(i)) < 1e-8) raw.push_back(basis * u.col(i));
        } else if (flat == 0 && kdim == 2 && w(0) < 0) {
            const double a = std::sqrt(w(1)), b = std::sqrt(-w(0));
            raw.push_back(basis * (a * u.col(0) + b * u.col(1)));
            raw.push_back(basis * (a * u.col(0) - b * u.col(1)));
        } else {
            g.failure = "adapted_gauge: kernel of B_1 contains a cone of lightlike directions";
            return g;
        }
        for (const auto& c : raw)
            if (std::abs(c(0)) > 1e-12 * c.norm()) g.candidates.push_back(normalized(c));
        // deterministic order so that a fixed branch index varies continuously in z
        std::sort(g.candidates.begin(), g.candidates.end(), [](const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
            for (int k = 1; k < 4; ++k)
                if (std::abs(a(k) - b(k)) > 1e-9) return a(k) < b(k);
            return false;
        });
        if (g.candidates.empty()) {
            g.failure = "adapted_gauge: degenerate kernel has no lightlike direction";
            return g;
        }
        g.direction = g.candidates.front();
    } else {
        const Eigen::Vector4d c = v.col(3);
        if (std::abs(c(0)) < 1e-12) {
            g.failure = "adapted_gauge: kernel vector is spacelike";
            return g;
        }
        g.direction = normalized(c);
        if (std::abs(g.direction.dot(i13 * g.direction)) > 1e-6) {
            g.failure = "adapted_gauge: kernel vector is not lightlike";
            return g;
        }
    }
    g.gauge = lightlike_gauge(n, g.direction);
    g.ok = true;
    return g;
}

RMatD lightlike_gauge(Eigen::Index n, const Eigen::Vector4d& direction) {
    RMatD gauge = RMatD::Identity(n, n);
    gauge.block(1, 1, 3, 3) = rotation_taking_e1_to(-direction.tail<3>().normalized());
    return gauge;
}

Eigen::VectorXd closed_form_example(cplx z, cplx lambda) {
    const double r = std::abs(z);
    const double r2 = r * r, r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4;
    const cplx zb = std::conj(z), i(0, 1), li = 1.0 / lambda;
    const double den = 1 + r2 + 5 * r4 / 4 + 4 * r6 / 9 + r8 / 36;
    Eigen::VectorXd x(7);
    x(0) = 1 - r2 - 3 * r4 / 4 + 4 * r6 / 9 - r8 / 36;
    x(1) = (-i * (z - zb) * (1 + r6 / 9)).real();
    x(2) = ((z + zb) * (1 + r6 / 9)).real();
    x(3) = (-i * (li * z * z - lambda * zb * zb) * (1 - r4 / 12)).real();
    x(4) = ((li * z * z + lambda * zb * zb) * (1 - r4 / 12)).real();
    x(5) = (-i * (r2 / 2) * (li * z - lambda * zb) * (1 + 4 * r2 / 3)).real();
    x(6) = ((r2 / 2) * (li * z + lambda * zb) * (1 + 4 * r2 / 3)).real();
    return x / den;
}

RMatD FramePoint::frame_at(cplx lambda) const { return iwasawa.frame.eval(lambda).real(); }

RMatD FramePoint::adapted_frame_at(cplx lambda) const { return frame_at(lambda) * gauge.gauge; }

FrameEvaluator::FrameEvaluator(const NormalizedPotential& p, cplx z0, IwasawaOptions opt)
    : p_(p), z0_(z0), opt_(opt), source_(make_loop_frame_source(p, z0)) {}

FramePoint FrameEvaluator::at(cplx z) const {
    FramePoint fp;
    fp.z = z;
    fp.eta = eta_at(p_.eta_minus1(), z);
    fp.iwasawa = iwasawa_at_point(source_(z), opt_);
    if (fp.iwasawa.ok) fp.gauge = adapted_gauge(fp.eta, fp.iwasawa.plus.at(0));
    return fp;
}

std::vector<cplx> parse_grid(const std::string& spec) {
    const auto parts = split(spec, ':');
    std::vector<cplx> pts;
    if (parts.size() == 3 && parts[0] == "disk") {
        const double radius = parse_double(parts[1], "grid");
        const int count = static_cast<int>(parse_double(parts[2], "grid"));
        if (radius <= 0 || count < 1) throw std::invalid_argument("grid: disk needs R > 0 and N >= 1");
        for (int i = 1; i <= count; ++i)
            for (int j = 0; j < count; ++j)
                pts.push_back(std::polar(radius * i / count, 2 * std::numbers::pi * j / count));
        return pts;
    }
    if (parts.size() == 6 && parts[0] == "rect") {
        const double x0 = parse_double(parts[1], "grid"), x1 = parse_double(parts[2], "grid");
        const double y0 = parse_double(parts[3], "grid"), y1 = parse_double(parts[4], "grid");
        const int count = static_cast<int>(parse_double(parts[5], "grid"));
        if (count < 2) throw std::invalid_argument("grid: rect needs N >= 2");
        for (int i = 0; i < count; ++i)
            for (int j = 0; j < count; ++j)
                pts.emplace_back(x0 + (x1 - x0) * i / (count - 1), y0 + (y1 - y0) * j / (count - 1));
        return pts;
    }
    if (parts.size() == 3 && parts[0] == "point") {
        pts.emplace_back(parse_double(parts[1], "grid"), parse_double(parts[2], "grid"));
        return pts;
    }
    throw std::invalid_argument("grid: expected disk:R:N, rect:x0:x1:y0:y1:N or point:re:im, got '" + spec + "'");
}

std::vector<cplx> parse_lambdas(const std::string& list) {
    std::vector<cplx> out;
    for (const auto& tok : split(list, ',')) {
        if (tok == "1") out.emplace_back(1, 0);
        else if (tok == "-1") out.emplace_back(-1, 0);
        else if (tok == "i") out.emplace_back(0, 1);
        else if (tok == "-i") out.emplace_back(0, -1);
        else if (tok.rfind("deg:", 0) == 0)
            out.push_back(std::polar(1.0, parse_double(tok.substr(4), "lambda") * std::numbers::pi / 180));
        else throw std::invalid_argument("lambda: expected 1, -1, i, -i or deg:<angle>, got '" + tok + "'");
    }
    if (out.empty()) throw std::invalid_argument("lambda: empty list");
    return out;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("WLL_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

PipelineResult run_pipeline(const NormalizedPotential& p, const std::vector<cplx>& grid,
                            const std::vector<cplx>& lambdas, const PipelineOptions& opt) {
    PipelineResult res;
    res.lambdas = lambdas;
    res.points.resize(grid.size());
    const FrameEvaluator eval(p, opt.z0, opt.iwasawa);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t idx = next++; idx < grid.size(); idx = next++) {
            PointSample& s = res.points[idx];
            s.z = grid[idx];
            try {
                const FramePoint fp = eval.at(s.z);
                s.reality = fp.iwasawa.reality_residual;
                s.group = fp.iwasawa.group_residual;
                s.reconstruction = fp.iwasawa.reconstruction_residual;
                if (!fp.iwasawa.ok) throw std::runtime_error(fp.iwasawa.failure);
                if (!fp.gauge.ok) throw std::runtime_error(fp.gauge.failure);
                s.ambiguous = fp.gauge.ambiguous;
                for (cplx l : lambdas) {
                    const RMatD f = fp.adapted_frame_at(l);
                    const Eigen::VectorXd v = f.col(0) - f.col(1);
                    s.lightlike = std::max(s.lightlike, std::abs(lorentz_square(v)) / v.squaredNorm());
                    s.x.push_back(project_surface(f));
                    if (s.ambiguous) {
                        std::vector<Eigen::VectorXd> br;
                        const RMatD raw = fp.frame_at(l);
                        for (const auto& c : fp.gauge.candidates) br.push_back(projectivize_column(raw.leftCols(4) * c));
                        s.branches.push_back(std::move(br));
                    }
                }
                s.ok = true;
            } catch (const std::exception& e) {
                s.ok = false;
                s.failure = e.what();
                s.x.clear();
            }
        }
    };
    const int nthreads = std::min<int>(resolve_threads(opt.threads), static_cast<int>(std::max<std::size_t>(1, grid.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<const PointSample*> amb;
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        const auto& s = res.points[i];
        if (!s.ok) {
            res.quarantine.push_back(i);
            continue;
        }
        res.max_reality = std::max(res.max_reality, s.reality);
        res.max_group = std::max(res.max_group, s.group);
        res.max_reconstruction = std::max(res.max_reconstruction, s.reconstruction);
        res.max_lightlike = std::max(res.max_lightlike, s.lightlike);
        if (s.ambiguous) amb.push_back(&s);
    }
    if (amb.size() >= 2) {
        for (const auto& cand : amb.front()->branches.front()) {
            bool everywhere = true;
            for (const auto* s : amb) {
                bool hit = false;
                for (const auto& b : s->branches.front()) hit = hit || (b - cand).norm() < 1e-6;
                everywhere = everywhere && hit;
            }
            res.constant_lightlike = res.constant_lightlike || everywhere;
        }
    }
    return res;
}

BlockFit block_procrustes(const Eigen::MatrixXd& from, const Eigen::MatrixXd& to, Index a) {
    const Index dim = from.rows();
    BlockFit fit;
    fit.rotation = Eigen::MatrixXd::Zero(dim, dim);
    for (auto [start, len] : {std::pair<Index, Index>{0, a}, std::pair<Index, Index>{a, dim - a}}) {
        if (len == 0) continue;
        const Eigen::MatrixXd m = to.middleRows(start, len) * from.middleRows(start, len).transpose();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
        fit.rotation.block(start, start, len, len) = svd.matrixU() * svd.matrixV().transpose();
    }
    if (from.cols() > 0) fit.max_deviation = (fit.rotation * from - to).colwise().norm().maxCoeff();
    return fit;
}

double gram_deviation(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a.transpose() * a - b.transpose() * b).cwiseAbs().maxCoeff();
}

ExampleVerification verify_example(const std::vector<cplx>& grid, const std::vector<cplx>& lambdas,
                                   const PipelineOptions& opt) {
    ExampleVerification v;
    const auto t0 = std::chrono::steady_clock::now();
    const PipelineResult res = run_pipeline(example_potential(), grid, lambdas, opt);
    v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.points = grid.size();
    v.quarantined = res.quarantine.size();
    std::vector<std::size_t> ok;
    for (std::size_t i = 0; i < res.points.size(); ++i)
        if (res.points[i].ok) ok.push_back(i);
    const auto cols = static_cast<Index>(ok.size() * lambdas.size());
    Eigen::MatrixXd got(7, cols), want(7, cols);
    Index c = 0;
    for (std::size_t li = 0; li < lambdas.size(); ++li)
        for (std::size_t i : ok) {
            got.col(c) = res.points[i].x[li];
            want.col(c) = closed_form_example(res.points[i].z, lambdas[li]);
            ++c;
        }
    v.raw_deviation = cols ? (got - want).colwise().norm().maxCoeff() : 0;
    v.fitted_deviation = block_procrustes(got, want, 3).max_deviation;
    std::optional<std::size_t> one, eye;
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        if (std::abs(lambdas[li] - cplx(1, 0)) < 1e-15) one = li;
        if (std::abs(lambdas[li] - cplx(0, 1)) < 1e-15) eye = li;
    }
    if (one && eye) {
        const auto per = static_cast<Index>(ok.size());
        v.gram_deviation_i = gram_deviation(got.middleCols(static_cast<Index>(*one) * per, per),
                                            got.middleCols(static_cast<Index>(*eye) * per, per));
    }
    if (v.quarantined > 0) v.fitted_deviation = std::numeric_limits<double>::infinity();
    return v;
}

}  // namespace wll
