#include <Eigen/SVD>

#include <cmath>
#include <random>

#include "wll/dpw.hpp"

namespace wll {

namespace {

using Eigen::Index;
using M2 = Eigen::Matrix2cd;
using M4 = Eigen::Matrix4cd;

// x -> row-major vec of [[x0 + x1, x2 + i x3], [x2 - i x3, x0 - x1]]; conjugation by it turns
// SO(1,3,C) into SL(2,C) x SL(2,C) acting by X -> g X h^t.
M4 spinor_map() {
    const cplx i(0, 1);
    M4 c;
    c << 1, 1, 0, 0,
         0, 0, 1, i,
         0, 0, 1, -i,
         1, -1, 0, 0;
    return c;
}

M4 act(const M2& g, const M2& h) {
    static const M4 c = spinor_map();
    M4 t;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int cc = 0; cc < 2; ++cc)
                for (int d = 0; d < 2; ++d) t(2 * a + b, 2 * cc + d) = g(a, cc) * h(b, d);
    return c.inverse() * t * c;
}

// (g, h) with act(g, h) = q and det g = 1, up to a common sign.
std::pair<M2, M2> lift(const M4& q) {
    static const M4 c = spinor_map();
    const M4 t = c * q * c.inverse();
    M4 r;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int cc = 0; cc < 2; ++cc)
                for (int d = 0; d < 2; ++d) r(2 * a + cc, 2 * b + d) = t(2 * a + b, 2 * cc + d);
    Index jmax = 0;
    r.colwise().norm().maxCoeff(&jmax);
    M2 g;
    g << r(0, jmax), r(1, jmax), r(2, jmax), r(3, jmax);
    g /= std::sqrt(g.determinant());
    Index imax = 0;
    Eigen::Vector4cd gv(g(0, 0), g(0, 1), g(1, 0), g(1, 1));
    gv.cwiseAbs().maxCoeff(&imax);
    const Eigen::RowVector4cd hv = r.row(imax) / gv(imax);
    M2 h;
    h << hv(0), hv(1), hv(2), hv(3);
    return {g, h};
}

// Unitary basis (e_{2a} - i e_{2a+1})/sqrt2 followed by the conjugates in reverse order;
// the complex bilinear form becomes anti-diagonal in it.
CMat isotropic_basis(Index n) {
    CMat w = CMat::Zero(n, n);
    const double r = 1 / std::sqrt(2.0);
    for (Index a = 0; a < n / 2; ++a) {
        w(2 * a, a) = r;
        w(2 * a + 1, a) = cplx(0, -r);
        w(2 * a, n - 1 - a) = r;
        w(2 * a + 1, n - 1 - a) = cplx(0, r);
    }
    return w;
}

// a = R Q with R upper triangular, positive real diagonal, Q unitary (rows orthonormal).
std::pair<CMat, CMat> rq_decompose(const CMat& a) {
    const Index n = a.rows();
    CMat q = CMat::Zero(n, n), r = CMat::Zero(n, n);
    for (Index i = n - 1; i >= 0; --i) {
        Eigen::RowVectorXcd v = a.row(i);
        for (int pass = 0; pass < 2; ++pass)
            for (Index j = i + 1; j < n; ++j) {
                const cplx c = v.dot(q.row(j));  // sum conj(v) q
                const cplx coef = std::conj(c);
                r(i, j) += coef;
                v -= coef * q.row(j);
            }
        const double nv = v.norm();
        r(i, i) = nv;
        q.row(i) = v / nv;
    }
    return {r, q};
}

CMat block_diag(const CMat& a, const CMat& b) {
    CMat out = CMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

// Real M with M^t diag(sign) M = g, where sign is (-1, 1, ...) when lorentzian and all ones otherwise.
std::optional<Eigen::MatrixXd> congruence_factor(const Eigen::MatrixXd& g, bool lorentzian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    const Eigen::VectorXd w = es.eigenvalues();
    const Index n = g.rows();
    for (Index i = 0; i < n; ++i) {
        const bool want_negative = lorentzian && i == 0;
        if (want_negative ? w(i) >= 0 : w(i) <= 0) return std::nullopt;
    }
    return Eigen::MatrixXd(w.cwiseAbs().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose());
}

}  // namespace

SNormalization s_normalize(const CMat& b0) {
    SNormalization out;
    const Index n = b0.rows();
    const M4 b = b0.topLeftCorner(4, 4);
    const M4 q = b * b.conjugate().inverse();
    const M2 g = lift(q).first;
    if (std::abs(g(0, 0)) < 1e-10 * g.norm()) {
        out.failure = "s_normalize: lorentz block on the Iwasawa cell boundary";
        return out;
    }
    M2 l;
    l << 1, 0, g(1, 0) / g(0, 0), 1;
    const M2 upper = l.inverse() * g;
    const M2 u = upper.conjugate().inverse();
    const CMat s1 = act(l, u);

    const Index rest = n - 4;
    const CMat w = isotropic_basis(rest);
    const CMat br = b0.bottomRightCorner(rest, rest);
    const auto [r, qq] = rq_decompose(w.adjoint() * br * w);
    const CMat s2 = w * r * w.adjoint();

    CMat s = block_diag(s1, s2);
    CMat k = b0.inverse() * s;
    if (k.imag().cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, k.cwiseAbs().maxCoeff())) {
        out.failure = "s_normalize: compact factor is not real";
        return out;
    }
    out.ok = true;
    out.s = s;
    out.k = k.real();
    return out;
}

bool in_solvable_subgroup(const CMat& b0, double tol) {
    const Index n = b0.rows();
    const M4 b = b0.topLeftCorner(4, 4);
    if ((b0.topRightCorner(4, n - 4).cwiseAbs().maxCoeff() > tol) ||
        (b0.bottomLeftCorner(n - 4, 4).cwiseAbs().maxCoeff() > tol))
        return false;
    auto [g, h] = lift(b);
    // g = +-(unit lower triangular), h upper triangular with the same sign convention
    if (std::abs(g(0, 1)) > tol || std::abs(h(1, 0)) > tol) return false;
    if (std::abs(g(0, 0) - g(1, 1)) > tol || std::abs(std::abs(g(0, 0)) - 1) > tol) return false;
    if ((act(g, h) - b).cwiseAbs().maxCoeff() > tol) return false;
    const CMat w = isotropic_basis(n - 4);
    const CMat t = w.adjoint() * b0.bottomRightCorner(n - 4, n - 4) * w;
    for (Index i = 0; i < t.rows(); ++i) {
        if (std::abs(t(i, i).imag()) > tol || t(i, i).real() <= 0) return false;
        for (Index j = 0; j < i; ++j)
            if (std::abs(t(i, j)) > tol) return false;
    }
    return true;
}

IwasawaResult iwasawa_at_point(const LoopMatrix& fminus, const IwasawaOptions& opt) {
    IwasawaResult res;
    const Index n = static_cast<Index>(fminus.size());
    if (fminus.max_power() > 0) throw std::invalid_argument("iwasawa_at_point: loop has positive powers");
    const int d = -fminus.min_power();
    const int kmax = d;
    const int pw = std::max(d, kmax);
    std::vector<CMat> a(static_cast<std::size_t>(d) + 1, CMat::Zero(n, n));
    for (const auto& [k, m] : fminus.coeffs()) a[static_cast<std::size_t>(-k)] = m;

    std::vector<CMat> plus(static_cast<std::size_t>(kmax) + 1, CMat::Zero(n, n));
    res.null_gap = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
        const bool first = j < 4;
        const Index bs = first ? 4 : n - 4;
        std::vector<std::pair<int, Index>> unknowns;
        for (int k = 0; k <= kmax; ++k)
            for (Index i = 0; i < n; ++i)
                if ((k_block(i, j)) == (k % 2 == 0)) unknowns.emplace_back(k, i);
        const Index nu = static_cast<Index>(unknowns.size());
        Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(2 * n * (2 * pw + 1), 2 * nu);
        auto add = [&](int p, Index col, const Eigen::VectorXcd& v) {
            const Index base = 2 * n * (p + pw);
            sys.block(base, col, n, 1) += v.real();
            sys.block(base + n, col, n, 1) += v.imag();
        };
        const cplx iu(0, 1);
        for (Index u = 0; u < nu; ++u) {
            const auto [k, i] = unknowns[static_cast<std::size_t>(u)];
            for (int q = 0; q <= d; ++q) {
                const int p = k - q;
                const Eigen::VectorXcd col = a[static_cast<std::size_t>(q)].col(i);
                add(p, u, col);
                add(-p, u, -col.conjugate());
                add(p, nu + u, iu * col);
                add(-p, nu + u, iu * col.conjugate());
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeFullV);
        const Eigen::VectorXd sv = svd.singularValues();
        const Index total = 2 * nu;
        if (sv.size() < total || total <= bs) throw std::logic_error("iwasawa_at_point: under-determined reality system");
        const double top = sv(0);
        const double kept = sv(total - bs - 1) / top;
        const double dropped = sv(total - bs) / top;
        res.null_gap = std::min(res.null_gap, kept);
        if (dropped > 1e-9 || kept < opt.null_gap) {
            res.failure = "iwasawa_at_point: reality system has no isolated null space of the expected dimension";
            return res;
        }
        std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(j));
        std::normal_distribution<double> normal;
        Eigen::VectorXd coef(bs);
        for (Index t = 0; t < bs; ++t) coef(t) = normal(rng);
        const Eigen::VectorXd x = svd.matrixV().rightCols(bs) * coef;
        for (Index u = 0; u < nu; ++u) {
            const auto [k, i] = unknowns[static_cast<std::size_t>(u)];
            plus[static_cast<std::size_t>(k)](i, j) = cplx(x(u), x(nu + u));
        }
    }

    // X = F_+ M for an unknown real block-diagonal M; recover M from the constant X^t I X.
    CMat x1 = CMat::Zero(n, n);
    for (const auto& b : plus) x1 += b;
    const CMat metric = lorentz_metric(static_cast<std::size_t>(n)).cast<cplx>();
    const CMat gram = x1.transpose() * metric * x1;
    const auto f4 = congruence_factor(gram.real().topLeftCorner(4, 4), true);
    const auto fr = congruence_factor(gram.real().bottomRightCorner(n - 4, n - 4), false);
    if (!f4 || !fr) {
        res.failure = "iwasawa_at_point: congruence factor has the wrong signature";
        return res;
    }
    Eigen::MatrixXd mfac = Eigen::MatrixXd::Zero(n, n);
    mfac.topLeftCorner(4, 4) = *f4;
    mfac.bottomRightCorner(n - 4, n - 4) = *fr;
    const CMat minv = mfac.inverse().cast<cplx>();
    for (auto& b : plus) b = b * minv;

    // Determinant one on each block.
    if (plus[0].topLeftCorner(4, 4).determinant().real() < 0)
        for (auto& b : plus) b.col(3) *= -1.0;
    if (plus[0].bottomRightCorner(n - 4, n - 4).determinant().real() < 0)
        for (auto& b : plus) b.col(n - 1) *= -1.0;

    SNormalization sn = s_normalize(plus[0]);
    if (!sn.ok) {
        res.failure = sn.failure;
        return res;
    }
    CMat kc = sn.k.cast<cplx>();
    LoopMatrix fp(static_cast<std::size_t>(n));
    for (int k = 0; k <= kmax; ++k) fp.set(k, plus[static_cast<std::size_t>(k)] * kc);
    LoopMatrix frame = fminus * fp;
    if (frame.eval(1.0)(0, 0).real() < 0) {
        // The solvable subgroup contains -1 on the lorentz block; pick the time-oriented frame.
        CMat flip = CMat::Identity(n, n);
        flip.topLeftCorner(4, 4) *= -1.0;
        fp = fp.right_multiply(flip);
        frame = frame.right_multiply(flip);
    }

    const int window = frame.max_power() - frame.min_power();
    const auto samples = unit_circle_samples(4 * window + 4);
    const double scale = std::max(1.0, frame.eval(1.0).cwiseAbs().maxCoeff());
    res.reality_residual = frame.reality_residual(samples);
    res.group_residual = frame.group_residual(samples);
    double recon = 0;
    for (cplx l : samples)
        recon = std::max(recon, (fminus.eval(l) - frame.eval(l) * fp.eval(l).inverse()).cwiseAbs().maxCoeff());
    res.reconstruction_residual = recon;
    res.twisted = fminus.is_twisted() && fp.is_twisted() && frame.is_twisted();
    res.frame = std::move(frame);
    res.plus = std::move(fp);
    const double tol_scale = scale * scale;
    if (res.reality_residual > opt.tol_real * tol_scale || res.group_residual > opt.tol_grp * tol_scale) {
        res.failure = "iwasawa_at_point: residual above tolerance";
        return res;
    }
    if (!res.twisted) {
        res.failure = "iwasawa_at_point: twisting lost";
        return res;
    }
    res.ok = true;
    return res;
}

}  // namespace wll
