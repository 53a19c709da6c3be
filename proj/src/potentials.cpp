#include "wll/potentials.hpp"

#include <set>

namespace wll {

namespace {
const RF kI = RF(QI::i());
}

std::string kind_name(PairKind k) { return k == PairKind::i ? "i" : "ii"; }

std::vector<std::string> generator_names(PairKind k) {
    if (k == PairKind::i) return {"h1", "h1_hat", "h3", "h3_hat"};
    return {"h1", "h2", "h3", "h4"};
}

ColumnPair ColumnPair::kind_i(RF h1, RF h1_hat, RF h3, RF h3_hat) {
    ColumnPair p;
    p.kind_ = PairKind::i;
    p.fns_ = {{"h1", std::move(h1)}, {"h1_hat", std::move(h1_hat)}, {"h3", std::move(h3)}, {"h3_hat", std::move(h3_hat)}};
    return p;
}

ColumnPair ColumnPair::kind_ii(RF h1, RF h2, RF h3, RF h4) {
    ColumnPair p;
    p.kind_ = PairKind::ii;
    p.fns_ = {{"h1", std::move(h1)}, {"h2", std::move(h2)}, {"h3", std::move(h3)}, {"h4", std::move(h4)}};
    return p;
}

ColumnPair ColumnPair::kind_i(const RVec& v, const RVec& v_hat) {
    if (!fits_kind_i(v, v_hat)) throw std::invalid_argument("column pair does not have the kind-i shape");
    return kind_i(v[0], v_hat[0], v[2], v_hat[2]);
}

ColumnPair ColumnPair::from_functions(PairKind kind, const std::map<std::string, RF>& fns) {
    std::map<std::string, RF> f;
    for (const auto& name : generator_names(kind)) {
        auto it = fns.find(name);
        f[name] = it == fns.end() ? RF() : it->second;
    }
    for (const auto& [name, val] : fns)
        if (!f.count(name)) throw std::invalid_argument("unknown generator '" + name + "' for kind " + kind_name(kind));
    return kind == PairKind::i ? kind_i(f["h1"], f["h1_hat"], f["h3"], f["h3_hat"]) : kind_ii(f["h1"], f["h2"], f["h3"], f["h4"]);
}

RVec ColumnPair::v() const {
    if (kind_ == PairKind::i) {
        const RF& a = fns_.at("h1");
        const RF& b = fns_.at("h3");
        return {a, a, b, kI * b};
    }
    return {fns_.at("h1"), fns_.at("h2"), fns_.at("h3"), fns_.at("h4")};
}

RVec ColumnPair::v_hat() const {
    if (kind_ == PairKind::i) {
        const RF& a = fns_.at("h1_hat");
        const RF& b = fns_.at("h3_hat");
        return {a, a, b, kI * b};
    }
    return scale(kI, v());
}

bool fits_kind_i(const RVec& v, const RVec& v_hat) {
    for (const RVec* x : {&v, &v_hat})
        if ((*x)[0] != (*x)[1] || (*x)[3] != kI * (*x)[2]) return false;
    return true;
}

bool fits_kind_ii(const RVec& v, const RVec& v_hat) { return scale(kI, v) == v_hat; }

RF bilinear13(const RVec& a, const RVec& b) {
    if (a.size() != 4 || b.size() != 4) throw std::invalid_argument("bilinear13 needs 4-vectors");
    return -(a[0] * b[0]) + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

RVec scale(const RF& f, const RVec& v) {
    RVec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(f * x);
    return out;
}

RVec add(const RVec& a, const RVec& b) {
    RVec out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
    return out;
}

IsotropyError::IsotropyError(IsotropyViolation v)
    : std::runtime_error("isotropy violated at pair (" + std::to_string(v.j) + "," + std::to_string(v.l) + "): " + v.condition +
                         " = " + v.value.str()),
      v_(std::move(v)) {}

RMat realize_b1(const std::vector<ColumnPair>& pairs) {
    RMat b(4, 2 * pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto v = pairs[p].v(), vh = pairs[p].v_hat();
        for (std::size_t r = 0; r < 4; ++r) {
            b(r, 2 * p) = v[r];
            b(r, 2 * p + 1) = vh[r];
        }
    }
    return b;
}

std::optional<IsotropyViolation> check_isotropy(const std::vector<ColumnPair>& pairs) {
    std::vector<RVec> v, vh;
    for (const auto& p : pairs) {
        v.push_back(p.v());
        vh.push_back(p.v_hat());
    }
    for (std::size_t j = 0; j < pairs.size(); ++j)
        for (std::size_t l = 0; l < pairs.size(); ++l) {
            auto report = [&](const char* cond, RF val) {
                return IsotropyViolation{j + 3, l + 3, cond, std::move(val)};
            };
            if (l >= j) {
                if (RF x = bilinear13(v[j], v[l]); !x.is_zero()) return report("v_j.v_l", x);
                if (RF x = bilinear13(vh[j], vh[l]); !x.is_zero()) return report("vhat_j.vhat_l", x);
            }
            if (RF x = bilinear13(v[j], vh[l]); !x.is_zero()) return report("v_j.vhat_l", x);
        }
    return std::nullopt;
}

RMat NormalizedPotential::eta_minus1() const {
    const std::size_t n = 2 * m;
    RMat eta(n, n);
    eta.set_block(0, 4, b1);
    RMat i13 = MetricSignature{4}.matrix<RF>();
    eta.set_block(4, 0, -(b1.transpose() * i13));
    return eta;
}

bool NormalizedPotential::is_polynomial() const {
    for (const auto& f : b1.data())
        if (!f.is_polynomial()) return false;
    return true;
}

NormalizedPotential assemble(const std::vector<ColumnPair>& pairs, const std::string& label) {
    if (pairs.empty()) throw std::invalid_argument("assemble: need at least one column pair (m >= 3)");
    if (auto bad = check_isotropy(pairs)) throw IsotropyError(*bad);
    NormalizedPotential p;
    p.m = pairs.size() + 2;
    p.pairs = pairs;
    p.b1 = realize_b1(pairs);
    int kind_ii = 0;
    for (const auto& c : pairs) kind_ii += c.kind() == PairKind::ii;
    p.type_tag = 1 + kind_ii;
    p.label = label.empty() ? "type " + std::to_string(p.type_tag) : label;

    std::set<std::string> seen;
    for (const auto& f : p.b1.data()) {
        if (f.den().is_constant() || !seen.insert(f.den().str()).second) continue;
        for (const auto& pole : polynomial_roots(f.den())) {
            bool dup = false;
            for (const auto& q : p.poles) dup = dup || std::abs(q.location - pole.location) < 1e-9;
            if (!dup) p.poles.push_back(pole);
        }
    }
    return p;
}

std::size_t generic_rank(const RMat& b) { return rank(b); }
std::size_t generic_rank(const NormalizedPotential& p) { return generic_rank(p.b1); }

std::pair<RVec, RVec> isotropic_pair_from_functions(const RF& h1, const RF& h2) {
    const RF one(1);
    RVec v1 = {one + h1 * h2, -one + h1 * h2, h1 + h2, -(kI * (h1 - h2))};
    RVec v2 = {h1, h1, one, kI};
    return {v1, v2};
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw DegeneratePotential(what);
}

bool is_const(const RF& f) { return f.is_constant(); }

}  // namespace

NormalizedPotential s6_case1(const RF& h13, const RF& h33, const RF& h20, const RF& h30, const RF& h40) {
    require(!is_const(h33), "s6 case 1: h33 must be non-constant");
    RVec v1 = {h13, h13, h33, kI * h33};
    return assemble({ColumnPair::kind_i(v1, scale(h20, v1)), ColumnPair::kind_i(scale(h30, v1), scale(h40, v1))}, "s6_case1");
}

NormalizedPotential s6_case2(const RF& h1, const RF& h2, const RF& h10, const RF& h30_hat, const RF& h40_hat) {
    require(!is_const(h1) || !is_const(h2), "s6 case 2: h1 or h2 must be non-constant");
    require(!(h30_hat * h30_hat + h40_hat * h40_hat).is_zero(),
            "s6 case 2: h30_hat^2 + h40_hat^2 vanishes identically (overlaps the isotropic case)");
    auto [v1, v2] = isotropic_pair_from_functions(h1, h2);
    return assemble({ColumnPair::kind_ii(scale(h10, v1)), ColumnPair::kind_i(scale(h30_hat, v2), scale(h40_hat, v2))}, "s6_case2");
}

NormalizedPotential s6_case3(const RF& h1, const RF& h2, const RF& h10, const RF& h30, const RF& h40) {
    require(!is_const(h1), "s6 case 3: h1 must be non-constant");
    require(!h30.is_zero() || !h40.is_zero(), "s6 case 3: h30 and h40 both vanish");
    auto [v1, v2] = isotropic_pair_from_functions(h1, h2);
    return assemble({ColumnPair::kind_ii(scale(h10, v1)), ColumnPair::kind_ii(add(scale(h30, v1), scale(h40, v2)))}, "s6_case3");
}

NormalizedPotential s5_builder(const RF& h0, const RF& h1, const RF& h2, const RF& h0_hat) {
    require(!is_const(h0) && !is_const(h1) && !is_const(h2) && !is_const(h0_hat), "s5: all four functions must be non-constant");
    auto [v1, v2] = isotropic_pair_from_functions(h1, h2);
    auto p = assemble({ColumnPair::kind_ii(scale(h0, v1)), ColumnPair::kind_i(scale(h0_hat, v2), RVec(4))}, "s5");
    require(generic_rank(p) == 2, "s5: generic rank below 2");
    return p;
}

NormalizedPotential s4_case1(const RF& h1, const RF& h2, const RF& h10, const RF& h20) {
    require(!h1.is_zero() || !h2.is_zero(), "s4 case 1: h1 and h2 both vanish");
    RVec v1 = {h1, h1, h2, kI * h2};
    return assemble({ColumnPair::kind_i(scale(h10, v1), scale(h20, v1))}, "s4_case1");
}

NormalizedPotential s4_case2(const RF& h1, const RF& h2, const RF& h10) {
    auto [v1, v2] = isotropic_pair_from_functions(h1, h2);
    return assemble({ColumnPair::kind_ii(scale(h10, v1))}, "s4_case2");
}

NormalizedPotential general_case1(std::size_t m, const std::vector<std::array<RF, 4>>& gens) {
    if (gens.size() + 2 != m) throw std::invalid_argument("general_case1: need m-2 generator sets");
    std::vector<ColumnPair> pairs;
    for (const auto& g : gens) pairs.push_back(ColumnPair::kind_i(g[0], g[1], g[2], g[3]));
    return assemble(pairs, "general_case1");
}

NormalizedPotential general_case2(std::size_t m, std::size_t l, const RF& h1, const RF& h2,
                                  const std::vector<std::pair<RF, RF>>& coeffs) {
    if (coeffs.size() + 2 != m || l < 3 || l > m) throw std::invalid_argument("general_case2: bad sizes");
    auto [v1, v2] = isotropic_pair_from_functions(h1, h2);
    std::vector<ColumnPair> pairs;
    for (std::size_t j = 3; j <= m; ++j) {
        const auto& [a, b] = coeffs[j - 3];
        if (j <= l) pairs.push_back(ColumnPair::kind_ii(add(scale(a, v1), scale(b, v2))));
        else pairs.push_back(ColumnPair::kind_i(scale(a, v2), scale(b, v2)));
    }
    return assemble(pairs, "general_case2");
}

NormalizedPotential general_case3(std::size_t m, const RF& h1, const RF& h2, const std::vector<std::pair<RF, RF>>& coeffs) {
    if (coeffs.size() + 2 != m) throw std::invalid_argument("general_case3: bad sizes");
    auto [v1, v2] = isotropic_pair_from_functions(h1, h2);
    std::vector<ColumnPair> pairs;
    for (const auto& [a, b] : coeffs) pairs.push_back(ColumnPair::kind_ii(add(scale(a, v1), scale(b, v2))));
    return assemble(pairs, "general_case3");
}

NormalizedPotential example_potential() {
    const RF z = RF::z();
    const RF i = kI;
    return s6_case3(i / z, RF(), i * z, RF(), -z / RF(2));
}

RF random_rational(std::mt19937_64& rng, int max_deg, bool allow_pole) {
    std::uniform_int_distribution<long> coef(-3, 3);
    std::uniform_int_distribution<int> deg(0, max_deg);
    auto poly = [&](int d) {
        std::vector<QI> c;
        for (int k = 0; k <= d; ++k) c.emplace_back(mpq_class(coef(rng)), mpq_class(coef(rng)));
        return QPoly(c);
    };
    QPoly num = poly(deg(rng));
    while (num.is_zero()) num = poly(deg(rng));
    if (allow_pole && std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
        QPoly den = QPoly::z() - QPoly(QI(mpq_class(coef(rng)), mpq_class(coef(rng))));
        return RF(num, den);
    }
    return RF(num);
}

NormalizedPotential random_potential(std::size_t m, int type, std::mt19937_64& rng) {
    if (m < 3 || type < 1 || type > static_cast<int>(m) - 1) throw std::invalid_argument("random_potential: type out of range");
    auto nonconst = [&] {
        RF f = random_rational(rng);
        while (f.is_constant()) f = random_rational(rng);
        return f;
    };
    std::vector<ColumnPair> pairs;
    if (type == 1) {
        for (std::size_t j = 3; j <= m; ++j)
            pairs.push_back(ColumnPair::kind_i(random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng)));
    } else {
        auto [v1, v2] = isotropic_pair_from_functions(nonconst(), random_rational(rng));
        const std::size_t n_ii = static_cast<std::size_t>(type - 1);
        for (std::size_t p = 0; p < m - 2; ++p) {
            if (p < n_ii)
                pairs.push_back(ColumnPair::kind_ii(add(scale(random_rational(rng), v1), scale(random_rational(rng), v2))));
            else
                pairs.push_back(ColumnPair::kind_i(scale(random_rational(rng), v2), scale(random_rational(rng), v2)));
        }
    }
    return assemble(pairs);
}

}  // namespace wll
