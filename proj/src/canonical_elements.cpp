#include "wll/canonical_elements.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace wll {

std::string family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::Cp: return "C'";
        case Family::D: return "D";
        case Family::Dp: return "D'";
        case Family::E: return "E";
        case Family::F: return "F";
        case Family::Fp: return "F'";
        case Family::G: return "G";
        case Family::Gp: return "G'";
    }
    return "?";
}

std::string CanonicalElement::label() const {
    std::string s = family_name(family);
    if (family == Family::D || family == Family::Dp) return s + "_{" + std::to_string(param1) + "," + std::to_string(param2) + "}";
    if (param1 != 0) return s + "_" + std::to_string(param1);
    return s;
}

namespace {

CanonicalElement make(std::size_t m, Family f, std::vector<long> c, int p1 = 0, int p2 = 0) {
    CanonicalElement e;
    e.m = m;
    e.coeffs = std::move(c);
    e.family = f;
    e.param1 = p1;
    e.param2 = p2;
    return e;
}

// Fills blocks [from, to] (1-based, inclusive) with value v.
void fill(std::vector<long>& c, std::size_t from, std::size_t to, long v) {
    for (std::size_t j = from; j <= to; ++j) c[j - 1] = v;
}

}  // namespace

std::vector<CanonicalElement> enumerate_canonical(std::size_t m) {
    if (m < 3) throw std::invalid_argument("enumerate_canonical: need m >= 3");
    std::vector<CanonicalElement> out;
    const std::vector<long> zero(m, 0);

    auto a = zero;
    a[0] = a[1] = 1;
    out.push_back(make(m, Family::A, a));

    for (std::size_t l = 3; l + 1 <= m; ++l) {
        auto c = a;
        fill(c, 3, l, 2);
        out.push_back(make(m, Family::B, c, static_cast<int>(l)));
    }
    for (std::size_t l = 3; l + 1 <= m; ++l) {
        for (Family f : {Family::C, Family::Cp}) {
            auto c = zero;
            c[0] = f == Family::C ? 3 : 1;
            c[1] = f == Family::C ? 1 : 3;
            fill(c, 3, l, 2);
            out.push_back(make(m, f, c, static_cast<int>(l)));
        }
    }
    for (std::size_t l = 3; l + 1 <= m; ++l)
        for (std::size_t t = l + 1; t + 1 <= m; ++t)
            for (Family f : {Family::D, Family::Dp}) {
                auto c = zero;
                c[0] = f == Family::D ? 3 : 1;
                c[1] = f == Family::D ? 1 : 3;
                fill(c, 3, l, 4);
                fill(c, l + 1, t, 2);
                out.push_back(make(m, f, c, static_cast<int>(l), static_cast<int>(t)));
            }

    auto e = zero;
    fill(e, 3, m, 1);
    out.push_back(make(m, Family::E, e));
    for (Family f : {Family::F, Family::Fp}) {
        auto c = e;
        c[f == Family::F ? 0 : 1] = 2;
        out.push_back(make(m, f, c));
    }
    for (std::size_t k = 3; k + 1 <= m; ++k)
        for (Family f : {Family::G, Family::Gp}) {
            auto c = e;
            c[f == Family::G ? 0 : 1] = 2;
            fill(c, 3, k, 3);
            out.push_back(make(m, f, c, static_cast<int>(k)));
        }

    for (auto& x : out) x.height = grade(x.torus()).height;
    return out;
}

bool passes_canonical_filter(const std::vector<long>& s, std::size_t m) {
    if (s.size() != m || m == 0 || s.back() != 0) return false;
    const long cap = std::max<long>(static_cast<long>(m) - 1, 4);
    if (s.front() > cap) return false;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const long step = s[k] - s[k + 1];
        if (step != 0 && step != 1) return false;
    }
    const auto odd = std::count_if(s.begin(), s.end(), [](long v) { return v % 2 != 0; });
    const auto even = static_cast<long>(m) - odd;
    return odd == 2 || even == 2;
}

std::vector<std::vector<long>> brute_force_canonical(std::size_t m) {
    if (m < 3 || m > 10) throw std::out_of_range("brute_force_canonical: m must lie in [3, 10]");
    std::set<std::vector<long>> found;
    // Non-increasing tuples ending in 0 with unit steps are determined by the step pattern.
    const std::size_t steps = m - 1;
    for (unsigned long mask = 0; mask < (1UL << steps); ++mask) {
        std::vector<long> s(m, 0);
        for (std::size_t k = m - 1; k-- > 0;) s[k] = s[k + 1] + static_cast<long>((mask >> k) & 1UL);
        if (!passes_canonical_filter(s, m)) continue;
        for (int parity = 0; parity < 2; ++parity) {
            std::vector<long> cls, rest;
            for (long v : s) ((v % 2 != 0) == (parity == 1) ? cls : rest).push_back(v);
            if (cls.size() != 2) continue;
            std::vector<long> first = {cls[0], cls[1]};
            first.insert(first.end(), rest.begin(), rest.end());
            found.insert(first);
            std::swap(first[0], first[1]);
            found.insert(first);
        }
    }
    return {found.begin(), found.end()};
}

std::string template_name(NilTemplate t) {
    switch (t) {
        case NilTemplate::a: return "a";
        case NilTemplate::b: return "b";
        case NilTemplate::c: return "c";
        case NilTemplate::cp: return "c'";
        case NilTemplate::d: return "d";
        case NilTemplate::e: return "e";
        case NilTemplate::f: return "f";
        case NilTemplate::g: return "g";
        case NilTemplate::gp: return "g'";
        case NilTemplate::h: return "h";
        case NilTemplate::hp: return "h'";
    }
    return "?";
}

NilTemplate template_for(Family f) {
    switch (f) {
        case Family::A: return NilTemplate::a;
        case Family::B: return NilTemplate::b;
        case Family::C: return NilTemplate::c;
        case Family::Cp: return NilTemplate::cp;
        case Family::D: return NilTemplate::d;
        case Family::Dp: return NilTemplate::e;
        case Family::E: return NilTemplate::f;
        case Family::F: return NilTemplate::g;
        case Family::Fp: return NilTemplate::gp;
        case Family::G: return NilTemplate::h;
        case Family::Gp: return NilTemplate::hp;
    }
    throw std::logic_error("unreachable");
}

std::vector<RootRef> template_generators(NilTemplate tpl, std::size_t m, int l, int t_split) {
    std::vector<RootRef> g;
    const std::size_t L = static_cast<std::size_t>(std::max(l, 0));
    const std::size_t T = t_split > 0 ? static_cast<std::size_t>(t_split) : m;
    for (std::size_t r = 1; r <= 2; ++r)
        for (std::size_t j = 3; j <= m; ++j) g.push_back({RootKind::E, r, j});
    // For row r: F on blocks 3..cut, H on blocks cut+1..m.
    auto split = [&](std::size_t r, std::size_t cut, bool f_first) {
        for (std::size_t j = 3; j <= m; ++j) {
            const bool low = j <= cut;
            g.push_back({low == f_first ? RootKind::F : RootKind::H, r, j});
        }
    };
    switch (tpl) {
        case NilTemplate::a: split(1, m, false); split(2, m, false); break;
        case NilTemplate::b: split(1, L, false); split(2, L, false); break;
        case NilTemplate::c: split(1, m, false); split(2, L, false); break;
        case NilTemplate::cp: split(2, m, false); split(1, L, false); break;
        case NilTemplate::d: split(1, L, true); split(2, T, true); break;
        case NilTemplate::e: split(2, L, true); split(1, T, true); break;
        case NilTemplate::f: split(1, m, true); split(2, m, true); break;
        case NilTemplate::g: split(1, m, false); split(2, m, true); break;
        case NilTemplate::gp: split(2, m, false); split(1, m, true); break;
        case NilTemplate::h: split(1, L, true); split(2, m, true); break;
        case NilTemplate::hp: split(2, L, true); split(1, m, true); break;
    }
    return g;
}

std::vector<Mat<QI>> realize(const std::vector<RootRef>& gens, std::size_t m) {
    std::vector<Mat<QI>> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back(basis_element<QI>(g.kind, g.r, g.j, m));
    return out;
}

std::vector<RootRef> permute_blocks(const std::vector<RootRef>& gens, const std::vector<std::size_t>& perm) {
    std::vector<RootRef> out = gens;
    for (auto& g : out) g.j = perm.at(g.j - 3);
    return out;
}

namespace {

bool takes_l(NilTemplate t) {
    return t == NilTemplate::b || t == NilTemplate::c || t == NilTemplate::cp || t == NilTemplate::d ||
           t == NilTemplate::e || t == NilTemplate::h || t == NilTemplate::hp;
}

bool takes_t(NilTemplate t) { return t == NilTemplate::d || t == NilTemplate::e; }

}  // namespace

std::optional<TemplateMatch> match_template(NilTemplate tpl, const std::vector<Mat<QI>>& odd_part, std::size_t m) {
    std::vector<std::pair<int, int>> params;
    if (!takes_l(tpl)) {
        params.push_back({0, 0});
    } else {
        for (int l = 3; l <= static_cast<int>(m); ++l) {
            if (!takes_t(tpl)) {
                params.push_back({l, 0});
                continue;
            }
            for (int t = l + 1; t <= static_cast<int>(m); ++t) params.push_back({l, t});
        }
    }
    std::vector<std::size_t> perm(m - 2);
    std::iota(perm.begin(), perm.end(), 3);
    do {
        for (auto [l, t] : params) {
            auto gens = permute_blocks(template_generators(tpl, m, l, t), perm);
            if (same_span(realize(gens, m), odd_part)) return TemplateMatch{tpl, l, t, perm};
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

NilpotentBasis nilpotent_basis(const CanonicalElement& xi) {
    NilpotentBasis nb;
    nb.canonical = xi;
    const auto g = grade(xi.torus());
    for (const auto& [j, basis] : g.spaces) {
        if (j <= 0) continue;
        nb.positive_part_basis.insert(nb.positive_part_basis.end(), basis.begin(), basis.end());
        if (j % 2 != 0) nb.odd_part_basis.insert(nb.odd_part_basis.end(), basis.begin(), basis.end());
    }
    nb.match = match_template(template_for(xi.family), nb.odd_part_basis, xi.m);
    if (!nb.match) throw std::runtime_error("nilpotent_basis: odd part of " + xi.label() + " does not match template " + template_name(template_for(xi.family)));
    return nb;
}

ExpPiResult exp_pi_check(const std::vector<long>& coeffs) {
    ExpPiResult r;
    const std::size_t m = coeffs.size();
    // Every block of pi*xi exponentiates to (-1)^{n_k} times the 2x2 identity.
    for (long n : coeffs) {
        const int s = n % 2 == 0 ? 1 : -1;
        r.diagonal.push_back(s);
        r.diagonal.push_back(s);
    }
    const auto minus = static_cast<std::size_t>(std::count(r.diagonal.begin(), r.diagonal.end(), -1));
    r.matches_d = minus == 4;
    r.matches_minus_d = minus == 2 * m - 4;
    return r;
}

}  // namespace wll
