#pragma once
// Canonical elements of so(1,2m-1,C) for SO+(1,2m-1)/SO+(1,3)xSO(2m-4) and
// the odd parts of their gradings.

#include <optional>
#include <string>
#include <vector>

#include "wll/lie_algebra.hpp"

namespace wll {

enum class Family { A, B, C, Cp, D, Dp, E, F, Fp, G, Gp };

std::string family_name(Family f);

struct CanonicalElement {
    std::size_t m = 0;
    std::vector<long> coeffs;  // (n_1, ..., n_m) over xi_hat_1..xi_hat_m
    Family family = Family::A;
    int param1 = 0;  // l for B, C, D; k for G
    int param2 = 0;  // t for D
    int height = 0;

    TorusElement torus() const { return TorusElement{coeffs}; }
    std::string label() const;
};

std::vector<CanonicalElement> enumerate_canonical(std::size_t m);

// Independent oracle: exhaustive search over sorted tuples, then placement on the xi_hat basis.
std::vector<std::vector<long>> brute_force_canonical(std::size_t m);

// Sorted-order filter (steps in {0,1}, last entry 0, bounded max, parity count).
bool passes_canonical_filter(const std::vector<long>& sorted_desc, std::size_t m);

// Root vector generators of a nilpotent-span template; r is 1 or 2 and j >= 3.
struct RootRef {
    RootKind kind;
    std::size_t r, j;
};

enum class NilTemplate { a, b, c, cp, d, e, f, g, gp, h, hp };

std::string template_name(NilTemplate t);

// Template generators. For d/e, t_split = 0 gives the literal reading without a
// second split index (F_2j, resp. F_1j, for every j).
std::vector<RootRef> template_generators(NilTemplate tpl, std::size_t m, int l = 0, int t_split = 0);

std::vector<Mat<QI>> realize(const std::vector<RootRef>& gens, std::size_t m);

// Applies a permutation of blocks 3..m (perm[k] is the image of block k+3).
std::vector<RootRef> permute_blocks(const std::vector<RootRef>& gens, const std::vector<std::size_t>& perm);

struct TemplateMatch {
    NilTemplate tpl;
    int l = 0, t = 0;
    std::vector<std::size_t> perm;  // image of blocks 3..m
};

struct NilpotentBasis {
    CanonicalElement canonical;
    std::vector<Mat<QI>> odd_part_basis;
    std::vector<Mat<QI>> positive_part_basis;
    std::optional<TemplateMatch> match;
};

NilpotentBasis nilpotent_basis(const CanonicalElement& xi);

// Searches template parameters and block permutations of 3..m for exact span equality.
std::optional<TemplateMatch> match_template(NilTemplate tpl, const std::vector<Mat<QI>>& odd_part, std::size_t m);

NilTemplate template_for(Family f);

struct ExpPiResult {
    std::vector<int> diagonal;  // exp(pi xi) is diagonal with entries +-1
    bool matches_d = false;
    bool matches_minus_d = false;
    bool ok() const { return matches_d || matches_minus_d; }
};

ExpPiResult exp_pi_check(const std::vector<long>& coeffs);

}  // namespace wll
