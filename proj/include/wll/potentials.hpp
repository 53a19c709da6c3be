#pragma once
// Normalized potentials eta = lambda^{-1} (0, B; -B^t I_{1,3}, 0) dz with B a
// 4 x (2m-4) matrix of rational functions, built from column pairs.

#include <array>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wll/minkowski.hpp"
#include "wll/rational_function.hpp"

namespace wll {

using RF = RationalFunction;
using RVec = std::vector<RF>;

enum class PairKind { i, ii };

std::string kind_name(PairKind k);

// A 4x2 block (v, v_hat). Kind i: ((a, a_hat), (a, a_hat), (b, b_hat), (ib, ib_hat)).
// Kind ii: (w, i w) for an arbitrary 4-vector w.
class ColumnPair {
public:
    static ColumnPair kind_i(RF h1, RF h1_hat, RF h3, RF h3_hat);
    static ColumnPair kind_ii(RF h1, RF h2, RF h3, RF h4);
    static ColumnPair kind_ii(const RVec& w) { return kind_ii(w.at(0), w.at(1), w.at(2), w.at(3)); }
    // Kind i from two vectors of the (a, a, b, ib) shape; throws if the shape fails.
    static ColumnPair kind_i(const RVec& v, const RVec& v_hat);
    static ColumnPair from_functions(PairKind kind, const std::map<std::string, RF>& fns);

    PairKind kind() const { return kind_; }
    const std::map<std::string, RF>& functions() const { return fns_; }
    RVec v() const;
    RVec v_hat() const;

private:
    PairKind kind_ = PairKind::i;
    std::map<std::string, RF> fns_;
};

// Generator names: kind i {h1, h1_hat, h3, h3_hat}; kind ii {h1, h2, h3, h4}.
std::vector<std::string> generator_names(PairKind k);

// Which templates a realized pair fits (possibly both).
bool fits_kind_i(const RVec& v, const RVec& v_hat);
bool fits_kind_ii(const RVec& v, const RVec& v_hat);

RF bilinear13(const RVec& a, const RVec& b);  // a^t I_{1,3} b

struct IsotropyViolation {
    std::size_t j = 0, l = 0;  // pair indices in 3..m
    std::string condition;     // "v_j.v_l", "v_j.vhat_l" or "vhat_j.vhat_l"
    RF value;
};

class IsotropyError : public std::runtime_error {
public:
    explicit IsotropyError(IsotropyViolation v);
    const IsotropyViolation& violation() const { return v_; }

private:
    IsotropyViolation v_;
};

class DegeneratePotential : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NormalizedPotential {
    std::size_t m = 0;
    std::vector<ColumnPair> pairs;
    RMat b1;  // 4 x (2m-4)
    int type_tag = 0;
    std::string label;
    std::vector<Pole> poles;

    RMat eta_minus1() const;  // (2m)x(2m) coefficient of lambda^{-1} dz
    bool is_polynomial() const;
};

RMat realize_b1(const std::vector<ColumnPair>& pairs);
std::optional<IsotropyViolation> check_isotropy(const std::vector<ColumnPair>& pairs);

// Realizes B, checks isotropy exactly, sets the type tag and records poles.
NormalizedPotential assemble(const std::vector<ColumnPair>& pairs, const std::string& label = "");

std::size_t generic_rank(const NormalizedPotential& p);
std::size_t generic_rank(const RMat& b);
inline bool is_s_willmore(const NormalizedPotential& p) { return generic_rank(p) == 1; }

// Pair of mutually orthogonal isotropic 4-vectors determined by (h1, h2).
std::pair<RVec, RVec> isotropic_pair_from_functions(const RF& h1, const RF& h2);

RVec scale(const RF& f, const RVec& v);
RVec add(const RVec& a, const RVec& b);

// S^6 (m = 4) cases.
NormalizedPotential s6_case1(const RF& h13, const RF& h33, const RF& h20, const RF& h30, const RF& h40);
NormalizedPotential s6_case2(const RF& h1, const RF& h2, const RF& h10, const RF& h30_hat, const RF& h40_hat);
NormalizedPotential s6_case3(const RF& h1, const RF& h2, const RF& h10, const RF& h30, const RF& h40);

// S^5 corollary: fourth column zero.
NormalizedPotential s5_builder(const RF& h0, const RF& h1, const RF& h2, const RF& h0_hat);

// S^4 (m = 3) corollary cases.
NormalizedPotential s4_case1(const RF& h1, const RF& h2, const RF& h10, const RF& h20);
NormalizedPotential s4_case2(const RF& h1, const RF& h2, const RF& h10);

// General-m trichotomy. Case 2 uses v_j = -i vhat_j = h_j0 v1 + ht_j0 v2 for the
// first `l - 2` pairs and (ht_j0 v2, hhat_j0 v2) afterwards; case 3 uses the first form throughout.
NormalizedPotential general_case1(std::size_t m, const std::vector<std::array<RF, 4>>& kind_i_generators);
NormalizedPotential general_case2(std::size_t m, std::size_t l, const RF& h1, const RF& h2,
                                  const std::vector<std::pair<RF, RF>>& coeffs);
NormalizedPotential general_case3(std::size_t m, const RF& h1, const RF& h2, const std::vector<std::pair<RF, RF>>& coeffs);

// The explicit S^6 example potential.
NormalizedPotential example_potential();

// Random valid potential of the given type (1 + number of kind-ii pairs).
NormalizedPotential random_potential(std::size_t m, int type, std::mt19937_64& rng);
RF random_rational(std::mt19937_64& rng, int max_deg = 2, bool allow_pole = true);

}  // namespace wll
