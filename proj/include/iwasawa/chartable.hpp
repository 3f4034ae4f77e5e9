#pragma once

#include <string>
#include <vector>

#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/group.hpp"

namespace iwasawa {

struct Character {
    int degree = 0;
    std::vector<CycloElement> values;  // one per conjugacy class
};

struct CharacterTable {
    int m = 1;  // exponent of H; all values lie in Q(zeta_m)
    long long modular_prime = 0;
    ConjugacyClasses classes;
    std::vector<Character> chars;
    std::vector<std::vector<int>> power_map;  // power_map[k][i] = class of rep_k^i, 0 <= i < m

    int size() const { return static_cast<int>(chars.size()); }
    /** Row whose values equal `values`, or -1. */
    int find(const std::vector<CycloElement>& values) const;
    /** Row permutation eta -> sigma_a(eta), computed through power maps. */
    std::vector<int> galois_permutation(long long a) const;
    /** Row permutation eta -> (h -> eta(gamma(h))). */
    std::vector<int> gamma_permutation(const GammaAction& act, const FiniteGroup& g) const;
};

struct ChartableOptions {
    long long prime_search_bound = 2000000000LL;
};

/** Dixon-Schneider over F_l with l = 1 mod m, then an exact lift of eigenvalue multiplicities. */
CharacterTable character_table(const FiniteGroup& g, const ChartableOptions& opts = {});

/** Row index of h -> eta(gamma(h)). */
int gamma_act(const CharacterTable& t, int eta, const GammaAction& act, const FiniteGroup& g);
/** Row index of sigma_a(eta), applying zeta_m -> zeta_m^a to every value. */
int galois_act(const CharacterTable& t, int eta, long long a);

struct OrthogonalityReport {
    bool rows = false;
    bool columns = false;
    bool degree_sum = false;
    bool ok() const { return rows && columns && degree_sum; }
};

/**
 * Exact orthogonality. Sums are algebraic integers bounded by |H|^2 in every complex embedding,
 * so vanishing under all phi(m) reductions modulo a split prime above that bound is exact.
 */
OrthogonalityReport check_orthogonality(const CharacterTable& t, const FiniteGroup& g);

/** Same relations evaluated with CycloElement arithmetic; quadratic in class count, for small tables. */
OrthogonalityReport check_orthogonality_direct(const CharacterTable& t, const FiniteGroup& g);

}  // namespace iwasawa
