#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

namespace iwasawa {

/** Finite group stored as a multiplication table; the identity is element 0. */
struct FiniteGroup {
    int order = 0;
    std::vector<int> table;  // table[a * order + b] = a*b
    int exponent = 1;
    std::vector<int> inverse;
    std::vector<int> element_order;

    int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * order + b]; }
    int pow(int a, long long e) const;
    bool is_abelian() const;
    bool is_p_group(long long p) const;
};

FiniteGroup group_from_table(const std::vector<std::vector<int>>& rows);
/** Permutations are image lists on {0..n-1}; the closure is enumerated breadth first. */
FiniteGroup group_from_permutations(const std::vector<std::vector<int>>& generators);
/** Accepts {"order", "table"} or {"perm_gens": [[cycles], ...]}. */
FiniteGroup load_group(const nlohmann::json& spec);

struct ConjugacyClasses {
    std::vector<std::vector<int>> classes;  // ordered by smallest member
    std::vector<int> representatives;
    std::vector<int> sizes;
    std::vector<int> class_of;  // element -> class index
    std::vector<int> inverse_class;

    int count() const { return static_cast<int>(classes.size()); }
};

ConjugacyClasses conjugacy_classes(const FiniteGroup& g);

/** Automorphism of H by which the generator of Z_p acts. */
struct GammaAction {
    std::vector<int> image;
    long long p = 0;
    long long action_order = 1;
    int n0 = 0;

    int apply(int h) const { return image[h]; }
    int apply_power(int h, long long k) const;
};

GammaAction make_gamma_action(const FiniteGroup& g, const std::vector<int>& image, long long p);
GammaAction identity_action(const FiniteGroup& g, long long p);
/** Accepts {"images": [...]}. */
GammaAction load_gamma_action(const FiniteGroup& g, const nlohmann::json& spec, long long p);

nlohmann::json group_to_json(const FiniteGroup& g);

}  // namespace iwasawa
