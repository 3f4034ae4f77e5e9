#pragma once

// Small groups with a p-power automorphism, built directly as multiplication tables.

#include <functional>
#include <string>
#include <vector>

#include "iwasawa/group.hpp"
#include "iwasawa/numtheory.hpp"

namespace corpus {

using iwasawa::FiniteGroup;
using iwasawa::GammaAction;

using MulFn = std::function<int(int, int)>;
using MapFn = std::function<int(int)>;

inline FiniteGroup from_rule(int n, const MulFn& mul) {
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) rows[a][b] = mul(a, b);
    return iwasawa::group_from_table(rows);
}

inline std::vector<int> images(int n, const MapFn& f) {
    std::vector<int> img(n);
    for (int x = 0; x < n; ++x) img[x] = f(x);
    return img;
}

inline FiniteGroup cyclic(int n) {
    return from_rule(n, [n](int a, int b) { return (a + b) % n; });
}

inline std::vector<int> power_map(int n, int k) {
    return images(n, [n, k](int x) { return static_cast<int>(static_cast<long long>(x) * k % n); });
}

// C_n x| C_k with y x y^-1 = x^r; element (x, y) stored as y*n + x.
inline FiniteGroup metacyclic(int n, int k, int r) {
    std::vector<int> rp(k, 1);
    for (int i = 1; i < k; ++i) rp[i] = rp[i - 1] * r % n;
    return from_rule(n * k, [=](int a, int b) {
        int x = a % n, y = a / n, x2 = b % n, y2 = b / n;
        return ((y + y2) % k) * n + (x + rp[y] * x2) % n;
    });
}

// Heisenberg group mod p: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
inline FiniteGroup heisenberg(int p) {
    return from_rule(p * p * p, [p](int u, int v) {
        int a = u / (p * p), b = u / p % p, c = u % p;
        int a2 = v / (p * p), b2 = v / p % p, c2 = v % p;
        return ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p;
    });
}

// (a,b,c) -> (a, a+b, c + a(a-1)/2), an outer automorphism of order p.
inline std::vector<int> heisenberg_shear(int p) {
    return images(p * p * p, [p](int u) {
        int a = u / (p * p), b = u / p % p, c = u % p;
        return a * p * p + ((a + b) % p) * p + (c + a * (a - 1) / 2) % p;
    });
}

inline FiniteGroup elementary_abelian2(int rank) {
    return from_rule(1 << rank, [](int a, int b) { return a ^ b; });
}

// Multiplication by the class of x in F_2[x]/(modulus) on the additive group.
inline std::vector<int> f2_multiply_by_x(int rank, int modulus) {
    return images(1 << rank, [rank, modulus](int v) {
        int w = v << 1;
        if (w & (1 << rank)) w ^= modulus;
        return w;
    });
}

inline std::vector<int> rotate_coordinates(int rank) {
    return images(1 << rank, [rank](int v) { return ((v << 1) | (v >> (rank - 1))) & ((1 << rank) - 1); });
}

// Q_8 as (sign, unit) with unit in {1, i, j, k}; index = sign*4 + unit.
inline FiniteGroup quaternion8() {
    // unit product table: (unit, sign) of u*v
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    return from_rule(8, [](int a, int b) {
        int sa = a / 4, ua = a % 4, sb = b / 4, ub = b % 4;
        return ((sa + sb + sign[ua][ub]) % 2) * 4 + unit[ua][ub];
    });
}

inline std::vector<int> quaternion_cycle() {
    return images(8, [](int x) { return (x / 4) * 4 + (x % 4 == 0 ? 0 : x % 4 % 3 + 1); });
}

inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    int n = h.order;
    return from_rule(g.order * n, [&](int a, int b) { return g.mul(a / n, b / n) * n + h.mul(a % n, b % n); });
}

inline std::vector<int> product_map(const std::vector<int>& f, const std::vector<int>& k) {
    int n = static_cast<int>(k.size());
    return images(static_cast<int>(f.size()) * n, [&](int x) { return f[x / n] * n + k[x % n]; });
}

inline std::vector<int> identity_map(int n) {
    return images(n, [](int x) { return x; });
}

inline std::vector<int> inner(const FiniteGroup& g, int by) {
    return images(g.order, [&](int x) { return g.mul(g.mul(by, x), g.inverse[by]); });
}

// First element whose order is exactly k.
inline int element_of_order(const FiniteGroup& g, int k) {
    for (int x = 0; x < g.order; ++x)
        if (g.element_order[x] == k) return x;
    return 0;
}

struct Entry {
    std::string name;
    FiniteGroup group;
    std::vector<int> gamma;
    long long p;
};

inline std::vector<Entry> build() {
    std::vector<Entry> out;
    auto add_cyclic = [&](const std::string& name, int n, int k, long long p) {
        out.push_back({name, cyclic(n), power_map(n, k), p});
    };
    add_cyclic("C7 x->x^2", 7, 2, 3);
    add_cyclic("C9 x->x^4", 9, 4, 3);
    add_cyclic("C13 x->x^3", 13, 3, 3);
    add_cyclic("C19 x->x^7", 19, 7, 3);
    add_cyclic("C27 x->x^4", 27, 4, 3);
    add_cyclic("C11 x->x^3", 11, 3, 5);
    add_cyclic("C25 x->x^6", 25, 6, 5);
    add_cyclic("C29 x->x^16", 29, 16, 7);
    add_cyclic("C49 x->x^8", 49, 8, 7);
    add_cyclic("C43 x->x^4", 43, 4, 7);  // 4 has order 7 mod 43
    {
        auto g = direct_product(cyclic(3), cyclic(3));
        out.push_back({"C3xC3 shear", g, images(9, [](int x) { return (x / 3) * 3 + (x / 3 + x % 3) % 3; }), 3});
    }
    out.push_back({"Heisenberg 27 shear", heisenberg(3), heisenberg_shear(3), 3});
    out.push_back({"Heisenberg 125 shear", heisenberg(5), heisenberg_shear(5), 5});
    out.push_back({"V4 order 3", elementary_abelian2(2), f2_multiply_by_x(2, 0b111), 3});
    out.push_back({"C2^3 rotate", elementary_abelian2(3), rotate_coordinates(3), 3});
    out.push_back({"C2^3 Singer", elementary_abelian2(3), f2_multiply_by_x(3, 0b1011), 7});
    {
        auto s3 = metacyclic(3, 2, 2);
        out.push_back({"S3 inner", s3, inner(s3, element_of_order(s3, 3)), 3});
    }
    out.push_back({"Q8 i->j->k", quaternion8(), quaternion_cycle(), 3});
    {
        auto dic3 = metacyclic(3, 4, 2);
        out.push_back({"Dic3 inner", dic3, inner(dic3, element_of_order(dic3, 3)), 3});
    }
    {
        auto f21 = metacyclic(7, 3, 2);
        out.push_back({"F21 inner p=3", f21, inner(f21, element_of_order(f21, 3)), 3});
        out.push_back({"F21 inner p=7", f21, inner(f21, element_of_order(f21, 7)), 7});
    }
    {
        auto d5 = metacyclic(5, 2, 4);
        out.push_back({"D5 inner", d5, inner(d5, element_of_order(d5, 5)), 5});
        auto f20 = metacyclic(5, 4, 2);
        out.push_back({"F20 inner", f20, inner(f20, element_of_order(f20, 5)), 5});
        auto dic5 = metacyclic(5, 4, 4);
        out.push_back({"Dic5 inner", dic5, inner(dic5, element_of_order(dic5, 5)), 5});
    }
    {
        auto g = direct_product(cyclic(4), cyclic(3));
        out.push_back({"C4xC3 trivial p=3", g, identity_map(12), 3});
        auto s3 = metacyclic(3, 2, 2);
        auto h = direct_product(s3, cyclic(5));
        out.push_back({"S3xC5 trivial p=5", h, identity_map(30), 5});
        out.push_back({"C7 trivial p=3", cyclic(7), identity_map(7), 3});
        auto c7c3 = direct_product(cyclic(7), cyclic(3));
        out.push_back({"C7xC3 x->x^2 p=3", c7c3, product_map(power_map(7, 2), identity_map(3)), 3});
    }
    return out;
}

}  // namespace corpus
