#pragma once

// Brute-force oracles shared by the unit tests and the acceptance binary.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "iwasawa/chartable.hpp"
#include "iwasawa/decomposition.hpp"

namespace iwasawa::oracles {

using cd = std::complex<double>;

inline cd evaluate(const CycloElement& x) {
    cd z = std::polar(1.0, 2 * std::numbers::pi / x.modulus()), acc = 0, zp = 1;
    for (const auto& c : x.coeffs()) {
        acc += c.get_d() * zp;
        zp *= z;
    }
    return acc;
}

// Characters from the isotypic projectors of the regular representation, found as eigenspaces
// of a random Hermitian central element.
inline std::vector<std::vector<cd>> regular_representation_oracle(const FiniteGroup& g, const ConjugacyClasses& cc) {
    const int n = g.order;
    auto regular = [&](int h) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
        for (int x = 0; x < n; ++x) m(g.mul(h, x), x) = 1;
        return m;
    };
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1, 1);
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < cc.count(); ++k) {
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
        for (int h : cc.classes[k]) sum += regular(h);
        Eigen::MatrixXcd adj = sum.adjoint();
        z += dist(rng) * (sum + adj) + cd(0, dist(rng)) * (sum - adj);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(z);
    std::vector<std::vector<cd>> out;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && std::abs(es.eigenvalues()(j) - es.eigenvalues()(i)) < 1e-7) ++j;
        Eigen::MatrixXcd basis = es.eigenvectors().middleCols(i, j - i);
        Eigen::MatrixXcd proj = basis * basis.adjoint();
        double deg = std::sqrt(static_cast<double>(j - i));
        std::vector<cd> row;
        for (int k = 0; k < cc.count(); ++k) row.push_back((regular(cc.representatives[k]) * proj).trace() / deg);
        out.push_back(row);
        i = j;
    }
    return out;
}

/** Invariants of the component of the character j -> zeta_n^(j x) of C_n, from exponent arithmetic alone. */
struct ExponentOracle {
    int w = 0, v = 0, e = 0, f = 0, base_degree = 0, eta_field_degree = 0, members = 0;
    i64 tau = 0;
};

inline ExponentOracle exponent_oracle(i64 n, i64 k, i64 p, i64 j) {
    const auto galois = local_galois_group(n, p);
    const auto elements = galois.elements();
    auto inertia = galois.inertia();
    std::vector<i64> gamma_orbit{mod_norm(j, n)};
    for (i64 x = mul_mod(j, k, n); x != gamma_orbit[0]; x = mul_mod(x, k, n)) gamma_orbit.push_back(x);

    ExponentOracle o;
    o.w = static_cast<int>(gamma_orbit.size());
    auto in_galois_orbit = [&](i64 x) {
        for (i64 a : elements)
            if (mul_mod(a, j, n) == x) return true;
        return false;
    };
    o.v = 1;
    while (!in_galois_orbit(gamma_orbit[o.v % o.w])) ++o.v;
    for (i64 a : elements)
        if (mul_mod(a, j, n) == gamma_orbit[o.v % o.w]) {
            o.tau = a;
            break;
        }
    std::set<i64> joint;
    std::vector<i64> stab_eta, stab_chi;
    for (i64 a : elements) {
        for (i64 x : gamma_orbit) joint.insert(mul_mod(a, x, n));
        if (mul_mod(a, j, n) == mod_norm(j, n)) stab_eta.push_back(a);
        if (std::find(gamma_orbit.begin(), gamma_orbit.end(), mul_mod(a, j, n)) != gamma_orbit.end())
            stab_chi.push_back(a);
    }
    o.members = static_cast<int>(joint.size());
    // residue degree of a fixed field = index of (stabilizer * inertia)
    auto residue_degree = [&](const std::vector<i64>& stab) {
        std::set<i64> product;
        for (i64 a : stab)
            for (i64 b : inertia) product.insert(mul_mod(a, b, n));
        return static_cast<int>(elements.size() / product.size());
    };
    o.eta_field_degree = static_cast<int>(elements.size() / stab_eta.size());
    o.base_degree = static_cast<int>(elements.size() / stab_chi.size());
    o.f = residue_degree(stab_eta) / residue_degree(stab_chi);
    o.e = static_cast<int>(stab_chi.size() / stab_eta.size()) / o.f;
    return o;
}

/** Row of the character sending the generator 1 of C_n to zeta_n^j. */
inline int row_of_exponent(const CharacterTable& t, int n, int j) {
    const int generator_class = t.classes.class_of[1];
    for (int i = 0; i < t.size(); ++i)
        if (t.chars[i].values[generator_class] == CycloElement::root_power(t.m, static_cast<long long>(j) * t.m / n))
            return i;
    return -1;
}

}  // namespace iwasawa::oracles
