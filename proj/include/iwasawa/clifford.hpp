#pragma once

#include <string>
#include <vector>

#include "iwasawa/chartable.hpp"
#include "iwasawa/group.hpp"
#include "iwasawa/local_galois.hpp"

namespace iwasawa {

/**
 * gamma-action and local Galois action of Gal(Q_p(zeta_M)/F) on the rows of a character table,
 * with M = lcm(exponent of H, modulus of F). Permutations are precomputed once.
 */
class CharacterActions {
public:
    CharacterActions(const CharacterTable& table, const FiniteGroup& group, const GammaAction& action,
                     const LocalFieldSpec& base);

    const CharacterTable& table() const { return *table_; }
    const FiniteGroup& group() const { return *group_; }
    const GammaAction& action() const { return *action_; }
    /** The base field lifted to the ambient modulus. */
    const LocalFieldSpec& base() const { return base_; }
    i64 ambient() const { return base_.modulus(); }
    i64 prime() const { return base_.prime(); }

    int gamma(int eta) const { return gamma_perm_[eta]; }
    int gamma_power(int eta, long long k) const;
    /** Row of sigma_a(eta) for a in the stabilizer of the base field. */
    int galois(int eta, i64 a) const;
    /** Elements of Gal(Q_p(zeta_M)/F), sorted. */
    const std::vector<i64>& galois_elements() const { return base_.stabilizer; }
    /** All a in Gal(Q_p(zeta_M)/F) with sigma_a(from) = to, sorted. */
    std::vector<i64> translators(int from, int to) const;
    /** F(eta) as a subfield of Q_p(zeta_M). */
    LocalFieldSpec character_field(int eta) const;

private:
    const CharacterTable* table_;
    const FiniteGroup* group_;
    const GammaAction* action_;
    LocalFieldSpec base_;
    std::vector<int> gamma_perm_;
    std::vector<std::vector<int>> galois_perm_;  // parallel to base_.stabilizer
};

/** A joint (gamma, Galois) orbit on Irr(H); one per Wedderburn component of Q^F(G). */
struct ComponentOrbit {
    int representative = 0;               // smallest row in the orbit
    std::vector<int> members;             // sorted
    std::vector<int> gamma_orbit;         // gamma^i(eta) for 0 <= i < w
    std::vector<int> galois_orbit_reps;   // gamma^k(eta) for 0 <= k < v
    int w = 1;
    int v = 1;
    i64 tau = 1;  // smallest a mod M with sigma_a(eta) = gamma^v(eta)
};

struct ComponentInvariants {
    int w = 1;
    int v = 1;
    i64 tau = 1;
    LocalFieldSpec base;
    LocalFieldSpec field_chi;
    LocalFieldSpec field_eta;
    int e = 1;
    int f = 1;
    int eta_degree = 1;
    /** chi(1) = w * eta(1). */
    int chi_degree() const { return w * eta_degree; }
    /** (F_chi : F). */
    int base_degree() const;
};

std::vector<ComponentOrbit> enumerate_components(const CharacterActions& actions);
std::vector<ComponentOrbit> enumerate_components(const CharacterTable& table, const FiniteGroup& group,
                                                 const GammaAction& action, const LocalFieldSpec& base);

/** Throws InconsistentOrbit if w != v (F(eta):F_chi); that would indicate a bug. */
ComponentInvariants component_invariants(const CharacterActions& actions, const ComponentOrbit& orbit);

/**
 * Invariants over an intermediate field F_chi <= E <= F(eta): tau^E = tau^(E:F_chi),
 * v^E = v (E:F_chi), F_chi^E = E. Throws FieldOutOfRange otherwise.
 */
ComponentInvariants base_change(const ComponentInvariants& inv, const LocalFieldSpec& intermediate);

/** The maximal unramified subextension W = F(eta)^<tau^f> of F(eta)/F_chi. */
LocalFieldSpec unramified_part(const ComponentInvariants& inv);

/** Element of Q(zeta_m)[H] with exact coefficients, indexed by group elements. */
class GroupAlgebraElement {
public:
    GroupAlgebraElement() = default;
    GroupAlgebraElement(const FiniteGroup& group, int m);

    const std::vector<CycloElement>& coeffs() const { return c_; }
    CycloElement& operator[](int h) { return c_[h]; }
    const CycloElement& operator[](int h) const { return c_[h]; }

    GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
    bool operator==(const GroupAlgebraElement& o) const { return c_ == o.c_; }
    bool operator!=(const GroupAlgebraElement& o) const { return !(*this == o); }
    GroupAlgebraElement galois(long long a) const;
    bool is_zero() const;
    /** Commutes with every group element. */
    bool is_central() const;

    static GroupAlgebraElement identity(const FiniteGroup& group, int m);
    static GroupAlgebraElement basis(const FiniteGroup& group, int m, int h);

private:
    const FiniteGroup* group_ = nullptr;
    int m_ = 1;
    std::vector<CycloElement> c_;
};

/** e(eta) = eta(1)/|H| sum_h eta(h^-1) h. */
GroupAlgebraElement character_idempotent(const CharacterTable& table, const FiniteGroup& group, int eta);

struct ComponentIdempotents {
    GroupAlgebraElement e_eta;        // e(eta)
    GroupAlgebraElement epsilon_eta;  // sum over Gal(F(eta)/F)-conjugates of e(eta)
    GroupAlgebraElement e_chi;        // sum over the gamma-orbit
    GroupAlgebraElement epsilon_chi;  // sum over the whole joint orbit
};

ComponentIdempotents build_idempotents(const CharacterActions& actions, const ComponentOrbit& orbit);

std::string describe(const ComponentOrbit& orbit);

}  // namespace iwasawa
