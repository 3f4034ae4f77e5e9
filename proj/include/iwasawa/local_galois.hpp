#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iwasawa/numtheory.hpp"
#include "json.hpp"

namespace iwasawa {

/**
 * Gal(Q_p(zeta_m)/Q_p) inside (Z/m)^*. With m = m' p^t, an element is the CRT residue of
 * (p^k mod m', u mod p^t); the inertia subgroup is the set of elements = 1 mod m'.
 */
class LocalGaloisGroup {
public:
    LocalGaloisGroup() = default;
    LocalGaloisGroup(i64 m, i64 p);

    i64 modulus() const { return m_; }
    i64 prime() const { return p_; }
    i64 prime_to_p() const { return m_prime_; }
    i64 p_part() const { return p_power_; }
    int p_exponent() const { return t_; }
    /** ord_{m'}(p), the residue degree of Q_p(zeta_m). */
    i64 residue_degree() const { return f0_; }
    /** phi(p^t), the ramification index of Q_p(zeta_m). */
    i64 ramification_index() const { return e0_; }
    i64 order() const { return f0_ * e0_; }

    i64 element(i64 frobenius_power, i64 unit) const;
    i64 frobenius() const { return element(1, 1); }
    std::vector<i64> elements() const;
    std::vector<i64> inertia() const;

    bool contains(i64 a) const { return frobenius_exponent(a).has_value(); }
    /** k in [0, f0) with a = p^k mod m', if a is a unit lying in the group. */
    std::optional<i64> frobenius_exponent(i64 a) const;
    bool in_inertia(i64 a) const;
    i64 reduce(i64 a) const { return mod_norm(a, m_); }
    i64 mul(i64 a, i64 b) const { return mul_mod(a, b, m_); }
    i64 element_order(i64 a) const;

private:
    i64 m_ = 1, p_ = 3, m_prime_ = 1, p_power_ = 1;
    int t_ = 0;
    i64 f0_ = 1, e0_ = 1;
};

LocalGaloisGroup local_galois_group(i64 m, i64 p);

/** Subfield of Q_p(zeta_m), stored as the subgroup of the local Galois group fixing it. */
struct LocalFieldSpec {
    LocalGaloisGroup group;
    std::vector<i64> stabilizer;  // sorted residues mod m
    int e = 1;                    // absolute ramification index
    int f = 1;                    // absolute residue degree
    i64 q = 0;                    // residue field size p^f

    i64 modulus() const { return group.modulus(); }
    i64 prime() const { return group.prime(); }
    int degree() const { return e * f; }
    bool fixed_by(i64 a) const;
    /** A generating set of the stabilizer (greedy, deterministic). */
    std::vector<i64> generators() const;
    bool operator==(const LocalFieldSpec& o) const {
        return modulus() == o.modulus() && prime() == o.prime() && stabilizer == o.stabilizer;
    }
    std::string describe() const;
};

/** Fixed field of the subgroup generated by `stabilizer_gens`; throws NotASubfield for non-members. */
LocalFieldSpec local_field(i64 m, i64 p, const std::vector<i64>& stabilizer_gens);
LocalFieldSpec field_from_subgroup(const LocalGaloisGroup& g, std::vector<i64> subgroup);
inline LocalFieldSpec rational_field(i64 p) { return local_field(1, p, {}); }
/** The same field inside Q_p(zeta_M) for a multiple M of its modulus. */
LocalFieldSpec lift_field(const LocalFieldSpec& k, i64 M);
/** Both fields lifted to the lcm of their moduli. */
std::pair<LocalFieldSpec, LocalFieldSpec> common_ambient(const LocalFieldSpec& a, const LocalFieldSpec& b);
bool is_subfield(const LocalFieldSpec& lower, const LocalFieldSpec& upper);
LocalFieldSpec compositum(const LocalFieldSpec& a, const LocalFieldSpec& b);
LocalFieldSpec intersection(const LocalFieldSpec& a, const LocalFieldSpec& b);
/** Smallest modulus M' dividing the modulus at which the field is already defined. */
LocalFieldSpec minimal_ambient(const LocalFieldSpec& k);

struct ExtensionProfile {
    LocalFieldSpec lower;
    LocalFieldSpec upper;
    int degree = 1;
    int e = 1;
    int f = 1;
};

ExtensionProfile extension_profile(const LocalFieldSpec& lower, const LocalFieldSpec& upper);

/** Generated subgroup of the group of units mod m (closure under multiplication). */
std::vector<i64> generated_subgroup(i64 m, const std::vector<i64>& gens);

nlohmann::json field_to_json(const LocalFieldSpec& k);
LocalFieldSpec field_from_json(const nlohmann::json& j);

}  // namespace iwasawa
