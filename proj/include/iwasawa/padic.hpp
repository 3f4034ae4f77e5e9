#pragma once

#include <gmpxx.h>

#include <climits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/local_galois.hpp"

namespace iwasawa {

inline constexpr int kDefaultPrecision = 32;

/** F_{p^f} as F_p[X]/(g) with g primitive, so X generates the multiplicative group. */
class ResidueField {
public:
    using Elem = std::vector<i64>;  // f coefficients, constant first

    ResidueField() = default;
    ResidueField(i64 p, int f);

    i64 prime() const { return p_; }
    int degree() const { return f_; }
    i64 size() const { return q_; }
    const Elem& modulus() const { return g_; }

    Elem one() const;
    Elem generator() const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(Elem a, i64 e) const;
    Elem inverse(const Elem& a) const { return pow(a, q_ - 2); }
    bool is_zero(const Elem& a) const;
    i64 encode(const Elem& a) const;
    /** k in [0, q-1) with X^k = a (Pohlig-Hellman with baby-step giant-step). */
    i64 log(const Elem& a) const;

private:
    i64 p_ = 0, q_ = 0;
    int f_ = 0;
    Elem g_;  // monic, length f+1
    std::vector<std::pair<i64, int>> order_factors_;
};

/**
 * O_L for L = Q_p(zeta_M) with coefficients mod p^N. The Z_p-basis is omega^i pi^j with omega the
 * Teichmueller generator of mu_{q0-1} (q0 = p^f0) and pi = zeta_{p^t} - 1 (pi = p when t = 0).
 */
class PadicRing {
public:
    using Vec = std::vector<mpz_class>;  // index j*f0 + i holds the coefficient of omega^i pi^j

    PadicRing(i64 M, i64 p, int N);

    const LocalGaloisGroup& galois_group() const { return group_; }
    i64 modulus() const { return group_.modulus(); }
    i64 prime() const { return group_.prime(); }
    int precision() const { return N_; }
    const mpz_class& coefficient_modulus() const { return pN_; }
    int residue_degree() const { return f0_; }
    int ramification_index() const { return E_; }
    int dim() const { return f0_ * E_; }
    int max_precision() const { return E_ * N_; }
    i64 residue_size() const { return residue_.size(); }
    const ResidueField& residue_field() const { return residue_; }
    /** Minimal polynomial of omega over Z_p, monic of degree f0. */
    const Vec& omega_polynomial() const { return omega_poly_; }
    /** Eisenstein polynomial of pi, monic of degree E. */
    const Vec& uniformizer_polynomial() const { return pi_poly_; }

    Vec zero_vec() const { return Vec(dim(), 0); }
    Vec mul(const Vec& a, const Vec& b) const;
    Vec mul_pi(const Vec& a) const;
    Vec div_pi(const Vec& a) const;
    /** pi-adic valuation; INT_MAX for the zero vector. */
    int valuation(const Vec& a) const;
    Vec unit_inverse(const Vec& a, int prec) const;
    ResidueField::Elem residue(const Vec& a) const;
    Vec lift_residue(const ResidueField::Elem& r) const;
    void reduce(Vec& a) const;

    /** sigma_a as the matrix of images of basis vectors, and epsilon_a = sigma_a(pi)/pi. */
    struct GaloisData {
        std::vector<Vec> images;
        Vec epsilon;
        Vec epsilon_inverse;
        bool trivial_epsilon = false;
        mutable std::vector<Vec> powers;          // powers[k] = epsilon^k
        mutable std::vector<Vec> inverse_powers;  // inverse_powers[k] = epsilon^-k
    };
    const GaloisData& galois(i64 a) const;
    /** epsilon_a^k for any integer k, cached per automorphism. */
    Vec epsilon_power(const GaloisData& data, int k) const;
    Vec zeta_M() const;

private:
    LocalGaloisGroup group_;
    int N_;
    mpz_class pN_;
    int f0_, E_;
    ResidueField residue_;
    Vec omega_poly_;
    Vec pi_poly_;
    mpz_class c0_inverse_;  // inverse of pi_poly[0]/p
    mutable std::mutex mutex_;
    mutable std::mutex power_mutex_;
    mutable std::map<i64, std::unique_ptr<GaloisData>> galois_cache_;
};

using RingPtr = std::shared_ptr<const PadicRing>;

/** Shared ring for (M, p, N); construction is cached. */
RingPtr padic_ring(i64 M, i64 p, int N = kDefaultPrecision);

/**
 * pi^shift * u with u in O_L known modulo pi^prec. Nonzero values are kept with u a unit;
 * a value zero at precision has u = 0, prec = 0 and shift equal to its absolute precision.
 */
class PadicElement {
public:
    PadicElement() = default;

    static PadicElement zero(const RingPtr& ring);
    static PadicElement one(const RingPtr& ring);
    static PadicElement from_integer(const RingPtr& ring, const mpz_class& n);
    static PadicElement from_rational(const RingPtr& ring, const mpq_class& x);
    static PadicElement from_vector(const RingPtr& ring, PadicRing::Vec c, int shift = 0);
    static PadicElement omega(const RingPtr& ring);
    static PadicElement uniformizer(const RingPtr& ring);
    /** zeta_M^k for the fixed embedding with sigma_a(zeta_M) = zeta_M^a. */
    static PadicElement zeta(const RingPtr& ring, i64 k);
    /** Image of an element of Q(zeta_m), m | M. */
    static PadicElement embed(const RingPtr& ring, const CycloElement& x);

    const RingPtr& ring() const { return ring_; }
    const PadicRing::Vec& unit_part() const { return c_; }
    int shift() const { return shift_; }
    int relative_precision() const { return prec_; }
    int absolute_precision() const { return shift_ + prec_; }
    bool is_zero() const { return prec_ == 0; }
    int valuation() const { return is_zero() ? INT_MAX : shift_; }
    bool is_unit() const { return !is_zero() && shift_ == 0; }

    PadicElement operator+(const PadicElement& o) const;
    PadicElement operator-(const PadicElement& o) const;
    PadicElement operator-() const;
    PadicElement operator*(const PadicElement& o) const;
    PadicElement& operator+=(const PadicElement& o) { return *this = *this + o; }
    PadicElement& operator*=(const PadicElement& o) { return *this = *this * o; }
    /** Equal at the joint precision. */
    bool operator==(const PadicElement& o) const { return (*this - o).is_zero(); }
    bool operator!=(const PadicElement& o) const { return !(*this == o); }

    PadicElement inverse() const;
    PadicElement pow(long long e) const;
    PadicElement galois(i64 a) const;
    PadicElement times_pi_power(int k) const;
    /** Drop precision to at most `abs` absolute digits. */
    PadicElement truncate(int abs) const;
    std::string to_string() const;

private:
    void normalize();
    void require_same_ring(const PadicElement& o) const;

    RingPtr ring_;
    PadicRing::Vec c_;
    int shift_ = 0;
    int prec_ = 0;
};

/** Discrete log of the residue of a unit with respect to the residue of omega. */
i64 teichmuller_log(const PadicElement& unit);
/** u = zeta * u1 with zeta^(q-1) = 1 and u1 = 1 mod pi. */
std::pair<PadicElement, PadicElement> teichmuller_split(const PadicElement& u);
/**
 * y with y^s = x for s prime to p, x a unit of the subfield with residue size q. The root of unity
 * part of y is the element of mu_{q-1} with the smallest discrete log.
 */
PadicElement sth_root_of_unit(const PadicElement& x, i64 s, i64 residue_size);
PadicElement sth_root_of_unit(const PadicElement& x, i64 s, const LocalFieldSpec& field);

/** Product of the conjugates under the cyclic group generated by a (mod M). */
PadicElement norm_over_subgroup(const PadicElement& x, i64 a);
/** N_{upper/lower}; both fields are lifted into the element's ring. */
PadicElement relative_norm(const PadicElement& x, const LocalFieldSpec& upper, const LocalFieldSpec& lower);
PadicElement relative_trace(const PadicElement& x, const LocalFieldSpec& upper, const LocalFieldSpec& lower);
bool is_fixed(const PadicElement& x, const LocalFieldSpec& field);
/** A uniformizer of the subfield, as an element of the ring. */
PadicElement field_uniformizer(const RingPtr& ring, const LocalFieldSpec& field);
/** The ring's local Galois group elements reducing to a mod m. */
std::vector<i64> automorphism_lifts(const LocalGaloisGroup& big, i64 a, i64 m);

}  // namespace iwasawa
