#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "iwasawa/local_galois.hpp"
#include "iwasawa/maximal_order.hpp"
#include "iwasawa/padic.hpp"

namespace iwasawa {

/**
 * The cyclic algebra D = (K(omega)/K, sigma, pi_K) = sum_{i<s} K(omega) pi_D^i with
 * pi_D x pi_D^-1 = sigma(x), sigma(omega) = omega^(q^r) and pi_D^s = pi_K.
 * Coefficients live in O_L, L = Q_p(zeta_M') with M' = lcm(m_K, q^s - 1).
 */
struct CyclicAlgebraSpec {
    LocalFieldSpec centre;     // K
    int index = 1;             // s
    int hasse = 0;             // r, coprime to s; 0 when s = 1
    RingPtr ring;              // O_L
    LocalFieldSpec splitting;  // K(omega) inside L
    i64 twist = 1;             // sigma as a residue mod M'
    PadicElement omega;        // generator of mu_{q^s - 1}
    PadicElement centre_uniformizer;

    i64 modulus() const { return ring->modulus(); }
    i64 prime() const { return ring->prime(); }
    i64 omega_order() const;
    /** Z_p-rank of the standard maximal order sum O_{K(omega)} pi_D^i. */
    int rank() const { return index * index * centre.degree(); }
};

using CyclicAlgebraPtr = std::shared_ptr<const CyclicAlgebraSpec>;

/** Throws InvalidArgument for r not coprime to s. */
CyclicAlgebraPtr cyclic_algebra(const LocalFieldSpec& centre, int s, int r, int precision = kDefaultPrecision);

/** The unramified extension of K of degree s, K(mu_{q^s - 1}), inside Q_p(zeta_M'). */
LocalFieldSpec unramified_extension(const LocalFieldSpec& k, int degree);

/** sum_i coeffs[i] pi_D^i. */
class CyclicAlgebraElement {
public:
    CyclicAlgebraElement() = default;
    CyclicAlgebraElement(CyclicAlgebraPtr spec, std::vector<PadicElement> coeffs);

    static CyclicAlgebraElement zero(const CyclicAlgebraPtr& spec);
    static CyclicAlgebraElement one(const CyclicAlgebraPtr& spec);
    static CyclicAlgebraElement scalar(const CyclicAlgebraPtr& spec, const PadicElement& c);
    /** pi_D^k for 0 <= k < s. */
    static CyclicAlgebraElement pi_power(const CyclicAlgebraPtr& spec, int k);

    const CyclicAlgebraPtr& spec() const { return spec_; }
    const std::vector<PadicElement>& coeffs() const { return c_; }
    const PadicElement& operator[](int i) const { return c_[i]; }

    CyclicAlgebraElement operator+(const CyclicAlgebraElement& o) const;
    CyclicAlgebraElement operator-(const CyclicAlgebraElement& o) const;
    CyclicAlgebraElement operator*(const CyclicAlgebraElement& o) const;
    bool operator==(const CyclicAlgebraElement& o) const;
    bool operator!=(const CyclicAlgebraElement& o) const { return !(*this == o); }
    bool is_zero() const;
    /** Smallest absolute precision among the coefficients. */
    int absolute_precision() const;

private:
    CyclicAlgebraPtr spec_;
    std::vector<PadicElement> c_;
};

/** Throws SpecMismatch for elements of different algebras. */
CyclicAlgebraElement ca_mul(const CyclicAlgebraElement& x, const CyclicAlgebraElement& y);

/**
 * Hasse splitting D -> M_s(K(omega)): c -> diag(c, sigma c, ..., sigma^{s-1} c), and pi_D -> the
 * cyclic shift with pi_K in the bottom left corner.
 */
std::vector<std::vector<PadicElement>> splitting_matrix(const CyclicAlgebraElement& x);

/** Integral O_L-coordinates of an element of valuation >= 0, modulo p^N. */
ZpVec integral_vector(const PadicElement& x);
/** Concatenated coefficient coordinates, length s * dim O_L. */
ZpVec algebra_coordinates(const CyclicAlgebraElement& x);
CyclicAlgebraElement from_algebra_coordinates(const CyclicAlgebraPtr& spec, const ZpVec& v);

/**
 * Extension of tau in Gal(K/k), k = K^<tau>, to D with tau(pi_D) = epsilon_D pi_D, acting on
 * K(omega) as the automorphism of order d corresponding to (id, tau).
 */
struct ExtendedAutomorphism {
    CyclicAlgebraPtr spec;
    i64 base = 1;   // tau as a residue mod m_K
    i64 lift = 1;   // tau-hat as a residue mod M'
    int order = 1;  // d
    LocalFieldSpec fixed_field;      // K^<tau>
    PadicElement epsilon;            // tau(pi_K) / pi_K
    PadicElement teichmuller_part;   // zeta in epsilon = zeta u
    PadicElement epsilon_d;          // epsilon_D
    std::vector<PadicElement> multipliers;  // pi_multiplier(k) for k < d

    /** tau-hat^k on a coefficient. */
    PadicElement on_coefficient(const PadicElement& c, long long k = 1) const;
    /** prod_{j<k} tau-hat^j(epsilon_D), the factor with tau^k(pi_D) = factor pi_D. */
    PadicElement pi_multiplier(long long k) const;
    CyclicAlgebraElement apply(const CyclicAlgebraElement& x, long long k = 1) const;
};

/** prod_{j<d} tau-hat^j(x). */
PadicElement tau_norm(const PadicElement& x, i64 tau_hat, int d);

/**
 * Unique extension of tau of the same order (norm-1 normalisation of an s-th root of epsilon).
 * The order d must be prime to s. Throws IndexNotDividing when s does not divide q_tau - 1.
 */
ExtendedAutomorphism extend_tau(const CyclicAlgebraPtr& spec, i64 tau);

/** The defining properties of an extension of tau, each checked to `digits` p-adic digits. */
struct ExtensionChecks {
    int digits = 0;
    bool root = false;          // epsilon_D^s = epsilon
    bool norm = false;          // N_<tau-hat>(epsilon_D) = 1
    bool epsilon_norm = false;  // N_<tau-hat>(epsilon) = 1
    bool teichmuller = false;   // zeta in mu_{(q-1)/(q_tau-1)}
    bool order = false;         // tau-hat^d = id and no proper divisor of d works

    bool ok() const { return root && norm && epsilon_norm && teichmuller && order; }
};

ExtensionChecks check_extension(const ExtendedAutomorphism& ext, int digits);

/** D^<tau^e> with its Z_p-basis (the fixed points of the standard maximal order) and centre. */
struct FixedSubalgebra {
    int power = 1;                                 // e
    std::vector<CyclicAlgebraElement> basis;       // Z_p-basis
    std::vector<CyclicAlgebraElement> centre_basis;
    LocalFieldSpec centre_field;                   // K^<tau^e>
    int dimension() const { return static_cast<int>(basis.size()); }
};

/** Throws PrecisionLoss when the fixed-point rank differs from s^2 (K:Q_p) e / d at precision. */
FixedSubalgebra fixed_subalgebra(const ExtendedAutomorphism& ext, int e);

/** The Z_p-order spanned by the basis, in the coordinates of algebra_coordinates. */
ZpAlgebra order_of(const CyclicAlgebraPtr& spec, const std::vector<CyclicAlgebraElement>& basis);

/** Hasse twist exponent after restricting scalars along an extension of degree d prime to s. */
int descend_twist(int s, int r, int degree);

/**
 * Single-generator description of sum K a^l b^j: (ab)^{(K:F)} = N_{L_a/F}(a^{(K:L_a)}) b^{(K:F)},
 * with conjugation by ab acting as alpha beta.
 */
struct CombinedCyclic {
    LocalFieldSpec splitting;  // K
    LocalFieldSpec base;       // F
    i64 acting = 1;            // alpha beta mod the modulus of K
    int degree = 1;            // (K:F)
    int a_degree = 1;          // (K:L_a)
    int b_degree = 1;          // (K:L_b)
    PadicElement parameter;    // N_{L_a/F}(a^{(K:L_a)})
};

/**
 * alpha generates Gal(K/L_a), beta generates Gal(K/L_b), and a_power = a^{(K:L_a)} lies in L_a.
 * Throws DegreesNotCoprime or NotASubfield.
 */
CombinedCyclic combine_generators(const LocalFieldSpec& base, const LocalFieldSpec& field_a,
                                  const LocalFieldSpec& field_b, i64 alpha, i64 beta, const PadicElement& a_power);

/**
 * A non-maximal Z_p-order of D: basis omega^i (p pi_D)^j of O_{K(omega)}-type blocks with a random
 * unimodular change of basis. Used as a start for the maximal-order backend.
 */
ZpAlgebra scrambled_order(const CyclicAlgebraPtr& spec, std::mt19937_64& rng);

}  // namespace iwasawa
