#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace iwasawa {

/** Integer coefficients of the m-th cyclotomic polynomial, constant term first. */
const std::vector<long>& cyclotomic_polynomial(int m);

/** Exact element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1). */
class CycloElement {
public:
    CycloElement() = default;
    explicit CycloElement(int m);

    static CycloElement rational(int m, const mpq_class& value);
    static CycloElement root_power(int m, long long k);
    /** Reduce sum_k c[k] zeta^k (any length) modulo the cyclotomic polynomial. */
    static CycloElement from_exponent_vector(int m, const std::vector<mpq_class>& c);

    int modulus() const { return m_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    CycloElement operator+(const CycloElement& o) const;
    CycloElement operator-(const CycloElement& o) const;
    CycloElement operator-() const;
    CycloElement operator*(const CycloElement& o) const;
    CycloElement operator*(const mpq_class& s) const;
    CycloElement& operator+=(const CycloElement& o);
    bool operator==(const CycloElement& o) const { return m_ == o.m_ && c_ == o.c_; }
    bool operator!=(const CycloElement& o) const { return !(*this == o); }

    /** zeta_m -> zeta_m^a; a must be a unit mod m. */
    CycloElement galois(long long a) const;
    CycloElement conj() const { return galois(-1); }
    /** Same number viewed in Q(zeta_M) for a multiple M of m. */
    CycloElement lift(int M) const;

    bool is_zero() const;
    bool is_rational() const;
    mpq_class rational_value() const;
    /** Lexicographic comparison of coefficient vectors. */
    int compare(const CycloElement& o) const;
    std::string to_string() const;

private:
    int m_ = 1;
    std::vector<mpq_class> c_{mpq_class(0)};
};

}  // namespace iwasawa
