#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "iwasawa/division_algebra.hpp"
#include "json.hpp"

namespace iwasawa {

/** O_D[[X; tau, delta]] truncated above degree `truncation`, delta = tau - id. */
struct SkewContext {
    ExtendedAutomorphism twist;
    int truncation = 16;

    const CyclicAlgebraPtr& algebra() const { return twist.spec; }
    /** (K:k), the order of tau. */
    int order() const { return twist.order; }
};

using SkewContextPtr = std::shared_ptr<const SkewContext>;

SkewContextPtr skew_context(const ExtendedAutomorphism& twist, int truncation = 16);

/** tau(d) - d. */
CyclicAlgebraElement delta(const ExtendedAutomorphism& twist, const CyclicAlgebraElement& d);
/** delta^n(d) = sum_l (-1)^(n-l) C(n, l) tau^l(d). */
CyclicAlgebraElement delta_power(const ExtendedAutomorphism& twist, const CyclicAlgebraElement& d, int n);

/** sum_{j=i+l}^{n} (-1)^(j-i-l) C(n, j) C(j, i) C(j-i, l); C(n, i) when l = n - i, else 0. */
mpz_class binomial_bracket(int n, int i, int l);

class SkewSeries {
public:
    SkewSeries() = default;
    /** Coefficients beyond the truncation are dropped; missing ones are zero. */
    SkewSeries(SkewContextPtr ctx, std::vector<CyclicAlgebraElement> coeffs);

    static SkewSeries zero(const SkewContextPtr& ctx);
    static SkewSeries constant(const SkewContextPtr& ctx, const CyclicAlgebraElement& d);
    /** X. */
    static SkewSeries variable(const SkewContextPtr& ctx);

    const SkewContextPtr& context() const { return ctx_; }
    const std::vector<CyclicAlgebraElement>& coeffs() const { return c_; }
    const CyclicAlgebraElement& operator[](int i) const { return c_[i]; }
    /** Largest index with a nonzero coefficient, or -1. */
    int degree() const;

    SkewSeries operator+(const SkewSeries& o) const;
    SkewSeries operator-(const SkewSeries& o) const;
    SkewSeries operator*(const SkewSeries& o) const;
    bool operator==(const SkewSeries& o) const;
    bool operator!=(const SkewSeries& o) const { return !(*this == o); }
    /** Smallest degree whose coefficients differ, or -1. */
    int first_difference(const SkewSeries& o) const;
    /** X * f by the one-step rule X d = tau(d) X + delta(d). */
    SkewSeries times_variable() const;
    SkewSeries pow(int e) const;

private:
    SkewContextPtr ctx_;
    std::vector<CyclicAlgebraElement> c_;  // size truncation + 1
};

/** Product through the closed form X^n d = sum_i C(n, i) tau^i delta^(n-i)(d) X^i. Throws TwistMismatch. */
SkewSeries sps_mul(const SkewSeries& f, const SkewSeries& g);

/** (1+X)^(K:k) - 1. */
SkewSeries centre_variable(const SkewContextPtr& ctx);

/** Generators zeta_M', pi_D (and omega when s > 1) followed by `random_count` random integral elements. */
std::vector<CyclicAlgebraElement> coefficient_samples(const CyclicAlgebraPtr& spec, int random_count, std::mt19937_64& rng);
CyclicAlgebraElement random_integral(const CyclicAlgebraPtr& spec, std::mt19937_64& rng);
/** Random element of O_k for k the fixed field of tau. */
CyclicAlgebraElement random_fixed_scalar(const ExtendedAutomorphism& twist, std::mt19937_64& rng);
SkewSeries random_series(const SkewContextPtr& ctx, int degree, std::mt19937_64& rng);

struct CentreReport {
    bool central = true;
    int failing_sample = -1;
    int failing_degree = -1;
};

/** Whether z d = d z up to truncation for every sample d. */
CentreReport centre_check(const SkewSeries& z, const std::vector<CyclicAlgebraElement>& samples);

/** Polynomial in T = (1+X)^(K:k) - 1 with coefficients in O_L, kept up to a fixed T-degree. */
using TPoly = std::vector<PadicElement>;

/** Square matrix over truncated polynomials in T. */
class SeriesMatrix {
public:
    SeriesMatrix() = default;
    SeriesMatrix(RingPtr ring, int size, int t_degree);

    int size() const { return n_; }
    int t_degree() const { return t_; }
    const TPoly& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }
    TPoly& at(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }

    SeriesMatrix operator+(const SeriesMatrix& o) const;
    SeriesMatrix operator-(const SeriesMatrix& o) const;
    SeriesMatrix operator*(const SeriesMatrix& o) const;
    bool operator==(const SeriesMatrix& o) const;
    bool is_zero() const;

private:
    RingPtr ring_;
    int n_ = 0, t_ = 0;
    std::vector<TPoly> e_;
};

/**
 * Phi into M_{(K:k)s} over T-polynomials: coefficients go to diag(phi(d), phi(tau d), ...) with phi the
 * Hasse splitting, and X to the block cyclic shift with (1+X)^(K:k) = 1 + T in the corner, minus 1.
 */
struct EmbeddingMatrices {
    SkewContextPtr ctx;
    int block = 1;  // s
    int blocks = 1; // (K:k)
    SeriesMatrix variable;

    int size() const { return block * blocks; }
    SeriesMatrix coefficient(const CyclicAlgebraElement& d) const;
    SeriesMatrix operator()(const SkewSeries& f) const;
};

EmbeddingMatrices matrix_embedding(const SkewContextPtr& ctx);

struct IdentityCheck {
    std::string name;
    bool passed = true;
    bool skipped = false;
    int cases = 0;
    std::string detail;
};

struct SkewReport {
    i64 modulus = 1;
    i64 prime = 0;
    i64 tau = 1;
    int index = 1;
    int order = 1;
    int truncation = 16;
    std::vector<IdentityCheck> checks;

    bool passed() const;
    nlohmann::json to_json() const;
};

struct SkewVerifyOptions {
    int truncation = 16;
    int pairs = 50;
    int samples = 10;
    int precision = kDefaultPrecision;
    std::uint64_t seed = 1;
};

/**
 * Every identity of the skew power series ring over D = (K(omega)/K, sigma, pi_K) of index s with Hasse
 * twist 1: delta powers, X^n d, binomial brackets, left tau-derivation, centre, associativity and the
 * homomorphism property of Phi on random pairs whose product needs no truncation.
 */
SkewReport verify_skew_identities(const LocalFieldSpec& centre, i64 tau, int s, const SkewVerifyOptions& options = {});

}  // namespace iwasawa
