#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "iwasawa/numtheory.hpp"

namespace iwasawa {

using ZpVec = std::vector<mpz_class>;
using FpVec = std::vector<i64>;

/** Arithmetic in Z/p^N; representatives are kept in [0, p^N). */
struct ZpContext {
    i64 p = 0;
    int N = 0;
    mpz_class modulus;

    ZpContext() = default;
    ZpContext(i64 p, int N);
    void reduce(mpz_class& x) const;
    void reduce(ZpVec& v) const;
    /** p-adic valuation of the residue; N for zero. */
    int valuation(const mpz_class& x) const;
    int valuation(const ZpVec& v) const;
    mpz_class unit_inverse(const mpz_class& u) const;
    mpz_class power(int k) const;
};

/**
 * Z_p-lattice given by an echelon basis: row r has p^valuations[r] in column pivots[r] and zeros in
 * all earlier pivot columns. Coordinates use an exact scaled inverse of the pivot block, so a solve
 * loses only `exponent` digits, the exponent of the pivot projection's cokernel.
 */
struct ZpLattice {
    ZpContext ctx;
    std::vector<ZpVec> basis;
    std::vector<int> pivots;
    std::vector<int> valuations;
    int exponent = 0;
    std::vector<ZpVec> scaled_inverse;  // p^exponent * inverse of the pivot block

    int rank() const { return static_cast<int>(basis.size()); }
    /** log_p of the index in the saturation; for full-rank lattices, of [Z_p^n : L]. */
    int index_valuation() const;
    /** x with x * basis = y, reliable modulo p^(N - exponent); nullopt if y is not in the span. */
    std::optional<ZpVec> coordinates(const ZpVec& y) const;
    bool contains(const ZpVec& y) const { return coordinates(y).has_value(); }
};

/**
 * Lattice spanned by the rows. Entries of valuation >= zero_threshold count as zero (default N).
 * Throws PrecisionLoss when a pivot's valuation exceeds half the precision.
 */
ZpLattice make_lattice(const ZpContext& ctx, std::vector<ZpVec> rows, int zero_threshold = -1);

/**
 * Saturated basis of {x : x * A = 0}, where entries of x*A with valuation >= N - slack count as zero.
 * A is given by rows (one per coordinate of x). Throws PrecisionLoss on ambiguous rank.
 */
std::vector<ZpVec> zp_left_kernel(const ZpContext& ctx, const std::vector<ZpVec>& rows, int slack);

/** Reduced row echelon form over F_p: pivots equal 1 and pivot columns are otherwise zero. */
struct FpRref {
    i64 p = 0;
    int cols = 0;
    std::vector<FpVec> rows;
    std::vector<int> pivots;

    int rank() const { return static_cast<int>(rows.size()); }
    /** v minus its component along the span; zero on pivot columns. */
    FpVec reduce(FpVec v) const;
    bool contains(const FpVec& v) const;
    /** Columns that carry no pivot, in increasing order. */
    std::vector<int> free_columns() const;
};

FpRref fp_rref(i64 p, int cols, std::vector<FpVec> rows);
/** Basis (reduced echelon) of {x : sum_i x_i rows[i] = 0}. */
std::vector<FpVec> fp_left_kernel(i64 p, const std::vector<FpVec>& rows, int cols);

inline i64 fp_norm(i64 x, i64 p) {
    x %= p;
    return x < 0 ? x + p : x;
}

}  // namespace iwasawa
