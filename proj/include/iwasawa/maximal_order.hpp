#pragma once

#include <functional>
#include <random>
#include <vector>

#include "iwasawa/zp_linalg.hpp"

namespace iwasawa {

/**
 * Z_p-order of rank n known modulo p^N: e_i e_j = sum_k constant(i, j, k) e_k.
 * Orders are unital; one() holds the coordinates of the identity.
 */
class ZpAlgebra {
public:
    ZpAlgebra() = default;
    ZpAlgebra(i64 p, int N, int n, std::vector<mpz_class> constants, ZpVec one);

    i64 prime() const { return ctx_.p; }
    int precision() const { return ctx_.N; }
    int dim() const { return n_; }
    const ZpContext& context() const { return ctx_; }
    const mpz_class& constant(int i, int j, int k) const { return c_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]; }
    const ZpVec& one() const { return one_; }
    ZpVec basis(int i) const;

    ZpVec mul(const ZpVec& x, const ZpVec& y) const;
    ZpVec add(const ZpVec& x, const ZpVec& y) const;
    ZpVec sub(const ZpVec& x, const ZpVec& y) const;
    /** Matrix M with (x y)_k = sum_l y_l M[l][k]. */
    std::vector<ZpVec> left_matrix(const ZpVec& x) const;
    /** Largest defect valuation is at least N - slack on every basis triple. */
    bool is_associative(int slack) const;

    /** The order p^-1 (lift(K) + p Lambda) for an F_p-subspace K of Lambda/p Lambda. */
    ZpAlgebra enlarge(const std::vector<FpVec>& subspace) const;

private:
    ZpContext ctx_;
    int n_ = 0;
    std::vector<mpz_class> c_;
    ZpVec one_;
};

using AmbientProduct = std::function<ZpVec(const ZpVec&, const ZpVec&)>;

/**
 * Order with Z_p-basis generators / p^scale inside an ambient algebra whose product on integral
 * coordinate vectors is `multiply`; scaled_one is p^scale times the identity. Throws InvalidArgument
 * if the lattice is not multiplicatively closed or misses the identity.
 */
ZpAlgebra algebra_from_lattice(i64 p, int N, const std::vector<ZpVec>& generators, int scale,
                               const AmbientProduct& multiply, const ZpVec& scaled_one);

/** F_p-basis of the Jacobson radical of Lambda / p Lambda (Ronyai / Cohen-Ivanyos-Wales trace forms). */
FpRref radical_mod_p(const ZpAlgebra& order);

/** Central primitive idempotents of the semisimple quotient (Lambda/p Lambda) / J, as lifts mod p. */
std::vector<FpVec> central_idempotents(const ZpAlgebra& order, const FpRref& radical, std::mt19937_64& rng);

struct MaximalOrder {
    ZpAlgebra order;
    FpRref radical;
    int enlargements = 0;
};

/**
 * Enlarges by left and right orders of the radical, then of the maximal ideals, until stable.
 * Throws PrecisionLoss when digits run out.
 */
MaximalOrder maximal_order(ZpAlgebra start, std::mt19937_64& rng);

/** Index, Hasse twist exponent and matrix size of a central simple algebra over K. */
struct LocalInvariants {
    int s = 1;
    int r = 0;  // pi_D omega pi_D^-1 = omega^(q^r)
    int n = 1;
};

/**
 * Invariants from a maximal order of a simple algebra with centre K, where K has residue degree
 * `centre_residue_degree` and degree `centre_degree` over Q_p.
 */
LocalInvariants local_invariants(const MaximalOrder& maximal, int centre_residue_degree, int centre_degree,
                                 std::mt19937_64& rng);

}  // namespace iwasawa
