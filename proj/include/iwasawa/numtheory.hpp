#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace iwasawa {

using i64 = std::int64_t;

i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 a, i64 e, i64 m);
/** Inverse of a modulo m; throws NotAUnit when gcd(a, m) != 1. */
i64 inv_mod(i64 a, i64 m);
i64 mod_norm(i64 a, i64 m);

bool is_prime(i64 n);
/** Prime factorisation as (prime, exponent) pairs in increasing order. */
std::vector<std::pair<i64, int>> factorize(i64 n);
std::vector<i64> divisors(i64 n);
i64 euler_phi(i64 n);
i64 lcm64(i64 a, i64 b);
/** Exact power; throws InvalidArgument on overflow. */
i64 ipow(i64 base, int e);
/** Multiplicative order of a modulo m (a must be a unit). */
i64 mult_order(i64 a, i64 m);
/** x with x = a mod m1, x = b mod m2 for coprime moduli, in [0, m1*m2). */
i64 crt_pair(i64 a, i64 m1, i64 b, i64 m2);
/** Largest k with p^k dividing n (n != 0). */
int p_valuation(i64 n, i64 p);
/** n = prime_to_p * p^t. */
std::pair<i64, int> split_p_part(i64 n, i64 p);

}  // namespace iwasawa
