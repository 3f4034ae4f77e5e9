#include "iwasawa/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "iwasawa/error.hpp"

namespace iwasawa {

i64 mod_norm(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mul_mod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<__int128>(a) * b) % m);
}

i64 pow_mod(i64 a, i64 e, i64 m) {
    if (m == 1) return 0;
    i64 result = 1;
    a = mod_norm(a, m);
    while (e > 0) {
        if (e & 1) result = mul_mod(result, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return result;
}

i64 inv_mod(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, r = mod_norm(a, m);
    while (r != 0) {
        i64 q = g / r;
        i64 t = g - q * r;
        g = r;
        r = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw Error(ErrorCode::NotAUnit, std::to_string(a) + " is not a unit mod " + std::to_string(m));
    return mod_norm(x, m);
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> out;
    for (i64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q != 0) continue;
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        out.emplace_back(q, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> out{1};
    for (auto [q, e] : factorize(n)) {
        std::size_t k = out.size();
        i64 pw = 1;
        for (int i = 1; i <= e; ++i) {
            pw *= q;
            for (std::size_t j = 0; j < k; ++j) out.push_back(out[j] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [q, e] : factorize(n)) r = r / q * (q - 1);
    return r;
}

i64 lcm64(i64 a, i64 b) { return a / std::gcd(a, b) * b; }

i64 ipow(i64 base, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) {
        if (__builtin_mul_overflow(r, base, &r)) throw Error(ErrorCode::InvalidArgument, "integer power overflows 64 bits");
    }
    return r;
}

i64 mult_order(i64 a, i64 m) {
    if (m == 1) return 1;
    if (std::gcd(mod_norm(a, m), m) != 1) throw Error(ErrorCode::NotAUnit, "order of a non-unit");
    i64 ord = euler_phi(m);
    for (auto [q, e] : factorize(ord)) {
        for (int i = 0; i < e && ord % q == 0 && pow_mod(a, ord / q, m) == 1; ++i) ord /= q;
    }
    return ord;
}

i64 crt_pair(i64 a, i64 m1, i64 b, i64 m2) {
    if (m1 == 1) return mod_norm(b, m2);
    if (m2 == 1) return mod_norm(a, m1);
    i64 m = m1 * m2;
    i64 k = mul_mod(mod_norm(b - a, m2), inv_mod(m1 % m2, m2), m2);
    return mod_norm(a + mul_mod(m1, k, m), m);
}

int p_valuation(i64 n, i64 p) {
    int v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::pair<i64, int> split_p_part(i64 n, i64 p) {
    int t = 0;
    while (n % p == 0) {
        n /= p;
        ++t;
    }
    return {n, t};
}

}  // namespace iwasawa
