#include "iwasawa/chartable.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "iwasawa/error.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwasawa {

namespace {

using Row = std::vector<i64>;
using Mat = std::vector<Row>;

// Row-reduce in place; returns pivot columns. Rows end up in reduced echelon form.
std::vector<int> rref(Mat& a, i64 l) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    const int rows = static_cast<int>(a.size()), cols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        i64 inv = inv_mod(a[r][c], l);
        for (auto& x : a[r]) x = mul_mod(x, inv, l);
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            i64 f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] = mod_norm(a[i][j] - mul_mod(f, a[r][j], l), l);
        }
        pivots.push_back(c);
        ++r;
    }
    a.resize(r);
    return pivots;
}

Mat kernel(Mat a, i64 l, int cols) {
    auto piv = rref(a, l);
    std::vector<int> is_piv(cols, -1);
    for (std::size_t i = 0; i < piv.size(); ++i) is_piv[piv[i]] = static_cast<int>(i);
    Mat out;
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f] >= 0) continue;
        Row v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = mod_norm(-a[i][f], l);
        out.push_back(v);
    }
    return out;
}

std::vector<i64> charpoly(Mat h, i64 l) {
    const int n = static_cast<int>(h.size());
    for (int m = 1; m < n - 1; ++m) {
        int piv = -1;
        for (int i = m; i < n; ++i)
            if (h[i][m - 1] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != m) {
            std::swap(h[piv], h[m]);
            for (int i = 0; i < n; ++i) std::swap(h[i][piv], h[i][m]);
        }
        i64 inv = inv_mod(h[m][m - 1], l);
        for (int i = m + 1; i < n; ++i) {
            i64 u = mul_mod(h[i][m - 1], inv, l);
            if (u == 0) continue;
            for (int j = m - 1; j < n; ++j) h[i][j] = mod_norm(h[i][j] - mul_mod(u, h[m][j], l), l);
            for (int j = 0; j < n; ++j) h[j][m] = (h[j][m] + mul_mod(u, h[j][i], l)) % l;
        }
    }
    std::vector<std::vector<i64>> p(n + 1);
    p[0] = {1};
    for (int k = 1; k <= n; ++k) {
        std::vector<i64> cur(k + 1, 0);
        for (int d = 0; d < k; ++d) {
            cur[d + 1] = (cur[d + 1] + p[k - 1][d]) % l;
            cur[d] = mod_norm(cur[d] - mul_mod(h[k - 1][k - 1], p[k - 1][d], l), l);
        }
        i64 prod = 1;
        for (int i = 1; i < k; ++i) {
            prod = mul_mod(prod, h[k - i][k - i - 1], l);
            i64 coef = mul_mod(prod, h[k - i - 1][k - 1], l);
            if (coef == 0) continue;
            for (std::size_t d = 0; d < p[k - i - 1].size(); ++d)
                cur[d] = mod_norm(cur[d] - mul_mod(coef, p[k - i - 1][d], l), l);
        }
        p[k] = std::move(cur);
    }
    return p[n];
}

i64 primitive_root(i64 l) {
    auto fac = factorize(l - 1);
    for (i64 g = 2; g < l; ++g) {
        bool ok = true;
        for (auto [q, e] : fac)
            if (pow_mod(g, (l - 1) / q, l) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    return 1;
}

bool rows_less(const std::vector<CycloElement>& a, const std::vector<CycloElement>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        int c = a[k].compare(b[k]);
        if (c != 0) return c < 0;
    }
    return false;
}

}  // namespace

CharacterTable character_table(const FiniteGroup& g, const ChartableOptions& opts) {
    CharacterTable t;
    t.m = g.exponent;
    t.classes = conjugacy_classes(g);
    const auto& cc = t.classes;
    const int r = cc.count();
    const i64 n = g.order;
    const i64 m = t.m;

    i64 l = 0;
    for (i64 k = 1;; ++k) {
        i64 cand = k * m + 1;
        if (cand > opts.prime_search_bound)
            throw Error(ErrorCode::InternalPrimeSearchFailed, "no prime = 1 mod " + std::to_string(m) + " below bound");
        if (cand * cand > 4 * n && is_prime(cand)) {
            l = cand;
            break;
        }
    }
    t.modular_prime = l;

    t.power_map.assign(r, std::vector<int>(m));
    for (int k = 0; k < r; ++k) {
        int x = 0;
        for (i64 i = 0; i < m; ++i) {
            t.power_map[k][i] = cc.class_of[x];
            x = g.mul(x, cc.representatives[k]);
        }
    }

    // coef[(i*r + j)*r + k] = #{x in C_i : x^-1 g_k in C_j}
    std::vector<int> coef(static_cast<std::size_t>(r) * r * r, 0);
    for (int k = 0; k < r; ++k) {
        int gk = cc.representatives[k];
        for (int x = 0; x < g.order; ++x) {
            int i = cc.class_of[x];
            int j = cc.class_of[g.mul(g.inverse[x], gk)];
            ++coef[(static_cast<std::size_t>(i) * r + j) * r + k];
        }
    }

    Mat identity(r, Row(r, 0));
    for (int i = 0; i < r; ++i) identity[i][i] = 1;
    std::vector<Mat> work{identity};
    std::vector<Row> eigvecs;
    while (!work.empty()) {
        Mat v = std::move(work.back());
        work.pop_back();
        const int d = static_cast<int>(v.size());
        if (d == 1) {
            eigvecs.push_back(v[0]);
            continue;
        }
        std::vector<int> piv;
        {
            Mat tmp = v;
            piv = rref(tmp, l);
            v = tmp;
        }
        bool split = false;
        for (int j = 1; j < r && !split; ++j) {
            Mat restr(d, Row(d, 0));
            for (int s = 0; s < d; ++s) {
                Row u(r, 0);
                for (int i = 0; i < r; ++i) {
                    i64 acc = 0;
                    const int* row = &coef[(static_cast<std::size_t>(i) * r + j) * r];
                    for (int k = 0; k < r; ++k)
                        if (row[k] != 0 && v[s][k] != 0) acc = (acc + mul_mod(row[k], v[s][k], l)) % l;
                    u[i] = acc;
                }
                for (int q = 0; q < d; ++q) restr[q][s] = u[piv[q]];
            }
            auto cp = charpoly(restr, l);
            std::vector<i64> roots;
            int total = 0;
            for (i64 lam = 0; lam < l && total < d; ++lam) {
                i64 val = 0;
                for (int q = d; q >= 0; --q) val = (mul_mod(val, lam, l) + cp[q]) % l;
                if (val == 0) {
                    roots.push_back(lam);
                    ++total;
                }
            }
            if (roots.size() <= 1) continue;
            split = true;
            for (i64 lam : roots) {
                Mat a = restr;
                for (int q = 0; q < d; ++q) a[q][q] = mod_norm(a[q][q] - lam, l);
                Mat ker = kernel(a, l, d);
                Mat sub;
                for (const auto& c : ker) {
                    Row full(r, 0);
                    for (int q = 0; q < d; ++q)
                        if (c[q] != 0)
                            for (int k = 0; k < r; ++k) full[k] = (full[k] + mul_mod(c[q], v[q][k], l)) % l;
                    sub.push_back(full);
                }
                rref(sub, l);
                work.push_back(sub);
            }
        }
        if (!split)
            throw Error(ErrorCode::InternalPrimeSearchFailed, "class matrices failed to split a common eigenspace");
    }
    if (static_cast<int>(eigvecs.size()) != r)
        throw Error(ErrorCode::InternalPrimeSearchFailed, "eigenspace count differs from class count");

    const i64 z = pow_mod(primitive_root(l), (l - 1) / m, l);
    const i64 zinv = inv_mod(z, l);
    const i64 minv = inv_mod(m % l, l);
    for (auto w : eigvecs) {
        i64 w0inv = inv_mod(w[0], l);
        for (auto& x : w) x = mul_mod(x, w0inv, l);
        i64 s = 0;
        for (int k = 0; k < r; ++k)
            s = (s + mul_mod(mul_mod(w[k], w[cc.inverse_class[k]], l), inv_mod(cc.sizes[k], l), l)) % l;
        i64 dsq = mul_mod(n % l, inv_mod(s, l), l);
        int deg = 0;
        for (int cand = 1; static_cast<i64>(cand) * cand <= n; ++cand)
            if (static_cast<i64>(cand) * cand % l == dsq) {
                deg = cand;
                break;
            }
        if (deg == 0) throw Error(ErrorCode::InternalPrimeSearchFailed, "degree recovery failed");
        std::vector<i64> val(r);
        for (int k = 0; k < r; ++k) val[k] = mul_mod(mul_mod(w[k], deg, l), inv_mod(cc.sizes[k], l), l);
        Character chi;
        chi.degree = deg;
        for (int k = 0; k < r; ++k) {
            std::vector<mpq_class> mult(m, mpq_class(0));
            i64 total = 0;
            for (i64 j = 0; j < m; ++j) {
                i64 acc = 0, step = pow_mod(zinv, j, l), zp = 1;
                for (i64 i = 0; i < m; ++i) {
                    acc = (acc + mul_mod(val[t.power_map[k][i]], zp, l)) % l;
                    zp = mul_mod(zp, step, l);
                }
                acc = mul_mod(acc, minv, l);
                if (acc > deg) throw Error(ErrorCode::InternalPrimeSearchFailed, "eigenvalue multiplicity out of range");
                mult[j] = static_cast<long>(acc);
                total += acc;
            }
            if (total != deg) throw Error(ErrorCode::InternalPrimeSearchFailed, "multiplicities do not sum to degree");
            chi.values.push_back(CycloElement::from_exponent_vector(static_cast<int>(m), mult));
        }
        t.chars.push_back(std::move(chi));
    }
    // degree ascending, then value vectors descending so that the trivial character leads
    std::sort(t.chars.begin(), t.chars.end(), [](const Character& a, const Character& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return rows_less(b.values, a.values);
    });
    return t;
}

int CharacterTable::find(const std::vector<CycloElement>& values) const {
    for (int i = 0; i < size(); ++i)
        if (chars[i].values == values) return i;
    return -1;
}

std::vector<int> CharacterTable::galois_permutation(long long a) const {
    a = mod_norm(a, m);
    if (std::gcd(static_cast<i64>(a), static_cast<i64>(m)) != 1)
        throw Error(ErrorCode::NotAUnit, std::to_string(a) + " is not a unit mod " + std::to_string(m));
    std::vector<int> perm(size());
    for (int i = 0; i < size(); ++i) {
        std::vector<CycloElement> v;
        for (int k = 0; k < classes.count(); ++k) v.push_back(chars[i].values[power_map[k][a]]);
        perm[i] = find(v);
    }
    return perm;
}

std::vector<int> CharacterTable::gamma_permutation(const GammaAction& act, const FiniteGroup& g) const {
    (void)g;
    std::vector<int> perm(size());
    for (int i = 0; i < size(); ++i) {
        std::vector<CycloElement> v;
        for (int k = 0; k < classes.count(); ++k)
            v.push_back(chars[i].values[classes.class_of[act.apply(classes.representatives[k])]]);
        perm[i] = find(v);
        if (perm[i] < 0) throw Error(ErrorCode::NotAutomorphism, "gamma image of a character is not a table row");
    }
    return perm;
}

int gamma_act(const CharacterTable& t, int eta, const GammaAction& act, const FiniteGroup& g) {
    return t.gamma_permutation(act, g)[eta];
}

int galois_act(const CharacterTable& t, int eta, long long a) {
    std::vector<CycloElement> v;
    for (const auto& x : t.chars[eta].values) v.push_back(x.galois(a));
    return t.find(v);
}

OrthogonalityReport check_orthogonality(const CharacterTable& t, const FiniteGroup& g) {
    OrthogonalityReport rep;
    const i64 n = g.order, m = t.m;
    const int r = t.classes.count();
    long long deg_sum = 0;
    for (const auto& c : t.chars) deg_sum += static_cast<long long>(c.degree) * c.degree;
    rep.degree_sum = (deg_sum == n);
    if (t.size() != r) return rep;
    i64 l = 0;
    for (i64 k = 1;; ++k) {
        i64 cand = k * m + 1;
        if (cand > 2 * n * n + 1 && is_prime(cand)) {
            l = cand;
            break;
        }
    }
    const i64 z0 = pow_mod(primitive_root(l), (l - 1) / m, l);
    std::vector<i64> centraliser(r);
    for (int k = 0; k < r; ++k) centraliser[k] = n / t.classes.sizes[k];
    bool rows_ok = true, cols_ok = true;
    for (i64 a = 1; a < std::max<i64>(m, 2); ++a) {
        if (std::gcd(a, m) != 1) continue;
        const i64 z = pow_mod(z0, a, l);
        std::vector<i64> zp(m);
        zp[0] = 1;
        for (i64 i = 1; i < m; ++i) zp[i] = mul_mod(zp[i - 1], z, l);
        // numerators/denominator of each value: character values have integral coefficients
        std::vector<std::vector<i64>> v(r, std::vector<i64>(r)), vc(r, std::vector<i64>(r));
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < r; ++k) {
                const auto& c = t.chars[i].values[k].coeffs();
                i64 acc = 0, accc = 0;
                for (std::size_t e = 0; e < c.size(); ++e) {
                    if (sgn(c[e]) == 0) continue;
                    if (c[e].get_den() != 1) return rep;
                    i64 ce = mod_norm(c[e].get_num().get_si(), l);
                    acc = (acc + mul_mod(ce, zp[e % m], l)) % l;
                    accc = (accc + mul_mod(ce, zp[(m - static_cast<i64>(e) % m) % m], l)) % l;
                }
                v[i][k] = acc;
                vc[i][k] = accc;
            }
        for (int i = 0; i < r && rows_ok; ++i)
            for (int j = 0; j < r && rows_ok; ++j) {
                i64 s = 0;
                for (int k = 0; k < r; ++k) s = (s + mul_mod(t.classes.sizes[k], mul_mod(v[i][k], vc[j][k], l), l)) % l;
                if (s != (i == j ? n % l : 0)) rows_ok = false;
            }
        for (int k = 0; k < r && cols_ok; ++k)
            for (int q = 0; q < r && cols_ok; ++q) {
                i64 s = 0;
                for (int i = 0; i < r; ++i) s = (s + mul_mod(v[i][k], vc[i][q], l)) % l;
                if (s != (k == q ? centraliser[k] % l : 0)) cols_ok = false;
            }
    }
    rep.rows = rows_ok;
    rep.columns = cols_ok;
    return rep;
}

OrthogonalityReport check_orthogonality_direct(const CharacterTable& t, const FiniteGroup& g) {
    OrthogonalityReport rep;
    const int r = t.classes.count();
    long long deg_sum = 0;
    for (const auto& c : t.chars) deg_sum += static_cast<long long>(c.degree) * c.degree;
    rep.degree_sum = (deg_sum == g.order);
    if (t.size() != r) return rep;
    rep.rows = true;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            CycloElement s(t.m);
            for (int k = 0; k < r; ++k)
                s += t.chars[i].values[k] * t.chars[j].values[k].conj() * mpq_class(t.classes.sizes[k]);
            if (s != CycloElement::rational(t.m, i == j ? g.order : 0)) rep.rows = false;
        }
    rep.columns = true;
    for (int k = 0; k < r; ++k)
        for (int q = 0; q < r; ++q) {
            CycloElement s(t.m);
            for (int i = 0; i < r; ++i) s += t.chars[i].values[k] * t.chars[i].values[q].conj();
            if (s != CycloElement::rational(t.m, k == q ? g.order / t.classes.sizes[k] : 0)) rep.columns = false;
        }
    return rep;
}

}  // namespace iwasawa
