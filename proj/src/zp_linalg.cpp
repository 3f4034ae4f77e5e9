#include "iwasawa/zp_linalg.hpp"

#include <algorithm>

#include "iwasawa/error.hpp"

namespace iwasawa {

ZpContext::ZpContext(i64 p_, int N_) : p(p_), N(N_) {
    if (N < 1) throw Error(ErrorCode::PrecisionLoss, "no p-adic digits left");
    mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(N));
}

void ZpContext::reduce(mpz_class& x) const {
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
}

void ZpContext::reduce(ZpVec& v) const {
    for (auto& x : v) reduce(x);
}

int ZpContext::valuation(const mpz_class& x) const {
    mpz_class r = x;
    reduce(r);
    if (r == 0) return N;
    int v = 0;
    const mpz_class pp = p;
    while (mpz_divisible_p(r.get_mpz_t(), pp.get_mpz_t())) {
        r /= pp;
        ++v;
    }
    return v;
}

int ZpContext::valuation(const ZpVec& v) const {
    int best = N;
    for (const auto& x : v) best = std::min(best, valuation(x));
    return best;
}

mpz_class ZpContext::unit_inverse(const mpz_class& u) const {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), u.get_mpz_t(), modulus.get_mpz_t()))
        throw Error(ErrorCode::NotAUnit, "inverting a non-unit modulo p^N");
    return r;
}

mpz_class ZpContext::power(int k) const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    return r;
}

// ---------------------------------------------------------------------------------------------
// lattices

int ZpLattice::index_valuation() const {
    int s = 0;
    for (int v : valuations) s += v;
    return s;
}

std::optional<ZpVec> ZpLattice::coordinates(const ZpVec& y) const {
    const int n = rank();
    ZpVec x(n, 0);
    for (int k = 0; k < n; ++k) {
        const mpz_class& yk = y[pivots[k]];
        if (yk == 0) continue;
        for (int j = 0; j < n; ++j) x[j] += yk * scaled_inverse[k][j];
    }
    const mpz_class pe = ctx.power(exponent);
    for (auto& xi : x) {
        ctx.reduce(xi);
        if (!mpz_divisible_p(xi.get_mpz_t(), pe.get_mpz_t())) return std::nullopt;
        mpz_divexact(xi.get_mpz_t(), xi.get_mpz_t(), pe.get_mpz_t());
    }
    ZpVec residual = y;
    for (int j = 0; j < n; ++j) {
        if (x[j] == 0) continue;
        for (std::size_t c = 0; c < residual.size(); ++c) residual[c] -= x[j] * basis[j][c];
    }
    if (ctx.valuation(residual) < ctx.N - exponent) return std::nullopt;
    return x;
}

ZpLattice make_lattice(const ZpContext& ctx, std::vector<ZpVec> rows, int zero_threshold) {
    const int thr = zero_threshold < 0 ? ctx.N : zero_threshold;
    ZpLattice L;
    L.ctx = ctx;
    if (rows.empty()) return L;
    const int m = static_cast<int>(rows[0].size());
    for (auto& r : rows) ctx.reduce(r);
    int r = 0;
    for (int col = 0; col < m && r < static_cast<int>(rows.size()); ++col) {
        int best = -1, bestv = thr;
        for (int i = r; i < static_cast<int>(rows.size()); ++i) {
            int v = ctx.valuation(rows[i][col]);
            if (v < bestv) {
                best = i;
                bestv = v;
            }
        }
        if (best < 0) continue;
        if (2 * bestv > ctx.N)
            throw Error(ErrorCode::PrecisionLoss, "lattice pivot of valuation " + std::to_string(bestv) +
                                                      " at precision " + std::to_string(ctx.N));
        std::swap(rows[r], rows[best]);
        const mpz_class pv = ctx.power(bestv);
        mpz_class u;
        mpz_divexact(u.get_mpz_t(), rows[r][col].get_mpz_t(), pv.get_mpz_t());
        const mpz_class uinv = ctx.unit_inverse(u);
        for (auto& x : rows[r]) {
            x *= uinv;
            ctx.reduce(x);
        }
        rows[r][col] = pv;
        for (int i = r + 1; i < static_cast<int>(rows.size()); ++i) {
            if (rows[i][col] == 0) continue;
            mpz_class factor = rows[i][col] / pv;
            for (int c = col; c < m; ++c) {
                rows[i][c] -= factor * rows[r][c];
                ctx.reduce(rows[i][c]);
            }
        }
        L.pivots.push_back(col);
        L.valuations.push_back(bestv);
        ++r;
    }
    rows.resize(r);
    L.basis = std::move(rows);

    // Y = p^E * inverse of the upper triangular pivot block, by back substitution with E guard digits
    const int n = r;
    const int E = L.index_valuation();
    const ZpContext wide(ctx.p, ctx.N + 2 * E);
    const mpz_class pE = wide.power(E);
    std::vector<ZpVec> Y(n, ZpVec(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            mpz_class acc = (i == j) ? pE : mpz_class(0);
            for (int k = i; k < j; ++k) acc -= Y[i][k] * L.basis[k][L.pivots[j]];
            wide.reduce(acc);
            mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), wide.power(L.valuations[j]).get_mpz_t());
            Y[i][j] = acc;
        }
    }
    const ZpContext known(ctx.p, ctx.N + E);
    int minv = E;
    for (auto& row : Y)
        for (auto& y : row) {
            known.reduce(y);
            minv = std::min(minv, known.valuation(y));
        }
    L.exponent = E - minv;
    const mpz_class shift = ctx.power(minv);
    for (auto& row : Y)
        for (auto& y : row) {
            mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), shift.get_mpz_t());
            ctx.reduce(y);
        }
    L.scaled_inverse = std::move(Y);
    return L;
}

std::vector<ZpVec> zp_left_kernel(const ZpContext& ctx, const std::vector<ZpVec>& rows, int slack) {
    const int k = static_cast<int>(rows.size());
    if (k == 0) return {};
    const int m = static_cast<int>(rows[0].size());
    const int thr = ctx.N - slack;
    std::vector<ZpVec> a(k);
    for (int i = 0; i < k; ++i) {
        a[i] = rows[i];
        a[i].resize(m + k, 0);
        a[i][m + i] = 1;
        ctx.reduce(a[i]);
    }
    int r = 0;
    for (int col = 0; col < m && r < k; ++col) {
        int best = -1, bestv = thr;
        for (int i = r; i < k; ++i) {
            int v = ctx.valuation(a[i][col]);
            if (v < bestv) {
                best = i;
                bestv = v;
            }
        }
        if (best < 0) continue;
        if (2 * bestv > thr)
            throw Error(ErrorCode::PrecisionLoss, "kernel rank is ambiguous at precision " + std::to_string(ctx.N));
        std::swap(a[r], a[best]);
        const mpz_class pv = ctx.power(bestv);
        mpz_class u;
        mpz_divexact(u.get_mpz_t(), a[r][col].get_mpz_t(), pv.get_mpz_t());
        const mpz_class uinv = ctx.unit_inverse(u);
        for (auto& x : a[r]) {
            x *= uinv;
            ctx.reduce(x);
        }
        for (int i = r + 1; i < k; ++i) {
            if (a[i][col] == 0) continue;
            mpz_class factor = a[i][col] / pv;
            for (int c = col; c < m + k; ++c) {
                a[i][c] -= factor * a[r][c];
                ctx.reduce(a[i][c]);
            }
        }
        ++r;
    }
    std::vector<ZpVec> out;
    for (int i = r; i < k; ++i) out.emplace_back(a[i].begin() + m, a[i].end());
    return out;
}

// ---------------------------------------------------------------------------------------------
// F_p

FpVec FpRref::reduce(FpVec v) const {
    for (int r = 0; r < rank(); ++r) {
        i64 c = v[pivots[r]];
        if (c == 0) continue;
        for (int j = 0; j < cols; ++j)
            if (rows[r][j]) v[j] = fp_norm(v[j] - c * rows[r][j], p);
    }
    return v;
}

bool FpRref::contains(const FpVec& v) const {
    auto w = reduce(v);
    return std::all_of(w.begin(), w.end(), [](i64 x) { return x == 0; });
}

std::vector<int> FpRref::free_columns() const {
    std::vector<int> out;
    std::size_t r = 0;
    for (int c = 0; c < cols; ++c) {
        if (r < pivots.size() && pivots[r] == c)
            ++r;
        else
            out.push_back(c);
    }
    return out;
}

FpRref fp_rref(i64 p, int cols, std::vector<FpVec> rows) {
    FpRref out;
    out.p = p;
    out.cols = cols;
    int r = 0;
    for (auto& row : rows)
        for (auto& x : row) x = fp_norm(x, p);
    for (int col = 0; col < cols && r < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        const i64 inv = inv_mod(rows[r][col], p);
        for (auto& x : rows[r]) x = mul_mod(x, inv, p);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            const i64 c = rows[i][col];
            for (int j = col; j < cols; ++j) rows[i][j] = fp_norm(rows[i][j] - c * rows[r][j], p);
        }
        out.pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

std::vector<FpVec> fp_left_kernel(i64 p, const std::vector<FpVec>& rows, int cols) {
    const int k = static_cast<int>(rows.size());
    std::vector<FpVec> a(k);
    for (int i = 0; i < k; ++i) {
        a[i] = rows[i];
        a[i].resize(cols + k, 0);
        a[i][cols + i] = 1;
        for (auto& x : a[i]) x = fp_norm(x, p);
    }
    int r = 0;
    for (int col = 0; col < cols && r < k; ++col) {
        int piv = -1;
        for (int i = r; i < k; ++i)
            if (a[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        const i64 inv = inv_mod(a[r][col], p);
        for (auto& x : a[r]) x = mul_mod(x, inv, p);
        for (int i = r + 1; i < k; ++i) {
            if (a[i][col] == 0) continue;
            const i64 c = a[i][col];
            for (int j = col; j < cols + k; ++j) a[i][j] = fp_norm(a[i][j] - c * a[r][j], p);
        }
        ++r;
    }
    std::vector<FpVec> kernel;
    for (int i = r; i < k; ++i) kernel.emplace_back(a[i].begin() + cols, a[i].end());
    return fp_rref(p, k, std::move(kernel)).rows;
}

}  // namespace iwasawa
