#include "iwasawa/maximal_order.hpp"

#include <cmath>
#include <numeric>

#include "iwasawa/error.hpp"

namespace iwasawa {

namespace {

constexpr int kMinimumDigits = 6;

ZpAlgebra from_products(const ZpLattice& L, int scale, const std::function<ZpVec(int, int)>& product,
                        const ZpVec& scaled_one) {
    const ZpContext& ctx = L.ctx;
    const int n = L.rank();
    const int digits = ctx.N - scale - L.exponent;
    if (digits < kMinimumDigits)
        throw Error(ErrorCode::PrecisionLoss, "order change leaves " + std::to_string(digits) + " digits");
    const mpz_class ps = ctx.power(scale);
    // coordinates of y itself, then divided: dividing y first would leave it known only mod p^(N - scale)
    auto to_coordinates = [&](ZpVec y, const char* what) {
        ctx.reduce(y);
        auto c = L.coordinates(y);
        if (!c) throw Error(ErrorCode::InvalidArgument, std::string("lattice is not an order: ") + what);
        for (auto& x : *c) {
            if (!mpz_divisible_p(x.get_mpz_t(), ps.get_mpz_t()))
                throw Error(ErrorCode::InvalidArgument, std::string("lattice is not an order: ") + what);
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), ps.get_mpz_t());
        }
        return *c;
    };
    std::vector<mpz_class> constants(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto c = to_coordinates(product(i, j), "product leaves the lattice");
            for (int k = 0; k < n; ++k) constants[(static_cast<std::size_t>(i) * n + j) * n + k] = c[k];
        }
    auto one_coords = L.coordinates(scaled_one);
    if (!one_coords) throw Error(ErrorCode::InvalidArgument, "lattice is not an order: identity missing");
    return ZpAlgebra(ctx.p, digits, n, std::move(constants), std::move(*one_coords));
}

/** Rows of lift(I) + p Lambda in echelon form: lifted pivots rows and p e_j on the free columns. */
std::vector<ZpVec> ideal_generators(const FpRref& subspace, int n, i64 p) {
    std::vector<ZpVec> rows;
    std::size_t r = 0;
    for (int col = 0; col < n; ++col) {
        ZpVec row(n, 0);
        if (r < subspace.pivots.size() && subspace.pivots[r] == col) {
            for (int k = 0; k < n; ++k) row[k] = subspace.rows[r][k];
            ++r;
        } else {
            row[col] = p;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

struct FpAlgebra {
    i64 p;
    int n;
    std::vector<i64> c;  // structure constants mod p

    explicit FpAlgebra(const ZpAlgebra& a) : p(a.prime()), n(a.dim()), c(static_cast<std::size_t>(n) * n * n) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    mpz_class v = a.constant(i, j, k) % p;
                    c[(static_cast<std::size_t>(i) * n + j) * n + k] = v.get_si();
                }
    }
    FpVec mul(const FpVec& x, const FpVec& y) const {
        FpVec z(n, 0);
        for (int i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < n; ++j) {
                if (y[j] == 0) continue;
                const i64 xy = x[i] * y[j] % p;
                const i64* row = &c[(static_cast<std::size_t>(i) * n + j) * n];
                for (int k = 0; k < n; ++k) z[k] += xy * row[k];
            }
        }
        for (auto& v : z) v %= p;
        return z;
    }
    FpVec basis(int i) const {
        FpVec e(n, 0);
        e[i] = 1;
        return e;
    }
};

FpVec to_fp(const ZpVec& v, i64 p) {
    FpVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        mpz_class r = v[i] % p;
        out[i] = fp_norm(r.get_si(), p);
    }
    return out;
}

ZpVec to_zp(const FpVec& v) {
    ZpVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<long>(v[i]);
    return out;
}

FpVec combine(const std::vector<FpVec>& basis, const FpVec& coeffs, i64 p, int n) {
    FpVec out(n, 0);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        if (coeffs[a] == 0) continue;
        for (int k = 0; k < n; ++k) out[k] = (out[k] + coeffs[a] * basis[a][k]) % p;
    }
    return out;
}

/** Basis (as elements of Lambda/p Lambda) of the centre of S = (Lambda/p Lambda)/J. */
std::vector<FpVec> quotient_centre(const FpAlgebra& A, const FpRref& J) {
    const auto free = J.free_columns();
    const int d = static_cast<int>(free.size());
    std::vector<FpVec> rows(d);
    for (int a = 0; a < d; ++a) {
        FpVec row;
        row.reserve(static_cast<std::size_t>(d) * d);
        for (int b = 0; b < d; ++b) {
            auto ab = A.mul(A.basis(free[a]), A.basis(free[b]));
            auto ba = A.mul(A.basis(free[b]), A.basis(free[a]));
            for (int k = 0; k < A.n; ++k) ab[k] = fp_norm(ab[k] - ba[k], A.p);
            ab = J.reduce(ab);
            for (int f : free) row.push_back(ab[f]);
        }
        rows[a] = std::move(row);
    }
    std::vector<FpVec> out;
    for (const auto& k : fp_left_kernel(A.p, rows, d * d)) {
        FpVec z(A.n, 0);
        for (int a = 0; a < d; ++a) z[free[a]] = k[a];
        out.push_back(std::move(z));
    }
    return out;
}

FpVec quotient_power(const FpAlgebra& A, const FpRref& J, FpVec x, i64 e, const FpVec& one) {
    FpVec r = J.reduce(one);
    x = J.reduce(x);
    while (e > 0) {
        if (e & 1) r = J.reduce(A.mul(r, x));
        x = J.reduce(A.mul(x, x));
        e >>= 1;
    }
    return r;
}

/** F_p-subspace K with O(I) = p^-1 (lift(K) + p Lambda), for I = lift(subspace) + p Lambda. */
std::vector<FpVec> order_kernel(const ZpAlgebra& A, const FpRref& subspace, bool left) {
    const int n = A.dim();
    const i64 p = A.prime();
    const auto gens = ideal_generators(subspace, n, p);
    const ZpLattice L = make_lattice(A.context(), gens);
    std::vector<FpVec> rows(n);
    for (int y = 0; y < n; ++y) {
        FpVec row;
        row.reserve(static_cast<std::size_t>(n) * n);
        for (const auto& g : gens) {
            ZpVec prod(n, 0);
            for (int k = 0; k < n; ++k) {
                if (g[k] == 0) continue;
                for (int m = 0; m < n; ++m) prod[m] += g[k] * (left ? A.constant(y, k, m) : A.constant(k, y, m));
            }
            auto c = L.coordinates(prod);
            if (!c) throw Error(ErrorCode::InvalidArgument, "subspace does not define an ideal");
            auto cf = to_fp(*c, p);
            row.insert(row.end(), cf.begin(), cf.end());
        }
        rows[y] = std::move(row);
    }
    return fp_left_kernel(p, rows, n * n);
}

using Matrix64 = std::vector<i64>;

Matrix64 mat_mul(const Matrix64& a, const Matrix64& b, int n, i64 mod) {
    Matrix64 c(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const i64 aik = a[i * n + k];
            if (aik == 0) continue;
            for (int j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
        }
    for (auto& x : c) x %= mod;
    return c;
}

Matrix64 mat_pow(Matrix64 a, i64 e, int n, i64 mod) {
    Matrix64 r(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) r[i * n + i] = 1 % mod;
    while (e > 0) {
        if (e & 1) r = mat_mul(r, a, n, mod);
        e >>= 1;
        if (e) a = mat_mul(a, a, n, mod);
    }
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// ZpAlgebra

ZpAlgebra::ZpAlgebra(i64 p, int N, int n, std::vector<mpz_class> constants, ZpVec one)
    : ctx_(p, N), n_(n), c_(std::move(constants)), one_(std::move(one)) {
    if (c_.size() != static_cast<std::size_t>(n) * n * n || one_.size() != static_cast<std::size_t>(n))
        throw Error(ErrorCode::MalformedInput, "structure constant table has the wrong size");
    for (auto& x : c_) ctx_.reduce(x);
    ctx_.reduce(one_);
}

ZpVec ZpAlgebra::basis(int i) const {
    ZpVec e(n_, 0);
    e[i] = 1;
    return e;
}

ZpVec ZpAlgebra::mul(const ZpVec& x, const ZpVec& y) const {
    ZpVec z(n_, 0);
    mpz_class xy;
    for (int i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (y[j] == 0) continue;
            xy = x[i] * y[j];
            const mpz_class* row = &c_[(static_cast<std::size_t>(i) * n_ + j) * n_];
            for (int k = 0; k < n_; ++k)
                if (row[k] != 0) z[k] += xy * row[k];
        }
    }
    ctx_.reduce(z);
    return z;
}

ZpVec ZpAlgebra::add(const ZpVec& x, const ZpVec& y) const {
    ZpVec z(n_);
    for (int i = 0; i < n_; ++i) z[i] = x[i] + y[i];
    ctx_.reduce(z);
    return z;
}

ZpVec ZpAlgebra::sub(const ZpVec& x, const ZpVec& y) const {
    ZpVec z(n_);
    for (int i = 0; i < n_; ++i) z[i] = x[i] - y[i];
    ctx_.reduce(z);
    return z;
}

std::vector<ZpVec> ZpAlgebra::left_matrix(const ZpVec& x) const {
    std::vector<ZpVec> M(n_, ZpVec(n_, 0));
    for (int i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (int l = 0; l < n_; ++l) {
            const mpz_class* row = &c_[(static_cast<std::size_t>(i) * n_ + l) * n_];
            for (int k = 0; k < n_; ++k)
                if (row[k] != 0) M[l][k] += x[i] * row[k];
        }
    }
    for (auto& r : M) ctx_.reduce(r);
    return M;
}

bool ZpAlgebra::is_associative(int slack) const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k) {
                auto lhs = mul(mul(basis(i), basis(j)), basis(k));
                auto rhs = mul(basis(i), mul(basis(j), basis(k)));
                if (ctx_.valuation(sub(lhs, rhs)) < ctx_.N - slack) return false;
            }
    return true;
}

ZpAlgebra ZpAlgebra::enlarge(const std::vector<FpVec>& subspace) const {
    const FpRref K = fp_rref(ctx_.p, n_, subspace);
    const auto gens = ideal_generators(K, n_, ctx_.p);
    const ZpLattice L = make_lattice(ctx_, gens);
    std::vector<std::vector<ZpVec>> left(n_);
    for (int i = 0; i < n_; ++i) left[i] = left_matrix(gens[i]);
    auto product = [&](int i, int j) {
        ZpVec z(n_, 0);
        for (int l = 0; l < n_; ++l) {
            if (gens[j][l] == 0) continue;
            for (int k = 0; k < n_; ++k) z[k] += gens[j][l] * left[i][l][k];
        }
        return z;
    };
    ZpVec scaled_one = one_;
    for (auto& x : scaled_one) x *= ctx_.p;
    return from_products(L, 1, product, scaled_one);
}

ZpAlgebra algebra_from_lattice(i64 p, int N, const std::vector<ZpVec>& generators, int scale,
                               const AmbientProduct& multiply, const ZpVec& scaled_one) {
    const ZpContext ctx(p, N);
    const ZpLattice L = make_lattice(ctx, generators);
    return from_products(
        L, scale, [&](int i, int j) { return multiply(L.basis[i], L.basis[j]); }, scaled_one);
}

// ---------------------------------------------------------------------------------------------
// radical

FpRref radical_mod_p(const ZpAlgebra& order) {
    const int n = order.dim();
    const i64 p = order.prime();
    int levels = 0;
    while (ipow(p, levels + 1) <= n) ++levels;
    const i64 top = ipow(p, levels + 1);
    std::vector<i64> c(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                mpz_class v = order.constant(i, j, k) % top;
                c[(static_cast<std::size_t>(i) * n + j) * n + k] = v.get_si();
            }
    auto C = [&](int i, int j, int k) { return c[(static_cast<std::size_t>(i) * n + j) * n + k]; };
    std::vector<i64> trace_form(n, 0);
    for (int a = 0; a < n; ++a)
        for (int l = 0; l < n; ++l) trace_form[a] = (trace_form[a] + C(a, l, l)) % p;

    std::vector<FpVec> ideal;
    for (int k = 0; k < n; ++k) {
        FpVec e(n, 0);
        e[k] = 1;
        ideal.push_back(std::move(e));
    }
    for (int level = 0; level <= levels && !ideal.empty(); ++level) {
        const i64 mod = ipow(p, level + 1);
        const i64 scale = ipow(p, level);
        std::vector<FpVec> form(ideal.size(), FpVec(n, 0));
        for (std::size_t x = 0; x < ideal.size(); ++x) {
            for (int j = 0; j < n; ++j) {
                std::vector<i64> z(n, 0);
                for (int a = 0; a < n; ++a) {
                    if (ideal[x][a] == 0) continue;
                    for (int m = 0; m < n; ++m) z[m] += ideal[x][a] * C(a, j, m);
                }
                for (auto& v : z) v %= mod;
                if (level == 0) {
                    i64 t = 0;
                    for (int a = 0; a < n; ++a) t += z[a] * trace_form[a];
                    form[x][j] = fp_norm(t, p);
                    continue;
                }
                Matrix64 L(static_cast<std::size_t>(n) * n, 0);
                for (int a = 0; a < n; ++a) {
                    if (z[a] == 0) continue;
                    for (int l = 0; l < n; ++l)
                        for (int m = 0; m < n; ++m) L[m * n + l] += z[a] * C(a, l, m);
                }
                for (auto& v : L) v %= mod;
                Matrix64 P = mat_pow(std::move(L), scale, n, mod);
                i64 t = 0;
                for (int m = 0; m < n; ++m) t += P[m * n + m];
                t = fp_norm(t, mod);
                if (t % scale != 0) throw Error(ErrorCode::InvalidArgument, "radical trace form is not integral");
                form[x][j] = (t / scale) % p;
            }
        }
        std::vector<FpVec> next;
        for (const auto& k : fp_left_kernel(p, form, n)) next.push_back(combine(ideal, k, p, n));
        ideal = fp_rref(p, n, std::move(next)).rows;
    }
    return fp_rref(p, n, std::move(ideal));
}

std::vector<FpVec> central_idempotents(const ZpAlgebra& order, const FpRref& radical, std::mt19937_64& rng) {
    const FpAlgebra A(order);
    const i64 p = A.p;
    const FpVec one = radical.reduce(to_fp(order.one(), p));
    const auto centre = quotient_centre(A, radical);
    // Berlekamp subalgebra: z^p = z
    std::vector<FpVec> frob_rows;
    for (const auto& z : centre) {
        auto fz = quotient_power(A, radical, z, p, one);
        for (int k = 0; k < A.n; ++k) fz[k] = fp_norm(fz[k] - z[k], p);
        frob_rows.push_back(std::move(fz));
    }
    std::vector<FpVec> berlekamp;
    for (const auto& k : fp_left_kernel(p, frob_rows, A.n)) berlekamp.push_back(combine(centre, k, p, A.n));
    const std::size_t components = berlekamp.size();

    std::vector<FpVec> idems{one};
    std::uniform_int_distribution<i64> coeff(0, p - 1);
    for (int attempt = 0; idems.size() < components; ++attempt) {
        if (attempt > 200) throw Error(ErrorCode::InvalidArgument, "idempotent splitting did not converge");
        FpVec lambda(components);
        for (auto& l : lambda) l = coeff(rng);
        const FpVec b = combine(berlekamp, lambda, p, A.n);
        std::vector<FpVec> refined;
        for (const auto& e : idems) {
            for (i64 value = 0; value < p; ++value) {
                FpVec part = e;
                for (i64 mu = 0; mu < p; ++mu) {
                    if (mu == value) continue;
                    FpVec factor(A.n);
                    const i64 inv = inv_mod(fp_norm(value - mu, p), p);
                    for (int k = 0; k < A.n; ++k) factor[k] = mul_mod(fp_norm(b[k] - mu * one[k], p), inv, p);
                    part = radical.reduce(A.mul(part, factor));
                }
                if (std::any_of(part.begin(), part.end(), [](i64 x) { return x != 0; })) refined.push_back(part);
            }
        }
        idems = std::move(refined);
    }
    return idems;
}

MaximalOrder maximal_order(ZpAlgebra start, std::mt19937_64& rng) {
    MaximalOrder out{std::move(start), {}, 0};
    for (;;) {
        ZpAlgebra& A = out.order;
        out.radical = radical_mod_p(A);
        bool grown = false;
        for (bool left : {true, false}) {
            auto K = order_kernel(A, out.radical, left);
            if (!K.empty()) {
                A = A.enlarge(K);
                grown = true;
                break;
            }
        }
        if (grown) {
            ++out.enlargements;
            continue;
        }
        const auto idems = central_idempotents(A, out.radical, rng);
        if (idems.size() == 1) return out;
        const FpAlgebra Af(A);
        for (const auto& c : idems) {
            std::vector<FpVec> rows;
            for (int y = 0; y < A.dim(); ++y) rows.push_back(out.radical.reduce(Af.mul(Af.basis(y), c)));
            const FpRref ideal = fp_rref(A.prime(), A.dim(), fp_left_kernel(A.prime(), rows, A.dim()));
            for (bool left : {true, false}) {
                auto K = order_kernel(A, ideal, left);
                if (!K.empty()) {
                    A = A.enlarge(K);
                    grown = true;
                    break;
                }
            }
            if (grown) break;
        }
        if (!grown) return out;
        ++out.enlargements;
    }
}

// ---------------------------------------------------------------------------------------------
// invariants

LocalInvariants local_invariants(const MaximalOrder& maximal, int centre_residue_degree, int centre_degree,
                                 std::mt19937_64& rng) {
    const ZpAlgebra& A = maximal.order;
    const FpRref& J = maximal.radical;
    const FpAlgebra Af(A);
    const int n = A.dim();
    const i64 p = A.prime();
    const int quotient_dim = n - J.rank();
    const auto centre = quotient_centre(Af, J);
    const int c = static_cast<int>(centre.size());
    auto fail = [&](const std::string& why) {
        return Error(ErrorCode::BackendUnavailable, "order is not maximal in a simple algebra: " + why);
    };
    if (c % centre_residue_degree != 0 || quotient_dim % c != 0) throw fail("residue dimensions");
    LocalInvariants inv;
    inv.s = c / centre_residue_degree;
    const int nn = quotient_dim / c;
    inv.n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nn))));
    if (inv.n * inv.n != nn) throw fail("matrix size");
    if (n != nn * inv.s * inv.s * centre_degree) throw fail("dimension count");
    if (inv.s == 1) return inv;

    const FpVec one = J.reduce(to_fp(A.one(), p));
    std::uniform_int_distribution<i64> coeff(0, p - 1);
    // z generates the residue field of the centre of Lambda/rad over F_p
    FpVec z;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 500) throw fail("no generator of the residue centre");
        FpVec lambda(c);
        for (auto& l : lambda) l = coeff(rng);
        z = combine(centre, lambda, p, n);
        std::vector<FpVec> powers;
        FpVec w = one;
        for (int k = 0; k < c; ++k) {
            powers.push_back(w);
            w = J.reduce(Af.mul(w, z));
        }
        if (fp_rref(p, n, powers).rank() == c) break;
    }
    const ZpContext& ctx = A.context();
    const auto rad_gens = ideal_generators(J, n, p);
    const ZpLattice R = make_lattice(ctx, rad_gens);
    ZpVec y;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 500) throw fail("no generator of the radical");
        y.assign(n, 0);
        for (const auto& g : rad_gens) {
            const i64 a = coeff(rng);
            if (a == 0) continue;
            for (int k = 0; k < n; ++k) y[k] += a * g[k];
        }
        ctx.reduce(y);
        std::vector<ZpVec> rows;
        for (int i = 0; i < n; ++i) rows.push_back(A.mul(y, A.basis(i)));
        const ZpLattice yL = make_lattice(ctx, rows);
        if (yL.rank() == n && yL.index_valuation() == R.index_valuation()) break;
    }
    std::vector<ZpVec> sq;
    for (const auto& g : R.basis) sq.push_back(A.mul(y, g));
    const ZpLattice R2 = make_lattice(ctx, sq);

    const i64 q = ipow(p, centre_residue_degree);
    const ZpVec yz = A.mul(y, to_zp(z));
    FpVec w = z;
    std::vector<int> candidates;
    for (int j = 0; j < inv.s; ++j) {
        if (R2.contains(A.sub(yz, A.mul(to_zp(w), y)))) candidates.push_back(j);
        w = quotient_power(Af, J, w, q, one);
    }
    if (candidates.size() != 1) throw Error(ErrorCode::PrecisionLoss, "Hasse invariant is not determined");
    inv.r = candidates[0];
    if (std::gcd(inv.r, inv.s) != 1) throw fail("twist exponent not coprime to the index");
    return inv;
}

}  // namespace iwasawa
