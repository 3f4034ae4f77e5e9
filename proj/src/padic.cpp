#include "iwasawa/padic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "iwasawa/error.hpp"

namespace iwasawa {

// ---------------------------------------------------------------------------------------------
// residue field

ResidueField::ResidueField(i64 p, int f) : p_(p), q_(ipow(p, f)), f_(f) {
    order_factors_ = factorize(q_ - 1);
    // first monic polynomial (in base-p order of its low coefficients) whose root X has order q-1
    g_.assign(f + 1, 0);
    g_[f] = 1;
    for (i64 code = 1;; ++code) {
        i64 c = code;
        for (int i = 0; i < f; ++i) {
            g_[i] = c % p;
            c /= p;
        }
        if (c != 0) throw Error(ErrorCode::InternalPrimeSearchFailed, "no primitive polynomial found");
        if (g_[0] == 0) continue;
        Elem x = generator();
        if (pow(x, q_ - 1) != one()) continue;
        bool primitive = true;
        for (auto [r, e] : order_factors_)
            if (pow(x, (q_ - 1) / r) == one()) {
                primitive = false;
                break;
            }
        if (primitive) return;
    }
}

ResidueField::Elem ResidueField::one() const {
    Elem e(f_, 0);
    e[0] = 1;
    return e;
}

ResidueField::Elem ResidueField::generator() const {
    Elem x(f_, 0);
    if (f_ == 1)
        x[0] = mod_norm(-g_[0], p_);
    else
        x[1] = 1;
    return x;
}

ResidueField::Elem ResidueField::mul(const Elem& a, const Elem& b) const {
    std::vector<i64> prod(2 * f_ - 1, 0);
    for (int i = 0; i < f_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    }
    for (int d = 2 * f_ - 2; d >= f_; --d) {
        i64 c = prod[d];
        if (c == 0) continue;
        for (int k = 0; k < f_; ++k) prod[d - f_ + k] = mod_norm(prod[d - f_ + k] - c * g_[k], p_);
    }
    prod.resize(f_);
    return prod;
}

ResidueField::Elem ResidueField::pow(Elem a, i64 e) const {
    Elem r = one();
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

bool ResidueField::is_zero(const Elem& a) const {
    return std::all_of(a.begin(), a.end(), [](i64 x) { return x == 0; });
}

i64 ResidueField::encode(const Elem& a) const {
    i64 code = 0;
    for (int i = f_ - 1; i >= 0; --i) code = code * p_ + a[i];
    return code;
}

i64 ResidueField::log(const Elem& a) const {
    if (is_zero(a)) throw Error(ErrorCode::NotAUnit, "discrete log of zero");
    const i64 n = q_ - 1;
    const Elem gen = generator();
    i64 result = 0, modulus = 1;
    for (auto [r, e] : order_factors_) {
        i64 re = ipow(r, e);
        Elem g = pow(gen, n / re), h = pow(a, n / re);
        Elem gamma = pow(g, re / r);  // order r
        i64 step = static_cast<i64>(std::ceil(std::sqrt(static_cast<double>(r))));
        std::unordered_map<i64, i64> baby;
        Elem cur = one();
        for (i64 j = 0; j < step; ++j) {
            baby.emplace(encode(cur), j);
            cur = mul(cur, gamma);
        }
        Elem giant = pow(inverse(gamma), step);
        i64 x = 0, rk = 1;
        for (int k = 0; k < e; ++k) {
            Elem target = mul(pow(inverse(g), x), h);
            target = pow(target, re / (rk * r));
            i64 digit = -1;
            Elem y = target;
            for (i64 i = 0; i <= step && digit < 0; ++i) {
                auto it = baby.find(encode(y));
                if (it != baby.end()) digit = i * step + it->second;
                y = mul(y, giant);
            }
            if (digit < 0) throw Error(ErrorCode::InternalPrimeSearchFailed, "discrete log failed");
            x += digit * rk;
            rk *= r;
        }
        result = crt_pair(result, modulus, x % re, re);
        modulus *= re;
    }
    return result;
}

// ---------------------------------------------------------------------------------------------
// ring

namespace {

using Vec = PadicRing::Vec;

void mod_in_place(mpz_class& x, const mpz_class& m) { mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()); }

// Product in (Z/p^N)[X]/(g) for monic g of degree f.
Vec poly_mulmod(const Vec& a, const Vec& b, const Vec& g, const mpz_class& pN) {
    const int f = static_cast<int>(g.size()) - 1;
    Vec prod(2 * f - 1, 0);
    for (int i = 0; i < f; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (int j = 0; j < f; ++j) mpz_addmul(prod[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    for (int d = 2 * f - 2; d >= f; --d) {
        mod_in_place(prod[d], pN);
        if (sgn(prod[d]) == 0) continue;
        for (int k = 0; k < f; ++k) mpz_submul(prod[d - f + k].get_mpz_t(), prod[d].get_mpz_t(), g[k].get_mpz_t());
    }
    prod.resize(f);
    for (auto& x : prod) mod_in_place(x, pN);
    return prod;
}

Vec poly_powmod(Vec a, i64 e, const Vec& g, const mpz_class& pN) {
    const int f = static_cast<int>(g.size()) - 1;
    Vec r(f, 0);
    r[0] = 1;
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, a, g, pN);
        a = poly_mulmod(a, a, g, pN);
        e >>= 1;
    }
    return r;
}

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace

PadicRing::PadicRing(i64 M, i64 p, int N) : group_(M, p), N_(N) {
    if (N < 2) throw Error(ErrorCode::InvalidArgument, "precision must be at least 2");
    mpz_ui_pow_ui(pN_.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(N));
    f0_ = static_cast<int>(group_.residue_degree());
    E_ = static_cast<int>(group_.ramification_index());
    residue_ = ResidueField(p, f0_);

    // Teichmueller lift of the residue generator: iterate x -> x^q0 in (Z/p^N)[X]/(g)
    Vec g(f0_ + 1);
    for (int i = 0; i <= f0_; ++i) g[i] = static_cast<long>(residue_.modulus()[i]);
    Vec x(f0_, 0);
    auto gen = residue_.generator();
    for (int i = 0; i < f0_; ++i) x[i] = static_cast<long>(gen[i]);
    for (int it = 0; it <= N + 1; ++it) {
        Vec next = poly_powmod(x, residue_.size(), g, pN_);
        if (next == x) break;
        x = std::move(next);
    }
    // minimal polynomial prod (Y - omega^{p^i}); its coefficients are constants of the quotient ring
    std::vector<Vec> poly{Vec(f0_, 0)};
    poly[0][0] = 1;
    Vec conj = x;
    for (int i = 0; i < f0_; ++i) {
        std::vector<Vec> next(poly.size() + 1, Vec(f0_, 0));
        for (std::size_t k = 0; k < poly.size(); ++k) {
            Vec t = poly_mulmod(poly[k], conj, g, pN_);
            for (int c = 0; c < f0_; ++c) {
                next[k + 1][c] += poly[k][c];
                next[k][c] -= t[c];
            }
        }
        for (auto& v : next)
            for (auto& c : v) mod_in_place(c, pN_);
        poly = std::move(next);
        conj = poly_powmod(conj, p, g, pN_);
    }
    omega_poly_.resize(f0_ + 1);
    for (int k = 0; k <= f0_; ++k) {
        for (int c = 1; c < f0_; ++c)
            if (sgn(poly[k][c]) != 0)
                throw Error(ErrorCode::PrecisionLoss, "Teichmueller minimal polynomial is not over Z_p");
        omega_poly_[k] = poly[k][0];
    }

    const int t = group_.p_exponent();
    if (t == 0) {
        pi_poly_ = {mpz_class(-p), mpz_class(1)};
    } else {
        // Phi_{p^t}(1 + X) = sum_{i < p} (1 + X)^{i p^{t-1}}
        const i64 step = group_.p_part() / p;
        pi_poly_.assign(E_ + 1, 0);
        for (i64 i = 0; i < p; ++i)
            for (i64 k = 0; k <= i * step; ++k) pi_poly_[k] += binomial(i * step, k);
    }
    mpz_class c0 = pi_poly_[0] / p;
    mpz_invert(c0_inverse_.get_mpz_t(), c0.get_mpz_t(), pN_.get_mpz_t());
}

void PadicRing::reduce(Vec& a) const {
    for (auto& x : a) mod_in_place(x, pN_);
}

Vec PadicRing::mul(const Vec& a, const Vec& b) const {
    const int rows = 2 * E_ - 1, cols = 2 * f0_ - 1;
    std::vector<mpz_class> tmp(static_cast<std::size_t>(rows) * cols, 0);
    for (int j1 = 0; j1 < E_; ++j1)
        for (int i1 = 0; i1 < f0_; ++i1) {
            const mpz_class& x = a[j1 * f0_ + i1];
            if (sgn(x) == 0) continue;
            for (int j2 = 0; j2 < E_; ++j2)
                for (int i2 = 0; i2 < f0_; ++i2) {
                    const mpz_class& y = b[j2 * f0_ + i2];
                    if (sgn(y) == 0) continue;
                    mpz_addmul(tmp[(j1 + j2) * cols + i1 + i2].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                }
        }
    // omega-degree reduction, row by row
    for (int j = 0; j < rows; ++j)
        for (int d = cols - 1; d >= f0_; --d) {
            mpz_class& c = tmp[j * cols + d];
            mod_in_place(c, pN_);
            if (sgn(c) == 0) continue;
            for (int k = 0; k < f0_; ++k)
                mpz_submul(tmp[j * cols + d - f0_ + k].get_mpz_t(), c.get_mpz_t(), omega_poly_[k].get_mpz_t());
            c = 0;
        }
    // pi-degree reduction
    for (int j = rows - 1; j >= E_; --j)
        for (int i = 0; i < f0_; ++i) {
            mpz_class& c = tmp[j * cols + i];
            mod_in_place(c, pN_);
            if (sgn(c) == 0) continue;
            for (int k = 0; k < E_; ++k)
                mpz_submul(tmp[(j - E_ + k) * cols + i].get_mpz_t(), c.get_mpz_t(), pi_poly_[k].get_mpz_t());
            c = 0;
        }
    Vec out(dim());
    for (int j = 0; j < E_; ++j)
        for (int i = 0; i < f0_; ++i) {
            out[j * f0_ + i] = tmp[j * cols + i];
            mod_in_place(out[j * f0_ + i], pN_);
        }
    return out;
}

Vec PadicRing::mul_pi(const Vec& a) const {
    Vec r(dim(), 0);
    for (int j = 0; j + 1 < E_; ++j)
        for (int i = 0; i < f0_; ++i) r[(j + 1) * f0_ + i] = a[j * f0_ + i];
    for (int i = 0; i < f0_; ++i) {
        const mpz_class& top = a[(E_ - 1) * f0_ + i];
        if (sgn(top) == 0) continue;
        for (int k = 0; k < E_; ++k) mpz_submul(r[k * f0_ + i].get_mpz_t(), pi_poly_[k].get_mpz_t(), top.get_mpz_t());
    }
    reduce(r);
    return r;
}

Vec PadicRing::div_pi(const Vec& a) const {
    const long p = static_cast<long>(prime());
    Vec r(dim(), 0);
    for (int j = 1; j < E_; ++j)
        for (int i = 0; i < f0_; ++i) r[(j - 1) * f0_ + i] = a[j * f0_ + i];
    for (int i = 0; i < f0_; ++i) {
        if (!mpz_divisible_ui_p(a[i].get_mpz_t(), p))
            throw Error(ErrorCode::PrecisionLoss, "division by the uniformizer of a unit");
        mpz_class b = a[i] / p;
        if (sgn(b) == 0) continue;
        b *= c0_inverse_;
        // p / pi = -c0^{-1} (pi^{E-1} + P_{E-1} pi^{E-2} + ... + P_1)
        for (int k = 1; k <= E_; ++k) mpz_submul(r[(k - 1) * f0_ + i].get_mpz_t(), pi_poly_[k].get_mpz_t(), b.get_mpz_t());
    }
    reduce(r);
    return r;
}

int PadicRing::valuation(const Vec& a) const {
    int best = INT_MAX;
    mpz_class tmp;
    const mpz_class p = static_cast<long>(prime());
    for (int j = 0; j < E_; ++j) {
        int vj = INT_MAX;
        for (int i = 0; i < f0_; ++i) {
            const mpz_class& x = a[j * f0_ + i];
            if (sgn(x) == 0) continue;
            int v = static_cast<int>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
            vj = std::min(vj, v);
        }
        if (vj != INT_MAX) best = std::min(best, E_ * vj + j);
    }
    return best;
}

ResidueField::Elem PadicRing::residue(const Vec& a) const {
    ResidueField::Elem r(f0_);
    const long p = static_cast<long>(prime());
    for (int i = 0; i < f0_; ++i) r[i] = static_cast<i64>(mpz_fdiv_ui(a[i].get_mpz_t(), p));
    return r;
}

Vec PadicRing::lift_residue(const ResidueField::Elem& r) const {
    Vec v(dim(), 0);
    for (int i = 0; i < f0_; ++i) v[i] = static_cast<long>(r[i]);
    return v;
}

Vec PadicRing::unit_inverse(const Vec& a, int prec) const {
    auto res = residue(a);
    if (residue_.is_zero(res)) throw Error(ErrorCode::NotAUnit, "inverse of a non-unit");
    Vec y = lift_residue(residue_.inverse(res));
    Vec two(dim(), 0);
    two[0] = 2;
    for (int known = 1; known < prec; known *= 2) {
        Vec ay = mul(a, y);
        Vec corr = two;
        for (int k = 0; k < dim(); ++k) corr[k] -= ay[k];
        reduce(corr);
        y = mul(y, corr);
    }
    return y;
}

namespace {

Vec vec_pow(const PadicRing& R, Vec a, i64 e) {
    Vec r = R.zero_vec();
    r[0] = 1;
    while (e > 0) {
        if (e & 1) r = R.mul(r, a);
        a = R.mul(a, a);
        e >>= 1;
    }
    return r;
}

Vec omega_vec(const PadicRing& R) {
    Vec w = R.zero_vec();
    if (R.residue_degree() == 1) {
        w[0] = -R.omega_polynomial()[0];
        R.reduce(w);
    } else {
        w[1] = 1;
    }
    return w;
}

Vec one_plus_pi(const PadicRing& R) {
    Vec v = R.zero_vec();
    v[0] = 1;
    v[R.residue_degree()] += 1;
    return v;
}

}  // namespace

const PadicRing::GaloisData& PadicRing::galois(i64 a) const {
    a = mod_norm(a, modulus());
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = galois_cache_.find(a);
    if (it != galois_cache_.end()) return *it->second;
    auto k = group_.frobenius_exponent(a);
    if (!k)
        throw Error(ErrorCode::NotAUnit,
                    std::to_string(a) + " is not in the local Galois group mod " + std::to_string(modulus()));
    auto data = std::make_unique<GaloisData>();
    Vec w = vec_pow(*this, omega_vec(*this), ipow(prime(), static_cast<int>(*k)));
    std::vector<Vec> wpow(f0_);
    wpow[0] = zero_vec();
    wpow[0][0] = 1;
    for (int i = 1; i < f0_; ++i) wpow[i] = mul(wpow[i - 1], w);
    Vec pi_image = zero_vec();
    if (group_.p_exponent() == 0) {
        pi_image[0] = 1;  // sigma fixes p; pi^j images are handled through epsilon = 1
        data->images.resize(dim());
        for (int i = 0; i < f0_; ++i) data->images[i] = wpow[i];
        data->epsilon = pi_image;
        data->epsilon_inverse = pi_image;
    } else {
        Vec img = vec_pow(*this, one_plus_pi(*this), mod_norm(a, group_.p_part()));
        img[0] -= 1;
        reduce(img);
        Vec pij = zero_vec();
        pij[0] = 1;
        data->images.resize(dim());
        for (int j = 0; j < E_; ++j) {
            for (int i = 0; i < f0_; ++i) data->images[j * f0_ + i] = mul(wpow[i], pij);
            pij = mul(pij, img);
        }
        data->epsilon = div_pi(img);
        data->epsilon_inverse = unit_inverse(data->epsilon, max_precision());
    }
    data->trivial_epsilon = data->epsilon == data->epsilon_inverse && data->epsilon == pi_image;
    auto& ref = *data;
    galois_cache_.emplace(a, std::move(data));
    return ref;
}

PadicRing::Vec PadicRing::epsilon_power(const GaloisData& data, int k) const {
    if (k == 0 || data.trivial_epsilon) {
        Vec one = zero_vec();
        one[0] = 1;
        return one;
    }
    std::lock_guard<std::mutex> lock(power_mutex_);
    auto& table = k > 0 ? data.powers : data.inverse_powers;
    const auto& base = k > 0 ? data.epsilon : data.epsilon_inverse;
    const std::size_t e = static_cast<std::size_t>(std::abs(k));
    if (table.empty()) {
        table.push_back(zero_vec());
        table[0][0] = 1;
    }
    while (table.size() <= e) table.push_back(mul(table.back(), base));
    return table[e];
}

Vec PadicRing::zeta_M() const {
    const i64 mp = group_.prime_to_p(), pt = group_.p_part();
    Vec z = zero_vec();
    z[0] = 1;
    if (mp > 1) {
        Vec zm = vec_pow(*this, omega_vec(*this), (residue_size() - 1) / mp);
        z = vec_pow(*this, zm, inv_mod(pt % mp, mp));
    }
    if (pt > 1) z = mul(z, vec_pow(*this, one_plus_pi(*this), inv_mod(mp % pt, pt)));
    return z;
}

RingPtr padic_ring(i64 M, i64 p, int N) {
    static std::mutex mutex;
    static std::map<std::tuple<i64, i64, int>, RingPtr> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_tuple(M, p, N);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ring = std::make_shared<const PadicRing>(M, p, N);
    cache.emplace(key, ring);
    return ring;
}

// ---------------------------------------------------------------------------------------------
// elements

void PadicElement::normalize() {
    int v = ring_->valuation(c_);
    if (v >= prec_) {
        c_ = ring_->zero_vec();
        shift_ += prec_;
        prec_ = 0;
        return;
    }
    for (int i = 0; i < v; ++i) c_ = ring_->div_pi(c_);
    shift_ += v;
    prec_ -= v;
}

void PadicElement::require_same_ring(const PadicElement& o) const {
    if (!ring_ || !o.ring_) throw Error(ErrorCode::SpecMismatch, "uninitialised p-adic element");
    if (ring_ != o.ring_ &&
        (ring_->modulus() != o.ring_->modulus() || ring_->prime() != o.ring_->prime() ||
         ring_->precision() != o.ring_->precision()))
        throw Error(ErrorCode::SpecMismatch, "p-adic elements from different rings");
}

PadicElement PadicElement::zero(const RingPtr& ring) {
    PadicElement x;
    x.ring_ = ring;
    x.c_ = ring->zero_vec();
    x.shift_ = ring->max_precision();
    x.prec_ = 0;
    return x;
}

PadicElement PadicElement::from_vector(const RingPtr& ring, PadicRing::Vec c, int shift) {
    if (static_cast<int>(c.size()) != ring->dim()) throw Error(ErrorCode::SpecMismatch, "coefficient vector length");
    PadicElement x;
    x.ring_ = ring;
    ring->reduce(c);
    x.c_ = std::move(c);
    x.shift_ = shift;
    x.prec_ = ring->max_precision();
    x.normalize();
    return x;
}

PadicElement PadicElement::one(const RingPtr& ring) { return from_integer(ring, 1); }

PadicElement PadicElement::from_integer(const RingPtr& ring, const mpz_class& n) {
    auto c = ring->zero_vec();
    c[0] = n;
    return from_vector(ring, std::move(c));
}

PadicElement PadicElement::from_rational(const RingPtr& ring, const mpq_class& x) {
    mpz_class den = x.get_den(), rest;
    const mpz_class p = static_cast<long>(ring->prime());
    long v = static_cast<long>(mpz_remove(rest.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()));
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), ring->coefficient_modulus().get_mpz_t());
    PadicElement out = from_integer(ring, x.get_num() * inv);
    if (v > 0) out = out * from_integer(ring, p).inverse().pow(v);
    return out;
}

PadicElement PadicElement::omega(const RingPtr& ring) { return from_vector(ring, omega_vec(*ring)); }

PadicElement PadicElement::uniformizer(const RingPtr& ring) {
    auto c = ring->zero_vec();
    c[0] = 1;
    return from_vector(ring, std::move(c), 1);
}

PadicElement PadicElement::zeta(const RingPtr& ring, i64 k) {
    return from_vector(ring, ring->zeta_M()).pow(mod_norm(k, ring->modulus()));
}

PadicElement PadicElement::embed(const RingPtr& ring, const CycloElement& x) {
    const i64 m = x.modulus();
    if (ring->modulus() % m != 0)
        throw Error(ErrorCode::SpecMismatch,
                    std::to_string(m) + " does not divide the ring modulus " + std::to_string(ring->modulus()));
    PadicElement z = zeta(ring, ring->modulus() / m);
    PadicElement acc = zero(ring), zp = one(ring);
    for (const auto& c : x.coeffs()) {
        if (sgn(c) != 0) acc += from_rational(ring, c) * zp;
        zp *= z;
    }
    return acc;
}

PadicElement PadicElement::operator+(const PadicElement& o) const {
    require_same_ring(o);
    const PadicElement& lo = shift_ <= o.shift_ ? *this : o;
    const PadicElement& hi = shift_ <= o.shift_ ? o : *this;
    const int d = hi.shift_ - lo.shift_;
    PadicElement r;
    r.ring_ = ring_;
    r.shift_ = lo.shift_;
    r.prec_ = std::min(lo.prec_, hi.prec_ + d);
    r.c_ = lo.c_;
    if (d < r.prec_ && !hi.is_zero()) {
        PadicRing::Vec w = hi.c_;
        for (int i = 0; i < d; ++i) w = ring_->mul_pi(w);
        for (int k = 0; k < ring_->dim(); ++k) r.c_[k] += w[k];
        ring_->reduce(r.c_);
    }
    r.normalize();
    return r;
}

PadicElement PadicElement::operator-() const {
    PadicElement r = *this;
    for (auto& x : r.c_) x = -x;
    ring_->reduce(r.c_);
    return r;
}

PadicElement PadicElement::operator-(const PadicElement& o) const { return *this + (-o); }

PadicElement PadicElement::operator*(const PadicElement& o) const {
    require_same_ring(o);
    PadicElement r;
    r.ring_ = ring_;
    if (is_zero() || o.is_zero()) {
        r.c_ = ring_->zero_vec();
        r.prec_ = 0;
        r.shift_ = shift_ + o.shift_;
        return r;
    }
    r.c_ = ring_->mul(c_, o.c_);
    r.shift_ = shift_ + o.shift_;
    r.prec_ = std::min(prec_, o.prec_);
    return r;
}

PadicElement PadicElement::inverse() const {
    if (is_zero()) throw Error(ErrorCode::NotAUnit, "inverse of an element that is zero at precision");
    PadicElement r;
    r.ring_ = ring_;
    r.c_ = ring_->unit_inverse(c_, prec_);
    r.shift_ = -shift_;
    r.prec_ = prec_;
    return r;
}

PadicElement PadicElement::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    PadicElement r = one(ring_), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

PadicElement PadicElement::galois(i64 a) const {
    const auto& gd = ring_->galois(a);
    PadicElement r;
    r.ring_ = ring_;
    r.shift_ = shift_;
    r.prec_ = prec_;
    if (is_zero()) {
        r.c_ = c_;
        return r;
    }
    r.c_ = ring_->zero_vec();
    for (int b = 0; b < ring_->dim(); ++b) {
        if (sgn(c_[b]) == 0) continue;
        for (int k = 0; k < ring_->dim(); ++k)
            mpz_addmul(r.c_[k].get_mpz_t(), c_[b].get_mpz_t(), gd.images[b][k].get_mpz_t());
    }
    ring_->reduce(r.c_);
    if (shift_ != 0) {
        // sigma(pi^k u) = pi^k epsilon^k sigma(u)
        r.c_ = ring_->mul(r.c_, ring_->epsilon_power(gd, shift_));
    }
    return r;
}

PadicElement PadicElement::times_pi_power(int k) const {
    PadicElement r = *this;
    r.shift_ += k;
    return r;
}

PadicElement PadicElement::truncate(int abs) const {
    if (abs >= absolute_precision()) return *this;
    PadicElement r = *this;
    if (abs <= shift_) {
        r.c_ = ring_->zero_vec();
        r.shift_ = abs;
        r.prec_ = 0;
        return r;
    }
    r.prec_ = abs - shift_;
    return r;
}

std::string PadicElement::to_string() const {
    if (!ring_) return "<uninitialised>";
    if (is_zero()) return "O(pi^" + std::to_string(shift_) + ")";
    const int f0 = ring_->residue_degree();
    // digits beyond the relative precision are not printed
    mpz_class shown;
    mpz_ui_pow_ui(shown.get_mpz_t(), static_cast<unsigned long>(ring_->prime()),
                  static_cast<unsigned long>((prec_ + ring_->ramification_index() - 1) / ring_->ramification_index()));
    std::string body;
    for (int b = 0; b < ring_->dim(); ++b) {
        mpz_class c = c_[b] % shown;
        if (sgn(c) == 0) continue;
        if (!body.empty()) body += " + ";
        body += c.get_str();
        int i = b % f0, j = b / f0;
        if (i > 0) body += "*w^" + std::to_string(i);
        if (j > 0) body += "*pi^" + std::to_string(j);
    }
    std::string head = shift_ == 0 ? "" : "pi^" + std::to_string(shift_) + "*";
    return head + "(" + body + ") + O(pi^" + std::to_string(absolute_precision()) + ")";
}

// ---------------------------------------------------------------------------------------------
// derived operations

i64 teichmuller_log(const PadicElement& unit) {
    if (!unit.is_unit()) throw Error(ErrorCode::NotAUnit, "Teichmueller decomposition of a non-unit");
    const auto& R = *unit.ring();
    return R.residue_field().log(R.residue(unit.unit_part()));
}

std::pair<PadicElement, PadicElement> teichmuller_split(const PadicElement& u) {
    const i64 k = teichmuller_log(u);
    const i64 order = u.ring()->residue_size() - 1;
    PadicElement w = PadicElement::omega(u.ring());
    return {w.pow(k), u * w.pow(mod_norm(order - k, order))};
}

PadicElement sth_root_of_unit(const PadicElement& x, i64 s, i64 residue_size) {
    const auto& ring = x.ring();
    const i64 p = ring->prime();
    if (s <= 0 || s % p == 0) throw Error(ErrorCode::InvalidArgument, "root index must be positive and prime to p");
    if (!x.is_unit()) throw Error(ErrorCode::NotAUnit, "s-th root of a non-unit");
    if (s == 1) return x;
    const i64 q0 = ring->residue_size();
    if ((q0 - 1) % (residue_size - 1) != 0)
        throw Error(ErrorCode::NotASubfield, "residue field size does not divide the ambient one");
    auto [zeta, u1] = teichmuller_split(x);
    const i64 step = (q0 - 1) / (residue_size - 1);
    const i64 j = teichmuller_log(zeta);
    if (j % step != 0) throw Error(ErrorCode::NotASubfield, "root of unity part lies outside the stated subfield");
    const i64 jk = j / step, n = residue_size - 1;
    const i64 d = std::gcd(s, n);
    if (jk % d != 0)
        throw Error(ErrorCode::NoRootInResidue, "Teichmueller part is not an " + std::to_string(s) + "-th power");
    const i64 nd = n / d;
    const i64 i0 = nd == 1 ? 0 : mul_mod((jk / d) % nd, inv_mod((s / d) % nd, nd), nd);
    PadicElement root_of_unity = PadicElement::omega(ring).pow(step * i0);

    // z -> z + z (1 - u1 z^s) / s converges to u1^{-1/s}
    const PadicElement one = PadicElement::one(ring);
    const PadicElement inv_s = PadicElement::from_rational(ring, mpq_class(1, s));
    PadicElement z = one;
    for (int it = 0; it < 200; ++it) {
        PadicElement next = z + z * (one - u1 * z.pow(s)) * inv_s;
        bool done = next == z;
        z = next;
        if (done) break;
    }
    return root_of_unity * u1 * z.pow(s - 1);
}

PadicElement sth_root_of_unit(const PadicElement& x, i64 s, const LocalFieldSpec& field) {
    return sth_root_of_unit(x, s, field.q);
}

PadicElement norm_over_subgroup(const PadicElement& x, i64 a) {
    const auto& G = x.ring()->galois_group();
    a = G.reduce(a);
    if (!G.contains(a)) throw Error(ErrorCode::NotAUnit, std::to_string(a) + " is not in the local Galois group");
    const i64 order = G.element_order(a);
    PadicElement acc = x;
    i64 g = a;
    for (i64 i = 1; i < order; ++i) {
        acc *= x.galois(g);
        g = G.mul(g, a);
    }
    return acc;
}

namespace {

std::vector<i64> coset_representatives(const LocalFieldSpec& upper, const LocalFieldSpec& lower) {
    if (!std::includes(lower.stabilizer.begin(), lower.stabilizer.end(), upper.stabilizer.begin(),
                       upper.stabilizer.end()))
        throw Error(ErrorCode::NotASubfield, lower.describe() + " is not contained in " + upper.describe());
    std::vector<i64> reps;
    std::vector<i64> covered;
    for (i64 g : lower.stabilizer) {
        if (std::binary_search(covered.begin(), covered.end(), g)) continue;
        reps.push_back(g);
        for (i64 u : upper.stabilizer) covered.push_back(lower.group.mul(g, u));
        std::sort(covered.begin(), covered.end());
    }
    return reps;
}

}  // namespace

PadicElement relative_norm(const PadicElement& x, const LocalFieldSpec& upper, const LocalFieldSpec& lower) {
    const i64 M = x.ring()->modulus();
    auto reps = coset_representatives(lift_field(upper, M), lift_field(lower, M));
    PadicElement acc = PadicElement::one(x.ring());
    for (i64 g : reps) acc *= x.galois(g);
    return acc;
}

PadicElement relative_trace(const PadicElement& x, const LocalFieldSpec& upper, const LocalFieldSpec& lower) {
    const i64 M = x.ring()->modulus();
    auto reps = coset_representatives(lift_field(upper, M), lift_field(lower, M));
    PadicElement acc = PadicElement::zero(x.ring());
    for (i64 g : reps) acc += x.galois(g);
    return acc;
}

bool is_fixed(const PadicElement& x, const LocalFieldSpec& field) {
    auto k = lift_field(field, x.ring()->modulus());
    for (i64 g : k.generators())
        if (x.galois(g) != x) return false;
    return true;
}

PadicElement field_uniformizer(const RingPtr& ring, const LocalFieldSpec& field) {
    auto k = lift_field(field, ring->modulus());
    if (k.e == 1) return PadicElement::from_integer(ring, ring->prime());
    if (k.stabilizer.size() == 1) return PadicElement::uniformizer(ring);
    const int r = ring->ramification_index() / k.e;  // e(L/K)
    // L0 = maximal unramified subextension of L/K, cut out by the inertia part of the stabilizer
    std::vector<i64> inertia_part;
    for (i64 a : k.stabilizer)
        if (k.group.in_inertia(a)) inertia_part.push_back(a);
    const LocalFieldSpec top = local_field(ring->modulus(), ring->prime(), {});
    const LocalFieldSpec l0 = field_from_subgroup(k.group, inertia_part);
    const PadicElement pi0 = relative_norm(PadicElement::uniformizer(ring), top, l0);
    // pi0 = pi_K * w with w a unit of L0; the residue trace is onto, so some Tr(pi0 omega^i) has valuation r
    const PadicElement w = PadicElement::omega(ring);
    for (int i = 0; i < ring->residue_degree(); ++i) {
        PadicElement y = relative_trace(pi0 * w.pow(i), l0, k);
        if (y.valuation() == r) return y;
    }
    throw Error(ErrorCode::PrecisionLoss, "uniformizer search failed for " + k.describe());
}

std::vector<i64> automorphism_lifts(const LocalGaloisGroup& big, i64 a, i64 m) {
    std::vector<i64> out;
    for (i64 g : big.elements())
        if (mod_norm(g - a, m) == 0) out.push_back(g);
    return out;
}

}  // namespace iwasawa
