#include "iwasawa/skew_series.hpp"

#include <algorithm>
#include <climits>
#include <map>

#include "iwasawa/error.hpp"

namespace iwasawa {

namespace {

mpz_class binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

CyclicAlgebraElement scaled(const CyclicAlgebraElement& x, const mpz_class& n) {
    const auto& spec = x.spec();
    const auto c = PadicElement::from_integer(spec->ring, n);
    std::vector<PadicElement> out;
    out.reserve(x.coeffs().size());
    for (const auto& a : x.coeffs()) out.push_back(a * c);
    return CyclicAlgebraElement(spec, std::move(out));
}

/** Minimum coefficient valuation; INT_MAX for zero. */
int valuation(const CyclicAlgebraElement& x) {
    int v = INT_MAX;
    for (const auto& c : x.coeffs()) v = std::min(v, c.valuation());
    return v;
}

void require_same(const SkewSeries& f, const SkewSeries& g) {
    const auto &a = f.context(), &b = g.context();
    if (!a || !b) throw Error(ErrorCode::TwistMismatch, "series without a context");
    if (a == b) return;
    if (a->algebra() != b->algebra() || a->twist.lift != b->twist.lift || a->truncation != b->truncation)
        throw Error(ErrorCode::TwistMismatch, "series over different skew power series rings");
}

LocalFieldSpec ring_field(const RingPtr& ring) { return local_field(ring->modulus(), ring->prime(), {}); }

IdentityCheck named_check(const char* name) {
    IdentityCheck c;
    c.name = name;
    return c;
}

bool is_p_power(i64 n, i64 p) {
    while (n % p == 0) n /= p;
    return n == 1;
}

}  // namespace

SkewContextPtr skew_context(const ExtendedAutomorphism& twist, int truncation) {
    if (truncation < 0) throw Error(ErrorCode::InvalidArgument, "truncation must be nonnegative");
    return std::make_shared<const SkewContext>(SkewContext{twist, truncation});
}

CyclicAlgebraElement delta(const ExtendedAutomorphism& twist, const CyclicAlgebraElement& d) {
    return twist.apply(d) - d;
}

CyclicAlgebraElement delta_power(const ExtendedAutomorphism& twist, const CyclicAlgebraElement& d, int n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative delta power");
    auto out = CyclicAlgebraElement::zero(d.spec());
    for (int l = 0; l <= n; ++l) {
        mpz_class c = binomial(n, l);
        if ((n - l) % 2 != 0) c = -c;
        out = out + scaled(twist.apply(d, l), c);
    }
    return out;
}

mpz_class binomial_bracket(int n, int i, int l) {
    if (i < 0 || l < 0 || l > n - i) throw Error(ErrorCode::InvalidArgument, "bracket needs 0 <= i, 0 <= l <= n - i");
    mpz_class sum = 0;
    for (int j = i + l; j <= n; ++j) {
        mpz_class term = binomial(n, j) * binomial(j, i) * binomial(j - i, l);
        if ((j - i - l) % 2 != 0) sum -= term;
        else sum += term;
    }
    return sum;
}

SkewSeries::SkewSeries(SkewContextPtr ctx, std::vector<CyclicAlgebraElement> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (!ctx_) throw Error(ErrorCode::InvalidArgument, "series without a context");
    for (const auto& c : c_)
        if (c.spec() != ctx_->algebra()) throw Error(ErrorCode::SpecMismatch, "coefficient from another algebra");
    c_.resize(ctx_->truncation + 1, CyclicAlgebraElement::zero(ctx_->algebra()));
}

SkewSeries SkewSeries::zero(const SkewContextPtr& ctx) { return SkewSeries(ctx, {}); }

SkewSeries SkewSeries::constant(const SkewContextPtr& ctx, const CyclicAlgebraElement& d) { return SkewSeries(ctx, {d}); }

SkewSeries SkewSeries::variable(const SkewContextPtr& ctx) {
    const auto& spec = ctx->algebra();
    return SkewSeries(ctx, {CyclicAlgebraElement::zero(spec), CyclicAlgebraElement::one(spec)});
}

int SkewSeries::degree() const {
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i)
        if (!c_[i].is_zero()) return i;
    return -1;
}

SkewSeries SkewSeries::operator+(const SkewSeries& o) const {
    require_same(*this, o);
    auto out = c_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] + o.c_[i];
    return SkewSeries(ctx_, std::move(out));
}

SkewSeries SkewSeries::operator-(const SkewSeries& o) const {
    require_same(*this, o);
    auto out = c_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] - o.c_[i];
    return SkewSeries(ctx_, std::move(out));
}

SkewSeries SkewSeries::operator*(const SkewSeries& o) const { return sps_mul(*this, o); }

bool SkewSeries::operator==(const SkewSeries& o) const { return first_difference(o) < 0; }

int SkewSeries::first_difference(const SkewSeries& o) const {
    require_same(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return static_cast<int>(i);
    return -1;
}

SkewSeries SkewSeries::times_variable() const {
    const int T = ctx_->truncation;
    auto out = zero(ctx_).c_;
    for (int j = 0; j <= T; ++j) {
        if (c_[j].is_zero()) continue;
        if (j + 1 <= T) out[j + 1] = out[j + 1] + ctx_->twist.apply(c_[j]);
        out[j] = out[j] + delta(ctx_->twist, c_[j]);
    }
    return SkewSeries(ctx_, std::move(out));
}

SkewSeries SkewSeries::pow(int e) const {
    if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
    auto out = constant(ctx_, CyclicAlgebraElement::one(ctx_->algebra()));
    for (int k = 0; k < e; ++k) out = sps_mul(out, *this);
    return out;
}

SkewSeries sps_mul(const SkewSeries& f, const SkewSeries& g) {
    require_same(f, g);
    const auto& ctx = f.context();
    const auto& twist = ctx->twist;
    const auto& spec = ctx->algebra();
    const int T = ctx->truncation;
    const int top = f.degree();
    // moved[i][n] is the X^n coefficient of X^i g, from X^i b = sum_k C(i, k) tau^k delta^(i-k)(b) X^k
    std::vector<std::vector<CyclicAlgebraElement>> moved(top + 1);
    for (int i = 0; i <= top; ++i)
        if (!f[i].is_zero()) moved[i].assign(T + 1, CyclicAlgebraElement::zero(spec));
    for (int j = 0; j <= T; ++j) {
        const auto& b = g[j];
        if (b.is_zero()) continue;
        std::vector<CyclicAlgebraElement> deltas{b};
        for (int l = 1; l <= top; ++l) deltas.push_back(delta(twist, deltas.back()));
        std::map<std::pair<int, int>, CyclicAlgebraElement> shifted;
        for (int i = 0; i <= top; ++i) {
            if (moved[i].empty()) continue;
            for (int k = 0; k <= std::min(i, T - j); ++k) {
                const auto& dl = deltas[i - k];
                if (dl.is_zero()) continue;
                auto key = std::make_pair(k, i - k);
                auto it = shifted.find(key);
                if (it == shifted.end()) it = shifted.emplace(key, twist.apply(dl, k)).first;
                moved[i][k + j] = moved[i][k + j] + scaled(it->second, binomial(i, k));
            }
        }
    }
    auto out = SkewSeries::zero(ctx).coeffs();
    for (int i = 0; i <= top; ++i)
        for (int n = 0; !moved[i].empty() && n <= T; ++n)
            if (!moved[i][n].is_zero()) out[n] = out[n] + f[i] * moved[i][n];
    return SkewSeries(ctx, std::move(out));
}

SkewSeries centre_variable(const SkewContextPtr& ctx) {
    const auto& spec = ctx->algebra();
    std::vector<CyclicAlgebraElement> c{CyclicAlgebraElement::zero(spec)};
    for (int i = 1; i <= ctx->order(); ++i) c.push_back(scaled(CyclicAlgebraElement::one(spec), binomial(ctx->order(), i)));
    return SkewSeries(ctx, std::move(c));
}

CyclicAlgebraElement random_integral(const CyclicAlgebraPtr& spec, std::mt19937_64& rng) {
    const auto& ring = spec->ring;
    const bool full = spec->splitting == ring_field(ring);
    std::uniform_int_distribution<long long> digit(0, ring->prime() - 1);
    std::vector<PadicElement> coeffs;
    for (int i = 0; i < spec->index; ++i) {
        auto v = ring->zero_vec();
        for (auto& x : v) {
            // a few random p-adic digits are enough to make every identity nontrivial
            for (int k = 0; k < 6; ++k) x = x * static_cast<long>(ring->prime()) + static_cast<long>(digit(rng));
        }
        auto c = PadicElement::from_vector(ring, std::move(v));
        if (!full) c = relative_trace(c, ring_field(ring), spec->splitting);
        coeffs.push_back(c);
    }
    return CyclicAlgebraElement(spec, std::move(coeffs));
}

CyclicAlgebraElement random_fixed_scalar(const ExtendedAutomorphism& twist, std::mt19937_64& rng) {
    const auto& spec = twist.spec;
    auto x = random_integral(spec, rng)[0];
    return CyclicAlgebraElement::scalar(spec, relative_trace(x, spec->splitting, twist.fixed_field));
}

std::vector<CyclicAlgebraElement> coefficient_samples(const CyclicAlgebraPtr& spec, int random_count, std::mt19937_64& rng) {
    const auto& ring = spec->ring;
    std::vector<CyclicAlgebraElement> out;
    const i64 m = spec->centre.modulus();
    const auto [m_prime, t] = split_p_part(m, ring->prime());
    for (i64 root : {m_prime, ipow(ring->prime(), t)}) {
        if (root <= 1) continue;
        auto z = PadicElement::zeta(ring, ring->modulus() / root);
        if (is_fixed(z, spec->splitting)) out.push_back(CyclicAlgebraElement::scalar(spec, z));
    }
    if (spec->index > 1) {
        out.push_back(CyclicAlgebraElement::scalar(spec, spec->omega));
        out.push_back(CyclicAlgebraElement::pi_power(spec, 1));
    }
    out.push_back(CyclicAlgebraElement::scalar(spec, spec->centre_uniformizer));
    for (int k = 0; k < random_count; ++k) out.push_back(random_integral(spec, rng));
    return out;
}

SkewSeries random_series(const SkewContextPtr& ctx, int degree, std::mt19937_64& rng) {
    std::vector<CyclicAlgebraElement> c;
    for (int i = 0; i <= std::min(degree, ctx->truncation); ++i) c.push_back(random_integral(ctx->algebra(), rng));
    return SkewSeries(ctx, std::move(c));
}

CentreReport centre_check(const SkewSeries& z, const std::vector<CyclicAlgebraElement>& samples) {
    CentreReport report;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        auto d = SkewSeries::constant(z.context(), samples[k]);
        const int diff = sps_mul(z, d).first_difference(sps_mul(d, z));
        if (diff >= 0) {
            report.central = false;
            report.failing_sample = static_cast<int>(k);
            report.failing_degree = diff;
            return report;
        }
    }
    return report;
}

SeriesMatrix::SeriesMatrix(RingPtr ring, int size, int t_degree) : ring_(std::move(ring)), n_(size), t_(t_degree) {
    e_.assign(static_cast<std::size_t>(n_) * n_, TPoly(t_ + 1, PadicElement::zero(ring_)));
}

SeriesMatrix SeriesMatrix::operator+(const SeriesMatrix& o) const {
    SeriesMatrix out = *this;
    for (std::size_t k = 0; k < e_.size(); ++k)
        for (int d = 0; d <= t_; ++d) out.e_[k][d] += o.e_[k][d];
    return out;
}

SeriesMatrix SeriesMatrix::operator-(const SeriesMatrix& o) const {
    SeriesMatrix out = *this;
    for (std::size_t k = 0; k < e_.size(); ++k)
        for (int d = 0; d <= t_; ++d) out.e_[k][d] = out.e_[k][d] - o.e_[k][d];
    return out;
}

SeriesMatrix SeriesMatrix::operator*(const SeriesMatrix& o) const {
    if (n_ != o.n_ || t_ != o.t_) throw Error(ErrorCode::InvalidArgument, "matrix shapes differ");
    SeriesMatrix out(ring_, n_, t_);
    for (int i = 0; i < n_; ++i)
        for (int l = 0; l < n_; ++l) {
            const auto& a = at(i, l);
            for (int j = 0; j < n_; ++j) {
                const auto& b = o.at(l, j);
                auto& c = out.at(i, j);
                for (int x = 0; x <= t_; ++x) {
                    if (a[x].is_zero()) continue;
                    for (int y = 0; x + y <= t_; ++y)
                        if (!b[y].is_zero()) c[x + y] += a[x] * b[y];
                }
            }
        }
    return out;
}

bool SeriesMatrix::is_zero() const {
    for (const auto& p : e_)
        for (const auto& c : p)
            if (!c.is_zero()) return false;
    return true;
}

bool SeriesMatrix::operator==(const SeriesMatrix& o) const { return (*this - o).is_zero(); }

SeriesMatrix EmbeddingMatrices::coefficient(const CyclicAlgebraElement& d) const {
    const auto& ring = ctx->algebra()->ring;
    SeriesMatrix out(ring, size(), variable.t_degree());
    for (int b = 0; b < blocks; ++b) {
        // tau acts through D, so block b is phi(tau^b d)
        auto m = splitting_matrix(ctx->twist.apply(d, b));
        for (int i = 0; i < block; ++i)
            for (int j = 0; j < block; ++j) out.at(b * block + i, b * block + j)[0] = m[i][j];
    }
    return out;
}

SeriesMatrix EmbeddingMatrices::operator()(const SkewSeries& f) const {
    const int top = f.degree();
    if (top < 0) return SeriesMatrix(ctx->algebra()->ring, size(), variable.t_degree());
    auto out = coefficient(f[top]);
    for (int i = top - 1; i >= 0; --i) out = out * variable + coefficient(f[i]);
    return out;
}

EmbeddingMatrices matrix_embedding(const SkewContextPtr& ctx) {
    EmbeddingMatrices out;
    out.ctx = ctx;
    out.block = ctx->algebra()->index;
    out.blocks = ctx->order();
    const auto& ring = ctx->algebra()->ring;
    const int t_degree = ctx->truncation / out.blocks + 1;
    SeriesMatrix x(ring, out.size(), t_degree);
    const auto one = PadicElement::one(ring);
    for (int b = 0; b < out.blocks; ++b)
        for (int i = 0; i < out.block; ++i) {
            const int row = b * out.block + i;
            if (b + 1 < out.blocks) {
                x.at(row, row + out.block)[0] = one;
            } else {
                // (1 + X)^(K:k) = 1 + T in the corner block
                x.at(row, i)[0] += one;
                if (t_degree >= 1) x.at(row, i)[1] += one;
            }
            x.at(row, row)[0] = x.at(row, row)[0] - one;
        }
    out.variable = std::move(x);
    return out;
}

bool SkewReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

nlohmann::json SkewReport::to_json() const {
    nlohmann::json j;
    j["modulus"] = modulus;
    j["prime"] = prime;
    j["tau"] = tau;
    j["index"] = index;
    j["order"] = order;
    j["truncation"] = truncation;
    j["passed"] = passed();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"skipped", c.skipped}, {"cases", c.cases}, {"detail", c.detail}});
    return j;
}

SkewReport verify_skew_identities(const LocalFieldSpec& centre, i64 tau, int s, const SkewVerifyOptions& options) {
    auto spec = cyclic_algebra(centre, s, s > 1 ? 1 : 0, options.precision);
    auto twist = extend_tau(spec, tau);
    auto ctx = skew_context(twist, options.truncation);
    const int T = options.truncation;
    std::mt19937_64 rng(options.seed);

    SkewReport report;
    report.modulus = centre.modulus();
    report.prime = centre.prime();
    report.tau = tau;
    report.index = s;
    report.order = twist.order;
    report.truncation = T;

    const auto samples = coefficient_samples(spec, options.samples, rng);
    auto fail = [](IdentityCheck& c, std::string detail) {
        if (c.passed) c.detail = std::move(detail);
        c.passed = false;
    };

    IdentityCheck powers = named_check("delta_power");
    for (std::size_t k = 0; k < samples.size(); ++k) {
        auto iterated = samples[k];
        for (int n = 0; n <= T; ++n, ++powers.cases) {
            if (delta_power(twist, samples[k], n) != iterated)
                fail(powers, "sample " + std::to_string(k) + ", n = " + std::to_string(n));
            iterated = delta(twist, iterated);
        }
    }
    report.checks.push_back(powers);

    IdentityCheck commute = named_check("tau_delta_commute");
    IdentityCheck derivation = named_check("left_tau_derivation");
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& a = samples[k];
        const auto& b = samples[(k + 1) % samples.size()];
        ++commute.cases;
        if (twist.apply(delta(twist, a)) != delta(twist, twist.apply(a))) fail(commute, "sample " + std::to_string(k));
        ++derivation.cases;
        if (delta(twist, a * b) != delta(twist, a) * b + twist.apply(a) * delta(twist, b))
            fail(derivation, "sample " + std::to_string(k));
    }
    report.checks.push_back(commute);
    report.checks.push_back(derivation);

    IdentityCheck xnd = named_check("Xnd_closed_form");
    const auto X = SkewSeries::variable(ctx);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        auto iterated = SkewSeries::constant(ctx, samples[k]);
        auto power = SkewSeries::constant(ctx, CyclicAlgebraElement::one(spec));
        for (int n = 0; n <= T; ++n, ++xnd.cases) {
            std::vector<CyclicAlgebraElement> closed;
            for (int i = 0; i <= n; ++i)
                closed.push_back(scaled(twist.apply(delta_power(twist, samples[k], n - i), i), binomial(n, i)));
            const SkewSeries closed_form(ctx, std::move(closed));
            if (closed_form != iterated || sps_mul(power, SkewSeries::constant(ctx, samples[k])) != iterated)
                fail(xnd, "sample " + std::to_string(k) + ", n = " + std::to_string(n));
            iterated = iterated.times_variable();
            power = sps_mul(power, X);
        }
    }
    report.checks.push_back(xnd);

    IdentityCheck bracket = named_check("binomial_bracket");
    for (int n = 0; n <= 27; ++n)
        for (int i = 0; i <= n; ++i)
            for (int l = 0; l <= n - i; ++l, ++bracket.cases)
                if (binomial_bracket(n, i, l) != (l == n - i ? binomial(n, i) : mpz_class(0)))
                    fail(bracket, "n = " + std::to_string(n) + ", i = " + std::to_string(i) + ", l = " + std::to_string(l));
    report.checks.push_back(bracket);

    auto centre_samples = samples;
    for (int k = 0; k < 3; ++k) centre_samples.push_back(random_fixed_scalar(twist, rng));
    IdentityCheck central = named_check("centre_contains_T");
    central.cases = static_cast<int>(centre_samples.size());
    auto ok = centre_check(centre_variable(ctx), centre_samples);
    if (!ok.central)
        fail(central, "sample " + std::to_string(ok.failing_sample) + " at degree " + std::to_string(ok.failing_degree));
    report.checks.push_back(central);

    IdentityCheck variable = named_check("X_central_iff_tau_trivial");
    variable.cases = static_cast<int>(samples.size());
    auto x_report = centre_check(X, samples);
    if (x_report.central != (twist.order == 1))
        fail(variable, x_report.central ? "X commutes with every sample although tau is not trivial" : "X not central for trivial tau");
    report.checks.push_back(variable);

    IdentityCheck assoc = named_check("associativity");
    for (int k = 0; k < 5; ++k, ++assoc.cases) {
        auto f = random_series(ctx, T / 3, rng), g = random_series(ctx, T / 3, rng), h = random_series(ctx, T / 3, rng);
        if (sps_mul(sps_mul(f, g), h) != sps_mul(f, sps_mul(g, h))) fail(assoc, "triple " + std::to_string(k));
    }
    report.checks.push_back(assoc);

    const auto embedding = matrix_embedding(ctx);
    IdentityCheck rule = named_check("Phi_multiplication_rule");
    const auto shift = embedding(X + SkewSeries::constant(ctx, CyclicAlgebraElement::one(spec)));
    for (std::size_t k = 0; k < samples.size(); ++k, ++rule.cases)
        if (shift * embedding.coefficient(samples[k]) != embedding.coefficient(twist.apply(samples[k])) * shift)
            fail(rule, "sample " + std::to_string(k));
    report.checks.push_back(rule);

    IdentityCheck hom = named_check("Phi_homomorphism");
    for (int k = 0; k < options.pairs; ++k, ++hom.cases) {
        auto f = random_series(ctx, T / 2, rng), g = random_series(ctx, T - T / 2, rng);
        if (embedding(f) * embedding(g) != embedding(sps_mul(f, g))) fail(hom, "pair " + std::to_string(k));
    }
    report.checks.push_back(hom);

    IdentityCheck nilpotent = named_check("tau_nilpotence");
    if (!is_p_power(twist.order, spec->prime())) {
        nilpotent.skipped = true;
        nilpotent.detail = "order of tau is not a power of p";
    } else {
        for (std::size_t k = 0; k < samples.size(); ++k, ++nilpotent.cases) {
            auto x = samples[k];
            const int start = valuation(x);
            int last = start;
            for (int n = 1; n <= 4 * twist.order; ++n) {
                x = delta(twist, x);
                const int v = valuation(x);
                if (v < last) fail(nilpotent, "valuation drops for sample " + std::to_string(k));
                last = v;
            }
            if (last != INT_MAX && last <= start) fail(nilpotent, "no growth for sample " + std::to_string(k));
        }
    }
    report.checks.push_back(nilpotent);
    return report;
}

}  // namespace iwasawa
