#include "iwasawa/division_algebra.hpp"

#include <numeric>

#include "iwasawa/error.hpp"

namespace iwasawa {

namespace {

std::vector<i64> with_generator(const LocalFieldSpec& k, i64 extra) {
    std::vector<i64> gens = k.generators();
    gens.push_back(k.group.reduce(extra));
    return gens;
}

/** The subfield of k fixed by the automorphism a of k. */
LocalFieldSpec fixed_field_of(const LocalFieldSpec& k, i64 a) {
    return field_from_subgroup(k.group, generated_subgroup(k.modulus(), with_generator(k, a)));
}

/** Order of a as an automorphism of k. */
int order_on(const LocalFieldSpec& k, i64 a) {
    i64 g = k.group.reduce(a);
    for (int n = 1;; ++n) {
        if (k.fixed_by(g)) return n;
        g = k.group.mul(g, a);
        if (n > k.group.order()) throw Error(ErrorCode::InvalidArgument, "not an automorphism of the field");
    }
}

/** Saturated Z_p-basis (in O_L coordinates) of the elements c of O_L with map_j(c) = 0 for all j. */
std::vector<ZpVec> kernel_lattice(const RingPtr& ring, const std::vector<std::function<PadicElement(const PadicElement&)>>& maps) {
    const int n = ring->dim();
    const ZpContext ctx(ring->prime(), ring->precision());
    std::vector<ZpVec> rows;
    for (int k = 0; k < n; ++k) {
        auto unit = ring->zero_vec();
        unit[k] = 1;
        const PadicElement c = PadicElement::from_vector(ring, unit);
        ZpVec row;
        for (const auto& f : maps) {
            auto v = integral_vector(f(c));
            row.insert(row.end(), v.begin(), v.end());
        }
        rows.push_back(std::move(row));
    }
    if (maps.empty()) {
        std::vector<ZpVec> all;
        for (int k = 0; k < n; ++k) {
            ZpVec e(n, 0);
            e[k] = 1;
            all.push_back(std::move(e));
        }
        return all;
    }
    return zp_left_kernel(ctx, rows, ctx.N / 3);
}

/** O_k inside O_L as a saturated lattice. */
std::vector<ZpVec> subfield_lattice(const RingPtr& ring, const LocalFieldSpec& k) {
    std::vector<std::function<PadicElement(const PadicElement&)>> maps;
    for (i64 g : lift_field(k, ring->modulus()).generators())
        maps.emplace_back([g](const PadicElement& c) { return c.galois(g) - c; });
    return kernel_lattice(ring, maps);
}

AmbientProduct algebra_product(const CyclicAlgebraPtr& spec) {
    return [spec](const ZpVec& x, const ZpVec& y) {
        return algebra_coordinates(from_algebra_coordinates(spec, x) * from_algebra_coordinates(spec, y));
    };
}

int working_digits(const CyclicAlgebraPtr& spec) { return spec->ring->precision() - 2; }

}  // namespace

// ---------------------------------------------------------------------------------------------
// specs

i64 CyclicAlgebraSpec::omega_order() const { return ipow(centre.q, index) - 1; }

LocalFieldSpec unramified_extension(const LocalFieldSpec& k, int degree) {
    const i64 Q = ipow(k.q, degree);
    const i64 M = lcm64(k.modulus(), Q - 1);
    const LocalFieldSpec kl = lift_field(k, M);
    std::vector<i64> stab;
    for (i64 a : kl.stabilizer)
        if (*kl.group.frobenius_exponent(a) % (static_cast<i64>(k.f) * degree) == 0) stab.push_back(a);
    return field_from_subgroup(kl.group, stab);
}

CyclicAlgebraPtr cyclic_algebra(const LocalFieldSpec& centre, int s, int r, int precision) {
    if (s < 1) throw Error(ErrorCode::InvalidArgument, "index must be positive");
    if (s == 1) r = 0;
    if (s > 1 && (r <= 0 || r >= s || std::gcd(r, s) != 1))
        throw Error(ErrorCode::InvalidArgument, "Hasse numerator must be a unit mod the index");
    auto spec = std::make_shared<CyclicAlgebraSpec>();
    spec->centre = centre;
    spec->index = s;
    spec->hasse = r;
    spec->splitting = unramified_extension(centre, s);
    const i64 M = spec->splitting.modulus();
    spec->ring = padic_ring(M, centre.prime(), precision);
    const LocalFieldSpec kl = lift_field(centre, M);
    const i64 fk = centre.f;
    spec->twist = 0;
    for (i64 a : kl.stabilizer)
        if (mod_norm(*kl.group.frobenius_exponent(a) - fk * r, fk * s) == 0) {
            spec->twist = a;
            break;
        }
    if (spec->twist == 0) throw Error(ErrorCode::InvalidArgument, "no Frobenius power in the centre's stabilizer");
    const i64 q0 = spec->ring->residue_size();
    spec->omega = PadicElement::omega(spec->ring).pow((q0 - 1) / spec->omega_order());
    spec->centre_uniformizer = field_uniformizer(spec->ring, centre);
    return spec;
}

// ---------------------------------------------------------------------------------------------
// elements

CyclicAlgebraElement::CyclicAlgebraElement(CyclicAlgebraPtr spec, std::vector<PadicElement> coeffs)
    : spec_(std::move(spec)), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != spec_->index)
        throw Error(ErrorCode::SpecMismatch, "coefficient count differs from the index");
}

CyclicAlgebraElement CyclicAlgebraElement::zero(const CyclicAlgebraPtr& spec) {
    return CyclicAlgebraElement(spec, std::vector<PadicElement>(spec->index, PadicElement::zero(spec->ring)));
}

CyclicAlgebraElement CyclicAlgebraElement::scalar(const CyclicAlgebraPtr& spec, const PadicElement& c) {
    auto x = zero(spec);
    x.c_[0] = c;
    return x;
}

CyclicAlgebraElement CyclicAlgebraElement::one(const CyclicAlgebraPtr& spec) {
    return scalar(spec, PadicElement::one(spec->ring));
}

CyclicAlgebraElement CyclicAlgebraElement::pi_power(const CyclicAlgebraPtr& spec, int k) {
    if (k < 0 || k >= spec->index) throw Error(ErrorCode::InvalidArgument, "pi_D power out of range");
    auto x = zero(spec);
    x.c_[k] = PadicElement::one(spec->ring);
    return x;
}

namespace {

void require_same(const CyclicAlgebraElement& x, const CyclicAlgebraElement& y) {
    const auto& a = x.spec();
    const auto& b = y.spec();
    if (!a || !b) throw Error(ErrorCode::SpecMismatch, "uninitialised algebra element");
    if (a == b) return;
    if (!(a->centre == b->centre) || a->index != b->index || a->hasse != b->hasse ||
        a->modulus() != b->modulus() || a->ring->precision() != b->ring->precision())
        throw Error(ErrorCode::SpecMismatch, "elements of different cyclic algebras");
}

}  // namespace

CyclicAlgebraElement CyclicAlgebraElement::operator+(const CyclicAlgebraElement& o) const {
    require_same(*this, o);
    auto r = *this;
    for (int i = 0; i < spec_->index; ++i) r.c_[i] += o.c_[i];
    return r;
}

CyclicAlgebraElement CyclicAlgebraElement::operator-(const CyclicAlgebraElement& o) const {
    require_same(*this, o);
    auto r = *this;
    for (int i = 0; i < spec_->index; ++i) r.c_[i] = r.c_[i] - o.c_[i];
    return r;
}

CyclicAlgebraElement CyclicAlgebraElement::operator*(const CyclicAlgebraElement& o) const { return ca_mul(*this, o); }

bool CyclicAlgebraElement::operator==(const CyclicAlgebraElement& o) const { return (*this - o).is_zero(); }

bool CyclicAlgebraElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const PadicElement& c) { return c.is_zero(); });
}

int CyclicAlgebraElement::absolute_precision() const {
    int best = INT_MAX;
    for (const auto& c : c_) best = std::min(best, c.absolute_precision());
    return best;
}

CyclicAlgebraElement ca_mul(const CyclicAlgebraElement& x, const CyclicAlgebraElement& y) {
    require_same(x, y);
    const auto& spec = x.spec();
    const int s = spec->index;
    const i64 M = spec->modulus();
    std::vector<PadicElement> out(s, PadicElement::zero(spec->ring));
    for (int i = 0; i < s; ++i) {
        if (x[i].is_zero()) continue;
        const i64 sigma_i = pow_mod(spec->twist, i, M);
        for (int j = 0; j < s; ++j) {
            if (y[j].is_zero()) continue;
            PadicElement term = x[i] * y[j].galois(sigma_i);
            if (i + j >= s) term *= spec->centre_uniformizer;
            out[(i + j) % s] += term;
        }
    }
    return CyclicAlgebraElement(spec, std::move(out));
}

std::vector<std::vector<PadicElement>> splitting_matrix(const CyclicAlgebraElement& x) {
    const auto& spec = x.spec();
    const int s = spec->index;
    const i64 M = spec->modulus();
    std::vector<std::vector<PadicElement>> m(s, std::vector<PadicElement>(s, PadicElement::zero(spec->ring)));
    for (int k = 0; k < s; ++k) {
        const i64 sigma_k = pow_mod(spec->twist, k, M);
        for (int i = 0; i < s; ++i) {
            PadicElement entry = x[i].galois(sigma_k);
            if (k + i >= s) entry *= spec->centre_uniformizer;
            m[k][(k + i) % s] = entry;
        }
    }
    return m;
}

ZpVec integral_vector(const PadicElement& x) {
    const auto& ring = x.ring();
    if (x.is_zero()) return ring->zero_vec();
    if (x.shift() < 0) throw Error(ErrorCode::InvalidArgument, "element is not integral");
    auto v = x.unit_part();
    for (int i = 0; i < x.shift(); ++i) v = ring->mul_pi(v);
    ring->reduce(v);
    return v;
}

ZpVec algebra_coordinates(const CyclicAlgebraElement& x) {
    ZpVec out;
    for (const auto& c : x.coeffs()) {
        auto v = integral_vector(c);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

CyclicAlgebraElement from_algebra_coordinates(const CyclicAlgebraPtr& spec, const ZpVec& v) {
    const int n = spec->ring->dim();
    if (static_cast<int>(v.size()) != n * spec->index) throw Error(ErrorCode::SpecMismatch, "coordinate vector length");
    std::vector<PadicElement> c;
    for (int i = 0; i < spec->index; ++i)
        c.push_back(PadicElement::from_vector(spec->ring, ZpVec(v.begin() + i * n, v.begin() + (i + 1) * n)));
    return CyclicAlgebraElement(spec, std::move(c));
}

// ---------------------------------------------------------------------------------------------
// extending tau

PadicElement ExtendedAutomorphism::on_coefficient(const PadicElement& c, long long k) const {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
    return c.galois(pow_mod(lift, k, spec->modulus()));
}

PadicElement ExtendedAutomorphism::pi_multiplier(long long k) const {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
    k %= order;
    if (static_cast<std::size_t>(k) < multipliers.size()) return multipliers[k];
    PadicElement acc = PadicElement::one(spec->ring);
    for (long long j = 0; j < k; ++j) acc *= on_coefficient(epsilon_d, j);
    return acc;
}

CyclicAlgebraElement ExtendedAutomorphism::apply(const CyclicAlgebraElement& x, long long k) const {
    const PadicElement m = pi_multiplier(k);
    std::vector<PadicElement> out;
    PadicElement mi = PadicElement::one(spec->ring);
    for (int i = 0; i < spec->index; ++i) {
        out.push_back(on_coefficient(x[i], k) * mi);
        mi *= m;
    }
    return CyclicAlgebraElement(x.spec(), std::move(out));
}

PadicElement tau_norm(const PadicElement& x, i64 tau_hat, int d) {
    const i64 M = x.ring()->modulus();
    PadicElement acc = PadicElement::one(x.ring());
    i64 g = 1;
    for (int j = 0; j < d; ++j) {
        acc *= x.galois(g);
        g = mul_mod(g, tau_hat, M);
    }
    return acc;
}

ExtendedAutomorphism extend_tau(const CyclicAlgebraPtr& spec, i64 tau) {
    const LocalFieldSpec& K = spec->centre;
    const i64 m = K.modulus();
    tau = mod_norm(tau, m);
    if (!K.group.contains(tau)) throw Error(ErrorCode::InvalidArgument, std::to_string(tau) + " is not a local automorphism");
    ExtendedAutomorphism ext;
    ext.spec = spec;
    ext.base = tau;
    ext.order = order_on(K, tau);
    const int s = spec->index, d = ext.order;
    if (std::gcd(s, d) != 1) throw Error(ErrorCode::InvalidArgument, "order of tau is not prime to the index");
    ext.fixed_field = fixed_field_of(K, tau);
    const i64 q_tau = ext.fixed_field.q;
    if ((q_tau - 1) % s != 0)
        throw Error(ErrorCode::IndexNotDividing,
                    "index " + std::to_string(s) + " does not divide q_tau - 1 = " + std::to_string(q_tau - 1));

    // tau-hat: the part of order d of any lift, i.e. (id, tau) on K(omega) = K(omega)^<tau-hat> K
    const i64 M = spec->modulus();
    const auto lifts = automorphism_lifts(spec->ring->galois_group(), tau, m);
    if (lifts.empty()) throw Error(ErrorCode::InvalidArgument, "tau does not lift to the splitting ring");
    const i64 N = crt_pair(0, s, 1, d);
    ext.lift = pow_mod(lifts.front(), N, M);

    const PadicElement& pi_k = spec->centre_uniformizer;
    ext.epsilon = pi_k.galois(ext.lift) * pi_k.inverse();
    if (!ext.epsilon.is_unit()) throw Error(ErrorCode::PrecisionLoss, "tau(pi_K)/pi_K is not a unit at precision");
    ext.teichmuller_part = teichmuller_split(ext.epsilon).first;
    if (s == 1) {
        ext.epsilon_d = ext.epsilon;
    } else {
        const PadicElement root = sth_root_of_unit(ext.epsilon, s, K);
        const PadicElement norm = tau_norm(root, ext.lift, d);
        // norm lies in mu_s(k); the unique zeta~ in mu_s with zeta~^d = norm is norm^(d^-1 mod s)
        ext.epsilon_d = root * norm.pow(inv_mod(d % s, s)).inverse();
    }
    if (ext.epsilon_d.pow(s) != ext.epsilon || tau_norm(ext.epsilon_d, ext.lift, d) != PadicElement::one(spec->ring))
        throw Error(ErrorCode::PrecisionLoss, "epsilon_D normalisation failed at precision");
    for (int k = 0; k < d; ++k) ext.multipliers.push_back(ext.pi_multiplier(k));
    return ext;
}

// ---------------------------------------------------------------------------------------------
// fixed subalgebras

FixedSubalgebra fixed_subalgebra(const ExtendedAutomorphism& ext, int e) {
    const int d = ext.order;
    if (e < 1 || d % e != 0) throw Error(ErrorCode::InvalidArgument, "power must divide the order of tau");
    const auto& spec = ext.spec;
    const auto& ring = spec->ring;
    const int s = spec->index;
    FixedSubalgebra out;
    out.power = e;
    out.centre_field = fixed_field_of(spec->centre, pow_mod(ext.base, e, spec->centre.modulus()));

    const i64 lift_e = pow_mod(ext.lift, e, spec->modulus());
    const PadicElement mult = ext.pi_multiplier(e);
    const auto splitting_gens = spec->splitting.generators();
    PadicElement mult_i = PadicElement::one(ring);
    for (int i = 0; i < s; ++i) {
        std::vector<std::function<PadicElement(const PadicElement&)>> maps;
        for (i64 g : splitting_gens) maps.emplace_back([g](const PadicElement& c) { return c.galois(g) - c; });
        maps.emplace_back([&, mult_i](const PadicElement& c) { return c.galois(lift_e) * mult_i - c; });
        for (const auto& v : kernel_lattice(ring, maps)) {
            auto x = CyclicAlgebraElement::zero(spec);
            std::vector<PadicElement> c = x.coeffs();
            c[i] = PadicElement::from_vector(ring, v);
            out.basis.emplace_back(spec, std::move(c));
        }
        mult_i *= mult;
    }
    const int expected = s * s * spec->centre.degree() * e / d;
    if (out.dimension() != expected)
        throw Error(ErrorCode::PrecisionLoss, "fixed points have rank " + std::to_string(out.dimension()) +
                                                  ", expected " + std::to_string(expected));

    // centre: combinations commuting with every basis element
    const ZpContext ctx(spec->prime(), ring->precision());
    std::vector<ZpVec> rows;
    for (const auto& b : out.basis) {
        ZpVec row;
        for (const auto& x : out.basis) {
            auto v = algebra_coordinates(b * x - x * b);
            row.insert(row.end(), v.begin(), v.end());
        }
        rows.push_back(std::move(row));
    }
    for (const auto& lambda : zp_left_kernel(ctx, rows, ctx.N / 3)) {
        auto z = CyclicAlgebraElement::zero(spec);
        for (std::size_t b = 0; b < out.basis.size(); ++b) {
            if (lambda[b] == 0) continue;
            z = z + CyclicAlgebraElement::scalar(spec, PadicElement::from_integer(ring, lambda[b])) * out.basis[b];
        }
        out.centre_basis.push_back(std::move(z));
    }
    if (static_cast<int>(out.centre_basis.size()) != out.centre_field.degree())
        throw Error(ErrorCode::PrecisionLoss, "centre of the fixed algebra has the wrong rank");
    return out;
}

ZpAlgebra order_of(const CyclicAlgebraPtr& spec, const std::vector<CyclicAlgebraElement>& basis) {
    std::vector<ZpVec> gens;
    for (const auto& b : basis) gens.push_back(algebra_coordinates(b));
    return algebra_from_lattice(spec->prime(), working_digits(spec), gens, 0, algebra_product(spec),
                                algebra_coordinates(CyclicAlgebraElement::one(spec)));
}

int descend_twist(int s, int r, int degree) {
    if (s == 1) return 0;
    if (std::gcd(s, degree) != 1) throw Error(ErrorCode::InvalidArgument, "degree is not prime to the index");
    return static_cast<int>(mod_norm(static_cast<i64>(degree) * r, s));
}

namespace {

bool vanishes_to(const PadicElement& x, int digits) {
    const int bound = digits * x.ring()->ramification_index();
    return x.is_zero() ? x.absolute_precision() >= bound : x.valuation() >= bound;
}

}  // namespace

ExtensionChecks check_extension(const ExtendedAutomorphism& ext, int digits) {
    const auto& spec = ext.spec;
    const auto& ring = spec->ring;
    const auto one = PadicElement::one(ring);
    const int d = ext.order;
    ExtensionChecks out;
    out.digits = digits;
    out.root = vanishes_to(ext.epsilon_d.pow(spec->index) - ext.epsilon, digits);
    out.norm = vanishes_to(tau_norm(ext.epsilon_d, ext.lift, d) - one, digits);
    out.epsilon_norm = vanishes_to(tau_norm(ext.epsilon, ext.lift, d) - one, digits);
    const i64 q = lift_field(spec->centre, spec->modulus()).q, q_tau = ext.fixed_field.q;
    out.teichmuller = ext.teichmuller_part.pow((q - 1) / (q_tau - 1)) == one;

    // D is generated by K(omega) and pi_D: tau-hat^k is the identity iff it fixes K(omega) and pi_D
    const LocalFieldSpec& split = spec->splitting;
    auto fixes = [&](long long k) {
        if (!split.fixed_by(pow_mod(ext.lift, k, spec->modulus()))) return false;
        return vanishes_to(tau_norm(ext.epsilon_d, ext.lift, static_cast<int>(k)) - one, digits);
    };
    out.order = fixes(d);
    for (int k = 1; k < d && out.order; ++k)
        if (d % k == 0 && fixes(k)) out.order = false;
    return out;
}

// ---------------------------------------------------------------------------------------------
// combining generators

CombinedCyclic combine_generators(const LocalFieldSpec& base, const LocalFieldSpec& field_a,
                                  const LocalFieldSpec& field_b, i64 alpha, i64 beta, const PadicElement& a_power) {
    if (!is_subfield(base, field_a) || !is_subfield(base, field_b))
        throw Error(ErrorCode::NotASubfield, "the base is not contained in both subextensions");
    CombinedCyclic out;
    out.base = base;
    out.splitting = compositum(field_a, field_b);
    const LocalFieldSpec& K = out.splitting;
    out.a_degree = extension_profile(field_a, K).degree;
    out.b_degree = extension_profile(field_b, K).degree;
    out.degree = extension_profile(base, K).degree;
    if (std::gcd(out.a_degree, out.b_degree) != 1)
        throw Error(ErrorCode::DegreesNotCoprime, "(K:L_a) = " + std::to_string(out.a_degree) +
                                                      " and (K:L_b) = " + std::to_string(out.b_degree));
    if (out.degree != out.a_degree * out.b_degree)
        throw Error(ErrorCode::InvalidArgument, "L_a and L_b do not meet in the base");
    const i64 M = K.modulus();
    alpha = mod_norm(alpha, M);
    beta = mod_norm(beta, M);
    const LocalFieldSpec la = lift_field(field_a, M), lb = lift_field(field_b, M);
    if (!la.fixed_by(alpha) || order_on(K, alpha) != out.a_degree)
        throw Error(ErrorCode::InvalidArgument, "alpha does not generate Gal(K/L_a)");
    if (!lb.fixed_by(beta) || order_on(K, beta) != out.b_degree)
        throw Error(ErrorCode::InvalidArgument, "beta does not generate Gal(K/L_b)");
    out.acting = mul_mod(alpha, beta, M);
    if (!is_fixed(a_power, field_a)) throw Error(ErrorCode::NotASubfield, "a^(K:L_a) does not lie in L_a");
    out.parameter = relative_norm(a_power, field_a, base);
    if (!is_fixed(out.parameter, base)) throw Error(ErrorCode::PrecisionLoss, "norm is not fixed by the base at precision");
    return out;
}

// ---------------------------------------------------------------------------------------------
// synthetic orders

ZpAlgebra scrambled_order(const CyclicAlgebraPtr& spec, std::mt19937_64& rng) {
    const auto& ring = spec->ring;
    const int n = ring->dim(), s = spec->index;
    const auto block = subfield_lattice(ring, spec->splitting);
    std::vector<ZpVec> gens;
    mpz_class pj = 1;
    for (int j = 0; j < s; ++j) {
        for (const auto& b : block) {
            ZpVec g(static_cast<std::size_t>(n) * s, 0);
            for (int k = 0; k < n; ++k) g[j * n + k] = pj * b[k];
            gens.push_back(std::move(g));
        }
        pj *= static_cast<long>(spec->prime());
    }
    // unit lower times unit upper triangular change of basis
    const int r = static_cast<int>(gens.size());
    std::uniform_int_distribution<long> coeff(0, spec->prime() - 1);
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<ZpVec> next = gens;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                if ((pass == 0) ? j >= i : j <= i) continue;
                const long c = coeff(rng);
                if (c == 0) continue;
                for (std::size_t k = 0; k < next[i].size(); ++k) next[i][k] += c * gens[j][k];
            }
        gens = std::move(next);
    }
    return algebra_from_lattice(spec->prime(), working_digits(spec), gens, 0, algebra_product(spec),
                                algebra_coordinates(CyclicAlgebraElement::one(spec)));
}

}  // namespace iwasawa
