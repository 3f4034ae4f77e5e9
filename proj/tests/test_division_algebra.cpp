#include "doctest.h"

#include <random>

#include "iwasawa/division_algebra.hpp"
#include "iwasawa/error.hpp"

using namespace iwasawa;

namespace {

constexpr int kDigits = 40;

PadicElement random_integral(const RingPtr& ring, std::mt19937_64& rng, const LocalFieldSpec& field) {
    // trace down to the field keeps the sample inside it
    std::uniform_int_distribution<long> digit(-20, 20);
    auto v = ring->zero_vec();
    for (auto& x : v) x = digit(rng);
    const auto top = local_field(ring->modulus(), ring->prime(), {});
    return relative_trace(PadicElement::from_vector(ring, v), top, field);
}

CyclicAlgebraElement random_element(const CyclicAlgebraPtr& spec, std::mt19937_64& rng) {
    std::vector<PadicElement> c;
    for (int i = 0; i < spec->index; ++i) c.push_back(random_integral(spec->ring, rng, spec->splitting));
    return CyclicAlgebraElement(spec, std::move(c));
}

/** Zero to at least `digits` p-adic digits. */
bool vanishes_to(const PadicElement& x, int digits) {
    const int bound = digits * x.ring()->ramification_index();
    return x.is_zero() ? x.absolute_precision() >= bound : x.valuation() >= bound;
}

bool vanishes_to(const CyclicAlgebraElement& x, int digits) {
    for (const auto& c : x.coeffs())
        if (!vanishes_to(c, digits)) return false;
    return true;
}

std::vector<std::vector<PadicElement>> matmul(const std::vector<std::vector<PadicElement>>& a,
                                              const std::vector<std::vector<PadicElement>>& b) {
    const std::size_t n = a.size();
    std::vector<std::vector<PadicElement>> c(n, std::vector<PadicElement>(n, PadicElement::zero(a[0][0].ring())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

struct TauCase {
    i64 m;
    i64 p;
    i64 tau;
    int s;
    int r;
};

// (K, tau, s) with s | q_tau - 1; the last two have tau unramified
const TauCase kTauCases[] = {
    {9, 3, 4, 2, 1},  {25, 5, 6, 2, 1}, {25, 5, 6, 4, 1}, {25, 5, 6, 4, 3}, {49, 7, 8, 2, 1},
    {13, 3, 3, 2, 1}, {7, 3, 2, 2, 1},  {9, 7, 7, 2, 1},  {9, 3, 1, 2, 1},
};

}  // namespace

TEST_CASE("cyclic algebra relations") {
    std::mt19937_64 rng(1);
    SUBCASE("index one is the field") {
        auto spec = cyclic_algebra(local_field(9, 3, {}), 1, 0, kDigits);
        auto x = random_element(spec, rng), y = random_element(spec, rng);
        CHECK(ca_mul(x, y)[0] == x[0] * y[0]);
    }
    SUBCASE("Q_3 with s = 2") {
        auto spec = cyclic_algebra(rational_field(3), 2, 1, kDigits);
        CHECK(spec->omega_order() == 8);
        CHECK(spec->omega.pow(8) == PadicElement::one(spec->ring));
        CHECK(spec->omega.pow(4) != PadicElement::one(spec->ring));
        auto pi = CyclicAlgebraElement::pi_power(spec, 1);
        auto w = CyclicAlgebraElement::scalar(spec, spec->omega);
        CHECK(pi * w == CyclicAlgebraElement::scalar(spec, spec->omega.pow(3)) * pi);
        CHECK(pi * pi == CyclicAlgebraElement::scalar(spec, PadicElement::from_integer(spec->ring, 3)));
        // brute-force regular representation over K(omega)
        for (int t = 0; t < 10; ++t) {
            auto x = random_element(spec, rng), y = random_element(spec, rng);
            auto lhs = splitting_matrix(x * y);
            auto rhs = matmul(splitting_matrix(x), splitting_matrix(y));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) CHECK(lhs[i][j] == rhs[i][j]);
        }
    }
    SUBCASE("associativity and identity") {
        for (auto [m, p, s, r] : {std::tuple{1, 5, 4, 3}, {9, 7, 2, 1}, {25, 5, 2, 1}, {1, 13, 6, 5}}) {
            CAPTURE(m);
            CAPTURE(s);
            auto spec = cyclic_algebra(local_field(m, p, {}), s, r, kDigits);
            for (int t = 0; t < 5; ++t) {
                auto x = random_element(spec, rng), y = random_element(spec, rng), z = random_element(spec, rng);
                CHECK(vanishes_to((x * y) * z - x * (y * z), kDigits - 4));
                CHECK(x * CyclicAlgebraElement::one(spec) == x);
                CHECK(CyclicAlgebraElement::one(spec) * x == x);
            }
            auto pi = CyclicAlgebraElement::pi_power(spec, 1);
            auto acc = CyclicAlgebraElement::one(spec);
            for (int i = 0; i < s; ++i) acc = acc * pi;
            CHECK(acc == CyclicAlgebraElement::scalar(spec, spec->centre_uniformizer));
        }
    }
    SUBCASE("elements of different algebras do not mix") {
        auto a = cyclic_algebra(rational_field(5), 2, 1, kDigits);
        auto b = cyclic_algebra(rational_field(5), 4, 1, kDigits);
        CHECK_THROWS_AS(ca_mul(CyclicAlgebraElement::one(a), CyclicAlgebraElement::one(b)), Error);
        CHECK_THROWS_AS(cyclic_algebra(rational_field(5), 4, 2, kDigits), Error);
    }
}

TEST_CASE("extending tau to D") {
    std::mt19937_64 rng(2);
    for (const auto& c : kTauCases) {
        CAPTURE(c.m);
        CAPTURE(c.p);
        CAPTURE(c.tau);
        CAPTURE(c.s);
        auto K = local_field(c.m, c.p, {});
        auto spec = cyclic_algebra(K, c.s, c.r, kDigits);
        auto ext = extend_tau(spec, c.tau);
        const auto& ring = spec->ring;
        const auto one = PadicElement::one(ring);
        const int d = ext.order;

        CHECK(vanishes_to(ext.epsilon_d.pow(c.s) - ext.epsilon, 32));
        CHECK(vanishes_to(tau_norm(ext.epsilon_d, ext.lift, d) - one, 32));
        // lemma checks: N(epsilon) = 1 and zeta in mu_{(q-1)/(q_tau-1)}
        CHECK(vanishes_to(tau_norm(ext.epsilon, ext.lift, d) - one, 32));
        const i64 q = K.q, q_tau = ext.fixed_field.q;
        CHECK(ext.teichmuller_part.pow((q - 1) / (q_tau - 1)) == one);
        auto checks = check_extension(ext, 32);
        CHECK(checks.ok());

        // tau-hat is tau on K and has order d on K(omega)
        auto zeta_m = PadicElement::zeta(ring, ring->modulus() / c.m);
        CHECK(ext.on_coefficient(zeta_m) == zeta_m.pow(c.tau));
        CHECK(ext.on_coefficient(spec->omega, d) == spec->omega);

        // exact order d on a spanning set, and no proper divisor suffices
        std::vector<CyclicAlgebraElement> span{CyclicAlgebraElement::scalar(spec, spec->omega),
                                               CyclicAlgebraElement::scalar(spec, zeta_m)};
        for (int i = 0; i < c.s; ++i) span.push_back(CyclicAlgebraElement::pi_power(spec, i));
        for (const auto& x : span) CHECK(ext.apply(x, d) == x);
        for (int k = 1; k < d; ++k)
            if (d % k == 0) CHECK(ext.apply(span[1], k) != span[1]);

        // multiplicative, and commutes with pi_D -> zeta_s pi_D
        const PadicElement zeta_s = spec->omega.pow(spec->omega_order() / c.s);
        auto twist_pi = [&](const CyclicAlgebraElement& x) {
            std::vector<PadicElement> out;
            for (int i = 0; i < c.s; ++i) out.push_back(x[i] * zeta_s.pow(i));
            return CyclicAlgebraElement(spec, out);
        };
        for (int t = 0; t < 4; ++t) {
            auto x = random_element(spec, rng), y = random_element(spec, rng);
            CHECK(vanishes_to(ext.apply(x * y) - ext.apply(x) * ext.apply(y), kDigits - 6));
            CHECK(ext.apply(twist_pi(x)) == twist_pi(ext.apply(x)));
        }
    }
}

TEST_CASE("trivial extensions of tau") {
    SUBCASE("tau = id") {
        auto spec = cyclic_algebra(local_field(25, 5, {}), 4, 1, kDigits);
        auto ext = extend_tau(spec, 1);
        CHECK(ext.order == 1);
        CHECK(ext.epsilon_d == PadicElement::one(spec->ring));
    }
    SUBCASE("unramified tau") {
        auto spec = cyclic_algebra(local_field(7, 3, {}), 2, 1, kDigits);
        auto ext = extend_tau(spec, 2);
        CHECK(ext.order == 3);
        CHECK(ext.epsilon_d == PadicElement::one(spec->ring));
    }
    SUBCASE("index not dividing q_tau - 1") {
        auto spec = cyclic_algebra(local_field(9, 3, {}), 4, 1, kDigits);
        try {
            extend_tau(spec, 4);
            FAIL("expected IndexNotDividing");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::IndexNotDividing);
        }
    }
}

TEST_CASE("fixed subalgebras") {
    std::mt19937_64 rng(3);
    SUBCASE("e = d gives the whole algebra") {
        auto spec = cyclic_algebra(local_field(9, 3, {}), 2, 1, kDigits);
        auto ext = extend_tau(spec, 4);
        auto all = fixed_subalgebra(ext, ext.order);
        CHECK(all.dimension() == spec->rank());
        CHECK(all.centre_field == spec->centre);
    }
    SUBCASE("order one tau") {
        auto spec = cyclic_algebra(rational_field(5), 2, 1, kDigits);
        auto ext = extend_tau(spec, 1);
        CHECK(fixed_subalgebra(ext, 1).dimension() == 4);
    }
    for (const auto& c : {TauCase{9, 7, 7, 2, 1}, TauCase{9, 3, 4, 2, 1}, TauCase{25, 5, 6, 2, 1}}) {
        CAPTURE(c.m);
        CAPTURE(c.p);
        auto spec = cyclic_algebra(local_field(c.m, c.p, {}), c.s, c.r, kDigits);
        auto ext = extend_tau(spec, c.tau);
        auto fixed = fixed_subalgebra(ext, 1);
        const int d = ext.order;
        CHECK(fixed.dimension() * d == spec->rank());
        CHECK(fixed.centre_field.degree() * d == spec->centre.degree());
        for (const auto& b : fixed.basis) CHECK(vanishes_to(ext.apply(b) - b, kDigits - 4));
        const auto centre_gens = lift_field(fixed.centre_field, spec->modulus()).generators();
        for (const auto& z : fixed.centre_basis) {
            for (int i = 1; i < c.s; ++i) CHECK(vanishes_to(z[i], kDigits - 4));
            for (i64 g : centre_gens) CHECK(vanishes_to(z[0].galois(g) - z[0], kDigits - 4));
        }
        // same index, Hasse invariant restricted along (K : K^<tau>) = d
        auto maximal = maximal_order(order_of(spec, fixed.basis), rng);
        CHECK(maximal.enlargements == 0);
        auto inv = local_invariants(maximal, fixed.centre_field.f, fixed.centre_field.degree(), rng);
        CHECK(inv.s == c.s);
        CHECK(inv.n == 1);
        CHECK(inv.r == descend_twist(c.s, c.r, d));
    }
}

TEST_CASE("twist bookkeeping under restriction") {
    CHECK(descend_twist(1, 0, 3) == 0);
    CHECK(descend_twist(4, 1, 5) == 1);
    CHECK(descend_twist(4, 1, 3) == 3);
    CHECK(descend_twist(6, 5, 5) == 1);
    CHECK_THROWS_AS(descend_twist(4, 1, 2), Error);
}

TEST_CASE("combining generators") {
    SUBCASE("C_9 faithful component: norm of zeta_9 - 1") {
        auto field_eta = local_field(9, 3, {});
        auto field_chi = local_field(9, 3, {4});
        auto ring = padic_ring(9, 3, kDigits);
        auto pi_eta = PadicElement::zeta(ring, 1) - PadicElement::one(ring);
        auto combined = combine_generators(field_chi, field_eta, field_chi, 1, 4, pi_eta);
        CHECK(combined.a_degree == 1);
        CHECK(combined.b_degree == 3);
        CHECK(combined.degree == 3);
        CHECK(combined.acting == 4);
        auto expected = pi_eta * pi_eta.galois(4) * pi_eta.galois(16);
        CHECK(combined.parameter == expected);
        CHECK(combined.parameter.galois(4) == combined.parameter);
        CHECK(combined.parameter.valuation() == 3);
    }
    SUBCASE("index two over Q_3(zeta_9) with tau = sigma_4") {
        auto spec = cyclic_algebra(local_field(9, 3, {}), 2, 1, kDigits);
        auto ext = extend_tau(spec, 4);
        auto field_chi = local_field(9, 3, {4});
        const auto& K = spec->splitting;
        auto gens = K.generators();
        gens.push_back(ext.lift);
        auto field_b = field_from_subgroup(K.group, generated_subgroup(K.modulus(), gens));
        auto combined = combine_generators(field_chi, spec->centre, field_b, spec->twist, ext.lift,
                                           spec->centre_uniformizer);
        CHECK(combined.splitting == K);
        CHECK(combined.a_degree == 2);
        CHECK(combined.b_degree == 3);
        CHECK(combined.degree == 6);
        CHECK(is_fixed(combined.parameter, field_chi));
        i64 g = combined.acting;
        int order = 1;
        while (!K.fixed_by(g)) {
            g = mul_mod(g, combined.acting, K.modulus());
            ++order;
        }
        CHECK(order == 6);
    }
    SUBCASE("non-coprime degrees") {
        auto ring = padic_ring(12, 3, kDigits);
        try {
            combine_generators(rational_field(3), local_field(3, 3, {}), local_field(4, 3, {}), 1, 1,
                               PadicElement::one(ring));
            FAIL("expected DegreesNotCoprime");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DegreesNotCoprime);
        }
    }
}

TEST_CASE("scrambled orders grow back to the standard maximal order") {
    std::mt19937_64 rng(4);
    for (auto [p, s, r] : {std::tuple{5, 2, 1}, {7, 2, 1}, {5, 4, 3}}) {
        CAPTURE(p);
        CAPTURE(s);
        auto spec = cyclic_algebra(rational_field(p), s, r, 64);
        auto start = scrambled_order(spec, rng);
        auto maximal = maximal_order(start, rng);
        CHECK(maximal.enlargements >= 1);
        auto inv = local_invariants(maximal, 1, 1, rng);
        CHECK(inv.s == s);
        CHECK(inv.r == r);
    }
}
