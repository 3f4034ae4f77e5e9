#include "doctest.h"

#include <map>
#include <set>

#include "corpus.hpp"
#include "iwasawa/clifford.hpp"
#include "iwasawa/error.hpp"

using namespace iwasawa;

namespace {

struct Setup {
    FiniteGroup group;
    GammaAction action;
    CharacterTable table;
    Setup(const FiniteGroup& g, const std::vector<int>& gamma, long long p)
        : group(g), action(make_gamma_action(g, gamma, p)), table(character_table(g)) {}
};

/** gamma applied to the group elements; maps idempotents of the component to themselves. */
GroupAlgebraElement push_forward(const GroupAlgebraElement& x, const FiniteGroup& g, const GammaAction& act,
                                 int m) {
    GroupAlgebraElement y(g, m);
    for (int h = 0; h < g.order; ++h) y[act.apply(h)] = x[h];
    return y;
}

const ComponentOrbit& orbit_containing(const std::vector<ComponentOrbit>& orbits, int eta) {
    for (const auto& o : orbits)
        if (std::find(o.members.begin(), o.members.end(), eta) != o.members.end()) return o;
    throw Error(ErrorCode::InvalidArgument, "row not found");
}

}  // namespace

TEST_CASE("C7 with x -> x^2 over Q_3") {
    Setup s(corpus::cyclic(7), corpus::power_map(7, 2), 3);
    CharacterActions actions(s.table, s.group, s.action, rational_field(3));
    auto orbits = enumerate_components(actions);
    REQUIRE(orbits.size() == 2);
    const auto& nontrivial = orbits[0].members.size() == 1 ? orbits[1] : orbits[0];
    auto inv = component_invariants(actions, nontrivial);
    CHECK(inv.w == 3);
    CHECK(inv.v == 1);
    CHECK(inv.tau == 2);
    CHECK(inv.e == 1);
    CHECK(inv.f == 3);
    CHECK(inv.field_eta.degree() == 6);
    CHECK(inv.field_chi.degree() == 2);
    CHECK(inv.chi_degree() == 3);

    auto over_eta = base_change(inv, inv.field_eta);
    CHECK(over_eta.v == 3);
    CHECK(over_eta.tau == 1);
    CHECK(over_eta.e == 1);
    CHECK(over_eta.f == 1);

    auto W = unramified_part(inv);
    CHECK(W == inv.field_eta);
    CHECK_THROWS_AS(base_change(inv, rational_field(3)), Error);
}

TEST_CASE("C9 with x -> x^4 over Q_3") {
    Setup s(corpus::cyclic(9), corpus::power_map(9, 4), 3);
    CharacterActions actions(s.table, s.group, s.action, rational_field(3));
    auto orbits = enumerate_components(actions);
    REQUIRE(orbits.size() == 3);
    int faithful = 0;
    for (const auto& o : orbits) {
        auto inv = component_invariants(actions, o);
        if (inv.field_eta.degree() != 6) continue;
        ++faithful;
        CHECK(inv.w == 3);
        CHECK(inv.v == 1);
        CHECK(inv.tau == 4);
        CHECK(inv.e == 3);
        CHECK(inv.f == 1);
        CHECK(unramified_part(inv) == inv.field_chi);
    }
    CHECK(faithful == 1);
}

TEST_CASE("idempotent of a nontrivial character of C3") {
    Setup s(corpus::cyclic(3), corpus::identity_map(3), 3);
    CharacterActions actions(s.table, s.group, s.action, rational_field(3));
    auto orbits = enumerate_components(actions);
    REQUIRE(orbits.size() == 2);
    const auto& o = orbits[0].members.size() == 2 ? orbits[0] : orbits[1];
    auto idem = build_idempotents(actions, o);
    CHECK(idem.epsilon_eta[0] == CycloElement::rational(s.table.m, mpq_class(2, 3)));
    CHECK(idem.epsilon_eta[1] == CycloElement::rational(s.table.m, mpq_class(-1, 3)));
    CHECK(idem.epsilon_eta[2] == CycloElement::rational(s.table.m, mpq_class(-1, 3)));
}

TEST_CASE("orbit structure on the corpus") {
    for (const auto& entry : corpus::build()) {
        CAPTURE(entry.name);
        Setup s(entry.group, entry.gamma, entry.p);
        CharacterActions actions(s.table, s.group, s.action, rational_field(entry.p));
        auto orbits = enumerate_components(actions);
        std::set<int> seen;
        long long bookkeeping = 0;
        for (const auto& o : orbits) {
            CAPTURE(describe(o));
            auto inv = component_invariants(actions, o);
            for (int r : o.members) CHECK(seen.insert(r).second);
            CHECK(o.representative == o.members.front());
            CHECK(static_cast<int>(o.members.size()) == inv.w * inv.base_degree());
            CHECK(inv.w % inv.v == 0);
            CHECK(inv.e * inv.f * inv.v == inv.w);
            // gamma^w fixes eta; no smaller power does
            CHECK(actions.gamma_power(o.representative, inv.w) == o.representative);
            CHECK(s.action.action_order % inv.w == 0);

            // tau is unique modulo Gal(M/F(eta)) and generates Gal(F(eta)/F_chi)
            auto tr = actions.translators(o.representative, actions.gamma_power(o.representative, inv.v));
            CHECK(tr.size() == inv.field_eta.stabilizer.size());
            CHECK(tr.front() == inv.tau);
            const i64 M = actions.ambient();
            i64 t = 1;
            for (int k = 1; k <= inv.w / inv.v; ++k) {
                t = mul_mod(t, inv.tau, M);
                CHECK(inv.field_eta.fixed_by(t) == (k == inv.w / inv.v));
            }
            CHECK(inv.field_chi.fixed_by(inv.tau));
            bookkeeping += static_cast<long long>(inv.w) * inv.base_degree() * inv.eta_degree * inv.eta_degree;

            // recomputing over W gives v^W = v f and the same F(eta)
            auto W = unramified_part(inv);
            CHECK(is_subfield(inv.field_chi, W));
            CHECK(extension_profile(inv.field_chi, W).degree == inv.f);
            auto changed = base_change(inv, W);
            CHECK(changed.v == inv.v * inv.f);
            CHECK(changed.e == inv.e);
            CHECK(changed.f == 1);
            CharacterActions over_w(s.table, s.group, s.action, W);
            auto recomputed = component_invariants(over_w, orbit_containing(enumerate_components(over_w),
                                                                            o.representative));
            CHECK(recomputed.w == changed.w);
            CHECK(recomputed.v == changed.v);
            CHECK(recomputed.field_eta == changed.field_eta);
            CHECK(recomputed.field_chi == changed.field_chi);
            CHECK(recomputed.e == changed.e);
            CHECK(recomputed.tau == changed.tau);
        }
        CHECK(static_cast<int>(seen.size()) == s.table.size());
        CHECK(bookkeeping == s.group.order);
    }
}

TEST_CASE("component idempotents on small groups") {
    for (const auto& entry : corpus::build()) {
        if (entry.group.order > 21) continue;
        CAPTURE(entry.name);
        Setup s(entry.group, entry.gamma, entry.p);
        CharacterActions actions(s.table, s.group, s.action, rational_field(entry.p));
        auto orbits = enumerate_components(actions);
        const int m = s.table.m;
        GroupAlgebraElement total(s.group, m);
        std::vector<GroupAlgebraElement> eps;
        for (const auto& o : orbits) {
            auto idem = build_idempotents(actions, o);
            CHECK(idem.e_eta * idem.e_eta == idem.e_eta);
            CHECK(idem.epsilon_chi * idem.epsilon_chi == idem.epsilon_chi);
            CHECK(idem.epsilon_chi.is_central());
            CHECK(idem.epsilon_eta.is_central());
            CHECK(idem.epsilon_chi * idem.e_eta == idem.e_eta);
            CHECK(idem.e_chi * idem.epsilon_eta == idem.epsilon_eta * idem.e_chi);
            CHECK(push_forward(idem.epsilon_chi, s.group, s.action, m) == idem.epsilon_chi);
            for (i64 a : actions.galois_elements()) CHECK(idem.epsilon_chi.galois(a % m) == idem.epsilon_chi);
            total = total + idem.epsilon_chi;
            eps.push_back(idem.epsilon_chi);
        }
        CHECK(total == GroupAlgebraElement::identity(s.group, m));
        for (std::size_t i = 0; i < eps.size(); ++i)
            for (std::size_t j = i + 1; j < eps.size(); ++j) CHECK((eps[i] * eps[j]).is_zero());
    }
}

TEST_CASE("base change rejects fields outside the range") {
    Setup s(corpus::cyclic(7), corpus::power_map(7, 2), 3);
    CharacterActions actions(s.table, s.group, s.action, rational_field(3));
    auto orbits = enumerate_components(actions);
    for (const auto& o : orbits) {
        auto inv = component_invariants(actions, o);
        auto far = local_field(9, 3, {});
        if (inv.w > 1) {
            try {
                base_change(inv, far);
                FAIL("expected FieldOutOfRange");
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::FieldOutOfRange);
            }
        }
    }
}

TEST_CASE("base field with a different prime is rejected") {
    Setup s(corpus::cyclic(7), corpus::power_map(7, 2), 3);
    CHECK_THROWS_AS(CharacterActions(s.table, s.group, s.action, rational_field(5)), Error);
}
