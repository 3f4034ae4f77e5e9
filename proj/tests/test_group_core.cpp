#include "doctest.h"

#include <numeric>

#include "corpus.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/group.hpp"

using namespace iwasawa;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an iwasawa::Error");
    return ErrorCode::InvalidArgument;
}

// Brute-force conjugacy relation: a ~ b iff some y has y a y^-1 = b.
bool conjugate(const FiniteGroup& g, int a, int b) {
    for (int y = 0; y < g.order; ++y)
        if (g.mul(g.mul(y, a), g.inverse[y]) == b) return true;
    return false;
}

}  // namespace

TEST_CASE("cyclic table of order 7") {
    auto g = corpus::cyclic(7);
    CHECK(g.order == 7);
    CHECK(g.exponent == 7);
    CHECK(g.is_abelian());
}

TEST_CASE("load validation errors") {
    std::vector<std::vector<int>> rows(3, std::vector<int>(3));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) rows[a][b] = (a + b) % 3;
    CHECK_NOTHROW(group_from_table(rows));

    // Associativity fails but identity and inverses exist: the loop of order 5 below.
    std::vector<std::vector<int>> loop = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK(code_of([&] { group_from_table(loop); }) == ErrorCode::NonAssociative);

    std::vector<std::vector<int>> constant = {{0, 0}, {0, 0}};
    CHECK(code_of([&] { group_from_table(constant); }) == ErrorCode::NoIdentity);

    std::vector<std::vector<int>> no_inv = {{0, 1, 2}, {1, 1, 1}, {2, 1, 2}};
    CHECK(code_of([&] { group_from_table(no_inv); }) == ErrorCode::NoInverse);

    CHECK(code_of([&] { load_group(nlohmann::json{{"order", 3}}); }) == ErrorCode::MalformedInput);
    CHECK(code_of([&] { load_group(nlohmann::json{{"table", {{0, 1}, {1}}}}); }) == ErrorCode::MalformedInput);
    CHECK(code_of([&] { load_group(nlohmann::json{{"order", 4}, {"table", {{0, 1}, {1, 0}}}}); }) ==
          ErrorCode::MalformedInput);
}

TEST_CASE("identity is relabelled to index 0") {
    std::vector<std::vector<int>> rows = {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}};  // identity is element 2
    auto g = group_from_table(rows);
    for (int x = 0; x < 3; ++x) CHECK(g.mul(0, x) == x);
}

TEST_CASE("permutation generators (123),(12)") {
    auto g = load_group(nlohmann::json::parse(R"({"perm_gens": [[[1,2,3]], [[1,2]]]})"));
    CHECK(g.order == 6);
    CHECK(g.exponent == 6);
    CHECK_FALSE(g.is_abelian());
    auto cc = conjugacy_classes(g);
    std::vector<int> sizes = cc.sizes;
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{1, 2, 3});
}

TEST_CASE("group json round trip") {
    auto g = corpus::quaternion8();
    auto h = load_group(group_to_json(g));
    CHECK(h.table == g.table);
}

TEST_CASE("conjugacy classes against brute force") {
    for (const auto& entry : corpus::build()) {
        if (entry.group.order > 60) continue;
        CAPTURE(entry.name);
        const auto& g = entry.group;
        auto cc = conjugacy_classes(g);
        int total = std::accumulate(cc.sizes.begin(), cc.sizes.end(), 0);
        CHECK(total == g.order);
        for (int a = 0; a < g.order; ++a)
            for (int b = 0; b < g.order; ++b) CHECK((cc.class_of[a] == cc.class_of[b]) == conjugate(g, a, b));
        for (int k = 0; k < cc.count(); ++k) CHECK(g.order % g.element_order[cc.representatives[k]] == 0);
        if (g.is_abelian()) CHECK(cc.count() == g.order);
    }
}

TEST_CASE("extraspecial group of order 27") {
    auto g = corpus::heisenberg(3);
    CHECK(g.exponent == 3);
    CHECK(conjugacy_classes(g).count() == 11);
    CHECK(g.is_p_group(3));
}

TEST_CASE("gamma actions") {
    auto c7 = corpus::cyclic(7);
    auto id = identity_action(c7, 5);
    CHECK(id.action_order == 1);
    CHECK(id.n0 == 0);

    auto sq = make_gamma_action(c7, corpus::power_map(7, 2), 3);
    CHECK(sq.action_order == 3);
    CHECK(sq.n0 == 1);

    CHECK(code_of([&] { make_gamma_action(c7, corpus::power_map(7, 3), 3); }) == ErrorCode::OrderNotPPower);
    CHECK(code_of([&] { make_gamma_action(c7, corpus::power_map(7, 2), 4); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { make_gamma_action(c7, corpus::power_map(7, 2), 2); }) == ErrorCode::InvalidArgument);

    auto not_hom = corpus::identity_map(7);
    std::swap(not_hom[1], not_hom[2]);
    CHECK(code_of([&] { make_gamma_action(c7, not_hom, 3); }) == ErrorCode::NotAutomorphism);
    std::vector<int> not_bij(7, 0);
    CHECK(code_of([&] { make_gamma_action(c7, not_bij, 3); }) == ErrorCode::NotAutomorphism);
}

TEST_CASE("corpus actions are automorphisms with minimal n0") {
    for (const auto& entry : corpus::build()) {
        CAPTURE(entry.name);
        auto act = make_gamma_action(entry.group, entry.gamma, entry.p);
        const auto& g = entry.group;
        for (int a = 0; a < g.order; ++a)
            for (int b = 0; b < g.order; ++b) REQUIRE(act.apply(g.mul(a, b)) == g.mul(act.apply(a), act.apply(b)));
        long long full = act.action_order;
        for (int x = 0; x < g.order; ++x) CHECK(act.apply_power(x, full) == x);
        if (act.n0 >= 1) {
            bool moves = false;
            for (int x = 0; x < g.order; ++x) moves = moves || act.apply_power(x, full / entry.p) != x;
            CHECK(moves);
        }
    }
}
