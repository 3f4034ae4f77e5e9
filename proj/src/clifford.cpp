#include "iwasawa/clifford.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "iwasawa/error.hpp"
#include "iwasawa/padic.hpp"

namespace iwasawa {

CharacterActions::CharacterActions(const CharacterTable& table, const FiniteGroup& group, const GammaAction& action,
                                   const LocalFieldSpec& base)
    : table_(&table), group_(&group), action_(&action) {
    if (action.p != base.prime())
        throw Error(ErrorCode::SpecMismatch, "gamma action and base field use different primes");
    base_ = lift_field(base, lcm64(table.m, base.modulus()));
    gamma_perm_ = table.gamma_permutation(action, group);
    std::map<i64, std::vector<int>> by_residue;
    for (i64 a : base_.stabilizer) {
        i64 r = a % table.m;
        auto it = by_residue.find(r);
        if (it == by_residue.end()) it = by_residue.emplace(r, table.galois_permutation(r)).first;
        galois_perm_.push_back(it->second);
    }
}

int CharacterActions::gamma_power(int eta, long long k) const {
    k %= action_->action_order;
    if (k < 0) k += action_->action_order;
    for (long long i = 0; i < k; ++i) eta = gamma_perm_[eta];
    return eta;
}

int CharacterActions::galois(int eta, i64 a) const {
    a = mod_norm(a, ambient());
    auto it = std::lower_bound(base_.stabilizer.begin(), base_.stabilizer.end(), a);
    if (it == base_.stabilizer.end() || *it != a)
        throw Error(ErrorCode::InvalidArgument, std::to_string(a) + " does not fix the base field");
    return galois_perm_[it - base_.stabilizer.begin()][eta];
}

std::vector<i64> CharacterActions::translators(int from, int to) const {
    std::vector<i64> out;
    for (std::size_t i = 0; i < base_.stabilizer.size(); ++i)
        if (galois_perm_[i][from] == to) out.push_back(base_.stabilizer[i]);
    return out;
}

LocalFieldSpec CharacterActions::character_field(int eta) const {
    return field_from_subgroup(base_.group, translators(eta, eta));
}

int ComponentInvariants::base_degree() const {
    return static_cast<int>(base.stabilizer.size() / field_chi.stabilizer.size());
}

std::vector<ComponentOrbit> enumerate_components(const CharacterActions& actions) {
    const int n = actions.table().size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    const auto gens = actions.base().generators();
    for (int eta = 0; eta < n; ++eta) {
        unite(eta, actions.gamma(eta));
        for (i64 a : gens) unite(eta, actions.galois(eta, a));
    }
    std::map<int, std::vector<int>> cells;
    for (int eta = 0; eta < n; ++eta) cells[find(eta)].push_back(eta);

    std::vector<ComponentOrbit> out;
    for (auto& [root, members] : cells) {
        ComponentOrbit orb;
        orb.representative = members.front();
        orb.members = members;
        int eta = orb.representative;
        do {
            orb.gamma_orbit.push_back(eta);
            eta = actions.gamma(eta);
        } while (eta != orb.representative);
        orb.w = static_cast<int>(orb.gamma_orbit.size());
        for (int i = 1; i <= orb.w; ++i) {
            auto tr = actions.translators(orb.representative, orb.gamma_orbit[i % orb.w]);
            if (!tr.empty()) {
                orb.v = i;
                orb.tau = tr.front();
                break;
            }
        }
        orb.galois_orbit_reps.assign(orb.gamma_orbit.begin(), orb.gamma_orbit.begin() + orb.v);
        out.push_back(std::move(orb));
    }
    return out;
}

std::vector<ComponentOrbit> enumerate_components(const CharacterTable& table, const FiniteGroup& group,
                                                 const GammaAction& action, const LocalFieldSpec& base) {
    return enumerate_components(CharacterActions(table, group, action, base));
}

ComponentInvariants component_invariants(const CharacterActions& actions, const ComponentOrbit& orbit) {
    ComponentInvariants inv;
    inv.w = orbit.w;
    inv.v = orbit.v;
    inv.tau = orbit.tau;
    inv.base = actions.base();
    inv.eta_degree = actions.table().chars[orbit.representative].degree;
    inv.field_eta = actions.character_field(orbit.representative);
    const std::set<int> gamma_set(orbit.gamma_orbit.begin(), orbit.gamma_orbit.end());
    std::vector<i64> chi_stab;
    for (i64 a : actions.galois_elements())
        if (gamma_set.count(actions.galois(orbit.representative, a))) chi_stab.push_back(a);
    inv.field_chi = field_from_subgroup(inv.base.group, std::move(chi_stab));
    auto prof = extension_profile(inv.field_chi, inv.field_eta);
    if (prof.degree * inv.v != inv.w)
        throw Error(ErrorCode::InconsistentOrbit, "w = " + std::to_string(inv.w) + " but v (F(eta):F_chi) = " +
                                                      std::to_string(inv.v * prof.degree));
    inv.e = prof.e;
    inv.f = prof.f;
    return inv;
}

namespace {

/** Smallest element of the coset a * Gal(Q_p(zeta_M)/upper). */
i64 canonical_coset_rep(i64 a, const LocalFieldSpec& upper) {
    i64 best = 0;
    for (i64 h : upper.stabilizer) {
        i64 x = mul_mod(a, h, upper.modulus());
        if (best == 0 || x < best) best = x;
    }
    return best;
}

}  // namespace

ComponentInvariants base_change(const ComponentInvariants& inv, const LocalFieldSpec& intermediate) {
    const i64 M = lcm64(inv.base.modulus(), intermediate.modulus());
    ComponentInvariants out = inv;
    LocalFieldSpec chi = lift_field(inv.field_chi, M), eta = lift_field(inv.field_eta, M);
    LocalFieldSpec E = lift_field(intermediate, M);
    if (!is_subfield(chi, E) || !is_subfield(E, eta))
        throw Error(ErrorCode::FieldOutOfRange, E.describe() + " is not between F_chi and F(eta)");
    i64 tau = inv.tau;
    if (M != inv.base.modulus()) {
        auto lifts = automorphism_lifts(E.group, inv.tau, inv.base.modulus());
        auto it = std::find_if(lifts.begin(), lifts.end(), [&](i64 a) { return chi.fixed_by(a); });
        tau = *it;
    }
    const int k = static_cast<int>(chi.stabilizer.size() / E.stabilizer.size());
    out.base = E;
    out.field_chi = E;
    out.field_eta = eta;
    out.v = inv.v * k;
    out.tau = canonical_coset_rep(pow_mod(tau, k, M), eta);
    auto prof = extension_profile(E, eta);
    out.e = prof.e;
    out.f = prof.f;
    return out;
}

LocalFieldSpec unramified_part(const ComponentInvariants& inv) {
    const i64 M = inv.field_eta.modulus();
    std::vector<i64> gens = inv.field_eta.stabilizer;
    gens.push_back(pow_mod(inv.tau, inv.f, M));
    return field_from_subgroup(inv.field_eta.group, generated_subgroup(M, gens));
}

GroupAlgebraElement::GroupAlgebraElement(const FiniteGroup& group, int m)
    : group_(&group), m_(m), c_(group.order, CycloElement(m)) {}

GroupAlgebraElement GroupAlgebraElement::identity(const FiniteGroup& group, int m) {
    return basis(group, m, 0);
}

GroupAlgebraElement GroupAlgebraElement::basis(const FiniteGroup& group, int m, int h) {
    GroupAlgebraElement x(group, m);
    x.c_[h] = CycloElement::rational(m, 1);
    return x;
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
    GroupAlgebraElement r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const {
    GroupAlgebraElement r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
    GroupAlgebraElement r(*group_, m_);
    for (int g = 0; g < group_->order; ++g) {
        if (c_[g].is_zero()) continue;
        for (int h = 0; h < group_->order; ++h) {
            if (o.c_[h].is_zero()) continue;
            r.c_[group_->mul(g, h)] += c_[g] * o.c_[h];
        }
    }
    return r;
}

GroupAlgebraElement GroupAlgebraElement::galois(long long a) const {
    GroupAlgebraElement r = *this;
    for (auto& x : r.c_) x = x.galois(a);
    return r;
}

bool GroupAlgebraElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const CycloElement& x) { return x.is_zero(); });
}

bool GroupAlgebraElement::is_central() const {
    // x central iff x(h g h^-1) = x(g) for all g, h
    for (int h = 0; h < group_->order; ++h)
        for (int g = 0; g < group_->order; ++g)
            if (c_[group_->mul(group_->mul(h, g), group_->inverse[h])] != c_[g]) return false;
    return true;
}

GroupAlgebraElement character_idempotent(const CharacterTable& table, const FiniteGroup& group, int eta) {
    GroupAlgebraElement x(group, table.m);
    const auto& ch = table.chars[eta];
    mpq_class scale(ch.degree, group.order);
    scale.canonicalize();
    for (int h = 0; h < group.order; ++h)
        x[h] = ch.values[table.classes.class_of[group.inverse[h]]] * scale;
    return x;
}

ComponentIdempotents build_idempotents(const CharacterActions& actions, const ComponentOrbit& orbit) {
    const auto& t = actions.table();
    const auto& g = actions.group();
    auto sum = [&](const std::set<int>& rows) {
        GroupAlgebraElement x(g, t.m);
        for (int r : rows) x = x + character_idempotent(t, g, r);
        return x;
    };
    ComponentIdempotents out;
    out.e_eta = character_idempotent(t, g, orbit.representative);
    std::set<int> conjugates;
    for (i64 a : actions.galois_elements()) conjugates.insert(actions.galois(orbit.representative, a));
    out.epsilon_eta = sum(conjugates);
    out.e_chi = sum(std::set<int>(orbit.gamma_orbit.begin(), orbit.gamma_orbit.end()));
    out.epsilon_chi = sum(std::set<int>(orbit.members.begin(), orbit.members.end()));
    return out;
}

std::string describe(const ComponentOrbit& orbit) {
    std::string s = "eta=" + std::to_string(orbit.representative) + " w=" + std::to_string(orbit.w) +
                    " v=" + std::to_string(orbit.v) + " tau=" + std::to_string(orbit.tau) + " members={";
    for (std::size_t i = 0; i < orbit.members.size(); ++i) s += (i ? "," : "") + std::to_string(orbit.members[i]);
    return s + "}";
}

}  // namespace iwasawa
