#include "iwasawa/schur.hpp"

#include <numeric>
#include <random>
#include <set>

#include "iwasawa/error.hpp"
#include "iwasawa/padic.hpp"

namespace iwasawa {

std::vector<SchurOverride> overrides_from_json(const nlohmann::json& j) {
    std::vector<SchurOverride> out;
    auto one = [&out](const nlohmann::json& o) {
        if (!o.is_object() || !o.contains("component") || !o.contains("s"))
            throw Error(ErrorCode::MalformedInput, "override needs \"component\" and \"s\"");
        SchurOverride v;
        v.component = o.at("component").is_string() ? o.at("component").get<std::string>() : o.at("component").dump();
        v.s = o.at("s").get<int>();
        v.r = o.value("r", v.s == 1 ? 0 : 1);
        if (v.s < 1) throw Error(ErrorCode::MalformedInput, "override index must be positive");
        if (v.s > 1 && std::gcd(v.r, v.s) != 1)
            throw Error(ErrorCode::MalformedInput, "override twist must be prime to the index");
        if (v.s == 1) v.r = 0;
        else v.r = static_cast<int>(mod_norm(v.r, v.s));
        out.push_back(v);
    };
    if (j.is_array())
        for (const auto& o : j) one(o);
    else
        one(j);
    return out;
}

const char* schur_method_name(SchurMethod m) {
    switch (m) {
        case SchurMethod::Linear: return "linear";
        case SchurMethod::PGroup: return "p-group";
        case SchurMethod::MaximalOrder: return "maximal-order";
        case SchurMethod::Override: return "override";
        case SchurMethod::Unavailable: return "unavailable";
    }
    return "unknown";
}

LocalFieldSpec rational_character_field(const CharacterTable& table, int eta, i64 p) {
    auto group = local_galois_group(table.m, p);
    std::vector<i64> stabilizer;
    for (i64 a : group.elements())
        if (galois_act(table, eta, a) == eta) stabilizer.push_back(a);
    return field_from_subgroup(group, std::move(stabilizer));
}

namespace {

/** The Z_p value of an element of Q_p, embedded in O_L; requires valuation >= 0. */
mpz_class zp_value(const PadicElement& x) {
    if (x.is_zero()) return 0;
    if (x.valuation() < 0) throw Error(ErrorCode::PrecisionLoss, "character trace is not integral");
    auto v = x.unit_part();
    const auto& ring = *x.ring();
    for (int k = 0; k < x.shift(); ++k) v = ring.mul_pi(v);
    return v[0];
}

std::vector<int> rational_orbit(const CharacterTable& table, int eta, i64 p) {
    std::set<int> rows;
    for (i64 a : local_galois_group(table.m, p).elements()) rows.insert(galois_act(table, eta, a));
    return {rows.begin(), rows.end()};
}

}  // namespace

ZpAlgebra component_order(const CharacterTable& table, const FiniteGroup& group, int eta, i64 p, int precision) {
    if (eta < 0 || eta >= table.size()) throw Error(ErrorCode::InvalidArgument, "character index out of range");
    ZpContext ctx(p, precision);
    auto ring = padic_ring(table.m, p, precision);
    auto orbit = rational_orbit(table, eta, p);

    // trace[c] = sum over the Q_p-conjugates of eta evaluated at class c, an element of Z_p
    const int classes = table.classes.count();
    std::vector<mpz_class> trace(classes);
    for (int c = 0; c < classes; ++c) {
        CycloElement sum = table.chars[orbit[0]].values[c];
        for (std::size_t i = 1; i < orbit.size(); ++i) sum = sum + table.chars[orbit[i]].values[c];
        trace[c] = zp_value(PadicElement::embed(ring, sum));
        ctx.reduce(trace[c]);
    }

    // p^v eps = u sum_h trace(h^-1) h with u = eta(1) p^v / |H| a unit
    const int degree = table.chars[eta].degree;
    const int v = p_valuation(group.order / degree, p);
    mpz_class unit = ctx.unit_inverse(mpz_class(group.order / degree) / ctx.power(v));

    const int n = group.order;
    auto at = [&](int y) {
        mpz_class x = unit * trace[table.classes.class_of[group.inverse[y]]];
        ctx.reduce(x);
        return x;
    };
    std::vector<ZpVec> generators;
    generators.reserve(n);
    for (int h = 0; h < n; ++h) {
        // (eps h)[y] = eps[y h^-1]
        ZpVec g(n);
        for (int y = 0; y < n; ++y) g[y] = at(group.mul(y, group.inverse[h]));
        generators.push_back(std::move(g));
    }
    ZpVec scaled_one = generators[0];

    AmbientProduct multiply = [&group, &ctx, n](const ZpVec& x, const ZpVec& y) {
        ZpVec z(n, 0);
        for (int a = 0; a < n; ++a) {
            if (x[a] == 0) continue;
            for (int b = 0; b < n; ++b)
                if (y[b] != 0) z[group.mul(a, b)] += x[a] * y[b];
        }
        ctx.reduce(z);
        return z;
    };
    return algebra_from_lattice(p, precision, generators, v, multiply, scaled_one);
}

LocalInvariants order_invariants(const OrderBuilder& build, int centre_residue_degree, int centre_degree,
                                 int precision, std::uint64_t seed) {
    auto attempt = [&](int digits) {
        std::mt19937_64 rng(seed);
        auto maximal = maximal_order(build(digits), rng);
        return local_invariants(maximal, centre_residue_degree, centre_degree, rng);
    };
    try {
        return attempt(precision);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::PrecisionLoss) throw;
    }
    return attempt(2 * precision);
}

std::pair<int, int> extend_scalars(int s, int r, int degree) {
    if (s < 1 || degree < 1) throw Error(ErrorCode::InvalidArgument, "index and degree must be positive");
    const int g = std::gcd(s, degree);
    const int reduced = s / g;
    if (reduced == 1) return {1, 0};
    const i64 twist = mul_mod(inv_mod((degree / g) % reduced, reduced), mod_norm(r, reduced), reduced);
    return {reduced, static_cast<int>(twist)};
}

SchurResult schur_index(const CharacterTable& table, const FiniteGroup& group, int eta,
                        const LocalFieldSpec& field_eta, const SchurOptions& options) {
    if (eta < 0 || eta >= table.size()) throw Error(ErrorCode::InvalidArgument, "character index out of range");
    const int degree = table.chars[eta].degree;
    const i64 p = field_eta.prime();
    SchurResult out;
    out.n = degree;
    if (degree == 1) return out;
    if (group.is_p_group(p)) {
        out.method = SchurMethod::PGroup;
        return out;
    }

    auto fallback = [&](std::string note) {
        if (options.override_value) {
            const auto& o = *options.override_value;
            if (degree % o.s != 0)
                throw Error(ErrorCode::InvalidArgument, "override index does not divide the character degree");
            out.s = o.s;
            out.r = o.r;
            out.n = degree / o.s;
            out.method = SchurMethod::Override;
        } else {
            out.method = SchurMethod::Unavailable;
        }
        out.note = std::move(note);
        return out;
    };

    auto rational = rational_character_field(table, eta, p);
    auto [small, large] = common_ambient(rational, field_eta);
    if (!is_subfield(small, large))
        throw Error(ErrorCode::SpecMismatch, "F(eta) does not contain Q_p(eta)");
    const int dimension = rational.degree() * degree * degree;
    if (dimension > options.desk_bound)
        return fallback("component of dimension " + std::to_string(dimension) + " exceeds the desk bound");

    LocalInvariants inv;
    try {
        auto build = [&](int digits) { return component_order(table, group, eta, p, digits); };
        inv = order_invariants(build, rational.f, rational.degree(), options.precision, options.seed);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::PrecisionLoss && e.code() != ErrorCode::BackendUnavailable) throw;
        return fallback(e.what());
    }
    if (inv.s * inv.n != degree)
        throw Error(ErrorCode::BackendUnavailable, "index and matrix size do not multiply to the degree");

    const int extension = field_eta.degree() / rational.degree();
    auto [s, r] = extend_scalars(inv.s, inv.r, extension);
    out.s = s;
    out.r = r;
    out.n = degree / s;
    out.method = SchurMethod::MaximalOrder;
    return out;
}

}  // namespace iwasawa
