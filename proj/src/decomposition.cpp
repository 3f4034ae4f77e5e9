#include "iwasawa/decomposition.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <thread>

#include "iwasawa/chartable.hpp"
#include "iwasawa/division_algebra.hpp"
#include "iwasawa/error.hpp"

namespace iwasawa {

PadicValue padic_value(const PadicElement& x) {
    PadicValue out;
    out.modulus = x.ring()->modulus();
    out.prime = x.ring()->prime();
    out.ring_precision = x.ring()->precision();
    out.shift = x.shift();
    out.precision = x.relative_precision();
    for (const auto& c : x.unit_part()) out.unit.push_back(c.get_str());
    out.text = x.to_string();
    return out;
}

namespace {

/** Q_p(zeta_m) when the field is a full cyclotomic field, otherwise the fixed-field notation. */
std::string field_name(const LocalFieldSpec& k) {
    const auto small = minimal_ambient(k);
    const std::string qp = "Q_" + std::to_string(k.prime());
    if (small.stabilizer.size() == 1)
        return small.modulus() <= 2 ? qp : qp + "(zeta_" + std::to_string(small.modulus()) + ")";
    return small.describe();
}

LocalFieldSpec fixed_by(const LocalFieldSpec& k, i64 a) {
    auto gens = k.stabilizer;
    gens.push_back(mod_norm(a, k.modulus()));
    return field_from_subgroup(k.group, generated_subgroup(k.modulus(), gens));
}

/** D_eta^<tau^e> as a coefficient ring name. */
std::string coefficient_name(const ComponentRecord& r) {
    const std::string field = field_name(r.skew_coefficients);
    if (r.s_eta == 1) return field;
    return "D(" + field + ", s=" + std::to_string(r.s_eta) + ")";
}

void describe_skew(ComponentRecord& r) {
    r.centre_description = "Q^{" + field_name(r.field_chi) + "}((Gamma'')^" + std::to_string(r.e) + ")";
    const std::string coefficients = "O_{" + coefficient_name(r) + "}";
    // tau acts on D_eta^<tau^e> with order e; it is named by its residue at the smallest modulus there
    if (r.e == 1) {
        r.skew_description = "Quot(" + coefficients + "[[X]])";
        return;
    }
    const i64 m = minimal_ambient(r.skew_coefficients).modulus();
    const std::string twist = "sigma_" + std::to_string(mod_norm(r.tau, m));
    r.skew_description = "Quot(" + coefficients + "[[X;" + twist + "," + twist + "-id]])";
}

CyclicDescription cyclic_description(const ComponentRecord& r, int precision) {
    auto spec = cyclic_algebra(r.field_eta, r.s_eta, r.r_eta, precision);
    auto ext = extend_tau(spec, r.tau);
    const auto& ring = spec->ring;
    const i64 M = spec->modulus();
    const i64 tau_e = pow_mod(ext.lift, r.e, M);

    CyclicDescription out;
    const LocalFieldSpec eta = lift_field(r.field_eta, M);
    const LocalFieldSpec chi = lift_field(r.field_chi, M);
    out.splitting = fixed_by(spec->splitting, tau_e);
    out.subfield_a = fixed_by(eta, tau_e);
    out.subfield_b = fixed_by(out.splitting, ext.lift);
    out.sigma = spec->twist;
    out.tau_hat = ext.lift;
    out.fixed_hasse = descend_twist(r.s_eta, r.r_eta, r.f);

    auto combined = combine_generators(chi, out.subfield_a, out.subfield_b, spec->twist, ext.lift,
                                       field_uniformizer(ring, out.subfield_a));
    if (!(combined.splitting == out.splitting))
        throw Error(ErrorCode::InconsistentOrbit, "L_a L_b is not F(eta)(omega)^<tau^e>");
    out.acting = combined.acting;
    out.degree = combined.degree;
    out.a_degree = combined.a_degree;
    out.b_degree = combined.b_degree;
    out.parameter = padic_value(combined.parameter);
    out.eta_norm = padic_value(relative_norm(field_uniformizer(ring, eta), eta, chi));
    return out;
}

SchurResult schur_for(const CharacterTable& table, const FiniteGroup& group, int eta, const LocalFieldSpec& field,
                      const std::string& key, const DecomposeOptions& options) {
    SchurOptions so = options.schur;
    for (const auto& o : options.overrides)
        if (o.component == key) so.override_value = o;
    return schur_index(table, group, eta, field, so);
}

BaseChangeRecord recompute_over(const CharacterTable& table, const FiniteGroup& group, const GammaAction& action,
                                const ComponentRecord& r, const DecomposeOptions& options) {
    CharacterActions actions(table, group, action, r.unramified);
    for (const auto& orbit : enumerate_components(actions)) {
        if (!std::binary_search(orbit.members.begin(), orbit.members.end(), r.representative)) continue;
        auto inv = component_invariants(actions, orbit);
        BaseChangeRecord out;
        out.field = r.unramified;
        out.v = inv.v;
        out.e = inv.e;
        out.f = inv.f;
        out.tau = inv.tau;
        auto schur = schur_for(table, group, r.representative, inv.field_eta, r.key, options);
        out.s_eta = schur.s;
        out.n_eta = schur.n;
        return out;
    }
    throw Error(ErrorCode::InconsistentOrbit, "row " + std::to_string(r.representative) + " lies in no orbit over W");
}

ComponentRecord build_record(const CharacterActions& actions, const ComponentOrbit& orbit,
                             const DecomposeOptions& options) {
    const auto& table = actions.table();
    const auto& group = actions.group();
    auto inv = component_invariants(actions, orbit);

    ComponentRecord r;
    r.key = "eta" + std::to_string(orbit.representative);
    r.representative = orbit.representative;
    r.members = orbit.members;
    r.w = inv.w;
    r.v = inv.v;
    r.e = inv.e;
    r.f = inv.f;
    r.tau = inv.tau;
    r.base = inv.base;
    r.field_chi = inv.field_chi;
    r.field_eta = inv.field_eta;
    r.unramified = unramified_part(inv);
    r.eta_degree = inv.eta_degree;
    r.chi_degree = inv.chi_degree();
    r.base_degree = inv.base_degree();
    r.skew_coefficients = fixed_by(inv.field_eta, pow_mod(inv.tau, inv.e, inv.field_eta.modulus()));

    auto schur = schur_for(table, group, orbit.representative, inv.field_eta, r.key, options);
    r.s_eta = schur.s;
    r.r_eta = schur.r;
    r.n_eta = schur.n;
    r.schur_method = schur_method_name(schur.method);
    r.schur_note = schur.note;
    r.partial = schur.partial();
    r.n_chi = r.n_eta * r.f * r.v;
    r.s_chi = r.s_eta * r.e;
    describe_skew(r);

    if (r.f == 1) r.crossed = CrossedProduct{r.tau, r.w / r.v};
    if (options.cyclic && !r.partial) {
        try {
            r.cyclic = cyclic_description(r, options.precision);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::PrecisionLoss && e.code() != ErrorCode::DegreesNotCoprime) throw;
            r.cyclic_note = e.what();
        }
    }
    if (options.base_change && r.f > 1) r.base_change = recompute_over(table, group, actions.action(), r, options);
    return r;
}

ConsistencyCheck make_check(std::string name) {
    ConsistencyCheck c;
    c.name = std::move(name);
    return c;
}

void fail(ConsistencyCheck& c, const ComponentRecord& r, const std::string& what) {
    c.passed = false;
    c.failures.push_back(r.key + ": " + what);
}

}  // namespace

Decomposition decompose(const FiniteGroup& group, const GammaAction& action, const LocalFieldSpec& base,
                        const DecomposeOptions& options) {
    if (base.prime() != action.p) throw Error(ErrorCode::InvalidArgument, "base field and action use different primes");
    if (options.jobs < 1) throw Error(ErrorCode::InvalidArgument, "jobs must be positive");
    const auto table = character_table(group);
    CharacterActions actions(table, group, action, base);
    const auto orbits = enumerate_components(actions);

    Decomposition out;
    out.group_order = group.order;
    out.prime = base.prime();
    out.base = base;
    out.precision = options.precision;
    out.records.resize(orbits.size());

    // each worker writes only its own slots; the order is the orbit order regardless of scheduling
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(orbits.size());
    auto work = [&] {
        for (std::size_t i = next++; i < orbits.size(); i = next++) {
            try {
                out.records[i] = build_record(actions, orbits[i], options);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int threads = std::min<int>(options.jobs, static_cast<int>(orbits.size()));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    out.checks = {identity_check(out.records), bookkeeping_check(out.records, group.order),
                  divisibility_check(out.records)};
    if (options.base_change) out.checks.push_back(base_change_check(out.records));
    return out;
}

bool Decomposition::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ConsistencyCheck& c) { return c.passed; });
}

bool Decomposition::partial() const {
    return std::any_of(records.begin(), records.end(), [](const ComponentRecord& r) { return r.partial; });
}

ConsistencyCheck identity_check(const std::vector<ComponentRecord>& records) {
    auto c = make_check("identities");
    for (const auto& r : records) {
        if (r.n_chi != r.n_eta * r.f * r.v) fail(c, r, "n_chi != n_eta f v");
        if (r.s_chi != r.s_eta * r.e) fail(c, r, "s_chi != s_eta e");
        if (r.chi_degree != r.s_chi * r.n_chi) fail(c, r, "chi(1) != s_chi n_chi");
        if (r.w != r.v * r.e * r.f) fail(c, r, "w != v e f");
        if (r.eta_degree != r.s_eta * r.n_eta) fail(c, r, "eta(1) != s_eta n_eta");
    }
    return c;
}

ConsistencyCheck bookkeeping_check(const std::vector<ComponentRecord>& records, int group_order) {
    auto c = make_check("bookkeeping");
    long long total = 0;
    for (const auto& r : records) total += static_cast<long long>(r.w) * r.base_degree * r.eta_degree * r.eta_degree;
    if (total != group_order) {
        c.passed = false;
        c.failures.push_back("sum w (F_chi:F) eta(1)^2 = " + std::to_string(total) + " but |H| = " +
                             std::to_string(group_order));
    }
    return c;
}

ConsistencyCheck divisibility_check(const std::vector<ComponentRecord>& records) {
    auto c = make_check("divisibility");
    for (const auto& r : records) {
        const int relative = r.field_eta.degree() / r.field_chi.degree();
        if (relative != r.e * r.f) fail(c, r, "(F(eta):F_chi) != e f");
        if ((r.s_eta * relative) % r.s_chi != 0) fail(c, r, "s_chi does not divide s_eta (F(eta):F_chi)");
        if (r.n_chi % r.n_eta != 0) fail(c, r, "n_eta does not divide n_chi");
        if (r.w != r.v * r.e * r.f) fail(c, r, "w != v e f");
    }
    return c;
}

ConsistencyCheck base_change_check(const std::vector<ComponentRecord>& records) {
    auto c = make_check("base_change");
    for (const auto& r : records) {
        if (r.f == 1) continue;
        if (!r.base_change) {
            fail(c, r, "no recomputation over W");
            continue;
        }
        const auto& b = *r.base_change;
        if (b.v != r.v * r.f) fail(c, r, "v^W != v f");
        if (b.e != r.e) fail(c, r, "e^W != e");
        if (b.f != 1) fail(c, r, "f^W != 1");
        if (b.s_eta != r.s_eta || b.n_eta != r.n_eta) fail(c, r, "s_eta or n_eta changed over W");
        // clifford's formula for the same base change
        ComponentInvariants inv;
        inv.w = r.w;
        inv.v = r.v;
        inv.tau = r.tau;
        inv.base = r.base;
        inv.field_chi = r.field_chi;
        inv.field_eta = r.field_eta;
        inv.e = r.e;
        inv.f = r.f;
        inv.eta_degree = r.eta_degree;
        auto formula = base_change(inv, r.unramified);
        if (formula.v != b.v || formula.e != b.e || formula.f != b.f) fail(c, r, "recomputation disagrees with the formula");
    }
    return c;
}

// ---------------------------------------------------------------------------------------------
// serialization

namespace {

using nlohmann::json;

template <class T>
T get(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& ex) {
        throw Error(ErrorCode::MalformedInput, std::string("field \"") + key + "\": " + ex.what());
    }
}

LocalFieldSpec get_field(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorCode::MalformedInput, std::string("missing field \"") + key + "\"");
    return field_from_json(j.at(key));
}

json cyclic_to_json(const CyclicDescription& c) {
    return json{{"splitting", field_to_json(c.splitting)},
                {"subfield_a", field_to_json(c.subfield_a)},
                {"subfield_b", field_to_json(c.subfield_b)},
                {"sigma", c.sigma},
                {"tau_hat", c.tau_hat},
                {"acting", c.acting},
                {"degree", c.degree},
                {"a_degree", c.a_degree},
                {"b_degree", c.b_degree},
                {"fixed_hasse", c.fixed_hasse},
                {"parameter", to_json(c.parameter)},
                {"eta_norm", to_json(c.eta_norm)}};
}

CyclicDescription cyclic_from_json(const json& j) {
    CyclicDescription c;
    c.splitting = get_field(j, "splitting");
    c.subfield_a = get_field(j, "subfield_a");
    c.subfield_b = get_field(j, "subfield_b");
    c.sigma = get<i64>(j, "sigma");
    c.tau_hat = get<i64>(j, "tau_hat");
    c.acting = get<i64>(j, "acting");
    c.degree = get<int>(j, "degree");
    c.a_degree = get<int>(j, "a_degree");
    c.b_degree = get<int>(j, "b_degree");
    c.fixed_hasse = get<int>(j, "fixed_hasse");
    c.parameter = padic_value_from_json(j.at("parameter"));
    c.eta_norm = padic_value_from_json(j.at("eta_norm"));
    return c;
}

json check_to_json(const ConsistencyCheck& c) {
    return json{{"name", c.name}, {"passed", c.passed}, {"failures", c.failures}};
}

}  // namespace

json to_json(const PadicValue& x) {
    return json{{"modulus", x.modulus},       {"prime", x.prime}, {"ring_precision", x.ring_precision},
                {"shift", x.shift},           {"precision", x.precision}, {"unit", x.unit},
                {"text", x.text}};
}

PadicValue padic_value_from_json(const json& j) {
    PadicValue x;
    x.modulus = get<i64>(j, "modulus");
    x.prime = get<i64>(j, "prime");
    x.ring_precision = get<int>(j, "ring_precision");
    x.shift = get<int>(j, "shift");
    x.precision = get<int>(j, "precision");
    x.unit = get<std::vector<std::string>>(j, "unit");
    x.text = get<std::string>(j, "text");
    return x;
}

json to_json(const ComponentRecord& r) {
    json j{{"key", r.key},
           {"representative", r.representative},
           {"members", r.members},
           {"w", r.w},
           {"v", r.v},
           {"e", r.e},
           {"f", r.f},
           {"tau", r.tau},
           {"base", field_to_json(r.base)},
           {"field_chi", field_to_json(r.field_chi)},
           {"field_eta", field_to_json(r.field_eta)},
           {"unramified", field_to_json(r.unramified)},
           {"eta_degree", r.eta_degree},
           {"chi_degree", r.chi_degree},
           {"base_degree", r.base_degree},
           {"s_eta", r.s_eta},
           {"r_eta", r.r_eta},
           {"n_eta", r.n_eta},
           {"s_chi", r.s_chi},
           {"n_chi", r.n_chi},
           {"schur_method", r.schur_method},
           {"schur_note", r.schur_note},
           {"partial", r.partial},
           {"skew_coefficients", field_to_json(r.skew_coefficients)},
           {"centre", {{"field", field_to_json(r.field_chi)}, {"power", r.e}, {"text", r.centre_description}}},
           {"skew_description", r.skew_description},
           {"cyclic", r.cyclic ? cyclic_to_json(*r.cyclic) : json(nullptr)},
           {"cyclic_note", r.cyclic_note},
           {"crossed_product", r.crossed ? json{{"twist", r.crossed->twist}, {"twist_order", r.crossed->twist_order}}
                                         : json(nullptr)}};
    if (r.base_change) {
        const auto& b = *r.base_change;
        j["base_change"] = json{{"field", field_to_json(b.field)}, {"v", b.v},         {"e", b.e},
                                {"f", b.f},                        {"tau", b.tau},     {"s_eta", b.s_eta},
                                {"n_eta", b.n_eta}};
    } else {
        j["base_change"] = nullptr;
    }
    return j;
}

ComponentRecord record_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::MalformedInput, "record must be an object");
    ComponentRecord r;
    r.key = get<std::string>(j, "key");
    r.representative = get<int>(j, "representative");
    r.members = get<std::vector<int>>(j, "members");
    r.w = get<int>(j, "w");
    r.v = get<int>(j, "v");
    r.e = get<int>(j, "e");
    r.f = get<int>(j, "f");
    r.tau = get<i64>(j, "tau");
    r.base = get_field(j, "base");
    r.field_chi = get_field(j, "field_chi");
    r.field_eta = get_field(j, "field_eta");
    r.unramified = get_field(j, "unramified");
    r.eta_degree = get<int>(j, "eta_degree");
    r.chi_degree = get<int>(j, "chi_degree");
    r.base_degree = get<int>(j, "base_degree");
    r.s_eta = get<int>(j, "s_eta");
    r.r_eta = get<int>(j, "r_eta");
    r.n_eta = get<int>(j, "n_eta");
    r.s_chi = get<int>(j, "s_chi");
    r.n_chi = get<int>(j, "n_chi");
    r.schur_method = get<std::string>(j, "schur_method");
    r.schur_note = get<std::string>(j, "schur_note");
    r.partial = get<bool>(j, "partial");
    r.skew_coefficients = get_field(j, "skew_coefficients");
    r.centre_description = get<std::string>(j.at("centre"), "text");
    r.skew_description = get<std::string>(j, "skew_description");
    if (!j.at("cyclic").is_null()) r.cyclic = cyclic_from_json(j.at("cyclic"));
    r.cyclic_note = get<std::string>(j, "cyclic_note");
    if (const auto& c = j.at("crossed_product"); !c.is_null())
        r.crossed = CrossedProduct{get<i64>(c, "twist"), get<int>(c, "twist_order")};
    if (const auto& b = j.at("base_change"); !b.is_null()) {
        BaseChangeRecord x;
        x.field = get_field(b, "field");
        x.v = get<int>(b, "v");
        x.e = get<int>(b, "e");
        x.f = get<int>(b, "f");
        x.tau = get<i64>(b, "tau");
        x.s_eta = get<int>(b, "s_eta");
        x.n_eta = get<int>(b, "n_eta");
        r.base_change = x;
    }
    return r;
}

json to_json(const Decomposition& d) {
    json records = json::array(), checks = json::array();
    for (const auto& r : d.records) records.push_back(to_json(r));
    for (const auto& c : d.checks) checks.push_back(check_to_json(c));
    return json{{"group_order", d.group_order}, {"prime", d.prime},     {"base", field_to_json(d.base)},
                {"precision", d.precision},     {"records", records},   {"checks", checks},
                {"passed", d.passed()},         {"partial", d.partial()}};
}

Decomposition decomposition_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::MalformedInput, "decomposition must be an object");
    Decomposition d;
    d.group_order = get<int>(j, "group_order");
    d.prime = get<i64>(j, "prime");
    d.base = get_field(j, "base");
    d.precision = get<int>(j, "precision");
    for (const auto& r : j.at("records")) d.records.push_back(record_from_json(r));
    for (const auto& c : j.at("checks")) {
        ConsistencyCheck check;
        check.name = get<std::string>(c, "name");
        check.passed = get<bool>(c, "passed");
        check.failures = get<std::vector<std::string>>(c, "failures");
        d.checks.push_back(std::move(check));
    }
    return d;
}

std::string render_table(const Decomposition& d) {
    std::ostringstream os;
    os << "|H| = " << d.group_order << ", F = " << field_name(d.base) << "\n";
    os << std::left << std::setw(8) << "key" << std::right;
    for (const char* h : {"w", "v", "e", "f", "eta1", "s_eta", "n_eta", "s_chi", "n_chi"}) os << std::setw(6) << h;
    os << "  schur          D_chi\n";
    for (const auto& r : d.records) {
        os << std::left << std::setw(8) << r.key << std::right;
        for (int x : {r.w, r.v, r.e, r.f, r.eta_degree, r.s_eta, r.n_eta, r.s_chi, r.n_chi}) os << std::setw(6) << x;
        os << "  " << std::left << std::setw(15) << r.schur_method << r.skew_description << "\n";
    }
    for (const auto& c : d.checks) {
        os << c.name << ": " << (c.passed ? "ok" : "FAILED") << "\n";
        for (const auto& f : c.failures) os << "  " << f << "\n";
    }
    return os.str();
}

}  // namespace iwasawa
