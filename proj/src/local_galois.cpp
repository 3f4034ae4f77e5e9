#include "iwasawa/local_galois.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "iwasawa/error.hpp"

namespace iwasawa {

LocalGaloisGroup::LocalGaloisGroup(i64 m, i64 p) : m_(m), p_(p) {
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
    if (p < 3 || !is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p must be an odd prime");
    auto [rest, t] = split_p_part(m, p);
    m_prime_ = rest;
    t_ = t;
    p_power_ = ipow(p, t);
    f0_ = m_prime_ == 1 ? 1 : mult_order(p % m_prime_, m_prime_);
    e0_ = euler_phi(p_power_);
}

i64 LocalGaloisGroup::element(i64 frobenius_power, i64 unit) const {
    i64 a = pow_mod(p_, frobenius_power, m_prime_);
    if (m_prime_ == 1) a = 0;
    i64 u = p_power_ == 1 ? 0 : mod_norm(unit, p_power_);
    return crt_pair(a, m_prime_, u, p_power_);
}

std::vector<i64> LocalGaloisGroup::elements() const {
    std::vector<i64> out;
    out.reserve(order());
    for (i64 k = 0; k < f0_; ++k)
        for (i64 u = 0; u < std::max<i64>(p_power_, 1); ++u)
            if (p_power_ == 1 || u % p_ != 0) out.push_back(element(k, u));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<i64> LocalGaloisGroup::inertia() const {
    std::vector<i64> out;
    for (i64 u = 0; u < std::max<i64>(p_power_, 1); ++u)
        if (p_power_ == 1 || u % p_ != 0) out.push_back(element(0, u));
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<i64> LocalGaloisGroup::frobenius_exponent(i64 a) const {
    a = mod_norm(a, m_);
    if (std::gcd(a, m_) != 1 && m_ != 1) return std::nullopt;
    if (m_prime_ == 1) return 0;
    i64 target = a % m_prime_, x = 1 % m_prime_;
    for (i64 k = 0; k < f0_; ++k) {
        if (x == target) return k;
        x = mul_mod(x, p_, m_prime_);
    }
    return std::nullopt;
}

bool LocalGaloisGroup::in_inertia(i64 a) const {
    return contains(a) && (m_prime_ == 1 || mod_norm(a, m_prime_) == 1);
}

i64 LocalGaloisGroup::element_order(i64 a) const {
    return m_ == 1 ? 1 : mult_order(mod_norm(a, m_), m_);
}

LocalGaloisGroup local_galois_group(i64 m, i64 p) { return LocalGaloisGroup(m, p); }

std::vector<i64> generated_subgroup(i64 m, const std::vector<i64>& gens) {
    std::set<i64> seen{1 % m};
    std::vector<i64> queue{1 % m};
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (i64 g : gens) {
            i64 y = mul_mod(queue[i], mod_norm(g, m), m);
            if (seen.insert(y).second) queue.push_back(y);
        }
    return {seen.begin(), seen.end()};
}

bool LocalFieldSpec::fixed_by(i64 a) const {
    return std::binary_search(stabilizer.begin(), stabilizer.end(), mod_norm(a, modulus()));
}

std::vector<i64> LocalFieldSpec::generators() const {
    std::vector<i64> gens;
    std::vector<i64> span{1 % modulus()};
    for (i64 a : stabilizer) {
        if (std::binary_search(span.begin(), span.end(), a)) continue;
        gens.push_back(a);
        span = generated_subgroup(modulus(), gens);
    }
    return gens;
}

std::string LocalFieldSpec::describe() const {
    std::string s = "Q_" + std::to_string(prime()) + "(zeta_" + std::to_string(modulus()) + ")^<";
    auto gens = generators();
    for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? "," : "") + std::to_string(gens[i]);
    return s + "> [e=" + std::to_string(e) + ", f=" + std::to_string(f) + "]";
}

LocalFieldSpec field_from_subgroup(const LocalGaloisGroup& g, std::vector<i64> subgroup) {
    std::sort(subgroup.begin(), subgroup.end());
    subgroup.erase(std::unique(subgroup.begin(), subgroup.end()), subgroup.end());
    LocalFieldSpec k;
    k.group = g;
    k.stabilizer = std::move(subgroup);
    i64 inertia_in_u = 0;
    for (i64 a : k.stabilizer) {
        if (!g.contains(a))
            throw Error(ErrorCode::NotASubfield,
                        std::to_string(a) + " is not in the local Galois group mod " + std::to_string(g.modulus()));
        if (g.in_inertia(a)) ++inertia_in_u;
    }
    const i64 size = static_cast<i64>(k.stabilizer.size());
    if (g.order() % size != 0) throw Error(ErrorCode::NotASubfield, "stabilizer is not a subgroup");
    k.e = static_cast<int>(g.ramification_index() / inertia_in_u);
    k.f = static_cast<int>(g.order() / size / k.e);
    k.q = ipow(g.prime(), k.f);
    return k;
}

LocalFieldSpec local_field(i64 m, i64 p, const std::vector<i64>& stabilizer_gens) {
    LocalGaloisGroup g(m, p);
    for (i64 a : stabilizer_gens)
        if (!g.contains(a))
            throw Error(ErrorCode::NotASubfield,
                        std::to_string(a) + " is not in the local Galois group mod " + std::to_string(m));
    return field_from_subgroup(g, generated_subgroup(m, stabilizer_gens));
}

LocalFieldSpec lift_field(const LocalFieldSpec& k, i64 M) {
    if (M % k.modulus() != 0)
        throw Error(ErrorCode::SpecMismatch,
                    std::to_string(k.modulus()) + " does not divide " + std::to_string(M));
    if (M == k.modulus()) return k;
    LocalGaloisGroup g(M, k.prime());
    std::vector<i64> pre;
    for (i64 a : g.elements())
        if (k.fixed_by(a % k.modulus())) pre.push_back(a);
    return field_from_subgroup(g, std::move(pre));
}

std::pair<LocalFieldSpec, LocalFieldSpec> common_ambient(const LocalFieldSpec& a, const LocalFieldSpec& b) {
    if (a.prime() != b.prime()) throw Error(ErrorCode::SpecMismatch, "fields over different primes");
    i64 M = lcm64(a.modulus(), b.modulus());
    return {lift_field(a, M), lift_field(b, M)};
}

bool is_subfield(const LocalFieldSpec& lower, const LocalFieldSpec& upper) {
    auto [lo, up] = common_ambient(lower, upper);
    return std::includes(lo.stabilizer.begin(), lo.stabilizer.end(), up.stabilizer.begin(), up.stabilizer.end());
}

LocalFieldSpec compositum(const LocalFieldSpec& a, const LocalFieldSpec& b) {
    auto [x, y] = common_ambient(a, b);
    std::vector<i64> both;
    std::set_intersection(x.stabilizer.begin(), x.stabilizer.end(), y.stabilizer.begin(), y.stabilizer.end(),
                          std::back_inserter(both));
    return field_from_subgroup(x.group, std::move(both));
}

LocalFieldSpec intersection(const LocalFieldSpec& a, const LocalFieldSpec& b) {
    auto [x, y] = common_ambient(a, b);
    std::vector<i64> gens = x.stabilizer;
    gens.insert(gens.end(), y.stabilizer.begin(), y.stabilizer.end());
    return field_from_subgroup(x.group, generated_subgroup(x.modulus(), gens));
}

LocalFieldSpec minimal_ambient(const LocalFieldSpec& k) {
    for (i64 d : divisors(k.modulus())) {
        LocalGaloisGroup g(d, k.prime());
        // defined mod d iff the stabilizer contains every element = 1 mod d
        bool contains_kernel = true;
        for (i64 a : k.group.elements())
            if (a % d == 1 % d && !k.fixed_by(a)) {
                contains_kernel = false;
                break;
            }
        if (!contains_kernel) continue;
        std::vector<i64> image;
        for (i64 a : k.stabilizer) image.push_back(a % d);
        return field_from_subgroup(g, std::move(image));
    }
    return k;
}

ExtensionProfile extension_profile(const LocalFieldSpec& lower, const LocalFieldSpec& upper) {
    auto [lo, up] = common_ambient(lower, upper);
    if (!std::includes(lo.stabilizer.begin(), lo.stabilizer.end(), up.stabilizer.begin(), up.stabilizer.end()))
        throw Error(ErrorCode::NotASubfield, lower.describe() + " is not contained in " + upper.describe());
    ExtensionProfile prof;
    prof.lower = lower;
    prof.upper = upper;
    prof.degree = static_cast<int>(lo.stabilizer.size() / up.stabilizer.size());
    auto inertia_count = [&](const LocalFieldSpec& k) {
        return std::count_if(k.stabilizer.begin(), k.stabilizer.end(),
                             [&](i64 a) { return k.group.in_inertia(a); });
    };
    prof.e = static_cast<int>(inertia_count(lo) / inertia_count(up));
    prof.f = prof.degree / prof.e;
    return prof;
}

nlohmann::json field_to_json(const LocalFieldSpec& k) {
    return nlohmann::json{{"m", k.modulus()}, {"p", k.prime()}, {"stabilizer_gens", k.generators()}};
}

LocalFieldSpec field_from_json(const nlohmann::json& j) {
    try {
        return local_field(j.at("m").get<i64>(), j.at("p").get<i64>(),
                           j.value("stabilizer_gens", std::vector<i64>{}));
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::MalformedInput, ex.what());
    }
}

}  // namespace iwasawa
