#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "iwasawa/chartable.hpp"
#include "iwasawa/group.hpp"
#include "iwasawa/local_galois.hpp"
#include "iwasawa/maximal_order.hpp"
#include "json.hpp"

namespace iwasawa {

/** User-supplied invariants for a component the backend cannot handle. */
struct SchurOverride {
    std::string component;
    int s = 1;
    int r = 0;
};

/** Accepts one {"component", "s", "r"} object or an array of them. */
std::vector<SchurOverride> overrides_from_json(const nlohmann::json& j);

enum class SchurMethod { Linear, PGroup, MaximalOrder, Override, Unavailable };
const char* schur_method_name(SchurMethod m);

struct SchurOptions {
    int precision = 64;
    int desk_bound = 64;  // largest Q_p-dimension of Q_p[H] eps(eta) handed to the backend
    std::uint64_t seed = 1;
    std::optional<SchurOverride> override_value;
};

/** Index, Hasse twist exponent and matrix size of D_eta over F(eta). */
struct SchurResult {
    int s = 1;
    int r = 0;
    int n = 1;
    SchurMethod method = SchurMethod::Linear;
    std::string note;
    bool partial() const { return method == SchurMethod::Unavailable; }
};

/** Q_p(eta) inside Q_p(zeta_m), m the exponent of H. */
LocalFieldSpec rational_character_field(const CharacterTable& table, int eta, i64 p);

/** The Z_p-order Z_p[H] eps_{Q_p}(eta) of the simple algebra Q_p[H] eps_{Q_p}(eta), centre Q_p(eta). */
ZpAlgebra component_order(const CharacterTable& table, const FiniteGroup& group, int eta, i64 p, int precision);

using OrderBuilder = std::function<ZpAlgebra(int precision)>;

/**
 * Maximal-order invariants of the order returned by `build`; retried once at doubled precision
 * when digits run out.
 */
LocalInvariants order_invariants(const OrderBuilder& build, int centre_residue_degree, int centre_degree,
                                 int precision, std::uint64_t seed);

/** (s', r') of A tensor E for an extension E of the centre of degree d, twist convention. */
std::pair<int, int> extend_scalars(int s, int r, int degree);

/**
 * Chain: linear eta, then the p-group theorem (s = 1), then the maximal-order backend over
 * Q_p(eta) with base change to F(eta), then the override. Without an override a component beyond
 * the desk bound is returned with method Unavailable.
 */
SchurResult schur_index(const CharacterTable& table, const FiniteGroup& group, int eta,
                        const LocalFieldSpec& field_eta, const SchurOptions& options = {});

}  // namespace iwasawa
