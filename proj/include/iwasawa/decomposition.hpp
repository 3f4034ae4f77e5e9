#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iwasawa/clifford.hpp"
#include "iwasawa/group.hpp"
#include "iwasawa/local_galois.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/schur.hpp"
#include "json.hpp"

namespace iwasawa {

/** A p-adic number as serialized: pi^shift * u in Q_p(zeta_modulus), u given by its O_L coordinates. */
struct PadicValue {
    i64 modulus = 1;
    i64 prime = 0;
    int ring_precision = 0;
    int shift = 0;
    int precision = 0;  // relative
    std::vector<std::string> unit;
    std::string text;

    bool operator==(const PadicValue&) const = default;
};

PadicValue padic_value(const PadicElement& x);

/**
 * D_chi as the cyclic algebra over F_chi of degree e s_eta split by K = F(eta)(omega)^<tau^e>.
 * K is the compositum of L_a = F(eta)^<tau^e> (fixed by sigma) and L_b = K^<tau-hat>; the
 * generator pi_{D^<tau^e>} gamma'' acts as sigma tau-hat and its (e s)-th power is the parameter
 * times a power of gamma''.
 */
struct CyclicDescription {
    LocalFieldSpec splitting;   // K
    LocalFieldSpec subfield_a;  // L_a, centre of D_eta^<tau^e>
    LocalFieldSpec subfield_b;  // L_b
    i64 sigma = 1;              // twist of D_eta, mod the modulus of K
    i64 tau_hat = 1;            // extension of tau to F(eta)(omega), mod the modulus of K
    i64 acting = 1;             // sigma tau-hat
    int degree = 1;             // e s_eta
    int a_degree = 1;           // s_eta
    int b_degree = 1;           // e
    int fixed_hasse = 0;        // Hasse twist of D_eta^<tau^e> over L_a
    PadicValue parameter;       // N_{L_a/F_chi}(pi_{L_a})
    PadicValue eta_norm;        // N_{F(eta)/F_chi}(pi_eta); equals the parameter up to a unit only when f > 1

    bool operator==(const CyclicDescription&) const = default;
};

/** Totally ramified case: D_chi = sum_i D_eta (gamma'')^i with gamma'' acting as tau of order w/v. */
struct CrossedProduct {
    i64 twist = 1;
    int twist_order = 1;

    bool operator==(const CrossedProduct&) const = default;
};

/** The same component recomputed with W = F(eta)^<tau^f> as base field. */
struct BaseChangeRecord {
    LocalFieldSpec field;  // W
    int v = 1;
    int e = 1;
    int f = 1;
    i64 tau = 1;
    int s_eta = 1;
    int n_eta = 1;

    bool operator==(const BaseChangeRecord&) const = default;
};

struct ComponentRecord {
    std::string key;  // "eta<row>" for the smallest row in the joint orbit
    int representative = 0;
    std::vector<int> members;
    int w = 1;
    int v = 1;
    int e = 1;
    int f = 1;
    i64 tau = 1;  // residue mod the ambient modulus
    LocalFieldSpec base;
    LocalFieldSpec field_chi;
    LocalFieldSpec field_eta;
    LocalFieldSpec unramified;  // W
    int eta_degree = 1;
    int chi_degree = 1;   // w eta(1)
    int base_degree = 1;  // (F_chi : F)
    int s_eta = 1;
    int r_eta = 0;
    int n_eta = 1;
    int s_chi = 1;
    int n_chi = 1;
    std::string schur_method;
    std::string schur_note;
    bool partial = false;
    LocalFieldSpec skew_coefficients;  // centre of D_eta^<tau^e>
    std::string centre_description;
    std::string skew_description;
    std::optional<CyclicDescription> cyclic;
    std::string cyclic_note;  // why the cyclic description is missing
    std::optional<CrossedProduct> crossed;
    std::optional<BaseChangeRecord> base_change;

    bool operator==(const ComponentRecord&) const = default;
};

struct ConsistencyCheck {
    std::string name;
    bool passed = true;
    std::vector<std::string> failures;

    bool operator==(const ConsistencyCheck&) const = default;
};

struct Decomposition {
    int group_order = 0;
    i64 prime = 0;
    LocalFieldSpec base;
    int precision = kDefaultPrecision;
    std::vector<ComponentRecord> records;
    std::vector<ConsistencyCheck> checks;

    bool passed() const;
    bool partial() const;
    bool operator==(const Decomposition&) const = default;
};

struct DecomposeOptions {
    SchurOptions schur;
    /** Matched against record keys; used when the backend cannot finish. */
    std::vector<SchurOverride> overrides;
    /** p-adic digits for the cyclic description. */
    int precision = kDefaultPrecision;
    int jobs = 1;
    bool cyclic = true;
    bool base_change = true;
};

/** One record per joint (gamma, Galois) orbit on Irr(H), in orbit order, plus the global checks. */
Decomposition decompose(const FiniteGroup& group, const GammaAction& action, const LocalFieldSpec& base,
                        const DecomposeOptions& options = {});

/** n_chi = n_eta f v, s_chi = s_eta e, chi(1) = s_chi n_chi and w = v e f for every record. */
ConsistencyCheck identity_check(const std::vector<ComponentRecord>& records);
/** sum w (F_chi:F) eta(1)^2 = |H|. */
ConsistencyCheck bookkeeping_check(const std::vector<ComponentRecord>& records, int group_order);
/** s_chi | s_eta (F(eta):F_chi), n_eta | n_chi and w = v e f. */
ConsistencyCheck divisibility_check(const std::vector<ComponentRecord>& records);
/** v^W = v f, e^W = e, f^W = 1 and unchanged s_eta, n_eta wherever f > 1. */
ConsistencyCheck base_change_check(const std::vector<ComponentRecord>& records);

nlohmann::json to_json(const PadicValue& x);
nlohmann::json to_json(const ComponentRecord& r);
nlohmann::json to_json(const Decomposition& d);
PadicValue padic_value_from_json(const nlohmann::json& j);
ComponentRecord record_from_json(const nlohmann::json& j);
/** Inverse of to_json; throws MalformedInput. */
Decomposition decomposition_from_json(const nlohmann::json& j);

/** One line per record with the main invariants. */
std::string render_table(const Decomposition& d);

}  // namespace iwasawa
