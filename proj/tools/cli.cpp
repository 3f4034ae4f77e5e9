#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "iwasawa/chartable.hpp"
#include "iwasawa/decomposition.hpp"
#include "iwasawa/division_algebra.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/schur.hpp"
#include "iwasawa/skew_series.hpp"
#include "json.hpp"

namespace iwasawa::cli {

namespace {

using nlohmann::json;

constexpr int kMinimumPrecision = 8;
constexpr int kMinimumTruncation = 4;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Shared flags; `precision` starts from IWASAWA_PRECISION when set. */
struct RunConfig {
    std::string group_path;
    std::string action_path;
    std::string base_path;
    std::string overrides_path;
    i64 p = 0;
    i64 m = 0;
    i64 tau = 1;
    int s = 1;
    int smax = 1;
    int row = -1;
    int precision = kDefaultPrecision;
    int truncation = 16;
    int pairs = 50;
    int samples = 10;
    int jobs = 1;
    int desk_bound = 64;
    std::uint64_t seed = 1;
    std::vector<i64> stabilizer;
    std::string format = "json";
};

int default_precision() {
    const char* env = std::getenv("IWASAWA_PRECISION");
    if (!env || !*env) return kDefaultPrecision;
    try {
        std::size_t used = 0;
        const int n = std::stoi(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        return n;
    } catch (const std::exception&) {
        throw InputError(std::string("IWASAWA_PRECISION is not an integer: ") + env);
    }
}

void require_prime(i64 p) {
    if (p < 3 || !is_prime(p)) throw InputError("p must be an odd prime");
}

void require_precision(int n) {
    if (n < kMinimumPrecision) throw InputError("precision must be at least " + std::to_string(kMinimumPrecision));
}

json read_json(const std::string& path, const char* what) {
    if (path.empty()) throw InputError(std::string("missing --") + what);
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw InputError(path + ": " + ex.what());
    }
}

LocalFieldSpec base_field(const RunConfig& c) {
    if (c.base_path.empty()) return rational_field(c.p);
    auto k = field_from_json(read_json(c.base_path, "base"));
    if (k.prime() != c.p) throw InputError("base field is over Q_" + std::to_string(k.prime()));
    return k;
}

void emit(std::ostream& out, const RunConfig& c, const json& j, const std::string& table) {
    if (c.format == "json")
        out << j.dump(2) << "\n";
    else
        out << table;
}

// ---------------------------------------------------------------------------------------------
// subcommands

int chartable_command(const RunConfig& c, std::ostream& out) {
    const auto group = load_group(read_json(c.group_path, "group"));
    const auto table = character_table(group);
    const auto orth = check_orthogonality(table, group);
    json classes = json::array(), characters = json::array();
    for (int k = 0; k < table.classes.count(); ++k)
        classes.push_back({{"representative", table.classes.representatives[k]}, {"size", table.classes.sizes[k]}});
    std::ostringstream text;
    text << "|H| = " << group.order << ", exponent " << table.m << ", " << table.size() << " characters\n";
    for (const auto& ch : table.chars) {
        json values = json::array();
        text << "deg " << ch.degree << ":";
        for (const auto& v : ch.values) {
            values.push_back(v.to_string());
            text << "  " << v.to_string();
        }
        text << "\n";
        characters.push_back({{"degree", ch.degree}, {"values", values}});
    }
    text << "orthogonality: " << (orth.ok() ? "ok" : "FAILED") << "\n";
    json j{{"order", group.order},
           {"exponent", table.m},
           {"classes", classes},
           {"characters", characters},
           {"orthogonality", {{"rows", orth.rows}, {"columns", orth.columns}, {"degree_sum", orth.degree_sum}}}};
    emit(out, c, j, text.str());
    return orth.ok() ? kSuccess : kVerificationFailed;
}

int decompose_command(const RunConfig& c, std::ostream& out) {
    require_prime(c.p);
    require_precision(c.precision);
    if (c.jobs < 1) throw InputError("jobs must be positive");
    const auto group = load_group(read_json(c.group_path, "group"));
    const auto action = load_gamma_action(group, read_json(c.action_path, "auto"), c.p);
    DecomposeOptions options;
    options.precision = c.precision;
    options.jobs = c.jobs;
    options.schur.desk_bound = c.desk_bound;
    options.schur.seed = c.seed;
    if (!c.overrides_path.empty()) options.overrides = overrides_from_json(read_json(c.overrides_path, "overrides"));
    const auto d = decompose(group, action, base_field(c), options);
    emit(out, c, to_json(d), render_table(d));
    return d.passed() ? kSuccess : kVerificationFailed;
}

int skewseries_command(const RunConfig& c, std::ostream& out) {
    require_prime(c.p);
    require_precision(c.precision);
    if (c.m < 1) throw InputError("--m must be positive");
    if (c.truncation < kMinimumTruncation)
        throw InputError("truncation must be at least " + std::to_string(kMinimumTruncation));
    if (c.smax < 1) throw InputError("--smax must be positive");
    const auto centre = local_field(c.m, c.p, c.stabilizer);
    SkewVerifyOptions options;
    options.truncation = c.truncation;
    options.pairs = c.pairs;
    options.samples = c.samples;
    options.precision = c.precision;
    options.seed = c.seed;

    // the residue size of K^<tau> decides which indices admit an extension of tau
    const auto spec1 = cyclic_algebra(centre, 1, 0, c.precision);
    const auto ext1 = extend_tau(spec1, c.tau);
    const i64 q_tau = ext1.fixed_field.q;

    json reports = json::array(), skipped = json::array();
    std::ostringstream text;
    bool passed = true;
    for (int s = 1; s <= c.smax; ++s) {
        if ((q_tau - 1) % s != 0 || std::gcd(s, ext1.order) != 1) {
            skipped.push_back(s);
            text << "s=" << s << ": skipped (needs s | q_tau - 1 and s prime to the order of tau)\n";
            continue;
        }
        const auto report = verify_skew_identities(centre, c.tau, s, options);
        passed = passed && report.passed();
        reports.push_back(report.to_json());
        text << "s=" << s << " (order " << report.order << ", truncation " << report.truncation << ")\n";
        for (const auto& check : report.checks) {
            text << "  " << (check.skipped ? "SKIP" : check.passed ? "PASS" : "FAIL") << " " << check.name << " ["
                 << check.cases << " cases]";
            if (!check.detail.empty()) text << " " << check.detail;
            text << "\n";
        }
    }
    json j{{"modulus", c.m}, {"prime", c.p}, {"tau", c.tau}, {"reports", reports}, {"skipped", skipped},
           {"passed", passed}};
    emit(out, c, j, text.str());
    return passed ? kSuccess : kVerificationFailed;
}

int extend_tau_command(const RunConfig& c, std::ostream& out) {
    require_prime(c.p);
    require_precision(c.precision);
    if (c.m < 1) throw InputError("--m must be positive");
    if (c.s < 1) throw InputError("--s must be positive");
    const auto centre = local_field(c.m, c.p, c.stabilizer);
    const int r = c.s == 1 ? 0 : 1;
    const auto spec = cyclic_algebra(centre, c.s, r, c.precision);
    const auto ext = extend_tau(spec, c.tau);
    const auto checks = check_extension(ext, c.precision - kMinimumPrecision / 2);
    json j{{"centre", field_to_json(centre)},
           {"index", c.s},
           {"hasse", r},
           {"tau", c.tau},
           {"tau_hat", ext.lift},
           {"order", ext.order},
           {"fixed_field", field_to_json(ext.fixed_field)},
           {"epsilon", ext.epsilon.to_string()},
           {"teichmuller_part", ext.teichmuller_part.to_string()},
           {"epsilon_d", ext.epsilon_d.to_string()},
           {"checks",
            {{"digits", checks.digits},
             {"epsilon_d_root", checks.root},
             {"epsilon_d_norm", checks.norm},
             {"epsilon_norm", checks.epsilon_norm},
             {"teichmuller", checks.teichmuller},
             {"order", checks.order}}},
           {"passed", checks.ok()}};
    std::ostringstream text;
    text << "tau-hat = " << ext.lift << " mod " << spec->modulus() << ", order " << ext.order << "\n"
         << "epsilon   = " << ext.epsilon.to_string() << "\n"
         << "epsilon_D = " << ext.epsilon_d.to_string() << "\n"
         << "checks to " << checks.digits << " digits: " << (checks.ok() ? "ok" : "FAILED") << "\n";
    emit(out, c, j, text.str());
    return checks.ok() ? kSuccess : kVerificationFailed;
}

int schur_command(const RunConfig& c, std::ostream& out) {
    require_prime(c.p);
    require_precision(c.precision);
    const auto group = load_group(read_json(c.group_path, "group"));
    const auto table = character_table(group);
    if (c.row >= table.size()) throw InputError("row out of range");
    SchurOptions options;
    options.precision = c.precision;
    options.desk_bound = c.desk_bound;
    options.seed = c.seed;
    std::vector<SchurOverride> overrides;
    if (!c.overrides_path.empty()) overrides = overrides_from_json(read_json(c.overrides_path, "overrides"));

    json rows = json::array();
    std::ostringstream text;
    for (int i = 0; i < table.size(); ++i) {
        if (c.row >= 0 && i != c.row) continue;
        SchurOptions o = options;
        for (const auto& v : overrides)
            if (v.component == "eta" + std::to_string(i)) o.override_value = v;
        LocalFieldSpec field = rational_character_field(table, i, c.p);
        if (!c.base_path.empty()) field = compositum(field, base_field(c));
        const auto res = schur_index(table, group, i, field, o);
        rows.push_back({{"row", i},
                        {"degree", table.chars[i].degree},
                        {"field", field_to_json(field)},
                        {"s", res.s},
                        {"r", res.r},
                        {"n", res.n},
                        {"method", schur_method_name(res.method)},
                        {"note", res.note},
                        {"partial", res.partial()}});
        text << "eta" << i << ": degree " << table.chars[i].degree << ", s = " << res.s << ", r = " << res.r
             << ", n = " << res.n << " (" << schur_method_name(res.method) << ")";
        if (!res.note.empty()) text << " " << res.note;
        text << "\n";
    }
    emit(out, c, json{{"prime", c.p}, {"rows", rows}}, text.str());
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    try {
        c.precision = default_precision();
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    CLI::App app{"Wedderburn components of Iwasawa algebras of H x| Z_p"};
    app.require_subcommand(1);
    auto add_common = [&c](CLI::App* sub) {
        sub->add_option("--precision", c.precision, "p-adic digits (default IWASAWA_PRECISION or 32)");
        sub->add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--seed", c.seed, "random seed");
    };

    auto* chartable = app.add_subcommand("chartable", "character table of H");
    chartable->add_option("--group", c.group_path, "group JSON");
    add_common(chartable);

    auto* decompose_cmd = app.add_subcommand("decompose", "Wedderburn decomposition of Q^F(H x| Z_p)");
    decompose_cmd->add_option("--group", c.group_path, "group JSON");
    decompose_cmd->add_option("--auto", c.action_path, "automorphism JSON {\"images\": [...]}");
    decompose_cmd->add_option("--p", c.p, "odd prime");
    decompose_cmd->add_option("--base", c.base_path, "base field JSON {m, p, stabilizer_gens}");
    decompose_cmd->add_option("--overrides", c.overrides_path, "Schur index overrides JSON");
    decompose_cmd->add_option("--jobs", c.jobs, "worker threads");
    decompose_cmd->add_option("--desk-bound", c.desk_bound, "largest component dimension for the Schur backend");
    add_common(decompose_cmd);

    auto* skew = app.add_subcommand("skewseries", "skew power series identities");
    auto* verify = skew->add_subcommand("verify", "check every identity on random elements");
    skew->require_subcommand(1);
    verify->add_option("--m", c.m, "K = Q_p(zeta_m)^<stabilizer>");
    verify->add_option("--p", c.p, "odd prime");
    verify->add_option("--tau", c.tau, "tau as a residue mod m");
    verify->add_option("--stabilizer", c.stabilizer, "generators of the subgroup fixing K");
    verify->add_option("--smax", c.smax, "largest Schur index to try");
    verify->add_option("--trunc", c.truncation, "truncation degree");
    verify->add_option("--pairs", c.pairs, "random pairs per product identity");
    verify->add_option("--samples", c.samples, "random coefficients per identity");
    add_common(verify);

    auto* extend = app.add_subcommand("extend-tau", "extend tau from K to D");
    extend->add_option("--m", c.m, "K = Q_p(zeta_m)^<stabilizer>");
    extend->add_option("--p", c.p, "odd prime");
    extend->add_option("--tau", c.tau, "tau as a residue mod m");
    extend->add_option("--s", c.s, "Schur index of D");
    extend->add_option("--stabilizer", c.stabilizer, "generators of the subgroup fixing K");
    add_common(extend);

    auto* schur = app.add_subcommand("schur", "local Schur indices of the characters of H");
    schur->add_option("--group", c.group_path, "group JSON");
    schur->add_option("--p", c.p, "odd prime");
    schur->add_option("--row", c.row, "single character row");
    schur->add_option("--base", c.base_path, "extend scalars to this field");
    schur->add_option("--overrides", c.overrides_path, "Schur index overrides JSON");
    schur->add_option("--desk-bound", c.desk_bound, "largest component dimension for the backend");
    add_common(schur);

    std::vector<std::string> args(argv.rbegin(), argv.rend() - 1);  // CLI11 consumes a reversed vector
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (chartable->parsed()) return chartable_command(c, out);
        if (decompose_cmd->parsed()) return decompose_command(c, out);
        if (verify->parsed()) return skewseries_command(c, out);
        if (extend->parsed()) return extend_tau_command(c, out);
        if (schur->parsed()) return schur_command(c, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    err << "error: no subcommand\n";
    return kInputError;
}

}  // namespace iwasawa::cli
