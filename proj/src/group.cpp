#include "iwasawa/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string>

#include "iwasawa/error.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwasawa {

int FiniteGroup::pow(int a, long long e) const {
    int result = 0;
    e %= element_order[a];
    if (e < 0) e += element_order[a];
    for (long long i = 0; i < e; ++i) result = mul(result, a);
    return result;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order; ++a)
        for (int b = a + 1; b < order; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

bool FiniteGroup::is_p_group(long long p) const {
    long long n = order;
    while (n % p == 0) n /= p;
    return n == 1;
}

namespace {

std::string triple(int a, int b, int c) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

// Light's test: middle associativity on a generating set implies associativity.
void check_associative(const FiniteGroup& g) {
    const int n = g.order;
    std::vector<char> reached(n, 0);
    std::vector<int> gens;
    std::vector<int> members;
    auto close = [&]() {
        std::deque<int> queue(members.begin(), members.end());
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for (int s : gens) {
                for (int y : {g.mul(x, s), g.mul(s, x)}) {
                    if (!reached[y]) {
                        reached[y] = 1;
                        members.push_back(y);
                        queue.push_back(y);
                    }
                }
            }
        }
    };
    for (int cand = 0; cand < n; ++cand) {
        if (reached[cand]) continue;
        gens.push_back(cand);
        reached[cand] = 1;
        members.push_back(cand);
        close();
    }
    for (int s : gens)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (g.mul(g.mul(x, s), y) != g.mul(x, g.mul(s, y)))
                    throw Error(ErrorCode::NonAssociative, "a(bc) != (ab)c at " + triple(x, s, y));
}

void finish(FiniteGroup& g) {
    const int n = g.order;
    g.inverse.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (g.mul(a, b) == 0 && g.mul(b, a) == 0) {
                g.inverse[a] = b;
                break;
            }
        }
        if (g.inverse[a] < 0) throw Error(ErrorCode::NoInverse, "element " + std::to_string(a) + " has no inverse");
    }
    g.element_order.assign(n, 1);
    long long exp = 1;
    for (int a = 0; a < n; ++a) {
        int x = a, k = 1;
        while (x != 0) {
            x = g.mul(x, a);
            ++k;
        }
        g.element_order[a] = k;
        exp = lcm64(exp, k);
    }
    g.exponent = static_cast<int>(exp);
}

}  // namespace

FiniteGroup group_from_table(const std::vector<std::vector<int>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw Error(ErrorCode::MalformedInput, "empty table");
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::MalformedInput, "table is not square");
        for (int x : row)
            if (x < 0 || x >= n) throw Error(ErrorCode::MalformedInput, "table entry out of range");
    }
    int e = -1;
    for (int c = 0; c < n && e < 0; ++c) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = rows[c][x] == x && rows[x][c] == x;
        if (ok) e = c;
    }
    if (e < 0) throw Error(ErrorCode::NoIdentity, "no two-sided identity");
    std::vector<int> relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::swap(relabel[0], relabel[e]);
    FiniteGroup g;
    g.order = n;
    g.table.assign(static_cast<std::size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            g.table[static_cast<std::size_t>(relabel[a]) * n + relabel[b]] = relabel[rows[a][b]];
    check_associative(g);
    finish(g);
    return g;
}

FiniteGroup group_from_permutations(const std::vector<std::vector<int>>& generators) {
    std::size_t degree = 0;
    for (const auto& p : generators) degree = std::max(degree, p.size());
    auto normalise = [&](std::vector<int> p) {
        for (std::size_t i = p.size(); i < degree; ++i) p.push_back(static_cast<int>(i));
        return p;
    };
    std::vector<std::vector<int>> gens;
    for (const auto& p : generators) {
        auto q = normalise(p);
        std::vector<char> seen(degree, 0);
        for (int x : q) {
            if (x < 0 || static_cast<std::size_t>(x) >= degree || seen[x])
                throw Error(ErrorCode::MalformedInput, "generator is not a permutation");
            seen[x] = 1;
        }
        gens.push_back(std::move(q));
    }
    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> elems{id};
    index[id] = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& s : gens) {
            std::vector<int> prod(degree);
            for (std::size_t x = 0; x < degree; ++x) prod[x] = elems[i][s[x]];
            if (!index.count(prod)) {
                index[prod] = static_cast<int>(elems.size());
                elems.push_back(std::move(prod));
                if (elems.size() > 100000) throw Error(ErrorCode::MalformedInput, "permutation group too large");
            }
        }
    }
    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    std::vector<int> prod(degree);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (std::size_t x = 0; x < degree; ++x) prod[x] = elems[a][elems[b][x]];
            rows[a][b] = index.at(prod);
        }
    return group_from_table(rows);
}

FiniteGroup load_group(const nlohmann::json& spec) {
    try {
        if (spec.contains("table")) {
            auto rows = spec.at("table").get<std::vector<std::vector<int>>>();
            if (spec.contains("order") && spec.at("order").get<int>() != static_cast<int>(rows.size()))
                throw Error(ErrorCode::MalformedInput, "order does not match table size");
            return group_from_table(rows);
        }
        if (spec.contains("perm_gens")) {
            int base = spec.value("base", 1);
            std::vector<std::vector<int>> gens;
            int degree = 0;
            auto cyc = spec.at("perm_gens").get<std::vector<std::vector<std::vector<int>>>>();
            for (const auto& g : cyc)
                for (const auto& c : g)
                    for (int x : c) degree = std::max(degree, x - base + 1);
            for (const auto& g : cyc) {
                std::vector<int> img(degree);
                std::iota(img.begin(), img.end(), 0);
                for (const auto& c : g) {
                    for (std::size_t i = 0; i < c.size(); ++i) {
                        int from = c[i] - base, to = c[(i + 1) % c.size()] - base;
                        if (from < 0 || to < 0) throw Error(ErrorCode::MalformedInput, "point below base");
                        img[from] = to;
                    }
                }
                gens.push_back(img);
            }
            return group_from_permutations(gens);
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::MalformedInput, ex.what());
    }
    throw Error(ErrorCode::MalformedInput, "group spec needs \"table\" or \"perm_gens\"");
}

nlohmann::json group_to_json(const FiniteGroup& g) {
    std::vector<std::vector<int>> rows(g.order, std::vector<int>(g.order));
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b) rows[a][b] = g.mul(a, b);
    return nlohmann::json{{"order", g.order}, {"table", rows}};
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
    ConjugacyClasses cc;
    cc.class_of.assign(g.order, -1);
    for (int x = 0; x < g.order; ++x) {
        if (cc.class_of[x] >= 0) continue;
        int idx = cc.count();
        std::vector<int> cls;
        for (int y = 0; y < g.order; ++y) {
            int c = g.mul(g.mul(y, x), g.inverse[y]);
            if (cc.class_of[c] < 0) {
                cc.class_of[c] = idx;
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        cc.representatives.push_back(cls.front());
        cc.sizes.push_back(static_cast<int>(cls.size()));
        cc.classes.push_back(std::move(cls));
    }
    cc.inverse_class.resize(cc.count());
    for (int k = 0; k < cc.count(); ++k) cc.inverse_class[k] = cc.class_of[g.inverse[cc.representatives[k]]];
    return cc;
}

int GammaAction::apply_power(int h, long long k) const {
    k %= action_order;
    if (k < 0) k += action_order;
    for (long long i = 0; i < k; ++i) h = image[h];
    return h;
}

GammaAction make_gamma_action(const FiniteGroup& g, const std::vector<int>& image, long long p) {
    if (p < 3 || !is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p must be an odd prime");
    if (static_cast<int>(image.size()) != g.order) throw Error(ErrorCode::MalformedInput, "image list has wrong length");
    std::vector<char> seen(g.order, 0);
    for (int x : image) {
        if (x < 0 || x >= g.order || seen[x]) throw Error(ErrorCode::NotAutomorphism, "image map is not a bijection");
        seen[x] = 1;
    }
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            if (image[g.mul(a, b)] != g.mul(image[a], image[b]))
                throw Error(ErrorCode::NotAutomorphism,
                            "phi(ab) != phi(a)phi(b) at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    long long ord = 1;
    std::vector<char> done(g.order, 0);
    for (int x = 0; x < g.order; ++x) {
        if (done[x]) continue;
        long long len = 0;
        int y = x;
        do {
            done[y] = 1;
            y = image[y];
            ++len;
        } while (y != x);
        ord = lcm64(ord, len);
    }
    GammaAction act;
    act.image = image;
    act.p = p;
    act.action_order = ord;
    long long rest = ord;
    while (rest % p == 0) {
        rest /= p;
        ++act.n0;
    }
    if (rest != 1)
        throw Error(ErrorCode::OrderNotPPower,
                    "automorphism has order " + std::to_string(ord) + ", not a power of " + std::to_string(p));
    return act;
}

GammaAction identity_action(const FiniteGroup& g, long long p) {
    std::vector<int> id(g.order);
    std::iota(id.begin(), id.end(), 0);
    return make_gamma_action(g, id, p);
}

GammaAction load_gamma_action(const FiniteGroup& g, const nlohmann::json& spec, long long p) {
    try {
        return make_gamma_action(g, spec.at("images").get<std::vector<int>>(), p);
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::MalformedInput, ex.what());
    }
}

}  // namespace iwasawa
