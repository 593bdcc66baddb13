#pragma once

// JSON problem configs and exact (de)serialization of scalars and cochains.

#include "qhh/gerstenhaber.hpp"

#include <json.hpp>

#include <fstream>
#include <numeric>

namespace qhh {

using json = nlohmann::json;

// `path` is a JSON-pointer-like location of the offending field.
struct ConfigError : std::runtime_error {
    std::string path;
    ConfigError(std::string p, const std::string& msg) : std::runtime_error(p.empty() ? msg : p + ": " + msg), path(std::move(p)) {}
};

struct Config {
    Problem problem;
    int max_degree = 0;
    std::vector<std::uint64_t> seeds;
};

namespace detail {

inline const json& field(const json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object())
        throw ConfigError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw ConfigError(path + "/" + key, "missing field");
    return *it;
}

inline long long integer(const json& j, const std::string& path)
{
    if (!j.is_number_integer())
        throw ConfigError(path, "expected an integer");
    return j.get<long long>();
}

// a root of unity: {"kind": "zeta", "order": d, "value": k} or {"kind": "rational", "value": +-1}
struct Root {
    int order = 1; // 1 for +-1
    long long power = 0;
    bool neg = false;
};

inline Root parse_root(const json& j, const std::string& path, std::optional<int> default_order)
{
    std::string kind = field(j, "kind", path).is_string() ? j["kind"].get<std::string>() : "";
    const json& v = field(j, "value", path);
    if (kind == "rational") {
        long long x = integer(v, path + "/value");
        if (x != 1 && x != -1)
            throw ConfigError(path + "/value", "rational values must be 1 or -1");
        return {1, 0, x == -1};
    }
    if (kind == "zeta") {
        int d;
        if (j.contains("order"))
            d = int(integer(j["order"], path + "/order"));
        else if (default_order)
            d = *default_order;
        else
            throw ConfigError(path + "/order", "missing field (no top-level N to default to)");
        if (d < 1)
            throw ConfigError(path + "/order", "order must be positive");
        return {d, integer(v, path + "/value"), false};
    }
    throw ConfigError(path + "/kind", "unknown kind '" + kind + "'");
}

inline Unit to_unit(const Root& r, int N)
{
    Units U{N};
    Unit u = U.zeta(r.power * (N / r.order));
    return r.neg ? U.neg(u) : u;
}

} // namespace detail

inline Config parse_config(const json& j)
{
    using namespace detail;
    if (!j.is_object())
        throw ConfigError("", "config must be a JSON object");
    int n = int(integer(field(j, "n", ""), "/n"));
    if (n < 1 || n > 16)
        throw ConfigError("/n", "must be in [1, 16]");
    std::optional<int> topN;
    if (j.contains("N")) {
        topN = int(integer(j["N"], "/N"));
        if (*topN < 1)
            throw ConfigError("/N", "must be positive");
    }

    // q entries
    struct QEntry {
        int i, j;
        std::optional<Root> root;
        std::string formal;
        int power = 1;
    };
    std::vector<QEntry> entries;
    std::vector<std::string> names;
    const json& qs = j.contains("q") ? j["q"] : json::array();
    if (!qs.is_array())
        throw ConfigError("/q", "expected an array");
    std::set<std::pair<int, int>> seen;
    for (std::size_t k = 0; k < qs.size(); ++k) {
        std::string p = "/q/" + std::to_string(k);
        const json& e = qs[k];
        int i = int(integer(field(e, "i", p), p + "/i")) - 1;
        int jj = int(integer(field(e, "j", p), p + "/j")) - 1;
        if (i < 0 || jj >= n || i >= jj)
            throw ConfigError(p, "need 1 <= i < j <= n");
        if (!seen.insert({i, jj}).second)
            throw ConfigError(p, "duplicate entry for this pair");
        const json& kind = field(e, "kind", p);
        QEntry q{i, jj, std::nullopt, "", 1};
        if (kind == "formal") {
            const json& v = field(e, "value", p);
            if (!v.is_string() || v.get<std::string>().empty())
                throw ConfigError(p + "/value", "formal parameters are named by a non-empty string");
            q.formal = v.get<std::string>();
            if (e.contains("power"))
                q.power = int(integer(e["power"], p + "/power"));
            if (std::find(names.begin(), names.end(), q.formal) == names.end())
                names.push_back(q.formal);
        } else {
            q.root = parse_root(e, p, topN);
        }
        entries.push_back(q);
    }
    if (int(names.size()) > kMaxFormal)
        throw ConfigError("/q", "too many formal parameters");
    if (int(seen.size()) != n * (n - 1) / 2)
        throw ConfigError("/q", "every pair i < j needs an entry");

    // group
    const json& gj = j.contains("group") ? j["group"] : json{{"kind", "trivial"}};
    std::string gkind = field(gj, "kind", "/group").is_string() ? gj["kind"].get<std::string>() : "";
    std::vector<std::vector<detail::Root>> chi_roots; // per element (table) or generator (cyclic)
    int order = 1;
    std::vector<std::vector<int>> mult;
    auto parse_chi_row = [&](const json& row, const std::string& p) {
        if (!row.is_array() || int(row.size()) != n)
            throw ConfigError(p, "expected an array of n characters");
        std::vector<Root> out;
        for (std::size_t l = 0; l < row.size(); ++l)
            out.push_back(parse_root(row[l], p + "/" + std::to_string(l), topN));
        return out;
    };
    if (gkind == "trivial") {
        chi_roots.push_back(std::vector<Root>(n));
    } else if (gkind == "cyclic") {
        order = int(integer(field(gj, "order", "/group"), "/group/order"));
        if (order < 1)
            throw ConfigError("/group/order", "must be positive");
        chi_roots.push_back(parse_chi_row(field(gj, "chi", "/group"), "/group/chi"));
    } else if (gkind == "table") {
        const json& mj = field(gj, "mult", "/group");
        if (!mj.is_array() || mj.empty())
            throw ConfigError("/group/mult", "expected a nonempty square array");
        for (std::size_t a = 0; a < mj.size(); ++a) {
            std::vector<int> row;
            if (!mj[a].is_array())
                throw ConfigError("/group/mult/" + std::to_string(a), "expected an array");
            for (std::size_t b = 0; b < mj[a].size(); ++b)
                row.push_back(int(integer(mj[a][b], "/group/mult/" + std::to_string(a) + "/" + std::to_string(b))));
            mult.push_back(row);
        }
        const json& cj = field(gj, "chi", "/group");
        if (!cj.is_array() || cj.size() != mj.size())
            throw ConfigError("/group/chi", "expected one character row per group element");
        for (std::size_t a = 0; a < cj.size(); ++a)
            chi_roots.push_back(parse_chi_row(cj[a], "/group/chi/" + std::to_string(a)));
    } else {
        throw ConfigError("/group/kind", "unknown kind '" + gkind + "'");
    }

    // N
    int N = topN.value_or(1);
    // character values must be N-th roots of unity, so -1 there forces N even
    auto note = [&](const Root& r, const std::string& p, bool character) {
        int ord = character && r.neg ? std::lcm(r.order, 2) : r.order;
        if (topN) {
            if (*topN % ord)
                throw ConfigError(p, "order " + std::to_string(ord) + " does not divide N");
        } else {
            N = std::lcm(N, ord);
        }
    };
    for (std::size_t k = 0; k < entries.size(); ++k)
        if (entries[k].root)
            note(*entries[k].root, "/q/" + std::to_string(k), false);
    for (std::size_t a = 0; a < chi_roots.size(); ++a)
        for (std::size_t l = 0; l < chi_roots[a].size(); ++l)
            note(chi_roots[a][l], "/group/chi", true);

    std::map<std::pair<int, int>, Unit> upper;
    for (const auto& e : entries) {
        Unit u;
        if (e.root)
            u = to_unit(*e.root, N);
        else
            u.e[std::find(names.begin(), names.end(), e.formal) - names.begin()] = e.power;
        upper[{e.i, e.j}] = u;
    }

    auto build = [&]() -> Problem {
        QuantumDatum Q(n, N, int(names.size()), upper, names);
        if (gkind == "table") {
            std::vector<std::vector<Unit>> chi;
            for (const auto& row : chi_roots) {
                chi.emplace_back();
                for (const auto& r : row)
                    chi.back().push_back(to_unit(r, N));
            }
            return Problem(std::move(Q), GroupDatum(mult, chi, N));
        }
        std::vector<Unit> gen;
        for (const auto& r : chi_roots[0])
            gen.push_back(to_unit(r, N));
        return Problem(std::move(Q), make_cyclic_group(order, gen, N));
    };
    std::optional<Problem> P;
    try {
        P.emplace(build());
    } catch (const AlgebraError& e) {
        throw ConfigError(std::string("/") + (std::string(e.what()).find("q entry") != std::string::npos ? "q" : "group"),
                          e.what());
    }

    Config C{std::move(*P), 0, {1, 2, 3}};
    if (j.contains("max_degree")) {
        C.max_degree = int(integer(j["max_degree"], "/max_degree"));
        if (C.max_degree < 0)
            throw ConfigError("/max_degree", "must be nonnegative");
    } else {
        C.max_degree = -1; // must come from the command line
    }
    if (j.contains("seeds")) {
        if (!j["seeds"].is_array() || j["seeds"].empty())
            throw ConfigError("/seeds", "expected a nonempty array");
        C.seeds.clear();
        for (std::size_t k = 0; k < j["seeds"].size(); ++k)
            C.seeds.push_back(std::uint64_t(integer(j["seeds"][k], "/seeds/" + std::to_string(k))));
    }
    return C;
}

inline Config load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

// ------------------------------------------------------------ scalars

// A scalar is a list of {zeta_power, formal_exponents, rational} triples,
// meaning sum rational * zeta_N^zeta_power * prod t_i^e_i.
inline json to_json(const Scalar& s)
{
    json out = json::array();
    for (const auto& [e, c] : s.terms()) {
        json ex = json::array();
        for (int i = 0; i < s.nformal(); ++i)
            ex.push_back(e[i]);
        for (std::size_t k = 0; k < c.coeffs().size(); ++k)
            if (c.coeffs()[k] != 0)
                out.push_back({{"zeta_power", k}, {"formal_exponents", ex}, {"rational", c.coeffs()[k].get_str()}});
    }
    return out;
}

inline Scalar scalar_from_json(const Problem& P, const json& j)
{
    Scalar s = P.Q.zero();
    if (!j.is_array())
        throw ConfigError("", "scalar must be an array of triples");
    for (const auto& t : j) {
        Exps e{};
        const auto& ex = t.at("formal_exponents");
        if (int(ex.size()) != P.Q.nformal())
            throw ConfigError("", "formal exponent vector has the wrong length");
        for (std::size_t i = 0; i < ex.size(); ++i)
            e[i] = ex[i].get<int>();
        CycloElement c(P.N());
        c.add_scaled_zeta(t.at("zeta_power").get<long long>(), Rational(t.at("rational").get<std::string>()));
        s.add_term(e, c);
    }
    return s;
}

// ------------------------------------------------------------ cochains

inline json to_json(const Problem& P, const Cochain& c)
{
    json terms = json::array();
    for (const auto& [k, v] : c.terms) {
        json a = json::array();
        for (int i = 0; i < P.n(); ++i)
            a.push_back(int(has(k.alpha, i)));
        terms.push_back({{"alpha", a}, {"beta", k.beta}, {"g", k.g}, {"coefficient", to_json(v)}});
    }
    return {{"degree", c.degree}, {"terms", terms}};
}

inline Cochain cochain_from_json(const Problem& P, const json& j)
{
    Cochain c;
    c.degree = j.at("degree").get<int>();
    for (const auto& t : j.at("terms")) {
        Mono a = 0;
        const auto& aj = t.at("alpha");
        for (std::size_t i = 0; i < aj.size(); ++i)
            if (aj[i].get<int>())
                a |= bit(int(i));
        c.add({a, t.at("beta").get<MultiIndex>(), t.at("g").get<int>()}, scalar_from_json(P, t.at("coefficient")));
    }
    return c;
}

// "-(x1x2 (x) g0) eps_{1,1}^* + (q - 1)*(x1 (x) g1) eps_{1,0}^*"
inline std::string to_text(const Problem& P, const Cochain& c)
{
    if (c.is_zero())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, v] : c.terms) {
        std::string cs = v.str(P.Q.names());
        bool neg = false;
        if (cs == "1")
            cs.clear();
        else if (cs == "-1")
            cs.clear(), neg = true;
        else if (cs.find_first_of("+ ", 1) != std::string::npos)
            cs = "(" + cs + ")*";
        else if (cs[0] == '-')
            cs = cs.substr(1) + "*", neg = true;
        else
            cs += "*";
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        first = false;
        s += cs + key_str(k);
    }
    return s;
}

inline std::string to_text(const Problem& P, const Scalar& v) { return v.str(P.Q.names()); }

} // namespace qhh
