#pragma once

// Command-line front end. tools/qhh.cpp is a thin wrapper around run_cli.

#include "qhh/io.hpp"
#include "qhh/verify.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <ostream>

namespace qhh {

enum ExitCode : int { kOk = 0, kUsage = 1, kConfig = 2, kVerification = 3, kInternal = 4 };

struct CliOptions {
    std::string config;
    int max_degree = -1;
    std::vector<std::uint64_t> seeds;
    std::string format = "text";
    bool verify = false;
    bool corrupt_omega = false;
    int pair_stride = 1;
};

namespace cli {

struct Table {
    Problem problem;
    std::vector<Cochain> classes; // all degrees up to the bound
    std::vector<std::size_t> offsets; // classes of degree m start at offsets[m]
};

inline Table class_table(const Problem& P, int max_degree)
{
    Table T{P, {}, {}};
    for (int m = 0; m <= max_degree; ++m) {
        T.offsets.push_back(T.classes.size());
        for (auto& c : invariant_basis(P, m).classes)
            T.classes.push_back(std::move(c));
    }
    return T;
}

inline int dims(const Config& C, const CliOptions& o, std::ostream& out, std::ostream& err)
{
    const Problem& P = C.problem;
    json rows = json::array();
    bool mismatch = false;
    for (int m = 0; m <= C.max_degree; ++m) {
        json row{{"degree", m}, {"dim", invariant_basis(P, m).classes.size()}};
        if (o.verify) {
            std::size_t r = invariant_rank_oracle(P, m, C.seeds).cohomology;
            row["rank_oracle"] = r;
            if (r != row["dim"].get<std::size_t>())
                mismatch = true;
        }
        rows.push_back(row);
    }
    if (o.format == "json") {
        out << json{{"dims", rows}}.dump(2) << "\n";
    } else {
        out << "degree  dim" << (o.verify ? "  rank_oracle" : "") << "\n";
        for (const auto& r : rows) {
            out << std::setw(6) << r["degree"].get<int>() << "  " << std::setw(3) << r["dim"].get<std::size_t>();
            if (o.verify)
                out << "  " << std::setw(11) << r["rank_oracle"].get<std::size_t>();
            out << "\n";
        }
    }
    if (mismatch) {
        err << "verification failed: closed-form dimension differs from the rank oracle\n";
        return kVerification;
    }
    return kOk;
}

inline int basis(const Config& C, const CliOptions& o, std::ostream& out)
{
    const Problem& P = C.problem;
    json rows = json::array();
    for (int m = 0; m <= C.max_degree; ++m) {
        auto B = invariant_basis(P, m);
        for (std::size_t i = 0; i < B.classes.size(); ++i)
            rows.push_back({{"degree", m}, {"index", i}, {"class", to_json(P, B.classes[i])}});
    }
    if (o.format == "json") {
        out << json{{"basis", rows}}.dump(2) << "\n";
        return kOk;
    }
    for (const auto& r : rows)
        out << "HH^" << r["degree"].get<int>() << " [" << r["index"].get<std::size_t>() << "]  "
            << to_text(P, cochain_from_json(P, r["class"])) << "\n";
    return kOk;
}

// Product tables over invariant classes with total degree within the bound.
// cup uses ordered pairs; bracket is graded antisymmetric so i <= j suffices.
inline int products(const Config& C, const CliOptions& o, std::ostream& out, bool is_bracket)
{
    const Problem& P = C.problem;
    Table T = class_table(P, C.max_degree);
    const auto& K = T.classes;
    json rows = json::array();
    for (std::size_t i = 0; i < K.size(); ++i)
        for (std::size_t j = is_bracket ? i : 0; j < K.size(); ++j) {
            int deg = K[i].degree + K[j].degree - (is_bracket ? 1 : 0);
            if (K[i].degree + K[j].degree > C.max_degree)
                continue;
            Cochain r = is_bracket ? bracket(P, K[i], K[j]) : cup(P, K[i], K[j]);
            r.degree = deg;
            if (r.is_zero() || is_coboundary(P, r, C.seeds))
                continue;
            rows.push_back({{"left", i}, {"right", j}, {"result", to_json(P, r)}});
        }
    json classes = json::array();
    for (std::size_t i = 0; i < K.size(); ++i)
        classes.push_back({{"index", i}, {"class", to_json(P, K[i])}});
    const char* key = is_bracket ? "brackets" : "cups";
    if (o.format == "json") {
        out << json{{"classes", classes}, {key, rows}}.dump(2) << "\n";
        return kOk;
    }
    out << "classes:\n";
    for (std::size_t i = 0; i < K.size(); ++i)
        out << "  c" << i << " = " << to_text(P, K[i]) << "\n";
    out << (is_bracket ? "nonzero brackets:\n" : "nonzero cup products:\n");
    for (const auto& r : rows) {
        auto i = r["left"].get<std::size_t>(), j = r["right"].get<std::size_t>();
        out << "  " << (is_bracket ? "[c" + std::to_string(i) + ", c" + std::to_string(j) + "]"
                                   : "c" + std::to_string(i) + " cup c" + std::to_string(j))
            << " = " << to_text(P, cochain_from_json(P, r["result"])) << "\n";
    }
    return kOk;
}

inline int verify(const Config& C, const CliOptions& o, std::ostream& out, std::ostream& err)
{
    VerifyOptions V{C.max_degree, C.seeds, o.corrupt_omega ? OmegaVariant::CorruptSign : OmegaVariant::Derivation,
                    o.pair_stride};
    auto results = verify_all(C.problem, V);
    bool ok = std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.ok(); });
    if (o.format == "json") {
        json suites = json::array();
        for (const auto& r : results)
            suites.push_back({{"name", r.name}, {"checked", r.checked}, {"failed", r.failed}, {"witnesses", r.witnesses}});
        out << json{{"ok", ok}, {"suites", suites}}.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            out << (r.ok() ? "PASS " : "FAIL ") << std::left << std::setw(22) << r.name << std::right << " checked "
                << r.checked << ", failed " << r.failed << "\n";
            for (const auto& w : r.witnesses)
                out << "     witness: " << w << "\n";
        }
    }
    if (!ok) {
        for (const auto& r : results)
            if (!r.ok()) {
                err << "verification failed: " << r.name << " (witness: " << r.witnesses.front() << ")\n";
                break;
            }
        return kVerification;
    }
    return kOk;
}

} // namespace cli

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hochschild cohomology of quantum exterior algebras extended by diagonal group actions"};
    app.require_subcommand(1);
    CliOptions o;
    auto common = [&](CLI::App* s) {
        s->add_option("--config", o.config, "problem description (JSON)")->required();
        s->add_option("--max-degree", o.max_degree, "degree bound; overrides the config")->check(CLI::NonNegativeNumber);
        s->add_option("--seed", o.seeds, "rank oracle seed (repeatable); overrides the config");
        s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    };
    auto* dims = app.add_subcommand("dims", "dimension of HH^m for each m up to the bound");
    common(dims);
    dims->add_flag("--verify", o.verify, "cross-check against the rank oracle");
    auto* basis = app.add_subcommand("basis", "invariant cohomology classes");
    common(basis);
    auto* cupc = app.add_subcommand("cup", "nonzero cup products of basis classes");
    common(cupc);
    auto* brc = app.add_subcommand("bracket", "nonzero Gerstenhaber brackets of basis classes");
    common(brc);
    auto* ver = app.add_subcommand("verify", "run the verification suites");
    common(ver);
    ver->add_flag("--corrupt-omega", o.corrupt_omega, "regression mode: drop the Koszul sign in the differential");
    ver->add_option("--pair-stride", o.pair_stride, "check every k-th chain-level pair against the oracles")
        ->check(CLI::PositiveNumber);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        Config C = load_config(o.config);
        if (o.max_degree >= 0)
            C.max_degree = o.max_degree;
        if (C.max_degree < 0)
            throw ConfigError("/max_degree", "a degree bound is required (config or --max-degree)");
        if (!o.seeds.empty())
            C.seeds = o.seeds;
        if (dims->parsed())
            return cli::dims(C, o, out, err);
        if (basis->parsed())
            return cli::basis(C, o, out);
        if (cupc->parsed())
            return cli::products(C, o, out, false);
        if (brc->parsed())
            return cli::products(C, o, out, true);
        return cli::verify(C, o, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

} // namespace qhh
