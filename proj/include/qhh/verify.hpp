#pragma once

// Named verification suites with witnesses, shared by the CLI and the tests.

#include "qhh/gerstenhaber.hpp"

#include <algorithm>

namespace qhh {

struct SuiteResult {
    std::string name;
    long checked = 0;
    long failed = 0;
    std::vector<std::string> witnesses; // first few failures

    SuiteResult(std::string n = {}) : name(std::move(n)) {}

    bool ok() const { return failed == 0; }
    void record(bool pass, const std::function<std::string()>& witness)
    {
        ++checked;
        if (pass)
            return;
        ++failed;
        if (witnesses.size() < 5)
            witnesses.push_back(witness());
    }
};

struct VerifyOptions {
    int max_degree = 4;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    OmegaVariant omega = OmegaVariant::Derivation;
    int pair_stride = 1; // take every k-th (g, h) pair in the oracle comparison
};

inline std::string multi_str(const MultiIndex& b)
{
    std::string s = "(";
    for (std::size_t i = 0; i < b.size(); ++i)
        s += (i ? "," : "") + std::to_string(b[i]);
    return s + ")";
}

// all chain-level basis keys of degree m
inline std::vector<CochainKey> basis_keys(const Problem& P, int m)
{
    std::vector<CochainKey> out;
    for (int g = 0; g < P.G.order(); ++g)
        for (const auto& beta : compositions(m, P.n()))
            for (Mono a = 0; a < bit(P.n()); ++a)
                out.push_back({a, beta, g});
    return out;
}

inline SuiteResult check_delta_squared(const Problem& P, int max_degree, OmegaVariant v)
{
    SuiteResult R{"delta_squared"};
    for (int m = 0; m <= max_degree; ++m)
        for (const auto& k : basis_keys(P, m)) {
            Cochain f = basis_cochain(P, k.alpha, k.beta, k.g);
            Cochain dd = hom_differential(P, hom_differential(P, f, v), v);
            R.record(dd.is_zero(), [&] { return "delta(delta(" + key_str(k) + ")) != 0"; });
        }
    return R;
}

inline SuiteResult check_differential_oracle(const Problem& P, int max_degree)
{
    SuiteResult R{"differential_oracle"};
    for (int m = 0; m < max_degree; ++m)
        for (const auto& k : basis_keys(P, m)) {
            Cochain f = basis_cochain(P, k.alpha, k.beta, k.g);
            R.record(hom_differential(P, f) == hom_differential_oracle(P, f),
                     [&] { return "closed-form delta differs from f o d on " + key_str(k); });
        }
    return R;
}

// gamma ranges over {-1..max_entry}^n; blocks off C_g must be contractible, blocks in C_g flat
inline std::pair<SuiteResult, SuiteResult> check_acyclicity(const Problem& P, int max_entry,
                                                           const std::vector<std::uint64_t>& seeds)
{
    SuiteResult H{"homotopy"}, F{"flat_blocks"};
    int n = P.n();
    auto at = assignments(P, seeds);
    MultiIndex gamma(n, -1);
    while (true) {
        for (int g = 0; g < P.G.order(); ++g) {
            auto w = [&] { return "gamma=" + multi_str(gamma) + " g=" + std::to_string(g); };
            if (in_C_g(P, gamma, g))
                F.record(flat_on_block(P, gamma, g), w);
            else
                for (const auto& a : at)
                    H.record(homotopy_identity(P, gamma, g, a), w);
        }
        int i = 0;
        while (i < n && gamma[i] == max_entry)
            gamma[i++] = -1;
        if (i == n)
            break;
        ++gamma[i];
    }
    return {H, F};
}

inline SuiteResult check_diagonal(const Problem& P, int max_degree)
{
    SuiteResult R{"diagonal"};
    for (int m = 0; m <= max_degree; ++m)
        for (const auto& beta : compositions(m, P.n())) {
            auto w = [&](const char* what) { return [&, what] { return std::string(what) + " at beta=" + multi_str(beta); }; };
            R.record(diagonal_coassociative(P, beta), w("coassociativity"));
            R.record(diagonal_counital(P, beta), w("counit"));
            R.record(diagonal_chain_map(P, beta), w("chain map"));
        }
    return R;
}

inline SuiteResult check_bar(const Problem& P, int max_degree)
{
    SuiteResult R{"bar_comparison"};
    for (int m = 0; m <= max_degree; ++m)
        for (const auto& beta : compositions(m, P.n())) {
            R.record(bar_check(P, beta), [&] { return "bar_check at beta=" + multi_str(beta); });
            R.record(diagonal_bar_compatible(P, beta), [&] { return "diagonal vs bar at beta=" + multi_str(beta); });
        }
    return R;
}

inline SuiteResult check_phi(const Problem& P, int max_degree)
{
    SuiteResult R{"phi_identity"};
    auto w = phi_identity_check(P, max_degree);
    R.record(!w, [&] {
        return "beta=" + multi_str(w->beta) + " alpha=" + mono_str(w->alpha, P.n()) + " gamma=" + multi_str(w->gamma);
    });
    return R;
}

// closed-form counts against the rank oracle, per group element and after averaging
inline SuiteResult check_dims(const Problem& P, int max_degree, const std::vector<std::uint64_t>& seeds)
{
    SuiteResult R{"closed_form_dims"};
    for (int m = 0; m <= max_degree; ++m) {
        for (int g = 0; g < P.G.order(); ++g) {
            std::size_t closed = hh_component_basis(P, m, g).size();
            std::size_t rank = rank_oracle(P, m, g, seeds).cohomology;
            R.record(closed == rank, [&] {
                return "m=" + std::to_string(m) + " g=" + std::to_string(g) + ": closed form " + std::to_string(closed) +
                       ", rank oracle " + std::to_string(rank);
            });
        }
        std::size_t inv = invariant_basis(P, m).classes.size();
        std::size_t rank = invariant_rank_oracle(P, m, seeds).cohomology;
        R.record(inv == rank, [&] {
            return "invariant m=" + std::to_string(m) + ": basis " + std::to_string(inv) + ", rank oracle " +
                   std::to_string(rank);
        });
    }
    return R;
}

// cup and circ against the composite-map oracles on chain-level basis pairs
inline std::pair<SuiteResult, SuiteResult> check_product_oracles(const Problem& P, int max_total_degree, int pair_stride = 1)
{
    SuiteResult C{"cup_oracle"}, O{"circ_oracle"};
    int G = P.G.order();
    std::vector<std::vector<CochainKey>> keys(max_total_degree + 1);
    for (int m = 0; m <= max_total_degree; ++m)
        for (const auto& k : basis_keys(P, m))
            if (k.g == 0)
                keys[m].push_back(k);
    long pair = 0;
    for (int mo = 0; mo <= max_total_degree; ++mo)
        for (int mi = 0; mi + mo <= max_total_degree; ++mi)
            for (const auto& ko : keys[mo])
                for (const auto& ki : keys[mi])
                    for (int gh = 0; gh < G * G; ++gh) {
                        if (pair++ % pair_stride)
                            continue;
                        Cochain o = basis_cochain(P, ko.alpha, ko.beta, gh / G);
                        Cochain i = basis_cochain(P, ki.alpha, ki.beta, gh % G);
                        auto w = [&] {
                            return key_str(o.terms.begin()->first) + " , " + key_str(i.terms.begin()->first);
                        };
                        C.record(cup(P, o, i) == cup_oracle(P, o, i), w);
                        O.record(circ(P, o, i) == circ_oracle(P, o, i), w);
                    }
    return {C, O};
}

// the same comparison on every pair of closed-form cohomology basis cocycles (all group elements)
inline std::pair<SuiteResult, SuiteResult> check_product_oracles_on_basis(const Problem& P, int max_total_degree)
{
    SuiteResult C{"cup_oracle_basis"}, O{"circ_oracle_basis"};
    std::vector<std::vector<Cochain>> basis(max_total_degree + 1);
    for (int m = 0; m <= max_total_degree; ++m)
        for (int g = 0; g < P.G.order(); ++g)
            for (const auto& e : hh_component_basis(P, m, g))
                basis[m].push_back(basis_cochain(P, e.alpha, e.beta, e.g));
    for (int mo = 0; mo <= max_total_degree; ++mo)
        for (int mi = 0; mi + mo <= max_total_degree; ++mi)
            for (const auto& o : basis[mo])
                for (const auto& i : basis[mi]) {
                    auto w = [&] { return key_str(o.terms.begin()->first) + " , " + key_str(i.terms.begin()->first); };
                    C.record(cup(P, o, i) == cup_oracle(P, o, i), w);
                    O.record(circ(P, o, i) == circ_oracle(P, o, i), w);
                }
    return {C, O};
}

inline std::vector<SuiteResult> gerstenhaber_results(const Problem& P, int max_total_degree,
                                                     const std::vector<std::uint64_t>& seeds)
{
    AxiomReport A = axiom_suite(P, max_total_degree, seeds);
    std::vector<SuiteResult> out;
    for (const auto& [axiom, n] : A.checked) {
        SuiteResult R("axiom:" + axiom);
        R.checked = n;
        R.failed = A.failed.count(axiom) ? A.failed.at(axiom) : 0;
        for (const auto& f : A.failures)
            if (f.axiom == axiom && R.witnesses.size() < 5)
                R.witnesses.push_back(f.witness);
        out.push_back(std::move(R));
    }
    return out;
}

// Everything `qhh verify` runs; degree bounds of the expensive checks are capped.
inline std::vector<SuiteResult> verify_all(const Problem& P, const VerifyOptions& o)
{
    int M = o.max_degree;
    std::vector<SuiteResult> out;
    out.push_back(check_delta_squared(P, std::max(M, 2), o.omega));
    out.push_back(check_differential_oracle(P, std::min(M, 3)));
    auto [h, f] = check_acyclicity(P, std::min(M, 3), o.seeds);
    out.push_back(h);
    out.push_back(f);
    out.push_back(check_diagonal(P, std::min(M, 5)));
    out.push_back(check_bar(P, std::min(M, 4)));
    out.push_back(check_phi(P, std::min(M, 4)));
    out.push_back(check_dims(P, M, o.seeds));
    auto [c, ci] = check_product_oracles(P, std::min(M, 5), o.pair_stride);
    out.push_back(c);
    out.push_back(ci);
    auto [cb, cib] = check_product_oracles_on_basis(P, std::min(M, 5));
    out.push_back(cb);
    out.push_back(cib);
    for (auto& r : gerstenhaber_results(P, M, o.seeds))
        out.push_back(std::move(r));
    return out;
}

} // namespace qhh
