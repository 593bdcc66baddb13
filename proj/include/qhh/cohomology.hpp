#pragma once

// C_g, the closed-form cohomology basis, the G-action on cochains, invariants,
// and rank/coboundary oracles that work directly on the cochain complex.

#include "qhh/linalg.hpp"
#include "qhh/resolution.hpp"

#include <random>

namespace qhh {

struct CohomologyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// random nonzero rationals for the formal parameters; deterministic in the seed
inline Assignment random_assignment(int nformal, std::uint64_t seed)
{
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 17);
    std::uniform_int_distribution<long> num(1, 97), den(1, 89), sign(0, 1);
    Assignment a;
    for (int i = 0; i < nformal; ++i) {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        a.values.push_back(sign(rng) ? -r : r);
    }
    return a;
}

// ------------------------------------------------------------------ C_g

enum class SlotTag { MinusOne, CharacterMatch };

struct CgWitness {
    MultiIndex gamma;
    int g = 0;
    std::vector<SlotTag> tags;
};

inline std::optional<CgWitness> in_C_g(const Problem& P, const MultiIndex& gamma, int g)
{
    CgWitness w{gamma, g, {}};
    for (int l = 0; l < P.n(); ++l) {
        if (gamma[l] < -1)
            throw CohomologyError("gamma entries must be >= -1");
        if (gamma[l] == -1)
            w.tags.push_back(SlotTag::MinusOne);
        else if (slot_condition(P, gamma, l, g))
            w.tags.push_back(SlotTag::CharacterMatch);
        else
            return std::nullopt;
    }
    return w;
}

struct BasisEntry {
    Mono alpha = 0;
    MultiIndex beta;
    int g = 0;
    CgWitness witness;

    CochainKey key() const { return {alpha, beta, g}; }
};

inline std::vector<BasisEntry> hh_component_basis(const Problem& P, int m, int g)
{
    std::vector<BasisEntry> out;
    int n = P.n();
    for (const auto& beta : compositions(m, n))
        for (Mono a = 0; a < bit(n); ++a)
            if (auto w = in_C_g(P, sub(beta, mono_index(a, n)), g))
                out.push_back({a, beta, g, *w});
    return out;
}

// ------------------------------------------------------------ G-action

inline Cochain g_action_on_cochain(const Problem& P, int h, const Cochain& c)
{
    Cochain out;
    out.degree = c.degree;
    const auto& U = P.U();
    for (const auto& [k, v] : c.terms) {
        Unit u;
        for (int l = 0; l < P.n(); ++l)
            u = U.mul(u, U.pow(P.G.chi(h, l), int(has(k.alpha, l)) - k.beta[l]));
        out.add({k.alpha, k.beta, P.G.conj(h, k.g)}, v.times_unit(u));
    }
    return out;
}

// (1/|G|) sum_h h.c
inline Cochain average(const Problem& P, const Cochain& c)
{
    Cochain out;
    out.degree = c.degree;
    for (int h = 0; h < P.G.order(); ++h)
        out += g_action_on_cochain(P, h, c);
    Rational inv(1, P.G.order());
    for (auto& [k, v] : out.terms)
        v *= inv;
    return out;
}

inline bool is_invariant(const Problem& P, const Cochain& c)
{
    for (int h = 0; h < P.G.order(); ++h)
        if (!(g_action_on_cochain(P, h, c) == c))
            return false;
    return true;
}

// ----------------------------------------------------------- elimination

// Coordinates of cochains over a common key list.
template <class C>
struct KeyIndex {
    std::vector<CochainKey> keys;
    std::map<CochainKey, std::size_t> pos;

    void insert(const CochainKey& k)
    {
        if (pos.emplace(k, keys.size()).second)
            keys.push_back(k);
    }
    std::vector<CycloElement> row(const std::map<CochainKey, C>& terms, int N,
                                  const Assignment& at) const
    {
        std::vector<CycloElement> r(keys.size(), CycloElement(N));
        for (const auto& [k, v] : terms) {
            if constexpr (std::is_same_v<C, Scalar>)
                r[pos.at(k)] = substitute(v, at);
            else
                r[pos.at(k)] = v;
        }
        return r;
    }
};

// The Omega are Laurent polynomials; everything else is constant. Constant
// cochains need no assignment.
inline bool is_constant(const Cochain& c)
{
    for (const auto& [k, v] : c.terms)
        for (const auto& [e, x] : v.terms())
            for (int i : e)
                if (i)
                    return false;
    return true;
}

inline Cochain from_cyclo(const Problem& P, const NumCochain& c)
{
    Cochain out;
    out.degree = c.degree;
    for (const auto& [k, v] : c.terms)
        out.add(k, Scalar::from_cyclo(P.Q.nformal(), v));
    return out;
}

// scale so the first coefficient is 1
inline Cochain normalized(const Problem& P, const Cochain& c)
{
    if (c.is_zero() || !is_constant(c))
        return c;
    CycloElement lead = substitute(c.terms.begin()->second, Assignment{});
    return scaled(c, Scalar::from_cyclo(P.Q.nformal(), lead.inverse()));
}

// ------------------------------------------------------------ invariants

struct CohomologyBasis {
    int degree = 0;
    std::vector<BasisEntry> entries;
    std::vector<Cochain> classes;
};

// Orbit key of a block: gamma together with the conjugacy class of g.
inline std::pair<MultiIndex, int> orbit_key(const Problem& P, const MultiIndex& gamma, int g)
{
    int rep = g;
    for (int h = 0; h < P.G.order(); ++h)
        rep = std::min(rep, P.G.conj(h, g));
    return {gamma, rep};
}

// Independent subset of constant cochains, greedy in the given order.
inline std::vector<Cochain> independent_subset(const Problem& P, const std::vector<Cochain>& cs)
{
    KeyIndex<Scalar> idx;
    for (const auto& c : cs)
        for (const auto& [k, v] : c.terms)
            idx.insert(k);
    std::vector<Cochain> out;
    Matrix<CycloElement> rows;
    for (const auto& c : cs) {
        if (c.is_zero())
            continue;
        rows.push_back(idx.row(c.terms, P.N(), Assignment{}));
        Matrix<CycloElement> trial = rows;
        if (row_reduce(trial).size() == rows.size())
            out.push_back(c);
        else
            rows.pop_back();
    }
    return out;
}

inline CohomologyBasis invariant_basis(const Problem& P, int m)
{
    CohomologyBasis B;
    B.degree = m;
    std::map<std::pair<MultiIndex, int>, std::vector<Cochain>> blocks;
    for (int g = 0; g < P.G.order(); ++g)
        for (auto& e : hh_component_basis(P, m, g)) {
            blocks[orbit_key(P, e.witness.gamma, g)].push_back(
                average(P, basis_cochain(P, e.alpha, e.beta, e.g)));
            B.entries.push_back(std::move(e));
        }
    for (const auto& [key, cs] : blocks)
        for (const auto& c : independent_subset(P, cs))
            B.classes.push_back(normalized(P, c));
    std::sort(B.classes.begin(), B.classes.end(), [](const Cochain& a, const Cochain& b) {
        return a.terms.begin()->first < b.terms.begin()->first;
    });
    return B;
}

// ------------------------------------------------------------ rank oracles

struct RankResult {
    int kernel = 0, image = 0, cohomology = 0;
    friend bool operator==(const RankResult&, const RankResult&) = default;
};

// basis of K^m_{g,gamma} for all gamma, grouped by gamma
inline std::map<MultiIndex, std::vector<CochainKey>> component_blocks(const Problem& P, int m, int g)
{
    std::map<MultiIndex, std::vector<CochainKey>> out;
    if (m < 0)
        return out;
    int n = P.n();
    for (const auto& beta : compositions(m, n))
        for (Mono a = 0; a < bit(n); ++a)
            out[sub(beta, mono_index(a, n))].push_back({a, beta, g});
    return out;
}

inline std::size_t rank_of_images(const Problem& P, const std::vector<NumCochain>& imgs)
{
    KeyIndex<CycloElement> idx;
    for (const auto& c : imgs)
        for (const auto& [k, v] : c.terms)
            idx.insert(k);
    if (idx.keys.empty())
        return 0;
    Matrix<CycloElement> rows;
    for (const auto& c : imgs)
        rows.push_back(idx.row(c.terms, P.N(), Assignment{}));
    return rank(std::move(rows));
}

inline NumCochain num_basis(const Problem& P, const CochainKey& k)
{
    NumCochain c;
    c.degree = total(k.beta);
    c.add(k, CycloElement(P.N(), Rational(1)));
    return c;
}

// Ranks of delta around degree m on the g-component at one point.
inline RankResult rank_at(const Problem& P, int m, int g, const Assignment& at)
{
    RankResult r;
    auto cur = component_blocks(P, m, g), prev = component_blocks(P, m - 1, g);
    for (const auto& [gamma, keys] : cur) {
        std::vector<NumCochain> out, in;
        for (const auto& k : keys)
            out.push_back(hom_differential(P, num_basis(P, k), at));
        r.kernel += int(keys.size() - rank_of_images(P, out));
        if (auto it = prev.find(gamma); it != prev.end()) {
            for (const auto& k : it->second)
                in.push_back(hom_differential(P, num_basis(P, k), at));
            r.image += int(rank_of_images(P, in));
        }
    }
    r.cohomology = r.kernel - r.image;
    return r;
}

inline std::vector<Assignment> assignments(const Problem& P, const std::vector<std::uint64_t>& seeds)
{
    if (P.Q.nformal() == 0)
        return {Assignment{}};
    if (seeds.empty())
        throw CohomologyError("formal parameters need at least one seed");
    std::vector<Assignment> out;
    for (auto s : seeds)
        out.push_back(random_assignment(P.Q.nformal(), s));
    return out;
}

// Per-seed results; they must agree, otherwise a specialization was unlucky.
inline RankResult rank_oracle(const Problem& P, int m, int g, const std::vector<std::uint64_t>& seeds)
{
    std::optional<RankResult> first;
    for (const auto& at : assignments(P, seeds)) {
        RankResult r = rank_at(P, m, g, at);
        if (first && !(*first == r))
            throw CohomologyError("rank oracle disagrees across seeds at degree " + std::to_string(m));
        first = r;
    }
    return *first;
}

// Same on the G-invariant subcomplex, blocked by orbit (gamma, class of g).
inline RankResult invariant_rank_at(const Problem& P, int m, const Assignment& at)
{
    auto invariant_block = [&](int deg) {
        std::map<std::pair<MultiIndex, int>, std::vector<Cochain>> blocks;
        for (int g = 0; g < P.G.order(); ++g)
            for (const auto& [gamma, keys] : component_blocks(P, deg, g))
                for (const auto& k : keys)
                    blocks[orbit_key(P, gamma, g)].push_back(average(P, basis_cochain(P, k.alpha, k.beta, k.g)));
        std::map<std::pair<MultiIndex, int>, std::vector<Cochain>> out;
        for (const auto& [key, cs] : blocks)
            out[key] = independent_subset(P, cs);
        return out;
    };
    auto images = [&](const std::vector<Cochain>& cs) {
        std::vector<NumCochain> imgs;
        for (const auto& c : cs)
            imgs.push_back(hom_differential(P, specialize(c, at), at));
        return imgs;
    };
    RankResult r;
    auto cur = invariant_block(m);
    auto prev = m > 0 ? invariant_block(m - 1) : decltype(cur){};
    for (const auto& [key, cs] : cur) {
        r.kernel += int(cs.size() - rank_of_images(P, images(cs)));
        if (auto it = prev.find(key); it != prev.end())
            r.image += int(rank_of_images(P, images(it->second)));
    }
    r.cohomology = r.kernel - r.image;
    return r;
}

inline RankResult invariant_rank_oracle(const Problem& P, int m, const std::vector<std::uint64_t>& seeds)
{
    std::optional<RankResult> first;
    for (const auto& at : assignments(P, seeds)) {
        RankResult r = invariant_rank_at(P, m, at);
        if (first && !(*first == r))
            throw CohomologyError("invariant rank oracle disagrees across seeds at degree " +
                                  std::to_string(m));
        first = r;
    }
    return *first;
}

// ------------------------------------------------------------ coboundaries

inline bool is_cocycle(const Problem& P, const Cochain& c) { return hom_differential(P, c).is_zero(); }

// c in delta(C^{m-1}), solved block by block in (g, beta - alpha)
inline bool is_coboundary_at(const Problem& P, const Cochain& c, const Assignment& at)
{
    if (c.is_zero())
        return true;
    int n = P.n();
    std::map<std::pair<int, MultiIndex>, NumCochain> parts;
    for (const auto& [k, v] : c.terms) {
        auto& part = parts[{k.g, sub(k.beta, mono_index(k.alpha, n))}];
        part.degree = c.degree;
        part.add(k, substitute(v, at));
    }
    for (const auto& [key, part] : parts) {
        if (part.is_zero())
            continue;
        if (c.degree == 0)
            return false;
        std::vector<NumCochain> imgs;
        for (const auto& [gamma, keys] : component_blocks(P, c.degree - 1, key.first))
            if (gamma == key.second)
                for (const auto& k : keys)
                    imgs.push_back(hom_differential(P, num_basis(P, k), at));
        KeyIndex<CycloElement> idx;
        for (const auto& im : imgs)
            for (const auto& [k, v] : im.terms)
                idx.insert(k);
        for (const auto& [k, v] : part.terms)
            idx.insert(k);
        Matrix<CycloElement> rows;
        for (const auto& im : imgs)
            rows.push_back(idx.row(im.terms, P.N(), at));
        if (!in_span(rows, idx.row(part.terms, P.N(), at)))
            return false;
    }
    return true;
}

inline bool is_coboundary(const Problem& P, const Cochain& c, const std::vector<std::uint64_t>& seeds)
{
    std::optional<bool> first;
    for (const auto& at : assignments(P, seeds)) {
        bool r = is_coboundary_at(P, c, at);
        if (first && *first != r)
            throw CohomologyError("coboundary test disagrees across seeds");
        first = r;
    }
    return *first;
}

inline bool class_equal(const Problem& P, const Cochain& a, const Cochain& b,
                        const std::vector<std::uint64_t>& seeds)
{
    if (!a.is_zero() && !b.is_zero() && a.degree != b.degree)
        throw CohomologyError("class_equal needs equal degrees");
    if (!is_cocycle(P, a) || !is_cocycle(P, b))
        throw CohomologyError("class_equal needs cocycles");
    Cochain d = a;
    d -= b;
    d.degree = a.is_zero() ? b.degree : a.degree;
    return is_coboundary(P, d, seeds);
}

// ------------------------------------------------------------ acyclicity

// h delta + delta h == id on K_{g,gamma} for gamma outside C_g (one point).
inline bool homotopy_identity(const Problem& P, const MultiIndex& gamma, int g, const Assignment& at)
{
    int n = P.n();
    for (Mono a = 0; a < bit(n); ++a) {
        MultiIndex beta = add(gamma, mono_index(a, n));
        if (!nonneg(beta))
            continue;
        NumCochain f = num_basis(P, {a, beta, g});
        NumCochain r = homotopy(P, hom_differential(P, f, at), at);
        r += hom_differential(P, homotopy(P, f, at), at);
        if (!same(r.terms, f.terms))
            return false;
    }
    return true;
}

// delta vanishes on K_{g,gamma} for gamma in C_g
inline bool flat_on_block(const Problem& P, const MultiIndex& gamma, int g)
{
    int n = P.n();
    for (Mono a = 0; a < bit(n); ++a) {
        MultiIndex beta = add(gamma, mono_index(a, n));
        if (nonneg(beta) && !hom_differential(P, basis_cochain(P, a, beta, g)).is_zero())
            return false;
    }
    return true;
}

// For n = 2 with formal q: dimensions read literally from the subscripts
// "g in Z(G), chi_{g,1} chi_{g,2} = 1" and "g in Z(G), chi_{g,1} = chi_{g,2} = 1".
inline std::vector<int> literal_center_dims(const Problem& P)
{
    if (P.n() != 2)
        throw CohomologyError("the literal center reading is stated for two generators");
    int both = 0, prod = 0;
    const auto& U = P.U();
    for (int g = 0; g < P.G.order(); ++g) {
        bool central = true;
        for (int h = 0; h < P.G.order() && central; ++h)
            central = P.G.mul(g, h) == P.G.mul(h, g);
        if (!central)
            continue;
        if (U.is_one(U.mul(P.G.chi(g, 0), P.G.chi(g, 1))))
            ++prod;
        if (U.is_one(P.G.chi(g, 0)) && U.is_one(P.G.chi(g, 1)))
            ++both;
    }
    return {1 + prod, 2 * both, both};
}

} // namespace qhh
