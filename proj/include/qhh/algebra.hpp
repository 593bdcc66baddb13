#pragma once

// Lambda_q = k<x_1..x_n | x_i x_j = -q_ij x_j x_i, x_i^2 = 0>, a finite group
// acting diagonally, and the skew group algebra Lambda_q # G.

#include "qhh/scalars.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>

namespace qhh {

using Mono = std::uint32_t; // x^alpha, alpha in {0,1}^n as a bit set

inline bool has(Mono a, int i) { return (a >> i) & 1u; }
inline Mono bit(int i) { return Mono(1) << i; }
inline int weight(Mono a) { return std::popcount(a); }

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class QuantumDatum {
public:
    QuantumDatum() = default;

    // upper[{i,j}] = q_ij for i < j (0-based); missing pairs are an error
    QuantumDatum(int n, int N, int nformal, const std::map<std::pair<int, int>, Unit>& upper,
                 std::vector<std::string> names = {})
        : n_(n), nformal_(nformal), U_{N}, names_(std::move(names))
    {
        if (n < 1 || n > 16)
            throw AlgebraError("number of generators must be in [1, 16]");
        q_.assign(n, std::vector<Unit>(n));
        for (int i = 0; i < n; ++i) {
            q_[i][i] = U_.minus_one();
            for (int j = i + 1; j < n; ++j) {
                auto it = upper.find({i, j});
                if (it == upper.end())
                    throw AlgebraError("missing q entry for pair (" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + ")");
                q_[i][j] = U_.norm(it->second);
                q_[j][i] = U_.inv(q_[i][j]);
            }
        }
        mq_.assign(n, std::vector<Unit>(n));
        swapc_.assign(n, std::vector<Unit>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                mq_[i][j] = U_.neg(q_[i][j]);
                swapc_[i][j] = U_.inv(mq_[i][j]);
            }
    }

    int n() const { return n_; }
    int N() const { return U_.N; }
    int nformal() const { return nformal_; }
    const Units& units() const { return U_; }
    const std::vector<std::string>& names() const { return names_; }

    const Unit& q(int i, int j) const { return q_[i][j]; }
    const Unit& mq(int i, int j) const { return mq_[i][j]; } // -q_ij

    // (-q_ij)^e and q_ij^e
    Unit mq_pow(int i, int j, long long e) const { return U_.pow(mq_[i][j], e); }
    Unit q_pow(int i, int j, long long e) const { return U_.pow(q_[i][j], e); }

    // x^a x^b = c x^{a+b}; nullopt when a and b share a generator
    std::optional<Unit> mono_mul(Mono a, Mono b) const
    {
        if (a & b)
            return std::nullopt;
        Unit c;
        for (int l = 0; l < n_; ++l) {
            if (!has(a, l))
                continue;
            for (int k = 0; k < l; ++k)
                if (has(b, k))
                    c = U_.mul(c, swapc_[k][l]);
        }
        return c;
    }

    Scalar zero() const { return Scalar(U_.N, nformal_); }
    Scalar one() const { return Scalar::from_unit(U_.N, nformal_, Unit{}); }
    Scalar scalar(const Unit& u, long long mult = 1) const
    {
        return Scalar::from_unit(U_.N, nformal_, u, mult);
    }

private:
    int n_ = 0;
    int nformal_ = 0;
    Units U_{1};
    std::vector<std::vector<Unit>> q_, mq_, swapc_;
    std::vector<std::string> names_;
};

class GroupDatum {
public:
    GroupDatum() = default;

    // chi[g][i] = chi_{g,i}; element 0 must be the identity
    GroupDatum(std::vector<std::vector<int>> mult, std::vector<std::vector<Unit>> chi, int N)
        : mult_(std::move(mult)), chi_(std::move(chi)), U_{N}
    {
        int m = int(mult_.size());
        if (m < 1)
            throw AlgebraError("group must be nonempty");
        for (const auto& row : mult_) {
            if (int(row.size()) != m)
                throw AlgebraError("multiplication table must be square");
            for (int x : row)
                if (x < 0 || x >= m)
                    throw AlgebraError("multiplication table entry out of range");
        }
        for (int a = 0; a < m; ++a)
            if (mult_[0][a] != a || mult_[a][0] != a)
                throw AlgebraError("element 0 is not the identity");
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    if (mult_[mult_[a][b]][c] != mult_[a][mult_[b][c]])
                        throw AlgebraError("multiplication table is not associative");
        inv_.assign(m, -1);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (mult_[a][b] == 0 && mult_[b][a] == 0)
                    inv_[a] = b;
        for (int a = 0; a < m; ++a)
            if (inv_[a] < 0)
                throw AlgebraError("element without inverse");
        if (int(chi_.size()) != m)
            throw AlgebraError("character table needs one row per group element");
        int n = int(chi_[0].size());
        for (int a = 0; a < m; ++a) {
            if (int(chi_[a].size()) != n)
                throw AlgebraError("character rows have different lengths");
            for (int i = 0; i < n; ++i) {
                chi_[a][i] = U_.norm(chi_[a][i]);
                int ord = U_.order(chi_[a][i]);
                if (ord == 0 || N % ord != 0)
                    throw AlgebraError("character value is not an N-th root of unity");
            }
        }
        for (int i = 0; i < n; ++i) {
            if (!U_.is_one(chi_[0][i]))
                throw AlgebraError("identity must act trivially");
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    if (chi_[mult_[a][b]][i] != U_.mul(chi_[a][i], chi_[b][i]))
                        throw AlgebraError("characters are not multiplicative");
        }
    }

    int order() const { return int(mult_.size()); }
    int width() const { return int(chi_[0].size()); }
    int N() const { return U_.N; }
    int mul(int a, int b) const { return mult_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int h, int g) const { return mult_[mult_[h][g]][inv_[h]]; } // h g h^-1
    const Unit& chi(int g, int i) const { return chi_[g][i]; }
    const std::vector<std::vector<int>>& table() const { return mult_; }

    // ^g x^a = act(g, a) x^a
    Unit act(int g, Mono a) const
    {
        Unit c;
        for (int i = 0; i < int(chi_[g].size()); ++i)
            if (has(a, i))
                c = U_.mul(c, chi_[g][i]);
        return c;
    }

private:
    std::vector<std::vector<int>> mult_;
    std::vector<int> inv_;
    std::vector<std::vector<Unit>> chi_;
    Units U_{1};
};

// Z/m with chi_{g^i, l} = chi_gen_l^i (element index i is g^i).
inline GroupDatum make_cyclic_group(int m, const std::vector<Unit>& chi_gen, int N)
{
    if (m < 1)
        throw AlgebraError("cyclic group order must be positive");
    Units U{N};
    for (const auto& c : chi_gen) {
        int ord = U.order(c);
        if (ord == 0 || m % ord != 0)
            throw AlgebraError("generator character order must divide the group order");
    }
    std::vector<std::vector<int>> mult(m, std::vector<int>(m));
    std::vector<std::vector<Unit>> chi(m, std::vector<Unit>(chi_gen.size()));
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b)
            mult[a][b] = (a + b) % m;
        for (std::size_t l = 0; l < chi_gen.size(); ++l)
            chi[a][l] = U.pow(chi_gen[l], a);
    }
    return GroupDatum(std::move(mult), std::move(chi), N);
}

inline GroupDatum trivial_group(int n, int N)
{
    return make_cyclic_group(1, std::vector<Unit>(n), N);
}

// A problem instance: the algebra and the group acting on it.
struct Problem {
    QuantumDatum Q;
    GroupDatum G;

    Problem(QuantumDatum q, GroupDatum g) : Q(std::move(q)), G(std::move(g))
    {
        if (G.width() != Q.n())
            throw AlgebraError("character table width differs from the number of generators");
        if (G.N() != Q.N())
            throw AlgebraError("group and algebra use different cyclotomic orders");
    }

    int n() const { return Q.n(); }
    int N() const { return Q.N(); }
    const Units& U() const { return Q.units(); }
};

// Lambda_q # G, basis x^a (x) g.
using SkewKey = std::pair<Mono, int>;
using SkewElement = std::map<SkewKey, Scalar>;

inline void add_to(SkewElement& e, const SkewKey& k, const Scalar& c)
{
    if (c.is_zero())
        return;
    auto it = e.find(k);
    if (it == e.end()) {
        e.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        e.erase(it);
}

// Coefficient of x^{a+b} (x) gh in (x^a (x) g)(x^b (x) h).
inline std::optional<Unit> skew_mono_mul(const Problem& P, Mono a, int g, Mono b)
{
    auto c = P.Q.mono_mul(a, b);
    if (!c)
        return std::nullopt;
    return P.U().mul(*c, P.G.act(g, b));
}

inline SkewElement group_act(const Problem& P, int g, const SkewElement& e)
{
    SkewElement r;
    for (const auto& [k, c] : e)
        add_to(r, k, c.times_unit(P.G.act(g, k.first)));
    return r;
}

inline SkewElement skew_multiply(const Problem& P, const SkewElement& a, const SkewElement& b)
{
    SkewElement r;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            auto c = skew_mono_mul(P, ka.first, ka.second, kb.first);
            if (!c)
                continue;
            add_to(r, {ka.first | kb.first, P.G.mul(ka.second, kb.second)}, (ca * cb).times_unit(*c));
        }
    return r;
}

} // namespace qhh
