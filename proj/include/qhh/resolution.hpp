#pragma once

// The bimodule resolution K with generators eps_beta, its differential, the
// induced differential on Hom(K, Lambda_q # G), the contracting homotopy on
// the acyclic pieces, the diagonal, the bar-side expansion f_beta, and the
// contraction phi : K (x) K -> K.

#include "qhh/algebra.hpp"

#include <numeric>
#include <set>
#include <tuple>

namespace qhh {

using MultiIndex = std::vector<int>;

inline int total(const MultiIndex& b) { return std::accumulate(b.begin(), b.end(), 0); }

inline MultiIndex shifted(MultiIndex b, int l, int by)
{
    b[l] += by;
    return b;
}

inline MultiIndex add(const MultiIndex& a, const MultiIndex& b)
{
    MultiIndex r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline MultiIndex sub(const MultiIndex& a, const MultiIndex& b)
{
    MultiIndex r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline MultiIndex mono_index(Mono a, int n)
{
    MultiIndex r(n);
    for (int i = 0; i < n; ++i)
        r[i] = has(a, i);
    return r;
}

inline bool nonneg(const MultiIndex& b)
{
    for (int x : b)
        if (x < 0)
            return false;
    return true;
}

// all beta in N^n with |beta| = m, lexicographic
inline std::vector<MultiIndex> compositions(int m, int n)
{
    std::vector<MultiIndex> out;
    if (m < 0)
        return out;
    MultiIndex cur(n, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n - 1) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[i] = v;
            self(self, i + 1, left - v);
        }
    };
    rec(rec, 0, m);
    return out;
}

// all beta' with 0 <= beta' <= beta componentwise
inline std::vector<MultiIndex> sub_indices(const MultiIndex& b)
{
    std::vector<MultiIndex> out{MultiIndex(b.size(), 0)};
    for (std::size_t i = 0; i < b.size(); ++i) {
        std::vector<MultiIndex> next;
        for (const auto& x : out)
            for (int v = 0; v <= b[i]; ++v) {
                next.push_back(x);
                next.back()[i] = v;
            }
        out = std::move(next);
    }
    return out;
}

template <class K, class C>
void add_to(std::map<K, C>& m, const K& k, const C& c)
{
    if (c.is_zero())
        return;
    auto it = m.find(k);
    if (it == m.end()) {
        m.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        m.erase(it);
}

template <class K, class C>
bool same(const std::map<K, C>& a, const std::map<K, C>& b)
{
    if (a.size() != b.size())
        return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
        if (!(ia->first == ib->first) || !(ia->second == ib->second))
            return false;
    return true;
}

// x^a eps_beta x^b
struct KKey {
    Mono a = 0;
    MultiIndex beta;
    Mono b = 0;
    auto operator<=>(const KKey&) const = default;
};
using KElement = std::map<KKey, Scalar>;

// x^a eps_beta x^c eps_gamma x^b in K (x)_Lambda K
struct KKKey {
    Mono a = 0;
    MultiIndex beta;
    Mono c = 0;
    MultiIndex gamma;
    Mono b = 0;
    auto operator<=>(const KKKey&) const = default;
};
using KKElement = std::map<KKKey, Scalar>;

struct CochainKey {
    Mono alpha = 0;
    MultiIndex beta;
    int g = 0;

    friend bool operator==(const CochainKey&, const CochainKey&) = default;
    friend auto operator<=>(const CochainKey& x, const CochainKey& y)
    {
        return std::tie(x.g, x.beta, x.alpha) <=> std::tie(y.g, y.beta, y.alpha);
    }
};

// (x^alpha (x) g) eps_beta^* with coefficients in C
inline std::string index_str(const MultiIndex& b)
{
    std::string s;
    for (std::size_t i = 0; i < b.size(); ++i)
        s += (i ? "," : "") + std::to_string(b[i]);
    return s;
}

inline std::string mono_str(Mono a, int n)
{
    std::string s;
    for (int i = 0; i < n; ++i)
        if (has(a, i))
            s += "x" + std::to_string(i + 1);
    return s.empty() ? "1" : s;
}

// (x1x2 (x) g2) eps_{1,0}^*
inline std::string key_str(const CochainKey& k)
{
    return "(" + mono_str(k.alpha, int(k.beta.size())) + " (x) g" + std::to_string(k.g) + ") eps_{" +
           index_str(k.beta) + "}^*";
}

template <class C>
struct BasicCochain {
    int degree = 0;
    std::map<CochainKey, C> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const CochainKey& k, const C& c) { add_to(terms, k, c); }
    BasicCochain& operator+=(const BasicCochain& o)
    {
        for (const auto& [k, c] : o.terms)
            add(k, c);
        return *this;
    }
    BasicCochain& operator-=(const BasicCochain& o)
    {
        for (const auto& [k, c] : o.terms)
            add(k, -c);
        return *this;
    }
    friend bool operator==(const BasicCochain& a, const BasicCochain& b)
    {
        return (a.terms.empty() || b.terms.empty() || a.degree == b.degree) && same(a.terms, b.terms);
    }
};
using Cochain = BasicCochain<Scalar>;
using NumCochain = BasicCochain<CycloElement>;

inline Cochain basis_cochain(const Problem& P, Mono alpha, const MultiIndex& beta, int g)
{
    Cochain c;
    c.degree = total(beta);
    c.add({alpha, beta, g}, P.Q.one());
    return c;
}

inline Cochain scaled(const Cochain& f, const Scalar& s)
{
    Cochain r;
    r.degree = f.degree;
    for (const auto& [k, c] : f.terms)
        r.add(k, c * s);
    return r;
}

inline NumCochain specialize(const Cochain& f, const Assignment& at)
{
    NumCochain r;
    r.degree = f.degree;
    for (const auto& [k, c] : f.terms)
        r.add(k, substitute(c, at));
    return r;
}

// ---------------------------------------------------------------- K

inline KElement resolution_differential(const Problem& P, const MultiIndex& beta)
{
    if (total(beta) == 0)
        throw AlgebraError("the differential starts in degree 1");
    const auto& Q = P.Q;
    const auto& U = P.U();
    int n = P.n();
    KElement out;
    int prefix = 0;
    for (int j = 0; j < n; ++j) {
        prefix += beta[j];
        if (beta[j] == 0)
            continue;
        MultiIndex bm = shifted(beta, j, -1);
        Unit c1;
        for (int l = 0; l < j; ++l)
            c1 = U.mul(c1, Q.q_pow(l, j, beta[l]));
        add_to(out, KKey{bit(j), bm, 0}, Q.scalar(c1));
        Unit c2 = prefix % 2 ? U.minus_one() : U.one();
        for (int l = j + 1; l < n; ++l)
            c2 = U.mul(c2, Q.mq_pow(j, l, beta[l]));
        add_to(out, KKey{0, bm, bit(j)}, Q.scalar(c2));
    }
    return out;
}

inline KElement k_differential(const Problem& P, const KElement& e)
{
    KElement out;
    for (const auto& [k, v] : e) {
        if (total(k.beta) == 0)
            continue;
        for (const auto& [t, w] : resolution_differential(P, k.beta)) {
            auto c1 = P.Q.mono_mul(k.a, t.a);
            auto c2 = P.Q.mono_mul(t.b, k.b);
            if (!c1 || !c2)
                continue;
            add_to(out, KKey{k.a | t.a, t.beta, t.b | k.b}, (v * w).times_unit(P.U().mul(*c1, *c2)));
        }
    }
    return out;
}

// ----------------------------------------------------- cochain differential

enum class OmegaVariant {
    Derivation,  // the correct coefficient
    Boxed,       // exponent alpha_k - beta_k on (-q_lk); kept for regression tests
    CorruptSign, // drops the sign (-1)^{beta_1+..+beta_{l-1}}; for regression runs
};

// (-1)^{gamma_l} prod_{k != l} (-q_kl)^{gamma_k} == chi_{g,l}
inline bool slot_condition(const Problem& P, const MultiIndex& gamma, int l, int g)
{
    const auto& U = P.U();
    Unit c = gamma[l] % 2 ? U.minus_one() : U.one();
    for (int k = 0; k < P.n(); ++k)
        if (k != l)
            c = U.mul(c, P.Q.mq_pow(k, l, gamma[k]));
    return c == P.G.chi(g, l);
}

// Coefficient of (x^{alpha+[l]} (x) g) eps_{beta+[l]}^* in delta((x^alpha (x) g) eps_beta^*).
inline Scalar omega_big(const Problem& P, Mono alpha, const MultiIndex& beta, int l, int g,
                        OmegaVariant variant = OmegaVariant::Derivation)
{
    if (has(alpha, l))
        return P.Q.zero();
    int n = P.n();
    MultiIndex gamma = sub(beta, mono_index(alpha, n));
    if (slot_condition(P, gamma, l, g))
        return P.Q.zero();
    const auto& U = P.U();
    Unit p1, p2;
    int before = 0;
    for (int k = 0; k < l; ++k) {
        p1 = U.mul(p1, P.Q.mq_pow(k, l, gamma[k]));
        before += beta[k];
    }
    for (int k = l + 1; k < n; ++k)
        p2 = U.mul(p2, P.Q.mq_pow(l, k, variant == OmegaVariant::Boxed ? -gamma[k] : gamma[k]));
    p2 = U.mul(p2, P.G.chi(g, l));
    if (beta[l] % 2 == 0)
        p2 = U.neg(p2);
    if (before % 2 && variant != OmegaVariant::CorruptSign) {
        p1 = U.neg(p1);
        p2 = U.neg(p2);
    }
    Scalar r = P.Q.scalar(p1);
    r.add_unit(p2);
    return r;
}

inline Cochain hom_differential(const Problem& P, const Cochain& f,
                                OmegaVariant variant = OmegaVariant::Derivation)
{
    Cochain out;
    out.degree = f.degree + 1;
    for (const auto& [k, c] : f.terms)
        for (int l = 0; l < P.n(); ++l) {
            Scalar o = omega_big(P, k.alpha, k.beta, l, k.g, variant);
            if (!o.is_zero())
                out.add({k.alpha | bit(l), shifted(k.beta, l, 1), k.g}, c * o);
        }
    return out;
}

inline NumCochain hom_differential(const Problem& P, const NumCochain& f, const Assignment& at)
{
    NumCochain out;
    out.degree = f.degree + 1;
    for (const auto& [k, c] : f.terms)
        for (int l = 0; l < P.n(); ++l) {
            Scalar o = omega_big(P, k.alpha, k.beta, l, k.g);
            if (!o.is_zero())
                out.add({k.alpha | bit(l), shifted(k.beta, l, 1), k.g}, c * substitute(o, at));
        }
    return out;
}

// f applied to one K-term x^u eps_beta x^v, as an element of Lambda_q # G
inline SkewElement eval_cochain(const Problem& P, const Cochain& f, const KElement& e)
{
    SkewElement out;
    for (const auto& [t, w] : e) {
        for (const auto& [k, c] : f.terms) {
            if (k.beta != t.beta)
                continue;
            auto c1 = P.Q.mono_mul(t.a, k.alpha);
            if (!c1)
                continue;
            auto c2 = skew_mono_mul(P, t.a | k.alpha, k.g, t.b);
            if (!c2)
                continue;
            add_to(out, SkewKey{t.a | k.alpha | t.b, k.g}, (w * c).times_unit(P.U().mul(*c1, *c2)));
        }
    }
    return out;
}

// f o delta computed on the chain level, for comparison with hom_differential
inline Cochain hom_differential_oracle(const Problem& P, const Cochain& f)
{
    Cochain out;
    out.degree = f.degree + 1;
    std::set<MultiIndex> targets;
    for (const auto& [k, c] : f.terms)
        for (int l = 0; l < P.n(); ++l)
            targets.insert(shifted(k.beta, l, 1));
    for (const auto& rho : targets)
        for (const auto& [sk, v] : eval_cochain(P, f, resolution_differential(P, rho)))
            out.add({sk.first, rho, sk.second}, v);
    return out;
}

// ||gamma||_g: slots that are not -1 and fail the character condition
inline int norm_g(const Problem& P, const MultiIndex& gamma, int g)
{
    int c = 0;
    for (int l = 0; l < P.n(); ++l)
        if (gamma[l] != -1 && !slot_condition(P, gamma, l, g))
            ++c;
    return c;
}

// omega_g(alpha, beta, l), which in general needs field division; evaluated at `at`.
inline CycloElement omega_small(const Problem& P, Mono alpha, const MultiIndex& beta, int l, int g,
                                const Assignment& at)
{
    if (!has(alpha, l) || beta[l] == 0)
        return CycloElement(P.N());
    MultiIndex gamma = sub(beta, mono_index(alpha, P.n()));
    if (slot_condition(P, gamma, l, g))
        return CycloElement(P.N());
    Scalar o = omega_big(P, alpha & ~bit(l), shifted(beta, l, -1), l, g);
    return substitute(o, at).inverse();
}

// Contracting homotopy on K_{g,gamma}, gamma = beta - alpha fixed over the support.
inline NumCochain homotopy(const Problem& P, const NumCochain& c, const Assignment& at)
{
    NumCochain out;
    out.degree = c.degree - 1;
    if (c.is_zero())
        return out;
    const auto& k0 = c.terms.begin()->first;
    MultiIndex gamma = sub(k0.beta, mono_index(k0.alpha, P.n()));
    int g = k0.g;
    for (const auto& [k, v] : c.terms)
        if (k.g != g || sub(k.beta, mono_index(k.alpha, P.n())) != gamma)
            throw AlgebraError("homotopy input must lie in a single K_{g,gamma}");
    int nn = norm_g(P, gamma, g);
    if (nn == 0)
        throw AlgebraError("homotopy undefined: gamma lies in C_g");
    Rational inv(1, nn);
    for (const auto& [k, v] : c.terms)
        for (int l = 0; l < P.n(); ++l) {
            CycloElement w = omega_small(P, k.alpha, k.beta, l, g, at);
            if (!w.is_zero())
                out.add({k.alpha & ~bit(l), shifted(k.beta, l, -1), g}, v * w * inv);
        }
    return out;
}

// ------------------------------------------------------------- diagonal

struct Split {
    MultiIndex left, right;
    Unit coef;
};

// Delta(eps_beta) = sum_{a+c=beta} prod_{k<l} q_kl^{c_k a_l} eps_a (x) eps_c
inline std::vector<Split> diagonal(const Problem& P, const MultiIndex& beta)
{
    std::vector<Split> out;
    int n = P.n();
    for (const auto& a : sub_indices(beta)) {
        MultiIndex c = sub(beta, a);
        Unit u;
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < l; ++k)
                if (c[k] && a[l])
                    u = P.U().mul(u, P.Q.q_pow(k, l, (long long)c[k] * a[l]));
        out.push_back({a, c, u});
    }
    return out;
}

inline KKElement diagonal_on(const Problem& P, const KElement& e)
{
    KKElement out;
    for (const auto& [k, v] : e)
        for (const auto& s : diagonal(P, k.beta))
            add_to(out, KKKey{k.a, s.left, 0, s.right, k.b}, v.times_unit(s.coef));
    return out;
}

// (Delta (x) 1) Delta == (1 (x) Delta) Delta on eps_beta
inline bool diagonal_coassociative(const Problem& P, const MultiIndex& beta)
{
    using Triple = std::tuple<MultiIndex, MultiIndex, MultiIndex>;
    std::map<Triple, Scalar> lhs, rhs;
    for (const auto& s : diagonal(P, beta)) {
        for (const auto& t : diagonal(P, s.left))
            add_to(lhs, Triple{t.left, t.right, s.right}, P.Q.scalar(P.U().mul(s.coef, t.coef)));
        for (const auto& t : diagonal(P, s.right))
            add_to(rhs, Triple{s.left, t.left, t.right}, P.Q.scalar(P.U().mul(s.coef, t.coef)));
    }
    return same(lhs, rhs);
}

// counit eps_0 -> 1 on either side returns eps_beta with coefficient 1
inline bool diagonal_counital(const Problem& P, const MultiIndex& beta)
{
    int left = 0, right = 0;
    for (const auto& s : diagonal(P, beta)) {
        if (total(s.left) == 0) {
            if (s.right != beta || !P.U().is_one(s.coef))
                return false;
            ++left;
        }
        if (total(s.right) == 0) {
            if (s.left != beta || !P.U().is_one(s.coef))
                return false;
            ++right;
        }
    }
    return left == 1 && right == 1;
}

// differential on K (x) K with the Koszul sign on the second factor
inline KKElement kk_differential(const Problem& P, const KKElement& e)
{
    KKElement out;
    const auto& U = P.U();
    for (const auto& [k, v] : e) {
        if (total(k.beta) > 0)
            for (const auto& [t, w] : resolution_differential(P, k.beta)) {
                auto c1 = P.Q.mono_mul(k.a, t.a);
                auto c2 = P.Q.mono_mul(t.b, k.c);
                if (!c1 || !c2)
                    continue;
                add_to(out, KKKey{k.a | t.a, t.beta, t.b | k.c, k.gamma, k.b},
                       (v * w).times_unit(U.mul(*c1, *c2)));
            }
        if (total(k.gamma) > 0) {
            Scalar sv = total(k.beta) % 2 ? -v : v;
            for (const auto& [t, w] : resolution_differential(P, k.gamma)) {
                auto c1 = P.Q.mono_mul(k.c, t.a);
                auto c2 = P.Q.mono_mul(t.b, k.b);
                if (!c1 || !c2)
                    continue;
                add_to(out, KKKey{k.a, k.beta, k.c | t.a, t.beta, t.b | k.b},
                       (sv * w).times_unit(U.mul(*c1, *c2)));
            }
        }
    }
    return out;
}

// Delta is a chain map: Delta delta == delta_{K(x)K} Delta on eps_beta
inline bool diagonal_chain_map(const Problem& P, const MultiIndex& beta)
{
    if (total(beta) == 0)
        return true;
    KElement gen{{KKey{0, beta, 0}, P.Q.one()}};
    return same(diagonal_on(P, k_differential(P, gen)), kk_differential(P, diagonal_on(P, gen)));
}

// ------------------------------------------------------------------ bar side

using Word = std::vector<int>; // x_{w1} (x) ... (x) x_{wm}
using WordSum = std::map<Word, Scalar>;

// f_beta = sum_l prod_{k>l} q_lk^{beta_k} f_{beta-[l]} (x) x_l, f_0 = 1
inline WordSum f_beta_expand(const Problem& P, const MultiIndex& beta)
{
    WordSum out;
    if (total(beta) == 0) {
        out[Word{}] = P.Q.one();
        return out;
    }
    int n = P.n();
    for (int l = 0; l < n; ++l) {
        if (beta[l] == 0)
            continue;
        Unit c;
        for (int k = l + 1; k < n; ++k)
            c = P.U().mul(c, P.Q.q_pow(l, k, beta[k]));
        for (const auto& [w, v] : f_beta_expand(P, shifted(beta, l, -1))) {
            Word x = w;
            x.push_back(l);
            add_to(out, x, v.times_unit(c));
        }
    }
    return out;
}

// a (x) w_1 (x) ... (x) w_m (x) b with monomial slots
using BarKey = std::vector<Mono>;
using BarElement = std::map<BarKey, Scalar>;

inline BarElement bar_differential(const Problem& P, const BarElement& e)
{
    BarElement out;
    for (const auto& [k, v] : e) {
        std::size_t m = k.size() - 2;
        for (std::size_t i = 0; i <= m; ++i) {
            auto c = P.Q.mono_mul(k[i], k[i + 1]);
            if (!c)
                continue;
            BarKey r;
            r.reserve(k.size() - 1);
            for (std::size_t j = 0; j < k.size(); ++j) {
                if (j == i + 1)
                    continue;
                r.push_back(j == i ? (k[i] | k[i + 1]) : k[j]);
            }
            Scalar s = v.times_unit(*c);
            add_to(out, r, i % 2 ? -s : s);
        }
    }
    return out;
}

inline BarElement lift_word_sum(const WordSum& f, Mono left = 0, Mono right = 0)
{
    BarElement out;
    for (const auto& [w, v] : f) {
        BarKey k{left};
        for (int x : w)
            k.push_back(bit(x));
        k.push_back(right);
        add_to(out, k, v);
    }
    return out;
}

// d(1 (x) f_beta (x) 1) agrees with the differential of K transported to the bar side
inline bool bar_check(const Problem& P, const MultiIndex& beta)
{
    int m = total(beta), n = P.n();
    if (m == 0)
        return true;
    BarElement lhs = bar_differential(P, lift_word_sum(f_beta_expand(P, beta)));
    BarElement rhs;
    for (int j = 0; j < n; ++j) {
        if (beta[j] == 0)
            continue;
        WordSum f = f_beta_expand(P, shifted(beta, j, -1));
        Unit c1, c2 = m % 2 ? P.U().minus_one() : P.U().one();
        for (int l = 0; l < j; ++l)
            c1 = P.U().mul(c1, P.Q.q_pow(l, j, beta[l]));
        for (int l = j + 1; l < n; ++l)
            c2 = P.U().mul(c2, P.Q.q_pow(j, l, beta[l]));
        for (const auto& [k, v] : lift_word_sum(f, bit(j), 0))
            add_to(rhs, k, v.times_unit(c1));
        for (const auto& [k, v] : lift_word_sum(f, 0, bit(j)))
            add_to(rhs, k, v.times_unit(c2));
    }
    return same(lhs, rhs);
}

// deconcatenation of f_beta equals sum over Delta splittings of f_a (x) f_c
inline bool diagonal_bar_compatible(const Problem& P, const MultiIndex& beta)
{
    using Pair = std::pair<Word, Word>;
    std::map<Pair, Scalar> lhs, rhs;
    for (const auto& [w, v] : f_beta_expand(P, beta))
        for (std::size_t i = 0; i <= w.size(); ++i)
            add_to(lhs, Pair{Word(w.begin(), w.begin() + i), Word(w.begin() + i, w.end())}, v);
    for (const auto& s : diagonal(P, beta)) {
        auto fa = f_beta_expand(P, s.left), fc = f_beta_expand(P, s.right);
        for (const auto& [wa, va] : fa)
            for (const auto& [wc, vc] : fc)
                add_to(rhs, Pair{wa, wc}, (va * vc).times_unit(s.coef));
    }
    return same(lhs, rhs);
}

// ------------------------------------------------------------------ phi

struct PhiTerm {
    Mono left = 0;
    MultiIndex index;
    Mono right = 0;
    Unit coef;
};

// phi(eps_beta (x) x^alpha eps_gamma), one term per admissible l
inline std::vector<PhiTerm> phi_terms(const Problem& P, const MultiIndex& beta, Mono alpha,
                                      const MultiIndex& gamma)
{
    std::vector<PhiTerm> out;
    int n = P.n();
    const auto& U = P.U();
    MultiIndex a = mono_index(alpha, n);
    int bsum = total(beta);
    for (int L = 0; L < n; ++L) {
        if (!a[L])
            continue;
        bool ok = true;
        for (int k = L + 1; k < n && ok; ++k)
            ok = beta[k] == 0;
        for (int k = 0; k < L && ok; ++k)
            ok = gamma[k] == 0;
        if (!ok)
            continue;
        Unit c = bsum % 2 ? U.minus_one() : U.one();
        for (int k = L + 1; k < n; ++k)
            if (a[k])
                c = U.mul(c, P.Q.mq_pow(L, k, beta[L] + 1));
        for (int k = 0; k < L; ++k)
            if (a[k])
                c = U.mul(c, P.Q.mq_pow(k, L, gamma[L] + 1));
        for (int r = 0; r < L; ++r)
            for (int s = L + 1; s < n; ++s) {
                long long e = (long long)a[r] * (a[s] + gamma[s]) + (long long)a[s] * beta[r];
                if (e)
                    c = U.mul(c, P.Q.mq_pow(r, s, e));
            }
        Mono left = 0, right = 0;
        for (int k = 0; k < n; ++k) {
            if (!a[k])
                continue;
            if (k > L)
                left |= bit(k);
            if (k < L)
                right |= bit(k);
        }
        out.push_back({left, shifted(add(beta, gamma), L, 1), right, c});
    }
    return out;
}

inline KElement phi(const Problem& P, const MultiIndex& beta, Mono alpha, const MultiIndex& gamma)
{
    KElement out;
    for (const auto& t : phi_terms(P, beta, alpha, gamma))
        add_to(out, KKey{t.left, t.index, t.right}, P.Q.scalar(t.coef));
    return out;
}

// phi extended as a bimodule map
inline KElement phi_on(const Problem& P, const KKElement& e)
{
    KElement out;
    for (const auto& [k, v] : e)
        for (const auto& [t, w] : phi(P, k.beta, k.c, k.gamma)) {
            auto c1 = P.Q.mono_mul(k.a, t.a);
            auto c2 = P.Q.mono_mul(t.b, k.b);
            if (!c1 || !c2)
                continue;
            add_to(out, KKey{k.a | t.a, t.beta, t.b | k.b}, (v * w).times_unit(P.U().mul(*c1, *c2)));
        }
    return out;
}

// F_K(eps_beta (x) x^alpha eps_gamma) with augmentation eps_0 -> 1
inline KElement f_k(const Problem& P, const MultiIndex& beta, Mono alpha, const MultiIndex& gamma)
{
    KElement out;
    if (total(beta) == 0)
        add_to(out, KKey{alpha, gamma, 0}, P.Q.one());
    if (total(gamma) == 0)
        add_to(out, KKey{0, beta, alpha}, -P.Q.one());
    return out;
}

struct PhiWitness {
    MultiIndex beta;
    Mono alpha;
    MultiIndex gamma;
};

// delta phi + phi delta == F_K on every eps_beta (x) x^alpha eps_gamma of degree <= max_degree
inline std::optional<PhiWitness> phi_identity_check(const Problem& P, int max_degree)
{
    int n = P.n();
    for (int d = 0; d <= max_degree; ++d)
        for (int db = 0; db <= d; ++db)
            for (const auto& beta : compositions(db, n))
                for (const auto& gamma : compositions(d - db, n))
                    for (Mono alpha = 0; alpha < bit(n); ++alpha) {
                        KElement lhs = k_differential(P, phi(P, beta, alpha, gamma));
                        KKElement gen{{KKKey{0, beta, alpha, gamma, 0}, P.Q.one()}};
                        for (const auto& [k, v] : phi_on(P, kk_differential(P, gen)))
                            add_to(lhs, k, v);
                        if (!same(lhs, f_k(P, beta, alpha, gamma)))
                            return PhiWitness{beta, alpha, gamma};
                    }
    return std::nullopt;
}

} // namespace qhh
