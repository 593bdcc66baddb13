#pragma once

// Exact coefficients: Q(zeta_N) and Laurent polynomials over it in a few
// formal (infinite order) parameters.

#include <gmpxx.h>

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhh {

using Rational = mpq_class;

inline constexpr int kMaxFormal = 8;
using Exps = std::array<int, kMaxFormal>;

struct ScalarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace poly {

// dense polynomials over Q, lowest degree first, no trailing zeros (zero = {})
using QPoly = std::vector<Rational>;

inline void trim(QPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline QPoly sub(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] -= b[i];
    trim(r);
    return r;
}

inline QPoly mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

// a = q*b + r
inline void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r)
{
    if (b.empty())
        throw ScalarError("polynomial division by zero");
    r = a;
    trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
    while (!r.empty() && r.size() >= b.size()) {
        std::size_t shift = r.size() - b.size();
        Rational c = r.back() / b.back();
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[shift + j] -= c * b[j];
        trim(r);
    }
    trim(q);
}

} // namespace poly

namespace detail {

inline std::vector<long long> divide_monic(std::vector<long long> num, const std::vector<long long>& den)
{
    std::size_t dd = den.size() - 1;
    std::vector<long long> q(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
        long long c = num[i];
        q[i - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j)
            num[i - dd + j] -= c * den[j];
    }
    return q;
}

} // namespace detail

// Phi_N with integer coefficients, constant term first.
inline std::vector<long long> cyclotomic_polynomial(int N)
{
    if (N < 1)
        throw ScalarError("cyclotomic order must be positive");
    std::vector<long long> num(N + 1, 0);
    num[0] = -1;
    num[N] = 1;
    for (int d = 1; d < N; ++d)
        if (N % d == 0)
            num = detail::divide_monic(num, cyclotomic_polynomial(d));
    return num;
}

inline int euler_phi(int N)
{
    int r = N;
    for (int p = 2, m = N; p <= m; ++p) {
        if (m % p)
            continue;
        while (m % p == 0)
            m /= p;
        r -= r / p;
    }
    return r;
}

// Shared per-order data; instances live for the whole program.
struct CycloField {
    int N = 1;
    int phi = 1;
    poly::QPoly modulus;                 // Phi_N, monic, length phi+1
    std::vector<std::vector<Rational>> zpow; // zeta^a reduced, a in [0, N)

    static const CycloField& get(int N)
    {
        static std::mutex mu;
        static std::map<int, std::unique_ptr<CycloField>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[N];
        if (!slot) {
            auto f = std::make_unique<CycloField>();
            f->N = N;
            auto ph = cyclotomic_polynomial(N);
            f->phi = int(ph.size()) - 1;
            for (long long c : ph)
                f->modulus.emplace_back(Rational(static_cast<long>(c)));
            f->zpow.resize(N);
            std::vector<Rational> cur(f->phi, Rational(0));
            cur[0] = 1;
            for (int a = 0; a < N; ++a) {
                f->zpow[a] = cur;
                // multiply by zeta and reduce
                std::vector<Rational> nxt(f->phi, Rational(0));
                Rational top = cur[f->phi - 1];
                for (int i = f->phi - 1; i > 0; --i)
                    nxt[i] = cur[i - 1];
                for (int i = 0; i < f->phi; ++i)
                    nxt[i] -= top * f->modulus[i];
                cur = std::move(nxt);
            }
            slot = std::move(f);
        }
        return *slot;
    }
};

class CycloElement {
public:
    CycloElement() : CycloElement(1) {}
    explicit CycloElement(int N) : f_(&CycloField::get(N)), c_(f_->phi, Rational(0)) {}
    CycloElement(int N, const Rational& r) : CycloElement(N) { c_[0] = r; }

    static CycloElement zeta_power(int N, long long k)
    {
        CycloElement e(N);
        long long a = ((k % N) + N) % N;
        e.c_ = e.f_->zpow[a];
        return e;
    }

    // coefficients given in the power basis, reduced modulo Phi_N
    static CycloElement from_poly(int N, const poly::QPoly& p)
    {
        CycloElement e(N);
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] != 0)
                e.add_scaled_zeta(static_cast<long long>(i), p[i]);
        return e;
    }

    int order() const { return f_->N; }
    const CycloField& field() const { return *f_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const
    {
        for (const auto& x : c_)
            if (x != 0)
                return false;
        return true;
    }

    bool is_one() const
    {
        if (c_[0] != 1)
            return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0)
                return false;
        return true;
    }

    void add_scaled_zeta(long long k, const Rational& r)
    {
        const auto& z = f_->zpow[((k % f_->N) + f_->N) % f_->N];
        for (int i = 0; i < f_->phi; ++i)
            if (z[i] != 0)
                c_[i] += r * z[i];
    }

    CycloElement& operator+=(const CycloElement& o)
    {
        check(o);
        for (int i = 0; i < f_->phi; ++i)
            c_[i] += o.c_[i];
        return *this;
    }
    CycloElement& operator-=(const CycloElement& o)
    {
        check(o);
        for (int i = 0; i < f_->phi; ++i)
            c_[i] -= o.c_[i];
        return *this;
    }
    CycloElement& operator*=(const Rational& r)
    {
        for (auto& x : c_)
            x *= r;
        return *this;
    }
    CycloElement operator-() const
    {
        CycloElement r = *this;
        for (auto& x : r.c_)
            x = -x;
        return r;
    }
    friend CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
    friend CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }
    friend CycloElement operator*(CycloElement a, const Rational& r) { return a *= r; }

    friend CycloElement operator*(const CycloElement& a, const CycloElement& b)
    {
        a.check(b);
        int phi = a.f_->phi;
        if (phi == 1) {
            CycloElement r(a.f_->N);
            r.c_[0] = a.c_[0] * b.c_[0];
            return r;
        }
        std::vector<Rational> p(2 * phi - 1, Rational(0));
        for (int i = 0; i < phi; ++i) {
            if (a.c_[i] == 0)
                continue;
            for (int j = 0; j < phi; ++j)
                if (b.c_[j] != 0)
                    p[i + j] += a.c_[i] * b.c_[j];
        }
        const auto& m = a.f_->modulus;
        for (int i = 2 * phi - 2; i >= phi; --i) {
            if (p[i] == 0)
                continue;
            Rational t = p[i];
            for (int j = 0; j < phi; ++j)
                p[i - phi + j] -= t * m[j];
        }
        CycloElement r(a.f_->N);
        for (int i = 0; i < phi; ++i)
            r.c_[i] = p[i];
        return r;
    }
    CycloElement& operator*=(const CycloElement& o) { return *this = *this * o; }

    friend bool operator==(const CycloElement& a, const CycloElement& b)
    {
        return a.f_ == b.f_ && a.c_ == b.c_;
    }

    // extended Euclid against Phi_N
    CycloElement inverse() const
    {
        if (is_zero())
            throw ScalarError("inverse of zero");
        poly::QPoly r0 = f_->modulus, r1(c_.begin(), c_.end());
        poly::trim(r1);
        poly::QPoly s0, s1{Rational(1)};
        while (r1.size() > 1) {
            poly::QPoly q, r;
            poly::divmod(r0, r1, q, r);
            r0 = std::move(r1);
            r1 = std::move(r);
            poly::QPoly s = poly::sub(s0, poly::mul(q, s1));
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        Rational c = r1[0];
        for (auto& x : s1)
            x /= c;
        return from_poly(f_->N, s1);
    }

    std::string str(const std::string& z = "z") const
    {
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i < f_->phi; ++i) {
            const Rational& x = c_[i];
            if (x == 0)
                continue;
            Rational ax = abs(x);
            if (first)
                os << (x < 0 ? "-" : "");
            else
                os << (x < 0 ? " - " : " + ");
            first = false;
            if (i == 0)
                os << ax.get_str();
            else {
                if (ax != 1)
                    os << ax.get_str() << "*";
                os << z;
                if (i > 1)
                    os << "^" << i;
            }
        }
        if (first)
            os << "0";
        return os.str();
    }

private:
    void check(const CycloElement& o) const
    {
        if (f_ != o.f_)
            throw ScalarError("mismatched cyclotomic orders");
    }

    const CycloField* f_;
    std::vector<Rational> c_;
};

inline CycloElement cyclo_inverse(const CycloElement& a) { return a.inverse(); }

inline CycloElement cyclo_pow(CycloElement a, long long e)
{
    if (e < 0) {
        a = a.inverse();
        e = -e;
    }
    CycloElement r(a.order(), Rational(1));
    while (e) {
        if (e & 1)
            r *= a;
        a *= a;
        e >>= 1;
    }
    return r;
}

// +-zeta^k * t^e. Canonical: zeta in [0, N/2) when N is even, [0, N) otherwise.
struct Unit {
    bool neg = false;
    int zeta = 0;
    Exps e{};

    auto operator<=>(const Unit&) const = default;
};

// Unit arithmetic needs the order N to normalise; kept together here.
struct Units {
    int N = 1;

    Unit norm(Unit u) const
    {
        u.zeta %= N;
        if (u.zeta < 0)
            u.zeta += N;
        if (N % 2 == 0 && u.zeta >= N / 2) {
            u.zeta -= N / 2;
            u.neg = !u.neg;
        }
        return u;
    }
    Unit one() const { return Unit{}; }
    Unit minus_one() const { return Unit{true, 0, {}}; }
    Unit zeta(long long k) const { return norm(Unit{false, int(((k % N) + N) % N), {}}); }
    Unit mul(const Unit& a, const Unit& b) const
    {
        Unit r;
        r.neg = a.neg != b.neg;
        r.zeta = a.zeta + b.zeta;
        for (int i = 0; i < kMaxFormal; ++i)
            r.e[i] = a.e[i] + b.e[i];
        return norm(r);
    }
    Unit neg(Unit a) const
    {
        a.neg = !a.neg;
        return a;
    }
    Unit pow(const Unit& a, long long k) const
    {
        Unit r;
        r.neg = a.neg && (k % 2 != 0);
        r.zeta = int(((a.zeta * (k % N)) % N + N) % N);
        for (int i = 0; i < kMaxFormal; ++i)
            r.e[i] = int(a.e[i] * k);
        return norm(r);
    }
    Unit inv(const Unit& a) const { return pow(a, -1); }
    bool is_one(const Unit& a) const { return a == Unit{}; }
    // finite multiplicative order, 0 if the unit involves a formal parameter
    int order(const Unit& a) const
    {
        for (int x : a.e)
            if (x)
                return 0;
        Unit p = a;
        for (int k = 1; k <= 2 * N; ++k) {
            if (is_one(p))
                return k;
            p = mul(p, a);
        }
        return 0;
    }
};

// Laurent polynomial in nformal parameters with coefficients in Q(zeta_N).
// A default-constructed Scalar is a universe-free zero that adopts the
// universe of whatever it is combined with.
class Scalar {
public:
    Scalar() = default;
    Scalar(int N, int nformal) : f_(&CycloField::get(N)), nformal_(nformal)
    {
        if (nformal < 0 || nformal > kMaxFormal)
            throw ScalarError("too many formal parameters");
    }

    static Scalar constant(int N, int nformal, const Rational& r)
    {
        Scalar s(N, nformal);
        if (r != 0)
            s.t_[Exps{}] = CycloElement(N, r);
        return s;
    }
    static Scalar from_cyclo(int nformal, const CycloElement& c)
    {
        Scalar s(c.order(), nformal);
        if (!c.is_zero())
            s.t_[Exps{}] = c;
        return s;
    }
    static Scalar from_unit(int N, int nformal, const Unit& u, long long mult = 1)
    {
        Scalar s(N, nformal);
        s.add_unit(u, mult);
        return s;
    }
    static Scalar formal(int N, int nformal, int idx, int power = 1)
    {
        if (idx < 0 || idx >= nformal)
            throw ScalarError("formal parameter index out of range");
        Unit u;
        u.e[idx] = power;
        return from_unit(N, nformal, u);
    }

    bool has_universe() const { return f_ != nullptr; }
    int order() const { return f_ ? f_->N : 1; }
    int nformal() const { return nformal_; }
    const std::map<Exps, CycloElement>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_unit(const Unit& u, long long mult = 1)
    {
        if (!mult)
            return;
        for (int i = nformal_; i < kMaxFormal; ++i)
            if (u.e[i])
                throw ScalarError("unit uses a formal parameter outside the universe");
        auto it = t_.find(u.e);
        if (it == t_.end())
            it = t_.emplace(u.e, CycloElement(f_->N)).first;
        it->second.add_scaled_zeta(u.zeta, Rational(static_cast<long>(u.neg ? -mult : mult)));
        if (it->second.is_zero())
            t_.erase(it);
    }

    void add_term(const Exps& e, const CycloElement& c)
    {
        auto it = t_.find(e);
        if (it == t_.end()) {
            if (!c.is_zero())
                t_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            t_.erase(it);
    }

    Scalar& operator+=(const Scalar& o)
    {
        adopt(o);
        for (const auto& [e, c] : o.t_)
            add_term(e, c);
        return *this;
    }
    Scalar& operator-=(const Scalar& o)
    {
        adopt(o);
        for (const auto& [e, c] : o.t_)
            add_term(e, -c);
        return *this;
    }
    Scalar operator-() const
    {
        Scalar r = *this;
        for (auto& [e, c] : r.t_)
            c = -c;
        return r;
    }
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

    friend Scalar operator*(const Scalar& a, const Scalar& b)
    {
        Scalar r = a;
        r.adopt(b);
        r.t_.clear();
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_) {
                Exps e;
                for (int i = 0; i < kMaxFormal; ++i)
                    e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar& operator*=(const Rational& q)
    {
        if (q == 0) {
            t_.clear();
            return *this;
        }
        for (auto& [e, c] : t_)
            c *= q;
        return *this;
    }

    Scalar times_unit(const Unit& u) const
    {
        Scalar r = *this;
        r.t_.clear();
        if (!f_)
            return r;
        CycloElement z = CycloElement::zeta_power(f_->N, u.zeta);
        if (u.neg)
            z = -z;
        for (const auto& [e, c] : t_) {
            Exps x;
            for (int i = 0; i < kMaxFormal; ++i)
                x[i] = e[i] + u.e[i];
            r.t_.emplace(x, c * z);
        }
        return r;
    }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        if (a.t_.empty() || b.t_.empty())
            return a.t_.empty() && b.t_.empty();
        return a.f_ == b.f_ && a.nformal_ == b.nformal_ && a.t_ == b.t_;
    }

    // the single term +-zeta^k t^e, if this scalar is one
    std::optional<Unit> as_unit() const
    {
        if (t_.size() != 1)
            return std::nullopt;
        const auto& [e, c] = *t_.begin();
        for (int k = 0; k < f_->N; ++k) {
            const auto& z = f_->zpow[k];
            bool pos = true, negv = true;
            for (int i = 0; i < f_->phi; ++i) {
                if (c.coeffs()[i] != z[i])
                    pos = false;
                if (c.coeffs()[i] != -z[i])
                    negv = false;
            }
            if (pos || negv) {
                Units U{f_->N};
                Unit u = U.zeta(k);
                if (negv && !pos)
                    u = U.neg(u);
                u.e = e;
                return U.norm(u);
            }
        }
        return std::nullopt;
    }

    std::string str(const std::vector<std::string>& names = {}) const
    {
        if (t_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : t_) {
            std::string mono;
            for (int i = 0; i < nformal_; ++i) {
                if (!e[i])
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += i < int(names.size()) ? names[i] : "t" + std::to_string(i + 1);
                if (e[i] != 1)
                    mono += "^" + std::to_string(e[i]);
            }
            std::string cs = c.str();
            bool simple = cs.find(' ') == std::string::npos;
            std::string term;
            if (mono.empty())
                term = simple || t_.size() == 1 ? cs : "(" + cs + ")";
            else if (cs == "1")
                term = mono;
            else if (cs == "-1")
                term = "-" + mono;
            else
                term = (simple ? cs : "(" + cs + ")") + "*" + mono;
            if (first)
                os << term;
            else if (term[0] == '-')
                os << " - " << term.substr(1);
            else
                os << " + " << term;
            first = false;
        }
        return os.str();
    }

private:
    void adopt(const Scalar& o)
    {
        if (!o.f_)
            return;
        if (!f_) {
            f_ = o.f_;
            nformal_ = o.nformal_;
            return;
        }
        if (f_ != o.f_ || nformal_ != o.nformal_)
            throw ScalarError("mismatched parameter universes");
    }

    const CycloField* f_ = nullptr;
    int nformal_ = 0;
    std::map<Exps, CycloElement> t_;
};

// Power of a single-term scalar whose coefficient is +-zeta^k.
inline Scalar scalar_pow(const Scalar& a, long long e)
{
    auto u = a.as_unit();
    if (!u)
        throw ScalarError("scalar_pow needs a unit monomial");
    Units U{a.order()};
    return Scalar::from_unit(a.order(), a.nformal(), U.pow(*u, e));
}

// Point at which formal parameters are evaluated.
struct Assignment {
    std::vector<Rational> values;
};

inline CycloElement substitute(const Scalar& a, const Assignment& at)
{
    for (const auto& v : at.values)
        if (v == 0)
            throw ScalarError("formal parameters must be assigned nonzero values");
    CycloElement r(a.order());
    for (const auto& [e, c] : a.terms()) {
        Rational m = 1;
        for (int i = 0; i < a.nformal(); ++i) {
            if (!e[i])
                continue;
            if (i >= int(at.values.size()) || at.values[i] == 0)
                throw ScalarError("formal parameters must be assigned nonzero values");
            Rational base = e[i] < 0 ? Rational(1 / at.values[i]) : at.values[i];
            for (int k = 0; k < std::abs(e[i]); ++k)
                m *= base;
        }
        r += c * m;
    }
    return r;
}

inline CycloElement substitute(const Unit& u, int N, const Assignment& at)
{
    CycloElement z = CycloElement::zeta_power(N, u.zeta);
    Rational m = u.neg ? -1 : 1;
    for (int i = 0; i < kMaxFormal; ++i) {
        if (!u.e[i])
            continue;
        if (i >= int(at.values.size()) || at.values[i] == 0)
            throw ScalarError("formal parameters must be assigned nonzero values");
        Rational base = u.e[i] < 0 ? Rational(1 / at.values[i]) : at.values[i];
        for (int k = 0; k < std::abs(u.e[i]); ++k)
            m *= base;
    }
    return z * m;
}

} // namespace qhh
