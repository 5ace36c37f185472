#pragma once

#include <orbit3/int_poly.hpp>

#include <cstdint>
#include <numeric>
#include <random>

namespace orbit3 {
namespace modp {

/// Polynomials over F_p, p an odd prime below 2^61. Coefficient vectors are
/// trimmed like IntPoly; arithmetic is plain schoolbook.
using Poly = std::vector<uint64_t>;

inline uint64_t addm(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
}
inline uint64_t subm(uint64_t a, uint64_t b, uint64_t p) {
    return a >= b ? a - b : a + p - b;
}
inline uint64_t mulm(uint64_t a, uint64_t b, uint64_t p) {
    return (uint64_t)((__uint128_t)a * b % p);
}
inline uint64_t powm(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}
inline uint64_t invm(uint64_t a, uint64_t p) { return powm(a % p, p - 2, p); }

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline long deg(const Poly& f) { return long(f.size()) - 1; }
inline bool is_zero(const Poly& f) { return f.empty(); }

inline Poly from_int_poly(const IntPoly& f, uint64_t p) {
    Poly r(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) {
        Int m = f.c[i] % Int((unsigned long)p);
        if (m < 0) m += Int((unsigned long)p);
        r[i] = m.get_ui();
    }
    trim(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, uint64_t p) {
    if (is_zero(a) || is_zero(b)) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = addm(r[i + j], mulm(a[i], b[j], p), p);
    }
    trim(r);
    return r;
}

inline Poly sub(Poly a, const Poly& b, uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = subm(a[i], b[i], p);
    trim(a);
    return a;
}

inline Poly scale(Poly a, uint64_t k, uint64_t p) {
    for (auto& x : a) x = mulm(x, k, p);
    trim(a);
    return a;
}

inline Poly monic(const Poly& a, uint64_t p) {
    if (is_zero(a)) return a;
    return scale(a, invm(a.back(), p), p);
}

inline Poly rem(Poly a, const Poly& b, uint64_t p) {
    uint64_t binv = invm(b.back(), p);
    while (deg(a) >= deg(b)) {
        uint64_t t = mulm(a.back(), binv, p);
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[off + i] = subm(a[off + i], mulm(t, b[i], p), p);
        trim(a);
    }
    return a;
}

inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, uint64_t p) {
    Poly q;
    if (deg(a) < deg(b)) return {q, a};
    q.assign(a.size() - b.size() + 1, 0);
    uint64_t binv = invm(b.back(), p);
    while (deg(a) >= deg(b)) {
        uint64_t t = mulm(a.back(), binv, p);
        size_t off = a.size() - b.size();
        q[off] = t;
        for (size_t i = 0; i < b.size(); ++i)
            a[off + i] = subm(a[off + i], mulm(t, b[i], p), p);
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline Poly gcd(Poly a, Poly b, uint64_t p) {
    while (!is_zero(b)) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

/// extended gcd: returns (g, u, v) with u*a + v*b = g (g monic)
inline std::tuple<Poly, Poly, Poly> xgcd(Poly a, Poly b, uint64_t p) {
    Poly u0{1}, v0{}, u1{}, v1{1};
    while (!is_zero(b)) {
        auto [q, r] = divmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
        Poly u2 = sub(u0, mul(q, u1, p), p);
        Poly v2 = sub(v0, mul(q, v1, p), p);
        u0 = std::move(u1);
        v0 = std::move(v1);
        u1 = std::move(u2);
        v1 = std::move(v2);
    }
    if (is_zero(a)) return {a, u0, v0};
    uint64_t s = invm(a.back(), p);
    return {scale(a, s, p), scale(u0, s, p), scale(v0, s, p)};
}

inline Poly powmod(Poly base, const Int& e, const Poly& f, uint64_t p) {
    Poly r{1};
    base = rem(std::move(base), f, p);
    for (long i = long(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        r = rem(mul(r, r, p), f, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base, p), f, p);
    }
    return r;
}

inline Poly derivative(const Poly& f, uint64_t p) {
    if (f.size() <= 1) return {};
    Poly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = mulm(f[i], i % p, p);
    trim(r);
    return r;
}

/// distinct-degree factorization of squarefree monic f
inline std::vector<std::pair<Poly, long>> ddf(const Poly& f_in, uint64_t p) {
    std::vector<std::pair<Poly, long>> out;
    Poly f = f_in;
    Poly h{0, 1};  // x
    long d = 0;
    while (deg(f) > 0) {
        ++d;
        if (2 * d > deg(f)) {
            out.emplace_back(f, deg(f));
            break;
        }
        h = powmod(h, Int((unsigned long)p), f, p);
        Poly hx = sub(h, Poly{0, 1}, p);
        Poly g = gcd(f, hx, p);
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = divmod(f, g, p).first;
            h = rem(h, f, p);
        }
    }
    return out;
}

/// equal-degree splitting (Cantor-Zassenhaus) of monic f = product of
/// irreducibles of degree d
inline void edf(const Poly& f, long d, uint64_t p, std::mt19937_64& rng,
                std::vector<Poly>& out) {
    if (deg(f) == d) {
        out.push_back(f);
        return;
    }
    Int exp = (orbit3::pow(Int((unsigned long)p), (unsigned long)d) - 1) / 2;
    std::uniform_int_distribution<uint64_t> dist(0, p - 1);
    while (true) {
        Poly r(size_t(deg(f)), 0);
        for (auto& x : r) x = dist(rng);
        trim(r);
        if (deg(r) < 1) continue;
        Poly s = powmod(r, exp, f, p);
        if (s.empty())
            continue;
        s[0] = subm(s[0], 1, p);
        trim(s);
        Poly g = gcd(f, s, p);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            edf(g, d, p, rng, out);
            edf(divmod(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

/// full factorization of squarefree monic f mod p
inline std::vector<Poly> factor_squarefree(const Poly& f, uint64_t p,
                                           std::mt19937_64& rng) {
    std::vector<Poly> out;
    for (auto& [g, d] : ddf(f, p)) edf(g, d, p, rng, out);
    return out;
}

}  // namespace modp

namespace detail {

/// symmetric representative in (-m/2, m/2]
inline Int symmetric_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

struct HenselState {
    std::vector<IntPoly> factors;  // monic lifts, coefficients in symmetric range
    Int modulus;                   // p^k
};

/// multifactor linear Hensel lift of f = lc * prod(monic g_i) from mod p to
/// mod p^K with p^K >= target
inline HenselState hensel_lift(const IntPoly& f, const std::vector<modp::Poly>& gs,
                               uint64_t p, const Int& target) {
    size_t r = gs.size();
    Int P((unsigned long)p);
    // Bezout data mod p: sigma_i = (prod_{j!=i} g_j)^{-1} mod g_i
    std::vector<modp::Poly> sigma(r);
    for (size_t i = 0; i < r; ++i) {
        modp::Poly h{1};
        for (size_t j = 0; j < r; ++j)
            if (j != i) h = modp::rem(modp::mul(h, gs[j], p), gs[i], p);
        auto [g, u, v] = modp::xgcd(h, gs[i], p);
        if (modp::deg(g) != 0) throw std::logic_error("hensel: factors not coprime");
        sigma[i] = u;
    }
    HenselState st;
    st.modulus = P;
    st.factors.resize(r);
    for (size_t i = 0; i < r; ++i) {
        IntPoly g;
        g.c.resize(gs[i].size());
        for (size_t j = 0; j < gs[i].size(); ++j)
            g.c[j] = symmetric_mod(Int(gs[i][j]), P);
        g.trim();
        st.factors[i] = g;
    }
    const Int& lc = f.lc();
    while (st.modulus < target) {
        Int next = st.modulus * P;
        // error e = (f - lc * prod) / modulus
        IntPoly prod = IntPoly::constant(lc);
        for (const IntPoly& g : st.factors) prod = prod * g;
        IntPoly e = f - prod;
        IntPoly ebar;
        ebar.c.resize(e.c.size());
        for (size_t j = 0; j < e.c.size(); ++j) {
            Int q;
            mpz_divexact(q.get_mpz_t(), e.c[j].get_mpz_t(),
                         st.modulus.get_mpz_t());
            ebar.c[j] = q;
        }
        ebar.trim();
        modp::Poly eb = modp::from_int_poly(ebar, p);
        uint64_t lcinv = modp::invm(modp::from_int_poly(IntPoly::constant(lc), p)[0], p);
        eb = modp::scale(eb, lcinv, p);
        for (size_t i = 0; i < r; ++i) {
            modp::Poly gi = modp::from_int_poly(st.factors[i], p);
            modp::Poly delta = modp::rem(modp::mul(sigma[i], eb, p), gi, p);
            // factors[i] += modulus * delta (symmetric range)
            for (size_t j = 0; j < delta.size(); ++j) {
                if (st.factors[i].c.size() <= j) st.factors[i].c.resize(j + 1, Int(0));
                st.factors[i].c[j] += st.modulus * symmetric_mod(Int(delta[j]), P);
            }
            for (Int& cj : st.factors[i].c) cj = symmetric_mod(cj, next);
            st.factors[i].trim();
        }
        st.modulus = next;
    }
    return st;
}

}  // namespace detail

/// Irreducible factors over Z of a squarefree primitive polynomial with
/// positive leading coefficient; degree >= 1. Factors are primitive, lc > 0.
inline std::vector<IntPoly> factor_squarefree_primitive(const IntPoly& f) {
    std::vector<IntPoly> out;
    if (f.degree() == 1) {
        out.push_back(f);
        return out;
    }
    if (f.degree() <= 0) return out;
    std::mt19937_64 rng(0x5eedf00dULL);
    // choose a prime keeping f squarefree with few modular factors
    uint64_t best_p = 0;
    std::vector<modp::Poly> best_factors;
    Int prime(1000);
    int tried = 0;
    while (tried < 4) {
        mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
        uint64_t p = prime.get_ui();
        if (f.lc() % Int((unsigned long)p) == 0) continue;
        modp::Poly fp = modp::from_int_poly(f, p);
        modp::Poly fpd = modp::derivative(fp, p);
        if (modp::deg(modp::gcd(fp, fpd, p)) != 0) continue;
        ++tried;
        auto fac = modp::factor_squarefree(modp::monic(fp, p), p, rng);
        if (best_p == 0 || fac.size() < best_factors.size()) {
            best_p = p;
            best_factors = std::move(fac);
        }
        if (best_factors.size() == 1) break;
    }
    if (best_p == 0) throw std::logic_error("factor: no usable prime found");
    if (best_factors.size() == 1) {
        out.push_back(f);
        return out;
    }
    // Landau-Mignotte style bound on candidate factor coefficients
    long d = f.degree();
    Int norm2_sq(0);
    for (const Int& c : f.c) norm2_sq += c * c;
    Int bound = (isqrt(norm2_sq) + 1) * (Int(1) << (unsigned long)(d + 1)) *
                orbit3::abs(f.lc());
    detail::HenselState st = detail::hensel_lift(f, best_factors, best_p, 2 * bound + 1);

    // recombination
    std::vector<IntPoly> mods = st.factors;
    IntPoly rest = f;
    std::vector<int> idx;
    auto try_subset = [&](const std::vector<int>& subset) -> bool {
        IntPoly cand = IntPoly::constant(rest.lc());
        for (int i : subset) cand = cand * mods[i];
        for (Int& cj : cand.c) cj = detail::symmetric_mod(cj, st.modulus);
        cand.trim();
        if (cand.is_zero()) return false;
        cand = primitive_part(cand);
        auto q = try_divexact(rest, cand);
        if (!q) return false;
        out.push_back(cand);
        rest = primitive_part(*q);
        std::vector<IntPoly> remaining;
        for (size_t i = 0; i < mods.size(); ++i)
            if (std::find(subset.begin(), subset.end(), int(i)) == subset.end())
                remaining.push_back(mods[i]);
        mods = std::move(remaining);
        return true;
    };
    size_t card = 1;
    while (2 * card <= mods.size()) {
        // iterate cardinality-card index subsets
        std::vector<int> idxs(card);
        std::iota(idxs.begin(), idxs.end(), 0);
        bool found = false;
        while (true) {
            if (try_subset(idxs)) {
                found = true;
                break;
            }
            // next combination
            long i = long(card) - 1;
            while (i >= 0 && idxs[size_t(i)] == int(mods.size() - card + size_t(i))) --i;
            if (i < 0) break;
            ++idxs[size_t(i)];
            for (size_t j = size_t(i) + 1; j < card; ++j) idxs[j] = idxs[j - 1] + 1;
        }
        if (!found) ++card;
    }
    if (rest.degree() >= 1) out.push_back(primitive_part(rest));
    return out;
}

/// Irreducible factorization over Z: f = unit * prod factors[i]^mult[i].
/// Factors primitive with positive leading coefficients.
inline std::vector<std::pair<IntPoly, int>> factor(const IntPoly& f) {
    std::vector<std::pair<IntPoly, int>> out;
    if (f.degree() <= 0) return out;
    for (auto& [sf, mult] : squarefree_decomposition(f)) {
        size_t z = 0;
        IntPoly g = sf;
        while (z < g.c.size() && g.c[z] == 0) ++z;
        if (z > 0) {
            out.emplace_back(IntPoly::x(), mult);
            IntPoly h;
            h.c.assign(g.c.begin() + z, g.c.end());
            g = h;
        }
        if (g.degree() >= 1)
            for (IntPoly& irr : factor_squarefree_primitive(g))
                out.emplace_back(std::move(irr), mult);
    }
    return out;
}

}  // namespace orbit3
