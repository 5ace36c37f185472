#pragma once

#include <orbit3/dyadic.hpp>
#include <orbit3/rational.hpp>

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace orbit3 {

/// Dense univariate polynomial over Z; c[i] is the coefficient of x^i.
/// The zero polynomial has an empty coefficient vector.
struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c.emplace_back(v);
        trim();
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    /// degree of the zero polynomial is -1
    long degree() const { return long(c.size()) - 1; }
    const Int& lc() const { return c.back(); }
    Int coeff(size_t i) const { return i < c.size() ? c[i] : Int(0); }

    Int height() const {
        Int h(0);
        for (const Int& a : c) {
            Int v = orbit3::abs(a);
            if (v > h) h = v;
        }
        return h;
    }

    static IntPoly x() { return IntPoly({0, 1}); }
    static IntPoly constant(Int v) {
        IntPoly p;
        if (v != 0) p.c.push_back(std::move(v));
        return p;
    }
    /// q*x - p, the monic-up-to-content polynomial with root p/q
    static IntPoly from_root(const Rat& r) {
        return IntPoly(std::vector<Int>{-r.get_num(), r.get_den()});
    }

    bool operator==(const IntPoly& o) const { return c == o.c; }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (long i = degree(); i >= 0; --i) {
            if (c[i] == 0) continue;
            if (!first) os << (sign(c[i]) > 0 ? " + " : " - ");
            else if (sign(c[i]) < 0) os << "-";
            Int a = orbit3::abs(c[i]);
            if (a != 1 || i == 0) os << a.get_str();
            if (i > 0) os << "x";
            if (i > 1) os << "^" << i;
            first = false;
        }
        return os.str();
    }
};

inline IntPoly operator-(const IntPoly& p) {
    IntPoly r = p;
    for (Int& a : r.c) a = -a;
    return r;
}

inline IntPoly operator+(const IntPoly& p, const IntPoly& q) {
    IntPoly r;
    r.c.resize(std::max(p.c.size(), q.c.size()), Int(0));
    for (size_t i = 0; i < p.c.size(); ++i) r.c[i] = p.c[i];
    for (size_t i = 0; i < q.c.size(); ++i) r.c[i] += q.c[i];
    r.trim();
    return r;
}

inline IntPoly operator-(const IntPoly& p, const IntPoly& q) { return p + (-q); }

inline IntPoly operator*(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    IntPoly r;
    r.c.assign(p.c.size() + q.c.size() - 1, Int(0));
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i] == 0) continue;
        for (size_t j = 0; j < q.c.size(); ++j) r.c[i + j] += p.c[i] * q.c[j];
    }
    r.trim();
    return r;
}

inline IntPoly operator*(const IntPoly& p, const Int& k) {
    if (k == 0) return {};
    IntPoly r = p;
    for (Int& a : r.c) a *= k;
    return r;
}

inline IntPoly mul_xk(const IntPoly& p, size_t k) {
    if (p.is_zero()) return {};
    IntPoly r;
    r.c.assign(p.c.size() + k, Int(0));
    for (size_t i = 0; i < p.c.size(); ++i) r.c[i + k] = p.c[i];
    return r;
}

inline IntPoly derivative(const IntPoly& p) {
    IntPoly r;
    if (p.c.size() <= 1) return r;
    r.c.resize(p.c.size() - 1);
    for (size_t i = 1; i < p.c.size(); ++i) r.c[i - 1] = p.c[i] * Int(long(i));
    r.trim();
    return r;
}

inline Int content(const IntPoly& p) {
    Int g(0);
    for (const Int& a : p.c) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

/// content removed and leading coefficient made positive
inline IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return {};
    Int g = content(p);
    if (sign(p.lc()) < 0) g = -g;
    IntPoly r = p;
    for (Int& a : r.c) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
    return r;
}

inline Int eval(const IntPoly& p, const Int& x) {
    Int acc(0);
    for (long i = p.degree(); i >= 0; --i) acc = acc * x + p.c[i];
    return acc;
}

inline Rat eval(const IntPoly& p, const Rat& x) {
    Rat acc(0);
    for (long i = p.degree(); i >= 0; --i) acc = acc * x + Rat(p.c[i]);
    return acc;
}

/// sign of p(a/b) via the homogenized integer value
inline int eval_sign(const IntPoly& p, const Rat& x) {
    if (p.is_zero()) return 0;
    const Int &a = x.get_num(), &b = x.get_den();
    Int acc(0), bp(1);
    for (long i = p.degree(); i >= 0; --i) {
        acc = acc * a + p.c[i] * bp;
        if (i > 0) bp *= b;
    }
    return sign(acc);
}

inline DIv eval(const IntPoly& p, const DIv& x, unsigned prec) {
    DIv acc(0);
    for (long i = p.degree(); i >= 0; --i) {
        acc = mul(acc, x, prec);
        acc = add(acc, DIv::from_rat(Rat(p.c[i]), prec), prec);
    }
    return acc;
}

inline DBox eval(const IntPoly& p, const DBox& z, unsigned prec) {
    DBox acc{DIv(0), DIv(0)};
    for (long i = p.degree(); i >= 0; --i) {
        acc = mul(acc, z, prec);
        acc.re = add(acc.re, DIv::from_rat(Rat(p.c[i]), prec), prec);
    }
    return acc;
}

/// quotient and remainder over Q, denominators cleared:
/// d^(deg p - deg q + 1) * p = quot * q + rem  with d = lc(q)
inline std::pair<IntPoly, IntPoly> pseudo_divmod(IntPoly p, const IntPoly& q) {
    assert(!q.is_zero());
    long dq = q.degree();
    IntPoly quot;
    long steps = p.degree() - dq + 1;
    if (steps <= 0) return {IntPoly{}, p};
    quot.c.assign(steps, Int(0));
    const Int& d = q.lc();
    for (long k = 0; k < steps; ++k) {
        long dp = p.degree();
        if (dp < dq) {
            // multiply the rest through to keep the pseudo identity uniform
            for (Int& a : p.c) a *= d;
            for (Int& a : quot.c) a *= d;
            continue;
        }
        Int t = p.c[dp];
        for (Int& a : quot.c) a *= d;
        quot.c[dp - dq] += t;
        for (Int& a : p.c) a *= d;
        for (long i = 0; i <= dq; ++i) p.c[dp - dq + i] -= t * q.c[i];
        p.trim();
    }
    quot.trim();
    return {quot, p};
}

inline IntPoly pseudo_rem(const IntPoly& p, const IntPoly& q) {
    return pseudo_divmod(p, q).second;
}

/// exact division over Z; nullopt if q does not divide p
inline std::optional<IntPoly> try_divexact(const IntPoly& p, const IntPoly& q) {
    if (q.is_zero()) return std::nullopt;
    if (p.is_zero()) return IntPoly{};
    if (p.degree() < q.degree()) return std::nullopt;
    IntPoly rem = p, quot;
    quot.c.assign(p.degree() - q.degree() + 1, Int(0));
    for (long dp = rem.degree(); dp >= q.degree();) {
        Int t;
        mpz_tdiv_qr(t.get_mpz_t(), Int().get_mpz_t(), rem.c[dp].get_mpz_t(),
                    q.lc().get_mpz_t());
        if (t * q.lc() != rem.c[dp]) return std::nullopt;
        quot.c[dp - q.degree()] = t;
        for (long i = 0; i <= q.degree(); ++i)
            rem.c[dp - q.degree() + i] -= t * q.c[i];
        rem.trim();
        long nd = rem.degree();
        if (nd == dp) return std::nullopt;
        dp = nd;
    }
    if (!rem.is_zero()) return std::nullopt;
    quot.trim();
    return quot;
}

/// gcd over Z, primitive with positive leading coefficient
inline IntPoly poly_gcd(IntPoly a, IntPoly b) {
    if (a.is_zero()) return b.is_zero() ? b : primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    Int ca = content(a), cb = content(b), cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_rem(a, b);
        a = std::move(b);
        b = r.is_zero() ? IntPoly{} : primitive_part(r);
    }
    return a * cg;
}

/// content-free version of p with signs preserved
inline IntPoly strip_content(const IntPoly& p) {
    if (p.is_zero()) return {};
    Int cont = content(p);
    IntPoly r = p;
    for (Int& x : r.c)
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), cont.get_mpz_t());
    return r;
}

/// resultant over Z via the subresultant PRS
inline Int resultant(IntPoly a, IntPoly b) {
    if (a.is_zero() || b.is_zero()) return 0;
    if (a.degree() == 0) return orbit3::pow(a.c[0], (unsigned long)b.degree());
    if (b.degree() == 0) return orbit3::pow(b.c[0], (unsigned long)a.degree());
    Int sgn(1);
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) sgn = -sgn;
        std::swap(a, b);
    }
    Int ca = content(a), cb = content(b);
    Int res_acc = orbit3::pow(ca, (unsigned long)b.degree()) *
                  orbit3::pow(cb, (unsigned long)a.degree());
    a = strip_content(a);
    b = strip_content(b);
    Int g(1), h(1);
    while (true) {
        long d = a.degree() - b.degree();
        if ((a.degree() & 1) && (b.degree() & 1)) sgn = -sgn;
        IntPoly r = pseudo_rem(a, b);
        if (r.is_zero()) return 0;
        a = std::move(b);
        Int divisor = g * orbit3::pow(h, (unsigned long)d);
        b = r;
        for (Int& x : b.c)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), divisor.get_mpz_t());
        g = a.lc();
        if (d == 1) {
            h = g;
        } else if (d > 1) {
            Int gp = orbit3::pow(g, (unsigned long)d);
            Int hp = orbit3::pow(h, (unsigned long)(d - 1));
            mpz_divexact(h.get_mpz_t(), gp.get_mpz_t(), hp.get_mpz_t());
        }
        if (b.degree() == 0) {
            long d2 = a.degree();
            Int num = orbit3::pow(b.c[0], (unsigned long)d2);
            Int res;
            if (d2 <= 1) {
                res = num;
            } else {
                Int hp = orbit3::pow(h, (unsigned long)(d2 - 1));
                mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), hp.get_mpz_t());
            }
            return sgn * res_acc * res;
        }
    }
}

/// p(x + 1)
inline IntPoly taylor_shift_1(const IntPoly& p) {
    if (p.is_zero()) return {};
    IntPoly r = p;
    long n = r.degree();
    // classical in-place shift: repeated synthetic addition
    for (long i = 0; i < n; ++i)
        for (long j = n - 1; j >= i; --j) r.c[j] += r.c[j + 1];
    return r;
}

/// p(c * x) for rational c, coefficients cleared to Z
inline IntPoly scale_arg(const IntPoly& p, const Rat& c) {
    if (p.is_zero()) return {};
    long n = p.degree();
    IntPoly r = p;
    // p(a/b x): coeff_i * a^i * b^(n-i)
    Int ap(1);
    for (long i = 0; i <= n; ++i) {
        r.c[i] *= ap;
        ap *= c.get_num();
    }
    Int bp(1);
    for (long i = n; i >= 0; --i) {
        r.c[i] *= bp;
        bp *= c.get_den();
    }
    r.trim();
    return primitive_part(r);
}

/// x^deg * p(1/x)
inline IntPoly reverse(const IntPoly& p) {
    IntPoly r = p;
    std::reverse(r.c.begin(), r.c.end());
    r.trim();
    return r;
}

/// p((x + a) * s) style composition used by isolation:
/// returns p evaluated at the affine image lo + (hi-lo)*x, cleared to Z
inline IntPoly compose_affine(const IntPoly& p, const Rat& lo, const Rat& hi) {
    // q(x) = p(lo + (hi - lo) x)
    if (p.is_zero()) return {};
    Rat w = hi - lo;
    // Horner with rational coefficients, then clear denominators
    std::vector<Rat> acc{Rat(0)};
    for (long i = p.degree(); i >= 0; --i) {
        // acc = acc * (lo + w x) + c_i
        std::vector<Rat> next(acc.size() + 1, Rat(0));
        for (size_t j = 0; j < acc.size(); ++j) {
            next[j] += acc[j] * lo;
            next[j + 1] += acc[j] * w;
        }
        next[0] += Rat(p.c[i]);
        while (next.size() > 1 && sign(next.back()) == 0) next.pop_back();
        acc = std::move(next);
    }
    Int den(1);
    for (const Rat& r : acc) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
    IntPoly out;
    out.c.resize(acc.size());
    for (size_t j = 0; j < acc.size(); ++j) {
        Rat v = acc[j] * Rat(den);
        assert(v.get_den() == 1);
        out.c[j] = v.get_num();
    }
    out.trim();
    return out;
}

inline int descartes_variations(const IntPoly& p) {
    int v = 0, last = 0;
    for (const Int& a : p.c) {
        int s = sign(a);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

/// Cauchy bound: every complex root z of p has |z| < bound (power of two).
inline Rat cauchy_root_bound(const IntPoly& p) {
    assert(!p.is_zero());
    Int h = p.height();
    Rat b = 1 + Rat(h) / Rat(orbit3::abs(p.lc()));
    // round up to a power of two
    long e = 1;
    while (pow2(e) < b) ++e;
    return pow2(e);
}

/// Yun's squarefree decomposition of the primitive part:
/// p ~ prod_i out[i].first ^ out[i].second, factors pairwise coprime squarefree
inline std::vector<std::pair<IntPoly, int>> squarefree_decomposition(
    const IntPoly& p) {
    std::vector<std::pair<IntPoly, int>> out;
    IntPoly f = primitive_part(p);
    if (f.degree() <= 0) return out;
    IntPoly fp = derivative(f);
    IntPoly a = poly_gcd(f, fp);
    IntPoly b = *try_divexact(f, a);
    IntPoly c = *try_divexact(fp, a);
    IntPoly d = c - derivative(b);
    int i = 1;
    while (!(b.degree() == 0)) {
        IntPoly g = poly_gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = *try_divexact(b, g);
        c = *try_divexact(d, g);
        d = c - derivative(b);
        ++i;
    }
    return out;
}

/// product of the distinct irreducible factors, primitive, lc > 0
inline IntPoly squarefree_part(const IntPoly& p) {
    IntPoly f = primitive_part(p);
    if (f.degree() <= 0) return f;
    IntPoly g = poly_gcd(f, derivative(f));
    if (g.degree() == 0) return f;
    return primitive_part(*try_divexact(f, g));
}

/// Mignotte root-separation lower bound sqrt(6) / (d^((d+1)/2) * H^(d-1)),
/// returned as a rational under-approximation. Requires deg >= 2.
inline Rat mignotte_gap(const IntPoly& p) {
    long d = p.degree();
    if (d < 2) throw std::invalid_argument("no root pair");
    Int h = p.height();
    // denominator upper bound: d^((d+1)/2) <= d^ceil((d+1)/2) adjusted by sqrt
    Rat denom;
    if ((d + 1) % 2 == 0) {
        denom = Rat(orbit3::pow(Int(d), (unsigned long)((d + 1) / 2)));
    } else {
        // d^(d/2) * sqrt(d): use an upper bound for sqrt(d)
        Rat sq = sqrt_upper(Rat(d), 32);
        denom = Rat(orbit3::pow(Int(d), (unsigned long)(d / 2))) * sq;
    }
    denom *= Rat(orbit3::pow(h, (unsigned long)(d - 1)));
    Rat num = sqrt_lower(Rat(6), 32);
    return num / denom;
}

/// the m-th cyclotomic polynomial
inline IntPoly cyclotomic(unsigned long m) {
    // x^m - 1 divided by all lower cyclotomic factors
    std::vector<Int> cm(m + 1, Int(0));
    cm[0] = -1;
    cm[m] = 1;
    IntPoly num{std::vector<Int>(cm)};
    for (unsigned long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        num = *try_divexact(num, cyclotomic(d));
    }
    return num;
}

/// Sturm chain of p; sign-faithful (content stripped, signs kept)
inline std::vector<IntPoly> sturm_chain(const IntPoly& p) {
    std::vector<IntPoly> chain;
    IntPoly a = strip_content(p);
    if (a.is_zero()) return chain;
    chain.push_back(a);
    IntPoly b = strip_content(derivative(a));
    while (!b.is_zero()) {
        chain.push_back(b);
        const IntPoly& prev = chain[chain.size() - 2];
        IntPoly r = pseudo_rem(prev, b);
        if (r.is_zero()) break;
        // pseudo_rem computed lc(b)^k * (prev mod b); undo a negative factor
        long k = prev.degree() - b.degree() + 1;
        if (k % 2 != 0 && sign(b.lc()) < 0) r = -r;
        b = strip_content(-r);
    }
    return chain;
}

inline int sturm_variations_at(const std::vector<IntPoly>& chain, const Rat& x) {
    int v = 0, last = 0;
    for (const IntPoly& q : chain) {
        int s = eval_sign(q, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

/// number of distinct real roots of p in the half-open interval (a, b]
inline int count_real_roots(const IntPoly& p, const Rat& a, const Rat& b) {
    if (p.is_zero()) throw std::invalid_argument("zero polynomial");
    std::vector<IntPoly> chain = sturm_chain(squarefree_part(p));
    return sturm_variations_at(chain, a) - sturm_variations_at(chain, b);
}

/// One isolated real root: either an exact rational value, or an open
/// interval (lo, hi) on which p changes sign exactly once.
struct RealRootIv {
    Rat lo, hi;
    bool exact{false};

    Rat mid() const { return exact ? lo : (lo + hi) / 2; }
    Rat width() const { return exact ? Rat(0) : hi - lo; }
};

namespace detail {

// roots of p in open (0,1), p squarefree; Descartes/VCA recursion.
// transformed(p) tracks the current subinterval of the original domain.
inline void vca_unit(const IntPoly& p, const Rat& lo, const Rat& hi,
                     std::vector<RealRootIv>& out, int depth) {
    if (depth > 4096) throw std::logic_error("root isolation depth exceeded");
    // variation count of (x+1)^n p(1/(x+1)) bounds the roots in (0,1)
    IntPoly t = taylor_shift_1(reverse(p));
    int v = descartes_variations(t);
    if (v == 0) return;
    if (v == 1) {
        out.push_back({lo, hi, false});
        return;
    }
    Rat mid = (lo + hi) / 2;
    // split: p(x/2) on (0,1) covers left half, p((x+1)/2) the right half
    IntPoly left = compose_affine(p, Rat(0), Rat(1, 2));
    IntPoly right = compose_affine(p, Rat(1, 2), Rat(1));
    if (eval_sign(p, Rat(1, 2)) == 0) out.push_back({mid, mid, true});
    vca_unit(primitive_part(left), lo, mid, out, depth + 1);
    vca_unit(primitive_part(right), mid, hi, out, depth + 1);
}

}  // namespace detail

/// Isolating intervals for all distinct real roots of p (p nonzero), sorted
/// increasing. Open intervals carry a strict sign change of the squarefree
/// part; exact roots are rational.
inline std::vector<RealRootIv> isolate_real_roots(const IntPoly& p_in) {
    if (p_in.is_zero()) throw std::invalid_argument("zero polynomial");
    IntPoly p = squarefree_part(p_in);
    const IntPoly sf_full = p;  // brackets are normalized against this
    std::vector<RealRootIv> out;
    if (p.degree() <= 0) return out;
    // rational root zero
    size_t z = 0;
    while (z < p.c.size() && p.c[z] == 0) ++z;
    if (z > 0) {
        out.push_back({Rat(0), Rat(0), true});
        IntPoly q;
        q.c.assign(p.c.begin() + z, p.c.end());
        p = q;
    }
    if (p.degree() >= 1) {
        Rat b = cauchy_root_bound(p);
        // positive roots: p(b x) on (0,1)
        IntPoly pp = compose_affine(p, Rat(0), b);
        detail::vca_unit(primitive_part(pp), Rat(0), b, out, 0);
        // negative roots: p(-b x) on (0,1) maps to (-b, 0)
        IntPoly pn = compose_affine(p, Rat(0), -b);
        std::vector<RealRootIv> neg;
        detail::vca_unit(primitive_part(pn), Rat(0), b, neg, 0);
        for (RealRootIv& r : neg) {
            Rat nl = -r.hi, nh = -r.lo;
            out.push_back({nl, r.exact ? nl : nh, r.exact});
        }
    }
    // normalize: each open interval becomes a strict sign-change bracket of
    // the full squarefree part with non-root endpoints (VCA endpoints, and a
    // stripped zero root, may otherwise sit on the boundary)
    std::vector<IntPoly> chain;
    for (RealRootIv& r : out) {
        if (r.exact) continue;
        while (eval_sign(sf_full, r.lo) == 0 || eval_sign(sf_full, r.hi) == 0 ||
               eval_sign(sf_full, r.lo) == eval_sign(sf_full, r.hi)) {
            Rat mid = (r.lo + r.hi) / 2;
            if (eval_sign(p, mid) == 0) {
                r.lo = r.hi = mid;
                r.exact = true;
                break;
            }
            if (chain.empty()) chain = sturm_chain(sf_full);
            // roots in (lo, mid]; a root at lo itself is not counted
            int c = sturm_variations_at(chain, r.lo) -
                    sturm_variations_at(chain, mid);
            if (c >= 1)
                r.hi = mid;
            else
                r.lo = mid;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const RealRootIv& a, const RealRootIv& b) { return a.mid() < b.mid(); });
    return out;
}

/// Bisect an isolating interval once (keeps the invariant).
inline void refine_real_root(const IntPoly& p_squarefree, RealRootIv& r) {
    if (r.exact) return;
    Rat mid = (r.lo + r.hi) / 2;
    int sm = eval_sign(p_squarefree, mid);
    if (sm == 0) {
        r.lo = r.hi = mid;
        r.exact = true;
        return;
    }
    if (sm == eval_sign(p_squarefree, r.lo))
        r.lo = mid;
    else
        r.hi = mid;
}

}  // namespace orbit3
