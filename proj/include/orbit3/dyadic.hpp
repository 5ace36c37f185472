#pragma once

#include <orbit3/rational.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace orbit3 {

/// Dyadic number m * 2^e with arbitrary-precision mantissa.
struct DFloat {
    Int m{0};
    long e{0};

    DFloat() = default;
    DFloat(long v) : m(v), e(0) {}
    DFloat(Int v, long exp) : m(std::move(v)), e(exp) {}

    bool is_zero() const { return m == 0; }
    int sgn() const { return sign(m); }

    Rat to_rat() const {
        Rat r(m);
        return r * pow2(e);
    }
};

inline DFloat operator-(const DFloat& a) { return {-a.m, a.e}; }

inline DFloat operator+(const DFloat& a, const DFloat& b) {
    if (a.m == 0) return b;
    if (b.m == 0) return a;
    if (a.e == b.e) return {a.m + b.m, a.e};
    if (a.e > b.e) return {(a.m << (a.e - b.e)) + b.m, b.e};
    return {a.m + (b.m << (b.e - a.e)), a.e};
}

inline DFloat operator-(const DFloat& a, const DFloat& b) { return a + (-b); }

inline DFloat operator*(const DFloat& a, const DFloat& b) {
    return {a.m * b.m, a.e + b.e};
}

inline int cmp(const DFloat& a, const DFloat& b) {
    DFloat d = a - b;
    return d.sgn();
}

inline bool operator<(const DFloat& a, const DFloat& b) { return cmp(a, b) < 0; }
inline bool operator<=(const DFloat& a, const DFloat& b) { return cmp(a, b) <= 0; }
inline bool operator>(const DFloat& a, const DFloat& b) { return cmp(a, b) > 0; }
inline bool operator>=(const DFloat& a, const DFloat& b) { return cmp(a, b) >= 0; }

/// Round toward -inf keeping at most prec mantissa bits.
inline DFloat round_down(const DFloat& a, unsigned prec) {
    size_t bits = bit_length(a.m);
    if (bits <= prec) return a;
    long drop = long(bits - prec);
    Int q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), a.m.get_mpz_t(), drop);
    return {q, a.e + drop};
}

/// Round toward +inf keeping at most prec mantissa bits.
inline DFloat round_up(const DFloat& a, unsigned prec) {
    size_t bits = bit_length(a.m);
    if (bits <= prec) return a;
    long drop = long(bits - prec);
    Int q;
    mpz_cdiv_q_2exp(q.get_mpz_t(), a.m.get_mpz_t(), drop);
    return {q, a.e + drop};
}

inline DFloat dfloat_from_rat_down(const Rat& r, unsigned prec) {
    if (sign(r) == 0) return {};
    // scale numerator so the quotient keeps prec+2 significant bits
    long shift = long(prec) + 2 + long(bit_length(r.get_den())) -
                 long(bit_length(r.get_num()));
    if (shift < 0) shift = 0;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), Int(r.get_num() << shift).get_mpz_t(),
               r.get_den().get_mpz_t());
    return round_down({q, -shift}, prec + 2);
}

inline DFloat dfloat_from_rat_up(const Rat& r, unsigned prec) {
    if (sign(r) == 0) return {};
    long shift = long(prec) + 2 + long(bit_length(r.get_den())) -
                 long(bit_length(r.get_num()));
    if (shift < 0) shift = 0;
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), Int(r.get_num() << shift).get_mpz_t(),
               r.get_den().get_mpz_t());
    return round_up({q, -shift}, prec + 2);
}

/// Closed interval [lo, hi] with dyadic endpoints.
struct DIv {
    DFloat lo, hi;

    DIv() = default;
    DIv(long v) : lo(v), hi(v) {}
    DIv(DFloat l, DFloat h) : lo(std::move(l)), hi(std::move(h)) {}

    static DIv exact(const DFloat& v) { return {v, v}; }
    static DIv from_rat(const Rat& r, unsigned prec) {
        return {dfloat_from_rat_down(r, prec), dfloat_from_rat_up(r, prec)};
    }
    static DIv hull(const Rat& a, const Rat& b, unsigned prec) {
        return {dfloat_from_rat_down(rat_min(a, b), prec),
                dfloat_from_rat_up(rat_max(a, b), prec)};
    }

    bool contains_zero() const { return lo.sgn() <= 0 && hi.sgn() >= 0; }
    /// Certified sign: -1, +1, or 0 when the interval straddles zero.
    int sign_or_zero() const {
        if (lo.sgn() > 0) return 1;
        if (hi.sgn() < 0) return -1;
        return 0;
    }
    DFloat width() const { return hi - lo; }
    Rat lo_rat() const { return lo.to_rat(); }
    Rat hi_rat() const { return hi.to_rat(); }
};

inline DIv round_out(const DIv& a, unsigned prec) {
    return {round_down(a.lo, prec), round_up(a.hi, prec)};
}

inline DIv operator-(const DIv& a) { return {-a.hi, -a.lo}; }

inline DIv add(const DIv& a, const DIv& b, unsigned prec) {
    return round_out({a.lo + b.lo, a.hi + b.hi}, prec);
}

inline DIv sub(const DIv& a, const DIv& b, unsigned prec) {
    return round_out({a.lo - b.hi, a.hi - b.lo}, prec);
}

inline DIv mul(const DIv& a, const DIv& b, unsigned prec) {
    DFloat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    DFloat lo = p1, hi = p1;
    for (const DFloat* p : {&p2, &p3, &p4}) {
        if (*p < lo) lo = *p;
        if (hi < *p) hi = *p;
    }
    return round_out({lo, hi}, prec);
}

/// 1/b for intervals not containing zero.
inline DIv inv(const DIv& b, unsigned prec) {
    if (b.contains_zero()) throw std::logic_error("interval inverse across zero");
    Rat lo = b.lo.to_rat(), hi = b.hi.to_rat();
    return {dfloat_from_rat_down(1 / hi, prec), dfloat_from_rat_up(1 / lo, prec)};
}

inline DIv div(const DIv& a, const DIv& b, unsigned prec) {
    return mul(a, inv(b, prec), prec);
}

inline DIv sqr(const DIv& a, unsigned prec) {
    DIv r = mul(a, a, prec);
    if (r.lo.sgn() < 0) r.lo = DFloat(0);
    return r;
}

/// sqrt over nonnegative intervals (lo clamped to 0).
inline DIv interval_sqrt(const DIv& a, unsigned prec) {
    Rat lo = a.lo.to_rat(), hi = a.hi.to_rat();
    if (sign(lo) < 0) lo = 0;
    if (sign(hi) < 0) hi = 0;
    return {dfloat_from_rat_down(sqrt_lower(lo, prec + 2), prec),
            dfloat_from_rat_up(sqrt_upper(hi, prec + 2), prec)};
}

inline DIv interval_hull(const DIv& a, const DIv& b) {
    return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
}

inline bool subset(const DIv& a, const DIv& b) {
    return b.lo <= a.lo && a.hi <= b.hi;
}

inline bool disjoint(const DIv& a, const DIv& b) {
    return a.hi < b.lo || b.hi < a.lo;
}

inline DIv intersect(const DIv& a, const DIv& b) {
    DIv r{a.lo < b.lo ? b.lo : a.lo, a.hi < b.hi ? a.hi : b.hi};
    if (r.hi < r.lo) throw std::logic_error("empty interval intersection");
    return r;
}

/// Axis-aligned complex box.
struct DBox {
    DIv re, im;

    DBox() = default;
    DBox(DIv r, DIv i) : re(std::move(r)), im(std::move(i)) {}

    bool contains_zero() const {
        return re.contains_zero() && im.contains_zero();
    }
};

inline DBox add(const DBox& a, const DBox& b, unsigned prec) {
    return {add(a.re, b.re, prec), add(a.im, b.im, prec)};
}

inline DBox sub(const DBox& a, const DBox& b, unsigned prec) {
    return {sub(a.re, b.re, prec), sub(a.im, b.im, prec)};
}

inline DBox mul(const DBox& a, const DBox& b, unsigned prec) {
    return {sub(mul(a.re, b.re, prec), mul(a.im, b.im, prec), prec),
            add(mul(a.re, b.im, prec), mul(a.im, b.re, prec), prec)};
}

inline DBox conj(const DBox& a) { return {a.re, -a.im}; }

inline DBox neg(const DBox& a) { return {-a.re, -a.im}; }

inline DIv norm2(const DBox& a, unsigned prec) {
    return add(sqr(a.re, prec), sqr(a.im, prec), prec);
}

inline DBox div(const DBox& a, const DBox& b, unsigned prec) {
    DIv n = norm2(b, prec);
    if (n.contains_zero()) throw std::logic_error("complex box division across zero");
    DBox num = mul(a, conj(b), prec);
    return {div(num.re, n, prec), div(num.im, n, prec)};
}

inline bool subset(const DBox& a, const DBox& b) {
    return subset(a.re, b.re) && subset(a.im, b.im);
}

inline bool disjoint(const DBox& a, const DBox& b) {
    return disjoint(a.re, b.re) || disjoint(a.im, b.im);
}

/// Certified enclosures of cos(x), sin(x) for rational x with |x| <= 4,
/// by alternating Taylor series.
inline DIv cos_interval(const Rat& x, unsigned prec) {
    Rat x2 = x * x;
    Rat term(1), lo(0), hi(0), acc(0);
    // sum (-1)^k x^(2k)/(2k)!; alternating with decreasing terms once 2k > |x|
    int k = 0;
    while (true) {
        acc += (k % 2 == 0) ? term : -term;
        Rat next = term * x2 / Rat((2 * k + 1) * (2 * k + 2));
        ++k;
        if (2 * k > 4 && bit_length(next.get_num()) + prec + 4 <
                             bit_length(next.get_den())) {
            // remainder bounded by next term (alternating, decreasing)
            lo = acc - next;
            hi = acc + next;
            break;
        }
        term = next;
        if (k > 200) throw std::logic_error("cos series failed to converge");
    }
    return DIv::hull(lo, hi, prec);
}

inline DIv sin_interval(const Rat& x, unsigned prec) {
    Rat x2 = x * x;
    Rat term = x, acc(0), lo(0), hi(0);
    int k = 0;
    while (true) {
        acc += (k % 2 == 0) ? term : -term;
        Rat next = term * x2 / Rat((2 * k + 2) * (2 * k + 3));
        ++k;
        if (2 * k + 1 > 4 && bit_length(next.get_num()) + prec + 4 <
                                 bit_length(next.get_den())) {
            Rat an = abs(next);
            lo = acc - an;
            hi = acc + an;
            break;
        }
        term = next;
        if (k > 200) throw std::logic_error("sin series failed to converge");
    }
    return DIv::hull(lo, hi, prec);
}

/// Machine-double interval for fast scanning; directed rounding by nextafter.
struct FIv {
    double lo, hi;

    FIv() : lo(0), hi(0) {}
    FIv(double v) : lo(v), hi(v) {}
    FIv(double l, double h) : lo(l), hi(h) {}

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    int sign_or_zero() const { return lo > 0 ? 1 : (hi < 0 ? -1 : 0); }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
};

inline double next_down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double next_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline FIv operator+(const FIv& a, const FIv& b) {
    return {next_down(a.lo + b.lo), next_up(a.hi + b.hi)};
}
inline FIv operator-(const FIv& a, const FIv& b) {
    return {next_down(a.lo - b.hi), next_up(a.hi - b.lo)};
}
inline FIv operator-(const FIv& a) { return {-a.hi, -a.lo}; }
inline FIv operator*(const FIv& a, const FIv& b) {
    double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {next_down(std::min(std::min(p1, p2), std::min(p3, p4))),
            next_up(std::max(std::max(p1, p2), std::max(p3, p4)))};
}

struct FBox {
    FIv re, im;
};

inline FBox operator+(const FBox& a, const FBox& b) {
    return {a.re + b.re, a.im + b.im};
}
inline FBox operator*(const FBox& a, const FBox& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline FBox conj(const FBox& a) { return {a.re, -a.im}; }

}  // namespace orbit3
