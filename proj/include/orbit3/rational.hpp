#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbit3 {

using Int = mpz_class;
using Rat = mpq_class;

inline int sign(const Int& a) { return mpz_sgn(a.get_mpz_t()); }
inline int sign(const Rat& a) { return mpq_sgn(a.get_mpq_t()); }

inline Int abs(const Int& a) { return ::abs(a); }
inline Rat abs(const Rat& a) { return ::abs(a); }

inline Int pow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rat pow(const Rat& b, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num().get_mpz_t(), b.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den().get_mpz_t(), b.get_den().get_mpz_t(), e);
    return r;
}

/// 2^e as a rational, e may be negative.
inline Rat pow2(long e) {
    Rat r;
    if (e >= 0)
        mpz_mul_2exp(r.get_num().get_mpz_t(), Int(1).get_mpz_t(), e);
    else
        mpz_mul_2exp(r.get_den().get_mpz_t(), Int(1).get_mpz_t(), -e);
    return r;
}

/// Number of bits of |a|; 0 for a == 0.
inline size_t bit_length(const Int& a) {
    return a == 0 ? 0 : mpz_sizeinbase(a.get_mpz_t(), 2);
}

inline size_t bit_length(const Rat& a) {
    return bit_length(a.get_num()) + bit_length(a.get_den());
}

/// floor(sqrt(a)), a >= 0.
inline Int isqrt(const Int& a) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

/// Rational lower/upper bounds on sqrt(x) for x >= 0, within 2^-prec_bits.
inline Rat sqrt_lower(const Rat& x, unsigned prec_bits) {
    if (sign(x) < 0) throw std::invalid_argument("sqrt of negative rational");
    // sqrt(n/d) = sqrt(n*d)/d; scale so the integer sqrt carries enough bits
    Int nd = x.get_num() * x.get_den();
    Int scaled = nd << (2 * prec_bits);
    Rat r(isqrt(scaled), x.get_den() << prec_bits);
    r.canonicalize();
    return r;
}

inline Rat sqrt_upper(const Rat& x, unsigned prec_bits) {
    if (sign(x) < 0) throw std::invalid_argument("sqrt of negative rational");
    Int nd = x.get_num() * x.get_den();
    Int scaled = nd << (2 * prec_bits);
    Rat r(isqrt(scaled) + 1, x.get_den() << prec_bits);
    r.canonicalize();
    return r;
}

/// Parse "p/q" or "p" (exact, decimal-free).
inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

/// Euler's totient, by trial division (used only on small m).
inline unsigned long euler_totient(unsigned long m) {
    unsigned long result = m;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

}  // namespace orbit3
