#pragma once

#include <orbit3/int_poly.hpp>

#include <optional>
#include <vector>

namespace orbit3 {

/// Closed axis-aligned rectangle in C with rational corners.
struct Rect {
    Rat xlo, xhi, ylo, yhi;

    Rat width() const { return xhi - xlo; }
    Rat height() const { return yhi - ylo; }
    Rat xmid() const { return (xlo + xhi) / 2; }
    Rat ymid() const { return (ylo + yhi) / 2; }
    /// rational upper bound on the circumscribed-disc radius
    Rat radius_ub() const {
        Rat w = width() / 2, h = height() / 2;
        return sqrt_upper(w * w + h * h, 24);
    }
    bool contains(const Rat& x, const Rat& y) const {
        return xlo <= x && x <= xhi && ylo <= y && y <= yhi;
    }
    DBox to_dbox(unsigned prec) const {
        return {DIv::hull(xlo, xhi, prec), DIv::hull(ylo, yhi, prec)};
    }
};

namespace detail {

/// real and imaginary parts of p(a + t*(b-a)) for t in [0,1], cleared to Z
inline std::pair<IntPoly, IntPoly> edge_polys(const IntPoly& p, const Rat& ax,
                                              const Rat& ay, const Rat& bx,
                                              const Rat& by) {
    Rat dx = bx - ax, dy = by - ay;
    // Horner over Q[t] x Q[t] for the two components
    std::vector<Rat> re{Rat(0)}, im{Rat(0)};
    auto mul_lin = [&](std::vector<Rat>& u, std::vector<Rat>& v) {
        // (u + iv) * (ax + i ay + (dx + i dy) t)
        std::vector<Rat> nu(u.size() + 1, Rat(0)), nv(v.size() + 1, Rat(0));
        for (size_t j = 0; j < u.size(); ++j) {
            nu[j] += u[j] * ax - v[j] * ay;
            nv[j] += u[j] * ay + v[j] * ax;
            nu[j + 1] += u[j] * dx - v[j] * dy;
            nv[j + 1] += u[j] * dy + v[j] * dx;
        }
        u = std::move(nu);
        v = std::move(nv);
    };
    for (long i = p.degree(); i >= 0; --i) {
        mul_lin(re, im);
        re[0] += Rat(p.c[i]);
    }
    // clear denominators jointly (sign-preserving)
    Int den(1);
    for (const Rat& r : re) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
    for (const Rat& r : im) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
    IntPoly U, V;
    U.c.resize(re.size());
    V.c.resize(im.size());
    for (size_t j = 0; j < re.size(); ++j) {
        Rat v = re[j] * Rat(den);
        U.c[j] = v.get_num();
    }
    for (size_t j = 0; j < im.size(); ++j) {
        Rat v = im[j] * Rat(den);
        V.c[j] = v.get_num();
    }
    U.trim();
    V.trim();
    return {U, V};
}

/// certified sign of U at the root of Vs isolated by r (U nonzero there)
inline int sign_at_isolated_root(const IntPoly& U, const IntPoly& Vs,
                                 RealRootIv r) {
    if (r.exact) return eval_sign(U, r.lo);
    unsigned prec = 32;
    for (int step = 0; step < 4096; ++step) {
        DIv iv = eval(U, DIv::hull(r.lo, r.hi, prec), prec);
        int s = iv.sign_or_zero();
        if (s != 0) return s;
        refine_real_root(Vs, r);
        if (r.exact) return eval_sign(U, r.lo);
        if (step % 8 == 7) prec *= 2;
    }
    throw std::logic_error("sign_at_isolated_root: refinement cap hit");
}

inline int octant_of(int su, int sv) {
    if (su > 0 && sv == 0) return 0;
    if (su > 0 && sv > 0) return 1;
    if (su == 0 && sv > 0) return 2;
    if (su < 0 && sv > 0) return 3;
    if (su < 0 && sv == 0) return 4;
    if (su < 0 && sv < 0) return 5;
    if (su == 0 && sv < 0) return 6;
    if (su > 0 && sv < 0) return 7;
    throw std::logic_error("octant of origin");
}

/// Octant sequence of the sign pair (Re p, Im p) along one edge; nullopt when
/// p has a root on the edge. The curve's argument advances by one eighth of a
/// turn per octant step, which handles edges lying on an axis uniformly.
inline std::optional<std::vector<int>> edge_octants(const IntPoly& p,
                                                    const Rat& ax, const Rat& ay,
                                                    const Rat& bx, const Rat& by) {
    auto [U, V] = edge_polys(p, ax, ay, bx, by);
    if (U.is_zero() && V.is_zero()) return std::nullopt;
    IntPoly g = poly_gcd(U, V);
    if (g.degree() >= 1) {
        if (eval_sign(g, Rat(0)) == 0 || count_real_roots(g, Rat(0), Rat(1)) > 0)
            return std::nullopt;
    }
    // events: interior roots of either component, ordered and pairwise disjoint
    struct Ev {
        RealRootIv r;
        bool of_u;
    };
    std::vector<Ev> evs;
    IntPoly Us = U.degree() >= 1 ? squarefree_part(U) : IntPoly{};
    IntPoly Vs = V.degree() >= 1 ? squarefree_part(V) : IntPoly{};
    auto harvest = [&](const IntPoly& Ws, bool of_u) {
        if (Ws.is_zero()) return;
        for (RealRootIv r : isolate_real_roots(Ws)) {
            int guard = 0;
            while (!r.exact && !(r.lo > 0 && r.hi < 1) && !(r.hi <= 0) &&
                   !(r.lo >= 1)) {
                refine_real_root(Ws, r);
                if (++guard > 8192)
                    throw std::logic_error("edge_octants: clip refinement stuck");
            }
            if (r.exact) {
                if (r.lo > 0 && r.lo < 1) evs.push_back({r, of_u});
                continue;
            }
            if (r.hi <= 0 || r.lo >= 1) continue;
            evs.push_back({r, of_u});
        }
    };
    harvest(Us, true);
    harvest(Vs, false);
    auto ev_lo = [](const Ev& e) { return e.r.lo; };
    auto ev_hi = [](const Ev& e) { return e.r.exact ? e.r.lo : e.r.hi; };
    // order events and refine until brackets are pairwise disjoint
    bool dirty = true;
    int guard = 0;
    while (dirty) {
        if (++guard > 8192)
            throw std::logic_error("edge_octants: event separation failed");
        std::sort(evs.begin(), evs.end(), [](const Ev& a, const Ev& b) {
            return a.r.mid() < b.r.mid();
        });
        dirty = false;
        for (size_t i = 0; i + 1 < evs.size(); ++i) {
            if (ev_hi(evs[i]) < ev_lo(evs[i + 1])) continue;
            refine_real_root(evs[i].of_u ? Us : Vs, evs[i].r);
            refine_real_root(evs[i + 1].of_u ? Us : Vs, evs[i + 1].r);
            dirty = true;
        }
    }
    auto sign_pair_at = [&](const Rat& t) {
        return std::pair<int, int>{eval_sign(U, t), eval_sign(V, t)};
    };
    std::vector<int> octs;
    auto push = [&](int su, int sv) {
        if (su == 0 && sv == 0)
            throw std::logic_error("edge_octants: root slipped through");
        int o = octant_of(su, sv);
        if (octs.empty() || octs.back() != o) octs.push_back(o);
    };
    auto [s0u, s0v] = sign_pair_at(Rat(0));
    push(s0u, s0v);
    Rat prev_hi(0);
    for (size_t i = 0; i < evs.size(); ++i) {
        auto [su, sv] = sign_pair_at((prev_hi + ev_lo(evs[i])) / 2);
        push(su, sv);
        if (evs[i].of_u) {
            int s = evs[i].r.exact ? eval_sign(V, evs[i].r.lo)
                                   : sign_at_isolated_root(V, Us, evs[i].r);
            push(0, s);
        } else {
            int s = evs[i].r.exact ? eval_sign(U, evs[i].r.lo)
                                   : sign_at_isolated_root(U, Vs, evs[i].r);
            push(s, 0);
        }
        prev_hi = ev_hi(evs[i]);
    }
    {
        auto [su, sv] = sign_pair_at((prev_hi + 1) / 2);
        push(su, sv);
    }
    auto [s1u, s1v] = sign_pair_at(Rat(1));
    push(s1u, s1v);
    return octs;
}

}  // namespace detail

/// Winding number of p around the rectangle boundary (counterclockwise);
/// equals the number of roots inside for squarefree p. nullopt when a root
/// lies on the boundary; callers nudge and retry.
inline std::optional<int> winding_number(const IntPoly& p, const Rect& r) {
    struct Pt {
        Rat x, y;
    };
    Pt v[4] = {{r.xlo, r.ylo}, {r.xhi, r.ylo}, {r.xhi, r.yhi}, {r.xlo, r.yhi}};
    std::vector<int> octs;
    for (int i = 0; i < 4; ++i) {
        const Pt& a = v[i];
        const Pt& b = v[(i + 1) % 4];
        auto piece = detail::edge_octants(p, a.x, a.y, b.x, b.y);
        if (!piece) return std::nullopt;
        for (int o : *piece)
            if (octs.empty() || octs.back() != o) octs.push_back(o);
    }
    // close the loop
    if (octs.size() > 1 && octs.front() == octs.back()) octs.pop_back();
    octs.push_back(octs.front());
    long total = 0;
    for (size_t i = 0; i + 1 < octs.size(); ++i) {
        int d = (octs[i + 1] - octs[i] + 8) % 8;
        if (d > 4) d -= 8;
        if (d == 4 || d == -4 || d == 3 || d == -3 || d == 2 || d == -2)
            throw std::logic_error("winding_number: discontinuous octant walk");
        total += d;
    }
    if (total % 8 != 0)
        throw std::logic_error("winding_number: non-integral turn count");
    return int(total / 8);
}

namespace detail {

/// split coordinate candidates around the midpoint, denser dyadics first
inline std::vector<Rat> split_candidates(const Rat& lo, const Rat& hi) {
    std::vector<Rat> out;
    Rat w = hi - lo;
    out.push_back(lo + w / 2);
    for (int denom_pow = 3; denom_pow <= 8; ++denom_pow) {
        Int den = Int(1) << denom_pow;
        for (Int num = 1; num < den; num += 2) {
            Rat c = lo + w * Rat(num, den);
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace detail

/// Subdivide rect until every piece has winding 0 (dropped) or 1 (kept).
/// p must be squarefree with no roots on the initial boundary.
inline std::vector<Rect> isolate_in_rect(const IntPoly& p, Rect start,
                                         int expected_count = -1) {
    std::vector<Rect> done, work;
    auto w0 = winding_number(p, start);
    if (!w0) throw std::logic_error("isolate_in_rect: root on initial boundary");
    if (*w0 == 0) return done;
    work.push_back(start);
    std::vector<int> counts{*w0};
    while (!work.empty()) {
        Rect r = work.back();
        work.pop_back();
        int cnt = counts.back();
        counts.pop_back();
        if (cnt == 0) continue;
        if (cnt == 1) {
            done.push_back(r);
            continue;
        }
        bool split_x = r.width() >= r.height();
        const Rat lo = split_x ? r.xlo : r.ylo;
        const Rat hi = split_x ? r.xhi : r.yhi;
        bool ok = false;
        for (const Rat& c : detail::split_candidates(lo, hi)) {
            Rect r1 = r, r2 = r;
            if (split_x) {
                r1.xhi = c;
                r2.xlo = c;
            } else {
                r1.yhi = c;
                r2.ylo = c;
            }
            auto w1 = winding_number(p, r1);
            if (!w1) continue;
            auto w2 = winding_number(p, r2);
            if (!w2) continue;
            if (*w1 + *w2 != cnt)
                throw std::logic_error("isolate_in_rect: count mismatch");
            work.push_back(r1);
            counts.push_back(*w1);
            work.push_back(r2);
            counts.push_back(*w2);
            ok = true;
            break;
        }
        if (!ok) throw std::logic_error("isolate_in_rect: no valid split line");
    }
    if (expected_count >= 0 && long(done.size()) != expected_count)
        throw std::logic_error("isolate_in_rect: unexpected root count");
    return done;
}

/// Isolating rectangles for the roots of squarefree p with Im > 0.
inline std::vector<Rect> isolate_upper_half_roots(const IntPoly& p) {
    if (p.degree() < 2) return {};
    Rat B = cauchy_root_bound(p);
    Rat gap = mignotte_gap(p);
    // non-real roots keep |Im| > gap/2 (conjugate-pair separation)
    Rat eps = gap / 4;
    long n_real = long(isolate_real_roots(p).size());
    long expected = (p.degree() - n_real) / 2;
    if (expected == 0) return {};
    Rect start{-B, B, eps, B};
    // nudge eps downward if the boundary happens to be degenerate
    for (int attempt = 0; attempt < 32; ++attempt) {
        auto w = winding_number(p, start);
        if (w) {
            if (*w != expected)
                throw std::logic_error("upper-half root count mismatch");
            break;
        }
        start.ylo = start.ylo * Rat(15, 16);
        start.xhi = start.xhi + B / Rat(64);
        start.xlo = -start.xhi;
        start.yhi = start.yhi + B / Rat(64);
        if (attempt == 31)
            throw std::logic_error("isolate_upper_half_roots: no valid frame");
    }
    return isolate_in_rect(p, start, int(expected));
}

/// One certified contraction of an isolating rectangle (root strictly inside):
/// interval Newton when it helps, bisection by winding otherwise.
inline void refine_rect_once(const IntPoly& p, const IntPoly& dp, Rect& r,
                             unsigned prec) {
    // interval Newton: root in m - p(m)/p'(R) whenever 0 is outside p'(R)
    DBox X = r.to_dbox(prec);
    DBox D = eval(dp, X, prec);
    DIv n2 = norm2(D, prec);
    if (!n2.contains_zero()) {
        Rat mx = r.xmid(), my = r.ymid();
        DBox M{DIv::from_rat(mx, prec), DIv::from_rat(my, prec)};
        DBox Pm = eval(p, M, prec);
        DBox num = mul(Pm, conj(D), prec);
        // N = m - p(m) * conj(p'(R)) / |p'(R)|^2
        DIv nx = sub(DIv::from_rat(mx, prec), div(num.re, n2, prec), prec);
        DIv ny = sub(DIv::from_rat(my, prec), div(num.im, n2, prec), prec);
        // pad outward so the root stays strictly interior after intersecting
        Rat padx = rat_max(nx.hi_rat() - nx.lo_rat(), r.width() / 1024) / 16;
        Rat pady = rat_max(ny.hi_rat() - ny.lo_rat(), r.height() / 1024) / 16;
        Rat nxlo = rat_max(r.xlo, nx.lo_rat() - padx);
        Rat nxhi = rat_min(r.xhi, nx.hi_rat() + padx);
        Rat nylo = rat_max(r.ylo, ny.lo_rat() - pady);
        Rat nyhi = rat_min(r.yhi, ny.hi_rat() + pady);
        if (nxlo <= nxhi && nylo <= nyhi) {
            Rat old_size = r.width() + r.height();
            Rat new_size = (nxhi - nxlo) + (nyhi - nylo);
            if (new_size * 4 <= old_size * 3) {
                r = Rect{nxlo, nxhi, nylo, nyhi};
                return;
            }
        }
    }
    // fall back to winding bisection along the longer side
    bool split_x = r.width() >= r.height();
    const Rat lo = split_x ? r.xlo : r.ylo;
    const Rat hi = split_x ? r.xhi : r.yhi;
    for (const Rat& c : detail::split_candidates(lo, hi)) {
        Rect r1 = r, r2 = r;
        if (split_x) {
            r1.xhi = c;
            r2.xlo = c;
        } else {
            r1.yhi = c;
            r2.ylo = c;
        }
        auto w1 = winding_number(p, r1);
        if (!w1) continue;
        if (*w1 == 1) {
            r = r1;
            return;
        }
        r = r2;
        return;
    }
    throw std::logic_error("refine_rect_once: no valid split");
}

/// Contract until the circumscribed radius is below the target.
inline void refine_rect_to(const IntPoly& p, Rect& r, const Rat& radius_target) {
    IntPoly dp = derivative(p);
    unsigned prec = 64;
    int steps = 0;
    while (r.radius_ub() >= radius_target) {
        refine_rect_once(p, dp, r, prec);
        if (++steps % 4 == 0) prec *= 2;
        if (prec > (1u << 22) || steps > 100000)
            throw std::logic_error("refine_rect_to: refinement cap hit");
    }
}

/// Newton-accelerated refinement of a real bracket to a width target.
inline void refine_real_to(const IntPoly& p, RealRootIv& r, const Rat& width_target) {
    if (r.exact) return;
    auto rat_iv_eval = [](const IntPoly& q, const Rat& lo, const Rat& hi) {
        // exact interval Horner over Q
        Rat alo(0), ahi(0);
        for (long i = q.degree(); i >= 0; --i) {
            Rat p1 = alo * lo, p2 = alo * hi, p3 = ahi * lo, p4 = ahi * hi;
            Rat nlo = rat_min(rat_min(p1, p2), rat_min(p3, p4));
            Rat nhi = rat_max(rat_max(p1, p2), rat_max(p3, p4));
            alo = nlo + Rat(q.c[i]);
            ahi = nhi + Rat(q.c[i]);
        }
        return std::make_pair(alo, ahi);
    };
    IntPoly dp = derivative(p);
    int steps = 0;
    while (!r.exact && r.width() >= width_target) {
        if (++steps > 100000)
            throw std::logic_error("refine_real_to: refinement cap hit");
        auto [dlo, dhi] = rat_iv_eval(dp, r.lo, r.hi);
        if (sign(dlo) > 0 || sign(dhi) < 0) {
            Rat m = r.mid();
            Rat pm = eval(p, m);
            if (sign(pm) == 0) {
                r.lo = r.hi = m;
                r.exact = true;
                return;
            }
            // N = m - p(m)/p'(iv)
            Rat q1 = m - pm / dlo, q2 = m - pm / dhi;
            Rat nlo = rat_max(r.lo, rat_min(q1, q2));
            Rat nhi = rat_min(r.hi, rat_max(q1, q2));
            if (nlo <= nhi && (nhi - nlo) * 4 <= r.width() * 3) {
                // snap endpoints outward to dyadics so denominators stay small
                Rat w = nhi - nlo;
                if (sign(w) > 0) {
                    long k = 4;
                    while (pow2(-k) > w && k < (1 << 24)) ++k;
                    k += 4;
                    Rat scale = pow2(k);
                    Int fl, cl;
                    mpz_fdiv_q(fl.get_mpz_t(), Rat(nlo * scale).get_num().get_mpz_t(),
                               Rat(nlo * scale).get_den().get_mpz_t());
                    mpz_cdiv_q(cl.get_mpz_t(), Rat(nhi * scale).get_num().get_mpz_t(),
                               Rat(nhi * scale).get_den().get_mpz_t());
                    nlo = rat_max(r.lo, Rat(fl) / scale);
                    nhi = rat_min(r.hi, Rat(cl) / scale);
                }
                // keep endpoints off the root: fall back if a bound is a root
                if (eval_sign(p, nlo) != 0 && eval_sign(p, nhi) != 0 &&
                    eval_sign(p, nlo) != eval_sign(p, nhi)) {
                    r.lo = nlo;
                    r.hi = nhi;
                    continue;
                }
            }
        }
        refine_real_root(p, r);
    }
}

}  // namespace orbit3
