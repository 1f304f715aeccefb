#include "ag/fq.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ag {

namespace {

struct FpPoly {
    // distinct exponent vectors, coefficients in 1..q-1
    std::vector<std::pair<std::vector<int>, long>> t;

    bool is_zero() const { return t.empty(); }
    bool nonzero_const() const {
        if (t.size() != 1) return false;
        for (int e : t[0].first)
            if (e != 0) return false;
        return true;
    }
};

long coeff_mod(const Rational& c, long q) {
    Rational r = normalize_coeff(c, q);
    return r.get_num().get_si();
}

FpPoly to_fp(const Polynomial& f, long q) {
    std::map<std::vector<int>, long> acc;
    for (const auto& t : f.terms) {
        long c = coeff_mod(t.coeff, q);
        if (c == 0) continue;
        long& slot = acc[t.mono];
        slot = (slot + c) % q;
    }
    FpPoly out;
    for (auto& [m, c] : acc)
        if (c != 0) out.t.push_back({m, c});
    return out;
}

long pow_mod(long b, int e, long q) {
    long r = 1 % q;
    b %= q;
    while (e > 0) {
        if (e & 1) r = (r * b) % q;
        b = (b * b) % q;
        e >>= 1;
    }
    return r;
}

FpPoly specialize(const FpPoly& f, size_t var, long v, long q) {
    std::map<std::vector<int>, long> acc;
    for (const auto& [m, c] : f.t) {
        long cc = (c * pow_mod(v, m[var], q)) % q;
        if (cc == 0) continue;
        std::vector<int> mm = m;
        mm[var] = 0;
        long& slot = acc[mm];
        slot = (slot + cc) % q;
    }
    FpPoly out;
    for (auto& [m, c] : acc)
        if (c != 0) out.t.push_back({m, c});
    return out;
}

unsigned long long ipow(long q, size_t k) {
    unsigned long long r = 1;
    for (size_t i = 0; i < k; ++i) r *= static_cast<unsigned long long>(q);
    return r;
}

unsigned long long count_rec(const std::vector<FpPoly>& polys, size_t depth, size_t N, long q) {
    if (polys.empty()) return ipow(q, N - depth);
    unsigned long long total = 0;
    for (long v = 0; v < q; ++v) {
        std::vector<FpPoly> next;
        next.reserve(polys.size());
        bool dead = false;
        for (const auto& f : polys) {
            FpPoly g = specialize(f, depth, v, q);
            if (g.is_zero()) continue;
            if (g.nonzero_const()) {
                dead = true;
                break;
            }
            next.push_back(std::move(g));
        }
        if (dead) continue;
        total += count_rec(next, depth + 1, N, q);
    }
    return total;
}

// polys reduced mod q, zero gens dropped; returns SIZE_MAX-style sentinel via bool
struct Prepared {
    std::vector<FpPoly> polys;
    bool empty_variety = false;
};

Prepared prepare(const Ideal& I, long q) {
    Prepared P;
    for (const auto& g : I.gens) {
        FpPoly f = to_fp(g, q);
        if (f.is_zero()) continue;
        if (f.nonzero_const()) {
            P.empty_variety = true;
            return P;
        }
        P.polys.push_back(std::move(f));
    }
    return P;
}

void check_budget(size_t N, long q, unsigned long long budget) {
    long double total = 1;
    for (size_t i = 0; i < N; ++i) total *= static_cast<long double>(q);
    if (total > static_cast<long double>(budget))
        throw BudgetExceeded("enumeration of q^N exceeds the configured budget");
}

}  // namespace

PointCount count_points_serial(const Ideal& I, long q, unsigned long long budget) {
    if (!is_prime(q)) throw InvalidPrime("field size must be prime");
    size_t N = I.ring->nvars();
    check_budget(N, q, budget);
    Prepared P = prepare(I, q);
    PointCount out{q, N, 0};
    if (P.empty_variety) return out;
    out.count = count_rec(P.polys, 0, N, q);
    return out;
}

PointCount count_points(const Ideal& I, long q, unsigned long long budget) {
    if (!is_prime(q)) throw InvalidPrime("field size must be prime");
    size_t N = I.ring->nvars();
    check_budget(N, q, budget);
    Prepared P = prepare(I, q);
    PointCount out{q, N, 0};
    if (P.empty_variety) return out;
    if (N == 0) {
        out.count = P.polys.empty() ? 1 : 0;
        return out;
    }
    unsigned long long total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
    for (long v = 0; v < q; ++v) {
        std::vector<FpPoly> next;
        bool dead = false;
        for (const auto& f : P.polys) {
            FpPoly g = specialize(f, 0, v, q);
            if (g.is_zero()) continue;
            if (g.nonzero_const()) {
                dead = true;
                break;
            }
            next.push_back(std::move(g));
        }
        if (!dead) total += count_rec(next, 1, N, q);
    }
    out.count = total;
    return out;
}

DimEstimate estimate_dimension(const Ideal& I, const std::vector<long>& primes,
                               unsigned long long budget) {
    size_t N = I.ring->nvars();
    std::vector<long> usable;
    for (long q : primes) {
        long double total = 1;
        for (size_t i = 0; i < N; ++i) total *= static_cast<long double>(q);
        if (total <= static_cast<long double>(budget)) usable.push_back(q);
    }
    if (usable.size() < 2)
        throw BudgetExceeded("dimension estimate needs at least two primes within budget");

    DimEstimate est;
    for (long q : usable) est.counts.push_back(count_points(I, q, budget));

    bool all_zero = true, any_zero = false;
    for (const auto& pc : est.counts) {
        if (pc.count == 0)
            any_zero = true;
        else
            all_zero = false;
    }
    if (all_zero) {
        est.estimate = -1;
        est.consistent = true;
        return est;
    }

    std::vector<double> xs, ys;
    for (const auto& pc : est.counts) {
        if (pc.count == 0) continue;
        xs.push_back(std::log(static_cast<double>(pc.q)));
        ys.push_back(std::log(static_cast<double>(pc.count)));
    }
    double slope;
    if (xs.size() == 1) {
        slope = ys[0] / xs[0];
    } else {
        double n = static_cast<double>(xs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    est.estimate = std::lround(slope);
    est.consistent = !any_zero;
    for (size_t i = 0; i + 1 < xs.size() && est.consistent; ++i)
        for (size_t j = i + 1; j < xs.size(); ++j) {
            double pair_slope = (ys[j] - ys[i]) / (xs[j] - xs[i]);
            if (std::fabs(pair_slope - slope) > 0.35) {
                est.consistent = false;
                break;
            }
        }
    return est;
}

namespace {

// true iff some point of the subtree keeps some excluded generator nonzero;
// fills point[depth..] on success
bool witness_rec(const std::vector<FpPoly>& closed, const std::vector<FpPoly>& excluded,
                 size_t depth, size_t N, long q, std::vector<long>& point) {
    if (closed.empty()) {
        // whole subtree satisfies the closed conditions; search excluded
        for (const auto& g : excluded)
            if (g.nonzero_const()) {
                for (size_t i = depth; i < N; ++i) point[i] = 0;
                return true;
            }
        if (depth == N) return false;
        for (long v = 0; v < q; ++v) {
            std::vector<FpPoly> nexc;
            bool hit = false;
            for (const auto& g : excluded) {
                FpPoly h = specialize(g, depth, v, q);
                if (h.is_zero()) continue;
                nexc.push_back(std::move(h));
                hit = true;
            }
            if (!hit) continue;
            point[depth] = v;
            if (witness_rec(closed, nexc, depth + 1, N, q, point)) return true;
        }
        return false;
    }
    if (depth == N) return false;
    for (long v = 0; v < q; ++v) {
        std::vector<FpPoly> nc, nexc;
        bool dead = false;
        for (const auto& f : closed) {
            FpPoly g = specialize(f, depth, v, q);
            if (g.is_zero()) continue;
            if (g.nonzero_const()) {
                dead = true;
                break;
            }
            nc.push_back(std::move(g));
        }
        if (dead) continue;
        for (const auto& g : excluded) {
            FpPoly h = specialize(g, depth, v, q);
            if (!h.is_zero()) nexc.push_back(std::move(h));
        }
        point[depth] = v;
        if (witness_rec(nc, nexc, depth + 1, N, q, point)) return true;
    }
    return false;
}

}  // namespace

SampleResult sample_nonempty(const Ideal& closed, const Ideal& excluded,
                             const std::vector<long>& primes, unsigned long long budget) {
    size_t N = closed.ring->nvars();
    bool any_usable = false;
    SampleResult res;
    for (long q : primes) {
        long double total = 1;
        for (size_t i = 0; i < N; ++i) total *= static_cast<long double>(q);
        if (total > static_cast<long double>(budget)) continue;
        any_usable = true;
        Prepared C = prepare(closed, q);
        if (C.empty_variety) continue;
        std::vector<FpPoly> exc;
        for (const auto& g : excluded.gens) {
            FpPoly h = to_fp(g, q);
            if (!h.is_zero()) exc.push_back(std::move(h));
        }
        std::vector<long> point(N, 0);
        if (witness_rec(C.polys, exc, 0, N, q, point)) {
            res.found = true;
            res.q = q;
            res.point = point;
            return res;
        }
    }
    if (!any_usable) throw BudgetExceeded("no listed prime fits the budget");
    return res;
}

}  // namespace ag
