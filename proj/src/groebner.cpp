#include "ag/groebner.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_set>

namespace ag {

namespace {

using TV = std::vector<Term>;

// Monomials may carry position markers after the ring variables (exactly one
// per term, exponent 1) to encode free-module elements. Lower position index
// ranks higher; ties fall back to the base order on the ring part.
struct PosOrder {
    MonomialOrder base;
    size_t nring = 0;
    size_t npos = 0;

    size_t pos_of(const Monomial& m) const {
        for (size_t i = nring; i < nring + npos; ++i)
            if (m[i] > 0) return i;
        return SIZE_MAX;
    }

    int cmp(const Monomial& a, const Monomial& b) const {
        if (npos > 0) {
            size_t pa = pos_of(a), pb = pos_of(b);
            if (pa != pb) return pa < pb ? 1 : -1;
        }
        return base.cmp(a, b);
    }
};

struct Ctx {
    PosOrder ord;
    long p;
};

bool mono_divides(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
    return m;
}

Monomial mono_quot(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (size_t i = 0; i < a.size(); ++i) m[i] = a[i] - b[i];
    return m;
}

Rational coeff_div(const Rational& a, const Rational& b, long p) { return normalize_coeff(a / b, p); }

TV sorted_tv(const std::vector<Term>& terms, const Ctx& c) {
    TV t = terms;
    std::sort(t.begin(), t.end(),
              [&](const Term& x, const Term& y) { return c.ord.cmp(x.mono, y.mono) > 0; });
    return t;
}

TV add_tv(const Ctx& c, const TV& a, const TV& b) {
    TV out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int cc = c.ord.cmp(a[i].mono, b[j].mono);
        if (cc > 0) {
            out.push_back(a[i++]);
        } else if (cc < 0) {
            out.push_back(b[j++]);
        } else {
            Rational s = normalize_coeff(a[i].coeff + b[j].coeff, c.p);
            if (s != 0) out.push_back({a[i].mono, s});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return out;
}

TV mul_term_tv(const Ctx& c, const TV& f, const Rational& coef, const Monomial& m) {
    TV out;
    out.reserve(f.size());
    for (const auto& t : f) {
        Monomial mm(t.mono.size());
        for (size_t i = 0; i < mm.size(); ++i) mm[i] = t.mono[i] + m[i];
        out.push_back({std::move(mm), normalize_coeff(t.coeff * coef, c.p)});
    }
    return out;
}

void make_monic(const Ctx& c, TV& f) {
    if (f.empty()) return;
    Rational lc = f[0].coeff;
    if (lc == 1) return;
    for (auto& t : f) t.coeff = coeff_div(t.coeff, lc, c.p);
}

TV reduce_full(const Ctx& c, TV f, const std::vector<TV>& basis) {
    TV rem;
    while (!f.empty()) {
        bool hit = false;
        for (const TV& g : basis) {
            if (!mono_divides(g[0].mono, f[0].mono)) continue;
            Rational q = normalize_coeff(-coeff_div(f[0].coeff, g[0].coeff, c.p), c.p);
            f = add_tv(c, f, mul_term_tv(c, g, q, mono_quot(f[0].mono, g[0].mono)));
            hit = true;
            break;
        }
        if (!hit) {
            rem.push_back(f.front());
            f.erase(f.begin());
        }
    }
    return rem;
}

TV spoly(const Ctx& c, const TV& f, const TV& g) {
    Monomial L = mono_lcm(f[0].mono, g[0].mono);
    TV a = mul_term_tv(c, f, coeff_div(Rational(1), f[0].coeff, c.p), mono_quot(L, f[0].mono));
    TV b = mul_term_tv(c, g, normalize_coeff(-coeff_div(Rational(1), g[0].coeff, c.p), c.p),
                       mono_quot(L, g[0].mono));
    return add_tv(c, a, b);
}

long max_total_degree(const TV& f) {
    long d = 0;
    for (const auto& t : f) d = std::max(d, total_degree(t.mono));
    return d;
}

bool tv_eq(const TV& a, const TV& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].mono != b[i].mono || a[i].coeff != b[i].coeff) return false;
    return true;
}

struct PairRec {
    size_t i, j;
    Monomial lcm;
};

std::vector<TV> buchberger(const Ctx& c, std::vector<TV> input, const Limits& lim) {
    std::vector<TV> B;
    for (auto& f : input) {
        if (f.empty()) continue;
        make_monic(c, f);
        B.push_back(std::move(f));
    }

    auto key = [](size_t i, size_t j) { return (static_cast<uint64_t>(i) << 32) | j; };
    // pairs with a direct zero certificate (reduced, or product criterion)
    std::unordered_set<uint64_t> strong;
    std::vector<PairRec> queue;
    auto push_pairs = [&](size_t j) {
        for (size_t i = 0; i < j; ++i) {
            if (c.ord.npos > 0 && c.ord.pos_of(B[i][0].mono) != c.ord.pos_of(B[j][0].mono)) continue;
            queue.push_back({i, j, mono_lcm(B[i][0].mono, B[j][0].mono)});
        }
    };
    for (size_t j = 1; j < B.size(); ++j) push_pairs(j);

    size_t processed = 0;
    while (!queue.empty()) {
        size_t best = 0;
        for (size_t k = 1; k < queue.size(); ++k) {
            int cc = c.ord.cmp(queue[k].lcm, queue[best].lcm);
            if (cc < 0 || (cc == 0 && (queue[k].i < queue[best].i ||
                                       (queue[k].i == queue[best].i && queue[k].j < queue[best].j))))
                best = k;
        }
        PairRec pr = queue[best];
        queue[best] = queue.back();
        queue.pop_back();
        if (++processed > lim.max_pairs) throw ResourceLimit("pair_limit", "S-pair budget exhausted");

        const Monomial& mi = B[pr.i][0].mono;
        const Monomial& mj = B[pr.j][0].mono;
        bool disjoint = true;
        for (size_t t = 0; t < mi.size(); ++t)
            if (std::min(mi[t], mj[t]) != 0) {
                disjoint = false;
                break;
            }
        if (disjoint) {
            strong.insert(key(pr.i, pr.j));
            continue;
        }

        // chain criterion, witnesses restricted to directly certified pairs
        bool chained = false;
        for (size_t k = 0; k < B.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!mono_divides(B[k][0].mono, pr.lcm)) continue;
            uint64_t a = key(std::min(pr.i, k), std::max(pr.i, k));
            uint64_t b = key(std::min(pr.j, k), std::max(pr.j, k));
            if (strong.count(a) && strong.count(b)) chained = true;
        }
        if (chained) continue;

        TV r = reduce_full(c, spoly(c, B[pr.i], B[pr.j]), B);
        strong.insert(key(pr.i, pr.j));
        if (!r.empty()) {
            if (max_total_degree(r) > lim.max_degree)
                throw ResourceLimit("degree_limit", "S-polynomial degree cap exceeded");
            make_monic(c, r);
            B.push_back(std::move(r));
            if (B.size() > lim.max_basis) throw ResourceLimit("basis_limit", "basis size cap exceeded");
            push_pairs(B.size() - 1);
        }
    }
    return B;
}

std::vector<TV> reduce_basis(const Ctx& c, std::vector<TV> B) {
    std::sort(B.begin(), B.end(),
              [&](const TV& a, const TV& b) { return c.ord.cmp(a[0].mono, b[0].mono) < 0; });
    std::vector<TV> kept;
    for (auto& g : B) {
        bool dominated = false;
        for (const auto& h : kept)
            if (mono_divides(h[0].mono, g[0].mono)) {
                dominated = true;
                break;
            }
        if (!dominated) kept.push_back(std::move(g));
    }
    for (int pass = 0; pass < 64; ++pass) {
        bool changed = false;
        for (size_t i = 0; i < kept.size(); ++i) {
            std::vector<TV> others;
            others.reserve(kept.size() - 1);
            for (size_t j = 0; j < kept.size(); ++j)
                if (j != i) others.push_back(kept[j]);
            TV r = reduce_full(c, kept[i], others);
            make_monic(c, r);
            if (!tv_eq(r, kept[i])) {
                kept[i] = std::move(r);
                changed = true;
            }
        }
        if (!changed) break;
    }
    std::sort(kept.begin(), kept.end(),
              [&](const TV& a, const TV& b) { return c.ord.cmp(a[0].mono, b[0].mono) > 0; });
    return kept;
}

std::vector<TV> reduced_gb(const Ctx& c, std::vector<TV> input, const Limits& lim) {
    return reduce_basis(c, buchberger(c, std::move(input), lim));
}

RingPtr position_ring(const RingPtr& base, size_t npos) {
    std::string pref = "_e";
    while (true) {
        bool clash = false;
        for (size_t j = 0; j < npos && !clash; ++j)
            if (base->var_index(pref + std::to_string(j + 1))) clash = true;
        if (!clash) break;
        pref += "_";
    }
    std::vector<std::string> vars = base->vars;
    for (size_t j = 0; j < npos; ++j) vars.push_back(pref + std::to_string(j + 1));
    return make_ring(std::move(vars), base->char_p);
}

// Element of R^m as a position-marked term list over the extended ring.
TV encode_vec(const ModuleElement& v, size_t n, size_t total_vars, size_t first_pos, const Ctx& c) {
    std::vector<Term> ts;
    for (size_t j = 0; j < v.size(); ++j) {
        for (const auto& t : v[j].terms) {
            Monomial m(total_vars, 0);
            for (size_t i = 0; i < n; ++i) m[i] = t.mono[i];
            m[first_pos + j] = 1;
            ts.push_back({std::move(m), t.coeff});
        }
    }
    return sorted_tv(ts, c);
}

RingPtr common_ring(const std::vector<ModuleElement>& gens) {
    for (const auto& v : gens)
        for (const auto& f : v)
            if (f.ring) return f.ring;
    return nullptr;
}

}  // namespace

Ideal make_ideal(RingPtr ring, std::vector<Polynomial> gens) {
    Ideal I{std::move(ring), {}};
    for (auto& f : gens)
        if (!f.is_zero()) I.gens.push_back(std::move(f));
    return I;
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
    std::vector<Polynomial> gens = a.gens;
    for (const auto& f : b.gens) gens.push_back(transport(f, a.ring));
    return make_ideal(a.ring, std::move(gens));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
    std::vector<Polynomial> gens;
    for (const auto& f : a.gens)
        for (const auto& g : b.gens) gens.push_back(poly_mul(f, transport(g, a.ring)));
    return make_ideal(a.ring, std::move(gens));
}

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                                       const Limits& lim) {
    RingPtr ring;
    for (const auto& f : gens)
        if (f.ring) {
            ring = f.ring;
            break;
        }
    if (!ring) return {};
    Ctx c{PosOrder{order, ring->nvars(), 0}, ring->char_p};
    std::vector<TV> in;
    for (const auto& f : gens)
        if (!f.is_zero()) in.push_back(sorted_tv(f.terms, c));
    auto B = reduced_gb(c, std::move(in), lim);
    std::vector<Polynomial> out;
    out.reserve(B.size());
    for (auto& t : B) out.push_back(poly_from_terms(ring, std::move(t)));
    return out;
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order) {
    Ctx c{PosOrder{order, f.ring->nvars(), 0}, f.ring->char_p};
    std::vector<TV> B;
    for (const auto& g : basis)
        if (!g.is_zero()) B.push_back(sorted_tv(g.terms, c));
    TV r = reduce_full(c, sorted_tv(f.terms, c), B);
    return poly_from_terms(f.ring, std::move(r));
}

bool in_ideal(const Polynomial& f, const Ideal& I, const Limits& lim) {
    if (f.is_zero()) return true;
    auto gb = groebner_basis(I.gens, MonomialOrder::grevlex(), lim);
    return normal_form(f, gb, MonomialOrder::grevlex()).is_zero();
}

bool is_unit_ideal(const Ideal& I, const Limits& lim) {
    auto gb = groebner_basis(I.gens, MonomialOrder::grevlex(), lim);
    for (const auto& f : gb)
        if (f.is_constant() && !f.is_zero()) return true;
    return false;
}

bool ideal_equal(const Ideal& a, const Ideal& b, const Limits& lim) {
    auto ga = groebner_basis(a.gens, MonomialOrder::grevlex(), lim);
    std::vector<Polynomial> moved;
    for (const auto& f : b.gens) moved.push_back(transport(f, a.ring));
    auto gbb = groebner_basis(moved, MonomialOrder::grevlex(), lim);
    if (ga.size() != gbb.size()) return false;
    for (size_t i = 0; i < ga.size(); ++i)
        if (!(ga[i] == gbb[i])) return false;
    return true;
}

Ideal eliminate(const Ideal& I, const std::vector<std::string>& kill, const Limits& lim) {
    for (const auto& k : kill)
        if (!I.ring->var_index(k)) throw UnknownVariable("unknown variable '" + k + "'");
    std::vector<std::string> first, rest;
    for (const auto& v : I.ring->vars) {
        bool killed = std::find(kill.begin(), kill.end(), v) != kill.end();
        (killed ? first : rest).push_back(v);
    }
    size_t k = first.size();
    std::vector<std::string> perm_vars = first;
    perm_vars.insert(perm_vars.end(), rest.begin(), rest.end());
    RingPtr perm = make_ring(perm_vars, I.ring->char_p);
    std::vector<Polynomial> moved;
    moved.reserve(I.gens.size());
    for (const auto& f : I.gens) moved.push_back(transport(f, perm));
    auto gb = groebner_basis(moved, MonomialOrder::elim(k), lim);
    RingPtr small = make_ring(rest, I.ring->char_p);
    Ideal out{small, {}};
    for (const auto& f : gb) {
        bool pure = true;
        for (const auto& t : f.terms)
            for (size_t i = 0; i < k && pure; ++i)
                if (t.mono[i] != 0) pure = false;
        if (pure) out.gens.push_back(transport(f, small));
    }
    return out;
}

std::string fresh_name(const PolyRing& ring, const std::string& base) {
    if (!ring.var_index(base)) return base;
    for (long k = 1;; ++k) {
        std::string cand = base + "_" + std::to_string(k);
        if (!ring.var_index(cand)) return cand;
    }
}

Ideal ideal_intersection(const Ideal& a, const Ideal& b, const Limits& lim) {
    std::string t = fresh_name(*a.ring, "t");
    std::vector<std::string> vars{t};
    vars.insert(vars.end(), a.ring->vars.begin(), a.ring->vars.end());
    RingPtr Rt = make_ring(vars, a.ring->char_p);
    Polynomial tp = poly_var(Rt, 0);
    Polynomial omt = poly_sub(poly_const(Rt, Rational(1)), tp);
    std::vector<Polynomial> gens;
    for (const auto& f : a.gens) gens.push_back(poly_mul(tp, transport(f, Rt)));
    for (const auto& f : b.gens) gens.push_back(poly_mul(omt, transport(f, Rt)));
    Ideal J{Rt, std::move(gens)};
    return eliminate(J, {t}, lim);
}

Ideal saturate(const Ideal& I, const Polynomial& f, const Limits& lim) {
    if (f.is_zero()) return make_ideal(I.ring, {poly_const(I.ring, Rational(1))});
    if (f.is_constant()) return make_ideal(I.ring, groebner_basis(I.gens, MonomialOrder::grevlex(), lim));
    std::string t = fresh_name(*I.ring, "t");
    std::vector<std::string> vars{t};
    vars.insert(vars.end(), I.ring->vars.begin(), I.ring->vars.end());
    RingPtr Rt = make_ring(vars, I.ring->char_p);
    std::vector<Polynomial> gens;
    for (const auto& g : I.gens) gens.push_back(transport(g, Rt));
    Polynomial tf = poly_mul(poly_var(Rt, 0), transport(f, Rt));
    gens.push_back(poly_sub(poly_const(Rt, Rational(1)), tf));
    Ideal J{Rt, std::move(gens)};
    return eliminate(J, {t}, lim);
}

Ideal saturate(const Ideal& I, const Ideal& J, const Limits& lim) {
    std::vector<Polynomial> nz;
    for (const auto& g : J.gens)
        if (!g.is_zero()) nz.push_back(transport(g, I.ring));
    if (nz.empty()) return make_ideal(I.ring, {poly_const(I.ring, Rational(1))});
    Ideal acc = saturate(I, nz[0], lim);
    for (size_t i = 1; i < nz.size(); ++i) acc = ideal_intersection(acc, saturate(I, nz[i], lim), lim);
    return acc;
}

bool radical_membership(const Polynomial& f, const Ideal& I, const Limits& lim) {
    if (f.is_zero()) return true;
    std::string t = fresh_name(*I.ring, "t");
    std::vector<std::string> vars{t};
    vars.insert(vars.end(), I.ring->vars.begin(), I.ring->vars.end());
    RingPtr Rt = make_ring(vars, I.ring->char_p);
    std::vector<Polynomial> gens;
    for (const auto& g : I.gens) gens.push_back(transport(g, Rt));
    gens.push_back(
        poly_sub(poly_const(Rt, Rational(1)), poly_mul(poly_var(Rt, 0), transport(f, Rt))));
    return is_unit_ideal(Ideal{Rt, std::move(gens)}, lim);
}

long krull_dimension(const Ideal& I, const Limits& lim) {
    auto gb = groebner_basis(I.gens, MonomialOrder::grevlex(), lim);
    size_t n = I.ring->nvars();
    for (const auto& f : gb)
        if (f.is_constant() && !f.is_zero()) return -1;
    if (n > 24) throw ResourceLimit("dimension_vars", "too many variables for dimension search");
    std::vector<uint32_t> masks;
    masks.reserve(gb.size());
    for (const auto& f : gb) {
        // canonical storage is grevlex-descending, so terms[0] is the grevlex lead
        uint32_t m = 0;
        for (size_t i = 0; i < n; ++i)
            if (f.terms[0].mono[i] > 0) m |= (1u << i);
        masks.push_back(m);
    }
    long best = 0;
    uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (uint32_t S = 0;; ++S) {
        bool ok = true;
        for (uint32_t m : masks)
            if ((m & ~S) == 0) {
                ok = false;
                break;
            }
        if (ok) best = std::max<long>(best, std::popcount(S));
        if (S == full) break;
    }
    return best;
}

std::vector<ModuleElement> syzygies(const std::vector<ModuleElement>& gens, const Limits& lim) {
    if (gens.empty()) return {};
    RingPtr R = common_ring(gens);
    if (!R) return {};
    size_t s = gens.size();
    size_t m = gens[0].size();
    size_t n = R->nvars();
    size_t total = n + m + s;
    Ctx c{PosOrder{MonomialOrder::grevlex(), n, m + s}, R->char_p};
    std::vector<TV> in;
    in.reserve(s);
    for (size_t i = 0; i < s; ++i) {
        std::vector<Term> ts;
        for (size_t j = 0; j < m; ++j) {
            for (const auto& t : gens[i][j].terms) {
                Monomial mm(total, 0);
                for (size_t v = 0; v < n; ++v) mm[v] = t.mono[v];
                mm[n + j] = 1;
                ts.push_back({std::move(mm), t.coeff});
            }
        }
        Monomial marker(total, 0);
        marker[n + m + i] = 1;
        ts.push_back({std::move(marker), Rational(1)});
        in.push_back(sorted_tv(ts, c));
    }
    auto B = reduced_gb(c, std::move(in), lim);
    std::vector<ModuleElement> out;
    for (const auto& g : B) {
        if (c.ord.pos_of(g[0].mono) < n + m) continue;
        std::vector<std::vector<Term>> comp(s);
        for (const auto& t : g) {
            size_t pp = c.ord.pos_of(t.mono);
            Monomial base(t.mono.begin(), t.mono.begin() + static_cast<long>(n));
            comp[pp - (n + m)].push_back({std::move(base), t.coeff});
        }
        ModuleElement v;
        v.reserve(s);
        for (size_t k2 = 0; k2 < s; ++k2) v.push_back(poly_from_terms(R, std::move(comp[k2])));
        out.push_back(std::move(v));
    }
    return out;
}

bool module_contains(const std::vector<ModuleElement>& gens, const ModuleElement& v,
                     const Limits& lim) {
    bool vzero = true;
    for (const auto& f : v)
        if (!f.is_zero()) vzero = false;
    if (vzero) return true;
    RingPtr R = common_ring({v});
    size_t n = R->nvars();
    size_t m = v.size();
    size_t total = n + m;
    Ctx c{PosOrder{MonomialOrder::grevlex(), n, m}, R->char_p};
    std::vector<TV> in;
    for (const auto& g : gens) {
        TV t = encode_vec(g, n, total, n, c);
        if (!t.empty()) in.push_back(std::move(t));
    }
    if (in.empty()) return false;
    auto B = reduced_gb(c, std::move(in), lim);
    TV r = reduce_full(c, encode_vec(v, n, total, n, c), B);
    return r.empty();
}

bool module_equal(const std::vector<ModuleElement>& a, const std::vector<ModuleElement>& b,
                  const Limits& lim) {
    for (const auto& v : b)
        if (!module_contains(a, v, lim)) return false;
    for (const auto& v : a)
        if (!module_contains(b, v, lim)) return false;
    return true;
}

}  // namespace ag
