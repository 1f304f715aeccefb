#include "ag/padic.hpp"

#include <algorithm>
#include <set>

#include "ag/poly.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ag {

namespace {

constexpr unsigned long long kMaxEnumeration = 1ULL << 26;

void check_window(const QuotientWindow& w) {
    if (!is_prime(w.p)) throw InvalidPrime("window prime must be prime, got " + std::to_string(w.p));
    if (w.k < 1) throw ScaleOutOfRange("window level must be at least 1");
    if (w.d < 1) throw std::invalid_argument("window dimension must be at least 1");
    if ((long)w.a.size() != w.d) throw std::invalid_argument("window scale vector has wrong length");
    for (long ai : w.a)
        if (ai < 0 || ai > w.k) throw ScaleOutOfRange("coordinate scale outside [0, k]");
}

long reduce_mod(long x, long pk) {
    long r = x % pk;
    return r < 0 ? r + pk : r;
}

long rational_mod(const Rational& v, long pk) {
    if (v.get_den() != 1)
        throw std::invalid_argument("map does not have integer values on integer points");
    return (long)mpz_fdiv_ui(v.get_num().get_mpz_t(), (unsigned long)pk);
}

void check_integer_map(const Morphism& phi) {
    for (const auto& g : phi.components)
        for (const auto& t : g.terms)
            if (t.coeff.get_den() != 1)
                throw std::invalid_argument("pushforward needs a map with integer coefficients");
}

std::vector<long> image_point(const Morphism& phi, const std::vector<long>& x, long pk) {
    std::vector<Rational> pt(x.size());
    for (size_t i = 0; i < x.size(); ++i) pt[i] = Rational(x[i]);
    std::vector<long> y(phi.m());
    for (size_t j = 0; j < phi.m(); ++j)
        y[j] = rational_mod(evaluate(phi.components[j], pt), pk);
    return y;
}

void drop_zeros(LevelMeasure& mu) {
    for (auto it = mu.values.begin(); it != mu.values.end();)
        it = it->second == 0 ? mu.values.erase(it) : std::next(it);
}

void merge_into(LevelMeasure& out, const std::map<std::vector<long>, Rational>& part) {
    for (const auto& [key, mass] : part) out.values[key] += mass;
}

std::vector<std::pair<std::vector<long>, Rational>> items_of(const LevelMeasure& mu) {
    return {mu.values.begin(), mu.values.end()};
}

}  // namespace

QuotientWindow make_window(long p, long k, long d, std::vector<long> a) {
    QuotientWindow w{p, k, d, std::move(a)};
    if (w.a.empty()) w.a.assign(d > 0 ? d : 0, 0);
    check_window(w);
    return w;
}

long pow_long(long base, long exp) {
    long r = 1;
    for (long i = 0; i < exp; ++i)
        if (__builtin_mul_overflow(r, base, &r))
            throw std::overflow_error("power does not fit in a machine word");
    return r;
}

Rational LevelMeasure::total_mass() const {
    Rational s = 0;
    for (const auto& [key, mass] : values) s += mass;
    return s;
}

Rational LevelMeasure::at(const std::vector<long>& coset) const {
    if ((long)coset.size() != win.d) throw DimensionMismatch("coset tuple has wrong length");
    long pk = pow_long(win.p, win.k);
    std::vector<long> key(coset.size());
    for (size_t i = 0; i < coset.size(); ++i) key[i] = reduce_mod(coset[i], pk);
    auto it = values.find(key);
    return it == values.end() ? Rational(0) : it->second;
}

LevelMeasure make_measure(const QuotientWindow& win) {
    check_window(win);
    return LevelMeasure{win, {}};
}

void add_mass(LevelMeasure& mu, const std::vector<long>& coset, const Rational& mass) {
    if ((long)coset.size() != mu.win.d) throw DimensionMismatch("coset tuple has wrong length");
    long pk = pow_long(mu.win.p, mu.win.k);
    std::vector<long> key(coset.size());
    for (size_t i = 0; i < coset.size(); ++i) key[i] = reduce_mod(coset[i], pk);
    Rational& slot = mu.values[key];
    slot += mass;
    if (slot == 0) mu.values.erase(key);
}

LevelMeasure haar_ball(long p, long k, long d, const std::vector<long>& center,
                       long m, const Rational& mass) {
    if (m < 0 || m > k) throw ScaleOutOfRange("ball scale must lie in [0, k]");
    LevelMeasure mu = make_measure(make_window(p, k, d, std::vector<long>(d, m)));
    if ((long)center.size() != d) throw DimensionMismatch("ball center has wrong length");
    if (mass == 0) return mu;

    long pk = pow_long(p, k);
    long step = pow_long(p, m);
    long per_coord = pow_long(p, k - m);
    unsigned long long cosets = 1;
    for (long i = 0; i < d; ++i) {
        cosets *= (unsigned long long)per_coord;
        if (cosets > kMaxEnumeration) throw ScaleOutOfRange("ball has too many level-k cosets");
    }
    Rational each = mass / Rational((long)cosets);

    std::vector<long> key(d);
    std::vector<long> idx(d, 0);
    while (true) {
        for (long i = 0; i < d; ++i) key[i] = reduce_mod(center[i] + step * idx[i], pk);
        mu.values[key] = each;
        long i = d - 1;
        while (i >= 0 && ++idx[i] == per_coord) idx[i--] = 0;
        if (i < 0) break;
    }
    return mu;
}

LevelMeasure pushforward_serial(const LevelMeasure& mu, const Morphism& phi) {
    check_integer_map(phi);
    if (mu.win.d != (long)phi.n())
        throw DimensionMismatch("measure lives in dimension " + std::to_string(mu.win.d) +
                                " but the map expects " + std::to_string(phi.n()));
    long pk = pow_long(mu.win.p, mu.win.k);
    LevelMeasure out = make_measure(make_window(mu.win.p, mu.win.k, (long)phi.m()));
    for (const auto& [key, mass] : mu.values) out.values[image_point(phi, key, pk)] += mass;
    drop_zeros(out);
    return out;
}

LevelMeasure pushforward(const LevelMeasure& mu, const Morphism& phi) {
    check_integer_map(phi);
    if (mu.win.d != (long)phi.n())
        throw DimensionMismatch("measure lives in dimension " + std::to_string(mu.win.d) +
                                " but the map expects " + std::to_string(phi.n()));
    long pk = pow_long(mu.win.p, mu.win.k);
    LevelMeasure out = make_measure(make_window(mu.win.p, mu.win.k, (long)phi.m()));
    auto items = items_of(mu);

#pragma omp parallel
    {
        std::map<std::vector<long>, Rational> local;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 64) nowait
#endif
        for (long i = 0; i < (long)items.size(); ++i)
            local[image_point(phi, items[i].first, pk)] += items[i].second;
#pragma omp critical
        merge_into(out, local);
    }
    drop_zeros(out);
    return out;
}

namespace {

void check_convolvable(const LevelMeasure& mu, const LevelMeasure& nu) {
    if (!mu.win.same_group(nu.win))
        throw WindowMismatch("convolution needs measures on the same (p, k, d)");
    for (long ai : mu.win.a)
        if (ai != 0) throw WindowMismatch("convolution needs a full window on the left factor");
    for (long ai : nu.win.a)
        if (ai != 0) throw WindowMismatch("convolution needs a full window on the right factor");
}

std::vector<long> key_sum(const std::vector<long>& x, const std::vector<long>& y, long pk) {
    std::vector<long> z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % pk;
    return z;
}

}  // namespace

LevelMeasure convolve_serial(const LevelMeasure& mu, const LevelMeasure& nu) {
    check_convolvable(mu, nu);
    long pk = pow_long(mu.win.p, mu.win.k);
    LevelMeasure out = make_measure(make_window(mu.win.p, mu.win.k, mu.win.d));
    for (const auto& [x, mx] : mu.values)
        for (const auto& [y, my] : nu.values) out.values[key_sum(x, y, pk)] += mx * my;
    drop_zeros(out);
    return out;
}

LevelMeasure convolve(const LevelMeasure& mu, const LevelMeasure& nu) {
    check_convolvable(mu, nu);
    long pk = pow_long(mu.win.p, mu.win.k);
    LevelMeasure out = make_measure(make_window(mu.win.p, mu.win.k, mu.win.d));
    auto items = items_of(mu);

#pragma omp parallel
    {
        std::map<std::vector<long>, Rational> local;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16) nowait
#endif
        for (long i = 0; i < (long)items.size(); ++i)
            for (const auto& [y, my] : nu.values)
                local[key_sum(items[i].first, y, pk)] += items[i].second * my;
#pragma omp critical
        merge_into(out, local);
    }
    drop_zeros(out);
    return out;
}

LevelMeasure restrict_measure(const LevelMeasure& mu, long N) {
    if (N < 0 || N > mu.win.k) throw ScaleOutOfRange("restriction scale must lie in [0, k]");
    long pN = pow_long(mu.win.p, N);
    std::vector<long> a = mu.win.a;
    for (long& ai : a) ai = std::max(ai, N);
    LevelMeasure out = make_measure(make_window(mu.win.p, mu.win.k, mu.win.d, a));
    for (const auto& [key, mass] : mu.values) {
        bool inside = true;
        for (long x : key) inside = inside && (x % pN == 0);
        if (inside) out.values[key] = mass;
    }
    return out;
}

LevelMeasure coarsen(const LevelMeasure& mu, long k2) {
    if (k2 < 1 || k2 > mu.win.k) throw ScaleOutOfRange("coarsening level must lie in [1, k]");
    long pk2 = pow_long(mu.win.p, k2);
    std::vector<long> a = mu.win.a;
    for (long& ai : a) ai = std::min(ai, k2);
    LevelMeasure out = make_measure(make_window(mu.win.p, k2, mu.win.d, a));
    for (const auto& [key, mass] : mu.values) {
        std::vector<long> key2(key.size());
        for (size_t i = 0; i < key.size(); ++i) key2[i] = key[i] % pk2;
        out.values[key2] += mass;
    }
    drop_zeros(out);
    return out;
}

size_t FourierTable::index(const std::vector<long>& u) const {
    if ((long)u.size() != win.d) throw DimensionMismatch("dual point has wrong length");
    long pk = pow_long(win.p, win.k);
    size_t idx = 0;
    for (long ui : u) {
        if (ui < 0 || ui >= pk) throw ScaleOutOfRange("dual coordinate outside [0, p^k)");
        idx = idx * (size_t)pk + (size_t)ui;
    }
    return idx;
}

const CyclotomicNumber& FourierTable::at(const std::vector<long>& u) const {
    return values[index(u)];
}

namespace {

size_t dual_grid_size(const QuotientWindow& w) {
    unsigned long long n = 1;
    long pk = pow_long(w.p, w.k);
    for (long i = 0; i < w.d; ++i) {
        n *= (unsigned long long)pk;
        if (n > kMaxEnumeration) throw ScaleOutOfRange("dual grid too large to enumerate");
    }
    return (size_t)n;
}

CyclotomicNumber fourier_at_point(const LevelMeasure& mu, const std::vector<long>& u, long pk) {
    std::vector<Rational> by_exp(pk);
    for (const auto& [x, mass] : mu.values) {
        long e = 0;
        for (size_t i = 0; i < x.size(); ++i) e = (e + u[i] % pk * (x[i] % pk)) % pk;
        by_exp[e] += mass;
    }
    return cyclo_from_exponents(mu.win.p, mu.win.k, by_exp);
}

std::vector<long> unflatten(size_t idx, long pk, long d) {
    std::vector<long> u(d);
    for (long i = d - 1; i >= 0; --i) {
        u[i] = (long)(idx % (size_t)pk);
        idx /= (size_t)pk;
    }
    return u;
}

}  // namespace

FourierTable fourier_serial(const LevelMeasure& mu) {
    long pk = pow_long(mu.win.p, mu.win.k);
    FourierTable t;
    t.win = make_window(mu.win.p, mu.win.k, mu.win.d);
    t.values.resize(dual_grid_size(t.win));
    for (size_t idx = 0; idx < t.values.size(); ++idx)
        t.values[idx] = fourier_at_point(mu, unflatten(idx, pk, mu.win.d), pk);
    return t;
}

FourierTable fourier(const LevelMeasure& mu) {
    long pk = pow_long(mu.win.p, mu.win.k);
    FourierTable t;
    t.win = make_window(mu.win.p, mu.win.k, mu.win.d);
    t.values.resize(dual_grid_size(t.win));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (long idx = 0; idx < (long)t.values.size(); ++idx)
        t.values[idx] = fourier_at_point(mu, unflatten((size_t)idx, pk, mu.win.d), pk);
    return t;
}

namespace {

void check_common_window(const std::vector<LevelMeasure>& measures) {
    for (size_t i = 1; i < measures.size(); ++i)
        if (!(measures[i].win == measures[0].win))
            throw WindowMismatch("family members live on different windows");
}

}  // namespace

long germ_rank(const std::vector<LevelMeasure>& measures, long N) {
    if (measures.empty()) return 0;
    check_common_window(measures);

    std::set<std::vector<long>> support;
    std::vector<LevelMeasure> rows;
    rows.reserve(measures.size());
    for (const auto& mu : measures) {
        rows.push_back(restrict_measure(mu, N));
        for (const auto& [key, mass] : rows.back().values) support.insert(key);
    }
    std::vector<std::vector<long>> cols(support.begin(), support.end());

    std::vector<std::vector<Rational>> mat(rows.size(), std::vector<Rational>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) {
            auto it = rows[i].values.find(cols[j]);
            if (it != rows[i].values.end()) mat[i][j] = it->second;
        }

    long rank = 0;
    for (size_t j = 0; j < cols.size() && rank < (long)rows.size(); ++j) {
        size_t pivot = rank;
        while (pivot < mat.size() && mat[pivot][j] == 0) ++pivot;
        if (pivot == mat.size()) continue;
        std::swap(mat[rank], mat[pivot]);
        for (size_t i = rank + 1; i < mat.size(); ++i) {
            if (mat[i][j] == 0) continue;
            Rational f = mat[i][j] / mat[rank][j];
            for (size_t l = j; l < cols.size(); ++l) mat[i][l] -= f * mat[rank][l];
        }
        ++rank;
    }
    return rank;
}

long support_germs(const std::vector<LevelMeasure>& measures, long N) {
    if (measures.empty()) return 0;
    check_common_window(measures);
    std::set<std::vector<std::vector<long>>> germs;
    for (const auto& mu : measures) {
        LevelMeasure r = restrict_measure(mu, N);
        std::vector<std::vector<long>> supp;
        supp.reserve(r.values.size());
        for (const auto& [key, mass] : r.values) supp.push_back(key);
        germs.insert(std::move(supp));
    }
    return (long)germs.size();
}

LevelMeasure mu_n(long p, long k, long n) {
    RingPtr r = make_ring({"x", "y"});
    Morphism phi = make_morphism(r, {poly_var(r, 0), poly_mul(poly_var(r, 0), poly_var(r, 1))});
    Rational mass(1, pow_long(p, 2 * n));
    return pushforward(haar_ball(p, k, 2, {0, 0}, n, mass), phi);
}

}  // namespace ag
