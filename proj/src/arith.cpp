#include "ag/arith.hpp"

namespace ag {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

ExtendedValuation val_p(const Rational& r, long p) {
    if (!is_prime(p)) throw InvalidPrime("val_p: " + std::to_string(p) + " is not prime");
    if (r == 0) return ExtendedValuation::infinity();
    long v = 0;
    Integer num = r.get_num(), den = r.get_den();
    Integer q, rem;
    Integer P(p);
    while (true) {
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), P.get_mpz_t());
        if (rem != 0) break;
        num = q;
        ++v;
    }
    while (true) {
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
        if (rem != 0) break;
        den = q;
        --v;
    }
    return ExtendedValuation::of(v);
}

std::string rational_str(const Rational& r) {
    return r.get_str();
}

Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::runtime_error("bad rational: " + s);
    r.canonicalize();
    return r;
}

long CyclotomicNumber::phi(long p, long k) {
    long f = p - 1;
    for (long i = 1; i < k; ++i) f *= p;
    return f;
}

CyclotomicNumber::CyclotomicNumber(long p_, long k_) : p(p_), k(k_) {
    if (!is_prime(p_)) throw InvalidPrime("cyclotomic level requires prime p");
    if (k_ < 1) throw LevelMismatch("cyclotomic level k must be >= 1");
    coeffs.assign(phi(p_, k_), Rational(0));
}

CyclotomicNumber CyclotomicNumber::zeta_pow(long p, long k, long e) {
    long pk = 1;
    for (long i = 0; i < k; ++i) pk *= p;
    e %= pk;
    if (e < 0) e += pk;
    std::vector<Rational> by_exp(pk, Rational(0));
    by_exp[e] = 1;
    return cyclo_from_exponents(p, k, by_exp);
}

bool CyclotomicNumber::is_zero() const {
    for (const auto& c : coeffs)
        if (c != 0) return false;
    return true;
}

bool CyclotomicNumber::operator==(const CyclotomicNumber& o) const {
    return p == o.p && k == o.k && coeffs == o.coeffs;
}

static void check_level(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.p != b.p || a.k != b.k)
        throw LevelMismatch("cyclotomic operands at different (p,k)");
}

CyclotomicNumber cyclo_add(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    check_level(a, b);
    CyclotomicNumber r = a;
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    return r;
}

CyclotomicNumber cyclo_sub(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    check_level(a, b);
    CyclotomicNumber r = a;
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
    return r;
}

// zeta^phi = -sum_{j=0}^{p-2} zeta^{j p^{k-1}}; a single descending pass
// terminates because every target exponent is strictly smaller.
static void reduce_exponents(long p, long k, std::vector<Rational>& v) {
    long f = CyclotomicNumber::phi(p, k);
    long step = f / (p - 1);  // p^{k-1}
    for (long e = (long)v.size() - 1; e >= f; --e) {
        if (v[e] == 0) continue;
        Rational c = v[e];
        v[e] = 0;
        for (long j = 0; j <= p - 2; ++j) v[e - f + j * step] -= c;
    }
    v.resize(f);
}

CyclotomicNumber cyclo_mul(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    check_level(a, b);
    long f = CyclotomicNumber::phi(a.p, a.k);
    std::vector<Rational> prod(2 * f - 1, Rational(0));
    for (long i = 0; i < f; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (long j = 0; j < f; ++j) {
            if (b.coeffs[j] == 0) continue;
            prod[i + j] += a.coeffs[i] * b.coeffs[j];
        }
    }
    reduce_exponents(a.p, a.k, prod);
    CyclotomicNumber r(a.p, a.k);
    r.coeffs = std::move(prod);
    return r;
}

CyclotomicNumber cyclo_scale(const CyclotomicNumber& a, const Rational& c) {
    CyclotomicNumber r = a;
    for (auto& x : r.coeffs) x *= c;
    return r;
}

Rational cyclo_as_rational(const CyclotomicNumber& a) {
    for (size_t i = 1; i < a.coeffs.size(); ++i)
        if (a.coeffs[i] != 0)
            throw NotRational("cyclotomic number has a nonzero zeta^" + std::to_string(i) + " coefficient");
    return a.coeffs[0];
}

CyclotomicNumber cyclo_from_exponents(long p, long k, const std::vector<Rational>& by_exp) {
    long pk = 1;
    for (long i = 0; i < k; ++i) pk *= p;
    if ((long)by_exp.size() != pk)
        throw LevelMismatch("exponent vector must have length p^k");
    std::vector<Rational> v = by_exp;
    reduce_exponents(p, k, v);
    CyclotomicNumber r(p, k);
    r.coeffs = std::move(v);
    return r;
}

}  // namespace ag
