#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace ag {

using Integer = mpz_class;
using Rational = mpq_class;

struct InvalidPrime : std::runtime_error {
    explicit InvalidPrime(const std::string& m) : std::runtime_error(m) {}
};
struct LevelMismatch : std::runtime_error {
    explicit LevelMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct NotRational : std::runtime_error {
    explicit NotRational(const std::string& m) : std::runtime_error(m) {}
};

bool is_prime(long p);

// p-adic valuation; finite == false encodes +infinity (the value of 0).
struct ExtendedValuation {
    bool finite = true;
    long v = 0;

    static ExtendedValuation infinity() { return {false, 0}; }
    static ExtendedValuation of(long x) { return {true, x}; }

    bool operator==(const ExtendedValuation& o) const {
        return finite == o.finite && (!finite || v == o.v);
    }
    bool operator<(const ExtendedValuation& o) const {
        if (!finite) return false;
        if (!o.finite) return true;
        return v < o.v;
    }
};

ExtendedValuation val_p(const Rational& r, long p);

std::string rational_str(const Rational& r);
Rational parse_rational(const std::string& s);

// Element of Q(zeta_{p^k}) in the power basis {zeta^0 .. zeta^{phi-1}},
// phi = p^{k-1}(p-1).
struct CyclotomicNumber {
    long p = 2;
    long k = 1;
    std::vector<Rational> coeffs;  // length phi(p^k)

    CyclotomicNumber() : coeffs(1) {}
    CyclotomicNumber(long p_, long k_);

    static long phi(long p, long k);
    static CyclotomicNumber zeta_pow(long p, long k, long e);

    bool is_zero() const;
    bool operator==(const CyclotomicNumber& o) const;
};

CyclotomicNumber cyclo_add(const CyclotomicNumber& a, const CyclotomicNumber& b);
CyclotomicNumber cyclo_sub(const CyclotomicNumber& a, const CyclotomicNumber& b);
CyclotomicNumber cyclo_mul(const CyclotomicNumber& a, const CyclotomicNumber& b);
CyclotomicNumber cyclo_scale(const CyclotomicNumber& a, const Rational& c);
Rational cyclo_as_rational(const CyclotomicNumber& a);

// Reduce an exponent-indexed coefficient vector (length p^k) to the power basis.
CyclotomicNumber cyclo_from_exponents(long p, long k, const std::vector<Rational>& by_exp);

}  // namespace ag
