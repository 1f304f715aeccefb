#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ag/arith.hpp"
#include "ag/morphism.hpp"

namespace ag {

struct ScaleOutOfRange : std::runtime_error {
    explicit ScaleOutOfRange(const std::string& m) : std::runtime_error(m) {}
};
struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct WindowMismatch : std::runtime_error {
    explicit WindowMismatch(const std::string& m) : std::runtime_error(m) {}
};

// Finite quotient (Z/p^k)^d with a record, per coordinate, of the coarsest
// ball scale a_i known to contain the support (coordinate i lives in
// p^{a_i}Z_p / p^kZ_p).
struct QuotientWindow {
    long p = 2;
    long k = 1;
    long d = 1;
    std::vector<long> a;  // length d, entries in [0, k]

    bool same_group(const QuotientWindow& o) const {
        return p == o.p && k == o.k && d == o.d;
    }
    bool operator==(const QuotientWindow& o) const {
        return same_group(o) && a == o.a;
    }
};

QuotientWindow make_window(long p, long k, long d, std::vector<long> a = {});

long pow_long(long base, long exp);

// A measure on Z_p^d constant on cosets of p^kZ_p^d: one exact rational mass
// per coset. Keys are coset representatives in [0, p^k)^d; zero masses are
// never stored.
struct LevelMeasure {
    QuotientWindow win;
    std::map<std::vector<long>, Rational> values;

    Rational total_mass() const;
    Rational at(const std::vector<long>& coset) const;
    bool is_zero() const { return values.empty(); }
    bool operator==(const LevelMeasure& o) const {
        return win == o.win && values == o.values;
    }
};

LevelMeasure make_measure(const QuotientWindow& win);
void add_mass(LevelMeasure& mu, const std::vector<long>& coset, const Rational& mass);

// Uniform measure of the given total mass on the ball center + (p^mZ_p)^d,
// seen at level k: mass * p^{-d(k-m)} on each of the p^{d(k-m)} cosets.
LevelMeasure haar_ball(long p, long k, long d, const std::vector<long>& center,
                       long m, const Rational& mass);

// Mass transport along a polynomial map with integer coefficients, at the
// same (p, k). Parallel kernel plus a serial reference.
LevelMeasure pushforward(const LevelMeasure& mu, const Morphism& phi);
LevelMeasure pushforward_serial(const LevelMeasure& mu, const Morphism& phi);

// Group convolution on (Z/p^k)^d; both windows must be full (a_i = 0).
LevelMeasure convolve(const LevelMeasure& mu, const LevelMeasure& nu);
LevelMeasure convolve_serial(const LevelMeasure& mu, const LevelMeasure& nu);

// Zero out every coset outside p^NZ_p^d.
LevelMeasure restrict_measure(const LevelMeasure& mu, long N);

// Reinterpret at a coarser level k2 <= k by summing masses over the
// projection (Z/p^k)^d -> (Z/p^k2)^d.
LevelMeasure coarsen(const LevelMeasure& mu, long k2);

// Fourier transform on the full dual grid. The dual point u in [0, p^k)^d
// stands for the frequency b = u / p^k, and
//   mu_hat(b) = sum_x mu(x) * zeta^{<u, x> mod p^k},   zeta = zeta_{p^k},
// the character being trivial on Z_p and nontrivial on p^{-1}Z_p.
struct FourierTable {
    QuotientWindow win;                    // dual window, all a_i = 0
    std::vector<CyclotomicNumber> values;  // lex order over u, flattened

    size_t index(const std::vector<long>& u) const;
    const CyclotomicNumber& at(const std::vector<long>& u) const;
};

FourierTable fourier(const LevelMeasure& mu);
FourierTable fourier_serial(const LevelMeasure& mu);

// Rank over Q of the matrix whose rows are the measures restricted to
// p^NZ_p^d, one column per coset.
long germ_rank(const std::vector<LevelMeasure>& measures, long N);

// Number of distinct sets support(mu_i) \cap p^NZ_p^d.
long support_germs(const std::vector<LevelMeasure>& measures, long N);

// Pushforward along (x, xy) of Haar mass p^{-2n} on (p^nZ_p)^2, at level k.
LevelMeasure mu_n(long p, long k, long n);

}  // namespace ag
