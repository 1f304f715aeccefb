#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ag/arith.hpp"

namespace ag {

struct SyntaxError : std::runtime_error {
    size_t pos;
    SyntaxError(const std::string& m, size_t at) : std::runtime_error(m + " at position " + std::to_string(at)), pos(at) {}
};
struct UnknownVariable : std::runtime_error {
    explicit UnknownVariable(const std::string& m) : std::runtime_error(m) {}
};
struct SizeOutOfRange : std::runtime_error {
    explicit SizeOutOfRange(const std::string& m) : std::runtime_error(m) {}
};
struct BadPrime : std::runtime_error {
    explicit BadPrime(const std::string& m) : std::runtime_error(m) {}
};

// char_p == 0 means Q; otherwise F_p.
struct PolyRing {
    std::vector<std::string> vars;
    long char_p = 0;

    size_t nvars() const { return vars.size(); }
    std::optional<size_t> var_index(const std::string& name) const;
    bool same(const PolyRing& o) const { return vars == o.vars && char_p == o.char_p; }
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<std::string> vars, long char_p = 0);
// Base ring extended by dual variables (prefix + 1..n appended after the base names).
RingPtr cotangent_ring(const PolyRing& base, const std::string& prefix = "xi");

using Monomial = std::vector<int>;

long total_degree(const Monomial& m);

struct MonomialOrder {
    enum Kind { LEX, GREVLEX, BLOCK } kind = GREVLEX;
    // BLOCK: first `block` variables form the eliminated block (grevlex within
    // each block, first block dominates).
    size_t block = 0;

    static MonomialOrder lex() { return {LEX, 0}; }
    static MonomialOrder grevlex() { return {GREVLEX, 0}; }
    static MonomialOrder elim(size_t first_block) { return {BLOCK, first_block}; }

    // -1: a < b, 0: equal, 1: a > b
    int cmp(const Monomial& a, const Monomial& b) const;
};

struct Term {
    Monomial mono;
    Rational coeff;
};

// Terms kept sorted strictly descending in grevlex (canonical storage order).
struct Polynomial {
    RingPtr ring;
    std::vector<Term> terms;

    Polynomial() = default;
    explicit Polynomial(RingPtr r) : ring(std::move(r)) {}

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    Rational constant_value() const;
    long degree() const;
    bool operator==(const Polynomial& o) const;
};

// Canonical coefficient for characteristic p (F_p values land in 0..p-1).
Rational normalize_coeff(const Rational& c, long p);
// Sorts, merges and prunes terms into canonical storage form.
Polynomial poly_from_terms(const RingPtr& r, std::vector<Term> terms);

Polynomial poly_zero(const RingPtr& r);
Polynomial poly_const(const RingPtr& r, const Rational& c);
Polynomial poly_var(const RingPtr& r, size_t idx);
Polynomial poly_term(const RingPtr& r, const Rational& c, const Monomial& m);

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_neg(const Polynomial& a);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, const Rational& c);
Polynomial poly_pow(const Polynomial& a, unsigned e);

Polynomial parse_polynomial(const std::string& text, const RingPtr& ring);
std::string poly_str(const Polynomial& f);

Polynomial partial_derivative(const Polynomial& f, size_t var);
Polynomial partial_derivative(const Polynomial& f, const std::string& var);

Rational evaluate(const Polynomial& f, const std::vector<Rational>& point);
// Substitute images[i] for variable i; all images share a common ring.
Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images);
// Rename f into ring r by matching variable names (missing names need zero exponent).
Polynomial transport(const Polynomial& f, const RingPtr& r);

struct PolyMatrix {
    size_t rows = 0, cols = 0;
    std::vector<Polynomial> entries;  // row-major

    Polynomial& at(size_t i, size_t j) { return entries[i * cols + j]; }
    const Polynomial& at(size_t i, size_t j) const { return entries[i * cols + j]; }
};

PolyMatrix jacobian_matrix(const std::vector<Polynomial>& components, const RingPtr& ring);
std::vector<Polynomial> minors(const PolyMatrix& M, size_t size);
Polynomial poly_det(const PolyMatrix& M);

Polynomial reduce_mod_p(const Polynomial& f, long p);

}  // namespace ag
