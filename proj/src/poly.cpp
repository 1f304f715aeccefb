#include "ag/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace ag {

std::optional<size_t> PolyRing::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return i;
    return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> vars, long char_p) {
    if (char_p != 0 && !is_prime(char_p)) throw InvalidPrime("characteristic must be 0 or a prime");
    auto r = std::make_shared<PolyRing>();
    r->vars = std::move(vars);
    r->char_p = char_p;
    return r;
}

RingPtr cotangent_ring(const PolyRing& base, const std::string& prefix) {
    std::vector<std::string> vars = base.vars;
    for (size_t i = 0; i < base.vars.size(); ++i) vars.push_back(prefix + std::to_string(i + 1));
    return make_ring(std::move(vars), base.char_p);
}

long total_degree(const Monomial& m) {
    long d = 0;
    for (int e : m) d += e;
    return d;
}

static int grevlex_cmp(const Monomial& a, const Monomial& b, size_t lo, size_t hi) {
    long da = 0, db = 0;
    for (size_t i = lo; i < hi; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (size_t i = hi; i-- > lo;)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
}

int MonomialOrder::cmp(const Monomial& a, const Monomial& b) const {
    switch (kind) {
        case LEX:
            for (size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
            return 0;
        case GREVLEX:
            return grevlex_cmp(a, b, 0, a.size());
        case BLOCK: {
            int c = grevlex_cmp(a, b, 0, block);
            if (c != 0) return c;
            return grevlex_cmp(a, b, block, a.size());
        }
    }
    return 0;
}

static const MonomialOrder kCanon = MonomialOrder::grevlex();

static long mod_long(const Integer& n, long p) {
    unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), static_cast<unsigned long>(p));
    return static_cast<long>(r);
}

static long inv_mod(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long q = r / nr;
        long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return t < 0 ? t + p : t;
}

static Rational canon_coeff(const Rational& c, long p) {
    if (p == 0) return c;
    long num = mod_long(Integer(c.get_num()), p);
    long den = mod_long(Integer(c.get_den()), p);
    if (den == 0) throw BadPrime("denominator divisible by " + std::to_string(p));
    long v = (num * inv_mod(den, p)) % p;
    return Rational(v);
}

static void normalize(std::vector<Term>& terms, long p) {
    for (auto& t : terms) t.coeff = canon_coeff(t.coeff, p);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return kCanon.cmp(a.mono, b.mono) > 0; });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coeff += t.coeff;
            out.back().coeff = canon_coeff(out.back().coeff, p);
        } else {
            out.push_back(std::move(t));
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.coeff == 0; }),
              out.end());
    terms = std::move(out);
}

Rational normalize_coeff(const Rational& c, long p) { return canon_coeff(c, p); }

Polynomial poly_from_terms(const RingPtr& r, std::vector<Term> terms) {
    Polynomial f(r);
    f.terms = std::move(terms);
    normalize(f.terms, r->char_p);
    return f;
}

bool Polynomial::is_constant() const {
    return terms.empty() || (terms.size() == 1 && total_degree(terms[0].mono) == 0);
}

Rational Polynomial::constant_value() const {
    if (terms.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("constant_value on nonconstant polynomial");
    return terms[0].coeff;
}

long Polynomial::degree() const {
    long d = -1;
    for (const auto& t : terms) d = std::max(d, total_degree(t.mono));
    return d;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (size_t i = 0; i < terms.size(); ++i)
        if (terms[i].mono != o.terms[i].mono || terms[i].coeff != o.terms[i].coeff) return false;
    return true;
}

Polynomial poly_zero(const RingPtr& r) { return Polynomial(r); }

Polynomial poly_const(const RingPtr& r, const Rational& c) {
    Polynomial f(r);
    Rational cc = canon_coeff(c, r->char_p);
    if (cc != 0) f.terms.push_back({Monomial(r->nvars(), 0), cc});
    return f;
}

Polynomial poly_var(const RingPtr& r, size_t idx) {
    Monomial m(r->nvars(), 0);
    m[idx] = 1;
    return poly_term(r, Rational(1), m);
}

Polynomial poly_term(const RingPtr& r, const Rational& c, const Monomial& m) {
    Polynomial f(r);
    Rational cc = canon_coeff(c, r->char_p);
    if (cc != 0) f.terms.push_back({m, cc});
    return f;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    Polynomial out(a.ring ? a.ring : b.ring);
    long p = out.ring->char_p;
    out.terms.reserve(a.terms.size() + b.terms.size());
    size_t i = 0, j = 0;
    while (i < a.terms.size() && j < b.terms.size()) {
        int c = kCanon.cmp(a.terms[i].mono, b.terms[j].mono);
        if (c > 0) {
            out.terms.push_back(a.terms[i++]);
        } else if (c < 0) {
            out.terms.push_back(b.terms[j++]);
        } else {
            Rational s = canon_coeff(a.terms[i].coeff + b.terms[j].coeff, p);
            if (s != 0) out.terms.push_back({a.terms[i].mono, s});
            ++i;
            ++j;
        }
    }
    for (; i < a.terms.size(); ++i) out.terms.push_back(a.terms[i]);
    for (; j < b.terms.size(); ++j) out.terms.push_back(b.terms[j]);
    return out;
}

Polynomial poly_neg(const Polynomial& a) {
    Polynomial out = a;
    long p = out.ring ? out.ring->char_p : 0;
    for (auto& t : out.terms) t.coeff = canon_coeff(-t.coeff, p);
    return out;
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) { return poly_add(a, poly_neg(b)); }

Polynomial poly_scale(const Polynomial& a, const Rational& c) {
    long p = a.ring ? a.ring->char_p : 0;
    Rational cc = canon_coeff(c, p);
    if (cc == 0) return Polynomial(a.ring);
    Polynomial out = a;
    for (auto& t : out.terms) t.coeff = canon_coeff(t.coeff * cc, p);
    return out;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    Polynomial out(a.ring ? a.ring : b.ring);
    if (a.terms.empty() || b.terms.empty()) return out;
    long p = out.ring->char_p;
    auto desc = [](const Monomial& x, const Monomial& y) { return kCanon.cmp(x, y) > 0; };
    std::map<Monomial, Rational, decltype(desc)> acc(desc);
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            Monomial m(ta.mono.size());
            for (size_t k = 0; k < m.size(); ++k) m[k] = ta.mono[k] + tb.mono[k];
            acc[m] += ta.coeff * tb.coeff;
        }
    for (auto& [m, c] : acc) {
        Rational cc = canon_coeff(c, p);
        if (cc != 0) out.terms.push_back({m, cc});
    }
    return out;
}

Polynomial poly_pow(const Polynomial& a, unsigned e) {
    Polynomial out = poly_const(a.ring, Rational(1));
    Polynomial base = a;
    while (e > 0) {
        if (e & 1u) out = poly_mul(out, base);
        e >>= 1u;
        if (e > 0) base = poly_mul(base, base);
    }
    return out;
}

namespace {

class Parser {
  public:
    Parser(const std::string& s, RingPtr ring) : s_(s), ring_(std::move(ring)) {}

    Polynomial run() {
        Polynomial f = expr();
        skip();
        if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return f;
    }

  private:
    const std::string& s_;
    RingPtr ring_;
    size_t pos_ = 0;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat(char c) {
        if (at(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        int sign = 1;
        if (eat('-'))
            sign = -1;
        else
            eat('+');
        Polynomial acc = term();
        if (sign < 0) acc = poly_neg(acc);
        while (true) {
            if (eat('+'))
                acc = poly_add(acc, term());
            else if (eat('-'))
                acc = poly_sub(acc, term());
            else
                break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial f = factor();
        while (eat('*')) f = poly_mul(f, factor());
        return f;
    }

    Polynomial factor() {
        Polynomial b = base();
        if (eat('^')) return poly_pow(b, parse_exponent());
        return b;
    }

    Polynomial base() {
        skip();
        if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial f = expr();
            if (!eat(')')) throw SyntaxError("expected ')'", pos_);
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') return rational_lit();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
        throw SyntaxError("expected '(', number, or variable", pos_);
    }

    Polynomial rational_lit() {
        bool neg = eat('-');
        Integer num = parse_uint_big();
        Integer den = 1;
        if (eat('/')) den = parse_uint_big();
        if (den == 0) throw SyntaxError("zero denominator", pos_);
        Rational q(num, den);
        q.canonicalize();
        if (neg) q = -q;
        return poly_const(ring_, q);
    }

    Integer parse_uint_big() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw SyntaxError("expected digits", pos_);
        return Integer(s_.substr(start, pos_ - start));
    }

    unsigned parse_exponent() {
        skip();
        size_t start = pos_;
        Integer e = parse_uint_big();
        if (e > 100000) throw SyntaxError("exponent too large", start);
        return static_cast<unsigned>(e.get_ui());
    }

    Polynomial variable() {
        size_t start = pos_;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                ++pos_;
            else
                break;
        }
        std::string name = s_.substr(start, pos_ - start);
        auto idx = ring_->var_index(name);
        if (!idx) throw UnknownVariable("unknown variable '" + name + "'");
        return poly_var(ring_, *idx);
    }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const RingPtr& ring) {
    return Parser(text, ring).run();
}

static std::string mono_str(const Monomial& m, const std::vector<std::string>& vars) {
    std::string out;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += vars[i];
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out;
}

std::string poly_str(const Polynomial& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : f.terms) {
        bool neg = t.coeff < 0;
        Rational mag = neg ? Rational(-t.coeff) : t.coeff;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string ms = mono_str(t.mono, f.ring->vars);
        if (ms.empty()) {
            out += rational_str(mag);
        } else {
            if (mag != 1) {
                out += rational_str(mag);
                out += "*";
            }
            out += ms;
        }
    }
    return out;
}

Polynomial partial_derivative(const Polynomial& f, size_t var) {
    Polynomial out(f.ring);
    long p = f.ring->char_p;
    for (const auto& t : f.terms) {
        if (t.mono[var] == 0) continue;
        Rational c = canon_coeff(t.coeff * t.mono[var], p);
        if (c == 0) continue;
        Monomial m = t.mono;
        m[var] -= 1;
        out.terms.push_back({std::move(m), std::move(c)});
    }
    normalize(out.terms, p);
    return out;
}

Polynomial partial_derivative(const Polynomial& f, const std::string& var) {
    auto idx = f.ring->var_index(var);
    if (!idx) throw UnknownVariable("unknown variable '" + var + "'");
    return partial_derivative(f, *idx);
}

static Rational rational_pow(const Rational& b, unsigned e) {
    Rational out(1);
    Rational base = b;
    while (e > 0) {
        if (e & 1u) out *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return out;
}

Rational evaluate(const Polynomial& f, const std::vector<Rational>& point) {
    if (point.size() != f.ring->nvars()) throw std::invalid_argument("point arity mismatch");
    Rational acc(0);
    for (const auto& t : f.terms) {
        Rational v = t.coeff;
        for (size_t i = 0; i < point.size(); ++i)
            if (t.mono[i] > 0) v *= rational_pow(point[i], static_cast<unsigned>(t.mono[i]));
        acc += v;
    }
    if (f.ring->char_p != 0) acc = canon_coeff(acc, f.ring->char_p);
    return acc;
}

Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images) {
    if (images.size() != f.ring->nvars()) throw std::invalid_argument("image arity mismatch");
    RingPtr target = images.empty() ? f.ring : images[0].ring;
    // power cache per variable
    std::vector<std::vector<Polynomial>> pows(images.size());
    for (size_t i = 0; i < images.size(); ++i) pows[i].push_back(poly_const(target, Rational(1)));
    auto power = [&](size_t i, int e) -> const Polynomial& {
        while (static_cast<int>(pows[i].size()) <= e)
            pows[i].push_back(poly_mul(pows[i].back(), images[i]));
        return pows[i][static_cast<size_t>(e)];
    };
    Polynomial acc(target);
    for (const auto& t : f.terms) {
        Polynomial v = poly_const(target, t.coeff);
        for (size_t i = 0; i < images.size(); ++i)
            if (t.mono[i] > 0) v = poly_mul(v, power(i, t.mono[i]));
        acc = poly_add(acc, v);
    }
    return acc;
}

Polynomial transport(const Polynomial& f, const RingPtr& r) {
    std::vector<std::optional<size_t>> where(f.ring->nvars());
    for (size_t i = 0; i < f.ring->nvars(); ++i) where[i] = r->var_index(f.ring->vars[i]);
    Polynomial out(r);
    for (const auto& t : f.terms) {
        Monomial m(r->nvars(), 0);
        for (size_t i = 0; i < t.mono.size(); ++i) {
            if (t.mono[i] == 0) continue;
            if (!where[i]) throw UnknownVariable("variable '" + f.ring->vars[i] + "' not in target ring");
            m[*where[i]] = t.mono[i];
        }
        out.terms.push_back({std::move(m), t.coeff});
    }
    normalize(out.terms, r->char_p);
    return out;
}

PolyMatrix jacobian_matrix(const std::vector<Polynomial>& components, const RingPtr& ring) {
    PolyMatrix M;
    M.rows = components.size();
    M.cols = ring->nvars();
    M.entries.reserve(M.rows * M.cols);
    for (const auto& f : components)
        for (size_t j = 0; j < M.cols; ++j) M.entries.push_back(partial_derivative(f, j));
    return M;
}

static Polynomial det_rec(const PolyMatrix& M, std::vector<size_t>& rows, std::vector<size_t>& cols) {
    if (rows.size() == 1) return M.at(rows[0], cols[0]);
    Polynomial acc(M.entries[0].ring);
    size_t r0 = rows[0];
    std::vector<size_t> subrows(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < cols.size(); ++j) {
        const Polynomial& e = M.at(r0, cols[j]);
        if (e.is_zero()) continue;
        std::vector<size_t> subcols;
        subcols.reserve(cols.size() - 1);
        for (size_t k = 0; k < cols.size(); ++k)
            if (k != j) subcols.push_back(cols[k]);
        Polynomial sub = det_rec(M, subrows, subcols);
        Polynomial contrib = poly_mul(e, sub);
        acc = (j % 2 == 0) ? poly_add(acc, contrib) : poly_sub(acc, contrib);
    }
    return acc;
}

Polynomial poly_det(const PolyMatrix& M) {
    if (M.rows != M.cols || M.rows == 0) throw SizeOutOfRange("determinant needs a nonempty square matrix");
    std::vector<size_t> rows(M.rows), cols(M.cols);
    for (size_t i = 0; i < M.rows; ++i) rows[i] = i;
    for (size_t j = 0; j < M.cols; ++j) cols[j] = j;
    return det_rec(M, rows, cols);
}

static bool next_combination(std::vector<size_t>& c, size_t n) {
    size_t k = c.size();
    for (size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<Polynomial> minors(const PolyMatrix& M, size_t size) {
    RingPtr ring = M.entries.empty() ? nullptr : M.entries[0].ring;
    if (size == 0) return {poly_const(ring, Rational(1))};
    std::vector<Polynomial> out;
    if (size > M.rows || size > M.cols) return out;
    std::vector<size_t> rows(size), cols0(size);
    for (size_t i = 0; i < size; ++i) rows[i] = i;
    do {
        std::vector<size_t> cols = cols0;
        for (size_t i = 0; i < size; ++i) cols[i] = i;
        do {
            std::vector<size_t> rr = rows, cc = cols;
            out.push_back(det_rec(M, rr, cc));
        } while (next_combination(cols, M.cols));
    } while (next_combination(rows, M.rows));
    return out;
}

Polynomial reduce_mod_p(const Polynomial& f, long p) {
    if (!is_prime(p)) throw BadPrime("modulus must be prime");
    RingPtr r = make_ring(f.ring->vars, p);
    Polynomial out(r);
    out.terms = f.terms;
    normalize(out.terms, p);
    return out;
}

}  // namespace ag
