#include "ag/morphism.hpp"

namespace ag {

Morphism make_morphism(RingPtr source, std::vector<Polynomial> components) {
    if (!source || source->nvars() == 0) throw std::invalid_argument("source must have at least one variable");
    if (components.empty()) throw std::invalid_argument("morphism needs at least one component");
    for (auto& f : components)
        if (!f.ring || !f.ring->same(*source)) f = transport(f, source);
    return Morphism{std::move(source), std::move(components)};
}

std::vector<std::string> target_names(const Morphism& phi, const std::string& base) {
    std::vector<std::string> names;
    PolyRing scratch = *phi.source;
    for (size_t i = 0; i < phi.m(); ++i) {
        std::string cand = base + std::to_string(i + 1);
        if (scratch.var_index(cand)) cand = fresh_name(scratch, cand);
        names.push_back(cand);
        scratch.vars.push_back(cand);
    }
    return names;
}

std::vector<ModuleElement> kernel_vector_fields(const Morphism& phi, const Limits& lim) {
    PolyMatrix J = jacobian_matrix(phi.components, phi.source);
    std::vector<ModuleElement> cols;
    cols.reserve(phi.n());
    for (size_t j = 0; j < phi.n(); ++j) {
        ModuleElement col;
        col.reserve(phi.m());
        for (size_t i = 0; i < phi.m(); ++i) col.push_back(J.at(i, j));
        cols.push_back(std::move(col));
    }
    return syzygies(cols, lim);
}

Ideal b_phi_ideal(const Morphism& phi, const Limits& lim) {
    RingPtr cot = cotangent_ring(*phi.source);
    size_t n = phi.n();
    std::vector<Polynomial> gens;
    for (const auto& v : kernel_vector_fields(phi, lim)) {
        Polynomial pairing(cot);
        for (size_t j = 0; j < n; ++j)
            pairing = poly_add(pairing, poly_mul(transport(v[j], cot), poly_var(cot, n + j)));
        if (!pairing.is_zero()) gens.push_back(std::move(pairing));
    }
    return Ideal{cot, std::move(gens)};
}

Ideal fiber_ideal(const Morphism& phi, const std::vector<Rational>& y, const Limits& lim) {
    if (y.size() != phi.m()) throw std::invalid_argument("fiber point arity mismatch");
    Ideal B = b_phi_ideal(phi, lim);
    for (size_t i = 0; i < phi.m(); ++i) {
        Polynomial eq = poly_sub(transport(phi.components[i], B.ring), poly_const(B.ring, y[i]));
        if (!eq.is_zero()) B.gens.push_back(std::move(eq));
    }
    return B;
}

QTReport qt_check_at(const Morphism& phi, const std::vector<Rational>& y, const Limits& lim) {
    Ideal F = fiber_ideal(phi, y, lim);
    QTReport rep;
    rep.fiber = y;
    rep.source_dimension = static_cast<long>(phi.n());
    rep.certificate = groebner_basis(F.gens, MonomialOrder::grevlex(), lim);
    rep.fiber_dimension = krull_dimension(Ideal{F.ring, rep.certificate}, lim);
    rep.verdict = (rep.fiber_dimension <= rep.source_dimension) ? "QT_AT_FIBER" : "NOT_QT_AT_FIBER";
    return rep;
}

long generic_fiber_dimension(const Morphism& phi, const Limits& lim) {
    Ideal B = b_phi_ideal(phi, lim);
    std::vector<std::string> ynames = target_names(phi);
    std::vector<std::string> vars = B.ring->vars;
    std::vector<std::string> incvars = vars;
    for (const auto& nm : ynames) incvars.push_back(nm);
    RingPtr inc = make_ring(incvars, 0);
    std::vector<Polynomial> gens;
    for (const auto& g : B.gens) gens.push_back(transport(g, inc));
    for (size_t i = 0; i < phi.m(); ++i) {
        size_t yi = *inc->var_index(ynames[i]);
        gens.push_back(poly_sub(poly_var(inc, yi), transport(phi.components[i], inc)));
    }
    Ideal incidence{inc, gens};
    long dim_inc = krull_dimension(incidence, lim);
    Ideal image = eliminate(incidence, vars, lim);
    long dim_img = krull_dimension(image, lim);
    return dim_inc - dim_img;
}

Ideal dagger_pullback(const Morphism& psi, const Ideal& W, const Limits& lim) {
    size_t n = psi.n(), m = psi.m();
    if (W.ring->nvars() != 2 * m)
        throw std::invalid_argument("W must live in the target cotangent ring");
    PolyMatrix J = jacobian_matrix(psi.components, psi.source);
    bool some_nonzero = false;
    for (const auto& mi : minors(J, m))
        if (!mi.is_zero()) {
            some_nonzero = true;
            break;
        }
    if (!some_nonzero) throw NotSubmersion("all maximal Jacobian minors vanish identically");

    RingPtr cot = cotangent_ring(*psi.source);
    std::vector<std::string> eta;
    {
        PolyRing scratch = *cot;
        for (size_t i = 0; i < m; ++i) {
            std::string cand = fresh_name(scratch, "eta" + std::to_string(i + 1));
            eta.push_back(cand);
            scratch.vars.push_back(cand);
        }
    }
    std::vector<std::string> bigvars = cot->vars;
    for (const auto& nm : eta) bigvars.push_back(nm);
    RingPtr big = make_ring(bigvars, 0);

    std::vector<Polynomial> gens;
    // W(psi(x), eta)
    std::vector<Polynomial> images;
    images.reserve(2 * m);
    for (size_t i = 0; i < m; ++i) images.push_back(transport(psi.components[i], big));
    for (size_t i = 0; i < m; ++i) images.push_back(poly_var(big, 2 * n + i));
    for (const auto& w : W.gens) gens.push_back(substitute(w, images));
    // xi_j = sum_i eta_i * d psi_i / d x_j
    for (size_t j = 0; j < n; ++j) {
        Polynomial rel = poly_var(big, n + j);
        for (size_t i = 0; i < m; ++i)
            rel = poly_sub(rel, poly_mul(poly_var(big, 2 * n + i), transport(J.at(i, j), big)));
        gens.push_back(std::move(rel));
    }
    Ideal out = eliminate(Ideal{big, std::move(gens)}, eta, lim);
    Ideal res{cot, {}};
    for (const auto& g : out.gens) res.gens.push_back(transport(g, cot));
    return res;
}

Ideal conormal_ideal(const Ideal& S, long c, const Limits& lim) {
    (void)lim;
    if (c < 0) throw SizeOutOfRange("codimension must be nonnegative");
    size_t n = S.ring->nvars();
    RingPtr cot = cotangent_ring(*S.ring);
    size_t r = S.gens.size();
    if (static_cast<size_t>(c) > r) throw SizeOutOfRange("codimension exceeds generator count");
    PolyMatrix J = jacobian_matrix(S.gens, S.ring);
    PolyMatrix stacked;
    stacked.rows = r + 1;
    stacked.cols = n;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < n; ++j) stacked.entries.push_back(transport(J.at(i, j), cot));
    for (size_t j = 0; j < n; ++j) stacked.entries.push_back(poly_var(cot, n + j));
    std::vector<Polynomial> gens;
    for (const auto& g : S.gens) gens.push_back(transport(g, cot));
    for (auto& mi : minors(stacked, static_cast<size_t>(c) + 1))
        if (!mi.is_zero()) gens.push_back(std::move(mi));
    return make_ideal(cot, std::move(gens));
}

bool inclusion_check(const Ideal& A, const Ideal& B, const Limits& lim) {
    for (const auto& g : B.gens)
        if (!radical_membership(transport(g, A.ring), A, lim)) return false;
    return true;
}

}  // namespace ag
