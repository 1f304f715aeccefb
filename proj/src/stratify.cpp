#include "ag/stratify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ag {

namespace {

Ideal canonical(const Ideal& I, const Limits& lim) {
    if (I.gens.empty()) return I;
    return Ideal{I.ring, groebner_basis(I.gens, MonomialOrder::grevlex(), lim)};
}

Ideal zero_ideal(const RingPtr& r) { return make_ideal(r, {}); }

Ideal unit_ideal(const RingPtr& r) { return make_ideal(r, {poly_const(r, Rational(1))}); }

Ideal transport_ideal(const Ideal& I, const RingPtr& r) {
    std::vector<Polynomial> gens;
    gens.reserve(I.gens.size());
    for (const auto& g : I.gens) gens.push_back(transport(g, r));
    return make_ideal(r, std::move(gens));
}

Ideal pullback_ideal(const Morphism& phi, const Ideal& T) {
    if (T.ring->nvars() != phi.m())
        throw std::invalid_argument("pullback: ideal ring does not match the morphism target");
    std::vector<Polynomial> gens;
    gens.reserve(T.gens.size());
    for (const auto& g : T.gens) gens.push_back(substitute(g, phi.components));
    return make_ideal(phi.source, std::move(gens));
}

// V(I) setwise equal to V(J)
bool same_locus(const Ideal& I, const Ideal& J, const Limits& lim) {
    return inclusion_check(I, J, lim) && inclusion_check(J, I, lim);
}

bool piece_empty(const Piece& p, const Limits& lim) {
    if (is_unit_ideal(p.closed, lim)) return true;
    return inclusion_check(p.closed, p.excluded, lim);
}

std::vector<std::pair<std::string, std::string>> poset_pairs(const Poset& P) {
    std::vector<std::pair<std::string, std::string>> out;
    for (size_t i = 0; i < P.elements.size(); ++i)
        for (size_t j = 0; j < P.elements.size(); ++j)
            if (i != j && P.leq[i][j]) out.emplace_back(P.elements[i], P.elements[j]);
    return out;
}

std::map<std::string, std::string> uniquify_labels(const std::vector<std::string>& incoming,
                                                   std::set<std::string>& used,
                                                   const std::string& suffix) {
    std::map<std::string, std::string> ren;
    for (const auto& lab : incoming) {
        std::string cand = lab;
        while (used.count(cand)) cand += suffix;
        used.insert(cand);
        ren[lab] = cand;
    }
    return ren;
}

long points_on_piece(const Piece& p, long q, unsigned long long budget, const Limits& lim) {
    long whole = static_cast<long>(count_points(p.closed, q, budget).count);
    long cut = static_cast<long>(count_points(ideal_sum(p.closed, p.excluded), q, budget).count);
    return whole - cut;
}

}  // namespace

size_t Poset::index(const std::string& label) const {
    for (size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == label) return i;
    throw std::invalid_argument("unknown poset element: " + label);
}

bool Poset::less_eq(const std::string& a, const std::string& b) const {
    return leq[index(a)][index(b)];
}

Poset make_poset(std::vector<std::string> elements,
                 const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::set<std::string> seen;
    for (const auto& e : elements)
        if (!seen.insert(e).second) throw std::invalid_argument("duplicate poset element: " + e);
    Poset P;
    P.elements = std::move(elements);
    size_t n = P.elements.size();
    P.leq.assign(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i) P.leq[i][i] = true;
    for (const auto& [a, b] : pairs) P.leq[P.index(a)][P.index(b)] = true;
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (P.leq[i][k] && P.leq[k][j]) P.leq[i][j] = true;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (P.leq[i][j] && P.leq[j][i])
                throw std::invalid_argument("relation is not antisymmetric: " + P.elements[i] +
                                            " and " + P.elements[j]);
    return P;
}

Poset chain_poset(std::vector<std::string> labels) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (size_t i = 0; i + 1 < labels.size(); ++i) pairs.emplace_back(labels[i + 1], labels[i]);
    return make_poset(std::move(labels), pairs);
}

StratDatum make_strat_datum(RingPtr ring, Poset poset, std::map<std::string, Piece> pieces,
                            Ideal ambient) {
    if (pieces.size() != poset.elements.size())
        throw std::invalid_argument("pieces do not match poset elements");
    for (const auto& lab : poset.elements) {
        auto it = pieces.find(lab);
        if (it == pieces.end()) throw std::invalid_argument("missing piece for " + lab);
        if (!it->second.closed.ring->same(*ring) || !it->second.excluded.ring->same(*ring))
            throw std::invalid_argument("piece " + lab + " lives in the wrong ring");
    }
    if (!ambient.ring->same(*ring)) throw std::invalid_argument("ambient ideal in the wrong ring");
    return StratDatum{std::move(ring), std::move(ambient), std::move(poset), std::move(pieces)};
}

StratDatum make_strat_datum(RingPtr ring, Poset poset, std::map<std::string, Piece> pieces) {
    Ideal amb = zero_ideal(ring);
    return make_strat_datum(std::move(ring), std::move(poset), std::move(pieces), std::move(amb));
}

StratDatum trivial_stratification(const RingPtr& ring, const std::string& label) {
    std::map<std::string, Piece> pieces;
    pieces[label] = Piece{zero_ideal(ring), unit_ideal(ring)};
    return make_strat_datum(ring, make_poset({label}, {}), std::move(pieces));
}

StratifiedMorphism make_stratified_morphism(Morphism phi, StratDatum source, StratDatum target,
                                            std::map<std::string, std::string> alpha) {
    if (!source.ring->same(*phi.source))
        throw std::invalid_argument("source stratification ring does not match the morphism");
    if (target.ring->nvars() != phi.m())
        throw std::invalid_argument("target stratification ring does not match the morphism");
    for (const auto& lab : source.poset.elements) {
        auto it = alpha.find(lab);
        if (it == alpha.end()) throw std::invalid_argument("alpha misses source piece " + lab);
        target.poset.index(it->second);
    }
    for (const auto& p : source.poset.elements)
        for (const auto& q : source.poset.elements)
            if (source.poset.less_eq(p, q) && !target.poset.less_eq(alpha.at(p), alpha.at(q)))
                throw std::invalid_argument("alpha does not respect the order on " + p + " <= " + q);
    return StratifiedMorphism{std::move(phi), std::move(source), std::move(target),
                              std::move(alpha)};
}

ValidationReport validate_stratification(const StratDatum& D, const std::vector<long>& primes,
                                         unsigned long long budget, const Limits& lim) {
    ValidationReport rep;
    const auto& labels = D.poset.elements;

    for (const auto& lab : labels) {
        const Piece& p = D.pieces.at(lab);
        if (!inclusion_check(p.closed, D.ambient, lim))
            rep.covering.issues.push_back("piece " + lab + " leaves the ambient variety");
    }

    for (size_t i = 0; i < labels.size(); ++i) {
        for (size_t j = i + 1; j < labels.size(); ++j) {
            const Piece& a = D.pieces.at(labels[i]);
            const Piece& b = D.pieces.at(labels[j]);
            Ideal meet = ideal_sum(a.closed, b.closed);
            Ideal excl = ideal_product(a.excluded, b.excluded);
            if (!inclusion_check(meet, excl, lim))
                rep.disjoint.issues.push_back("pieces " + labels[i] + " and " + labels[j] +
                                              " overlap");
        }
    }
    rep.disjoint.ok = rep.disjoint.issues.empty();

    bool total = true;
    for (size_t i = 0; i < labels.size() && total; ++i)
        for (size_t j = 0; j < labels.size() && total; ++j)
            if (!D.poset.leq[i][j] && !D.poset.leq[j][i]) total = false;

    bool chain = total && !labels.empty();
    std::vector<std::string> desc = labels;
    if (chain) {
        std::sort(desc.begin(), desc.end(), [&](const std::string& a, const std::string& b) {
            return D.poset.less_eq(b, a) && a != b;
        });
        if (!same_locus(D.pieces.at(desc.front()).closed, D.ambient, lim)) chain = false;
        for (size_t i = 0; chain && i + 1 < desc.size(); ++i)
            if (!same_locus(D.pieces.at(desc[i]).excluded, D.pieces.at(desc[i + 1]).closed, lim))
                chain = false;
        if (chain && !is_unit_ideal(D.pieces.at(desc.back()).excluded, lim)) chain = false;
    }

    if (chain) {
        rep.covering.ok = rep.covering.issues.empty();
        rep.continuity.ok = true;
        return rep;
    }

    rep.covering.advisory = true;
    rep.continuity.advisory = true;

    std::map<std::string, Ideal> closures;
    for (const auto& lab : labels) {
        const Piece& p = D.pieces.at(lab);
        closures.emplace(lab, saturate(p.closed, p.excluded, lim));
    }

    bool sampled = false;
    for (long q : primes) {
        try {
            long total_pts = static_cast<long>(count_points(D.ambient, q, budget).count);
            long sum = 0;
            for (const auto& lab : labels) sum += points_on_piece(D.pieces.at(lab), q, budget, lim);
            if (sum != total_pts)
                rep.covering.issues.push_back("point count over F_" + std::to_string(q) + ": pieces " +
                                              std::to_string(sum) + " vs ambient " +
                                              std::to_string(total_pts));
            for (const auto& lab : labels) {
                const Ideal& cl = closures.at(lab);
                long boundary = static_cast<long>(count_points(cl, q, budget).count);
                long covered = 0;
                for (const auto& other : labels) {
                    if (!D.poset.less_eq(other, lab)) continue;
                    const Piece& o = D.pieces.at(other);
                    Ideal meet = ideal_sum(cl, o.closed);
                    covered += static_cast<long>(count_points(meet, q, budget).count) -
                               static_cast<long>(
                                   count_points(ideal_sum(meet, o.excluded), q, budget).count);
                }
                if (boundary > covered)
                    rep.continuity.issues.push_back("closure of " + lab + " escapes lower pieces over F_" +
                                                    std::to_string(q));
            }
            sampled = true;
        } catch (const BudgetExceeded&) {
            continue;
        } catch (const BadPrime&) {
            continue;
        }
    }
    if (!sampled) {
        rep.covering.issues.push_back("not verified: no usable sampling prime");
        rep.continuity.issues.push_back("not verified: no usable sampling prime");
    }
    rep.covering.ok =
        std::none_of(rep.covering.issues.begin(), rep.covering.issues.end(),
                     [](const std::string& s) { return s.rfind("not verified", 0) != 0; });
    rep.continuity.ok =
        std::none_of(rep.continuity.issues.begin(), rep.continuity.issues.end(),
                     [](const std::string& s) { return s.rfind("not verified", 0) != 0; });
    return rep;
}

CheckResult map_respects_strata(const StratifiedMorphism& sm, const std::vector<long>& primes,
                                unsigned long long budget, const Limits& lim) {
    CheckResult res;
    res.advisory = true;
    for (const auto& lab : sm.source.poset.elements) {
        const Piece& s = sm.source.pieces.at(lab);
        const Piece& t = sm.target.pieces.at(sm.alpha.at(lab));
        Ideal tclosed = pullback_ideal(sm.phi, t.closed);
        Ideal texcl = pullback_ideal(sm.phi, t.excluded);
        if (!inclusion_check(s.closed, tclosed, lim))
            res.issues.push_back("closure of " + lab + " leaves the closure of its target piece");
        if (!inclusion_check(ideal_sum(s.closed, texcl), s.excluded, lim))
            res.issues.push_back("piece " + lab + " meets the excluded locus of its target piece");
        try {
            SampleResult w = sample_nonempty(s.closed, s.excluded, primes, budget);
            if (w.found) {
                std::vector<Rational> pt;
                pt.reserve(w.point.size());
                for (long c : w.point) pt.emplace_back(c);
                for (const auto& g : tclosed.gens) {
                    Rational v = evaluate(g, pt);
                    if (mpz_fdiv_ui(v.get_den().get_mpz_t(), static_cast<unsigned long>(w.q)) == 0)
                        continue;
                    if (mpz_fdiv_ui(v.get_num().get_mpz_t(), static_cast<unsigned long>(w.q)) != 0)
                        res.issues.push_back("sampled point of " + lab + " maps outside its target piece mod " +
                                             std::to_string(w.q));
                }
            }
        } catch (const BudgetExceeded&) {
        } catch (const BadPrime&) {
        }
    }
    res.ok = res.issues.empty();
    return res;
}

Presentation hypersurface_presentation() { return Presentation{Presentation::Kind::Hypersurface, 1}; }

Presentation ci_presentation(long codim) {
    if (codim < 0) throw std::invalid_argument("codimension must be nonnegative");
    return Presentation{Presentation::Kind::CompleteIntersection, codim};
}

StratDatum reg_stratify(const Ideal& X, const Presentation& pres, const Limits& lim) {
    const RingPtr& R = X.ring;
    long n = static_cast<long>(R->nvars());
    if (pres.kind == Presentation::Kind::Hypersurface) {
        if (X.gens.size() != 1)
            throw PresentationUnsupported("hypersurface presentation needs one nonzero generator");
    } else {
        if (static_cast<long>(X.gens.size()) != pres.codim)
            throw PresentationUnsupported("generator count does not match the declared codimension");
        if (!is_unit_ideal(X, lim) && krull_dimension(X, lim) != n - pres.codim)
            throw PresentationUnsupported("declared codimension does not match the dimension");
    }

    std::vector<Piece> chain;
    Ideal cur = canonical(X, lim);
    bool first = true;
    for (int depth = 0;; ++depth) {
        if (depth >= 64) throw ResourceLimit("stratum_limit", "stratification depth exceeded");
        if (is_unit_ideal(cur, lim)) break;
        long d = krull_dimension(cur, lim);
        long c = first ? pres.codim : n - d;
        if (c <= 0 || cur.gens.empty()) {
            chain.push_back(Piece{cur, unit_ideal(R)});
            break;
        }
        Ideal Sing = canonical(
            ideal_sum(cur, make_ideal(R, minors(jacobian_matrix(cur.gens, R), static_cast<size_t>(c)))),
            lim);
        if (is_unit_ideal(Sing, lim)) {
            chain.push_back(Piece{cur, unit_ideal(R)});
            break;
        }
        if (inclusion_check(cur, Sing, lim)) {
            if (ideal_equal(Sing, cur, lim))
                throw PresentationUnsupported(
                    "singular locus does not drop; variety outside the supported classes");
            cur = Sing;
            first = false;
            continue;
        }
        chain.push_back(Piece{cur, Sing});
        cur = Sing;
        first = false;
    }

    std::vector<std::string> labels;
    std::map<std::string, Piece> pieces;
    for (size_t i = 0; i < chain.size(); ++i) {
        std::string lab = "S" + std::to_string(i);
        labels.push_back(lab);
        pieces[lab] = std::move(chain[i]);
    }
    return make_strat_datum(R, chain_poset(labels), std::move(pieces), canonical(X, lim));
}

StratDatum split_by_rank(const Morphism& phi, const std::vector<ModuleElement>& relations,
                         const Limits& lim) {
    const RingPtr& R = phi.source;
    size_t n = phi.n();
    for (const auto& rel : relations)
        if (rel.size() != n) throw std::invalid_argument("relation row of the wrong length");
    size_t s = relations.size();

    PolyMatrix K;
    K.rows = s;
    K.cols = n;
    for (const auto& rel : relations)
        for (const auto& f : rel) K.entries.push_back(f);

    size_t maxr = std::min(s, n);
    std::vector<Ideal> fitting;
    fitting.push_back(unit_ideal(R));
    for (size_t k = 1; k <= maxr + 1; ++k) fitting.push_back(make_ideal(R, minors(K, k)));

    struct Entry {
        size_t rank;
        Piece piece;
    };
    std::vector<Entry> kept;
    for (size_t r = 0; r <= maxr; ++r) {
        if (inclusion_check(fitting[r + 1], fitting[r], lim)) continue;
        kept.push_back(Entry{r, Piece{canonical(fitting[r + 1], lim), canonical(fitting[r], lim)}});
    }
    std::sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) { return a.rank > b.rank; });

    std::vector<std::string> labels;
    std::map<std::string, Piece> pieces;
    for (auto& e : kept) {
        std::string lab = "fdim" + std::to_string(n - e.rank);
        labels.push_back(lab);
        pieces[lab] = std::move(e.piece);
    }
    return make_strat_datum(R, chain_poset(labels), std::move(pieces));
}

StratDatum rank_stratification(const Morphism& phi, const Limits& lim) {
    return split_by_rank(phi, kernel_vector_fields(phi, lim), lim);
}

namespace {

struct GluePlan {
    Poset poset;
    std::map<std::string, Piece> pieces;
    std::map<std::string, std::string> rename_b;
};

// Disjoint union with everything in b below everything in a.
GluePlan stack_strata(const StratDatum& a, const StratDatum& b) {
    GluePlan plan;
    std::set<std::string> used(a.poset.elements.begin(), a.poset.elements.end());
    plan.rename_b = uniquify_labels(b.poset.elements, used, "_z");

    std::vector<std::string> elements = a.poset.elements;
    for (const auto& lab : b.poset.elements) elements.push_back(plan.rename_b.at(lab));
    auto pairs = poset_pairs(a.poset);
    for (const auto& [x, y] : poset_pairs(b.poset))
        pairs.emplace_back(plan.rename_b.at(x), plan.rename_b.at(y));
    for (const auto& bl : b.poset.elements)
        for (const auto& al : a.poset.elements) pairs.emplace_back(plan.rename_b.at(bl), al);
    plan.poset = make_poset(std::move(elements), pairs);

    plan.pieces = a.pieces;
    for (const auto& [lab, piece] : b.pieces) plan.pieces[plan.rename_b.at(lab)] = piece;
    return plan;
}

}  // namespace

StratifiedMorphism target_glue(const StratifiedMorphism& a, const StratifiedMorphism& b,
                               const Ideal& Z, const Limits& lim) {
    if (a.phi.components.size() != b.phi.components.size() ||
        !a.phi.source->same(*b.phi.source) ||
        !std::equal(a.phi.components.begin(), a.phi.components.end(), b.phi.components.begin()))
        throw DecompositionMismatch("glue inputs restrict different morphisms");
    if (!a.target.ring->same(*b.target.ring) || !Z.ring->same(*a.target.ring))
        throw DecompositionMismatch("glue inputs live over different targets");

    for (const auto& lab : a.target.poset.elements) {
        const Piece& p = a.target.pieces.at(lab);
        if (!inclusion_check(ideal_sum(p.closed, Z), p.excluded, lim))
            throw DecompositionMismatch("open-part target piece " + lab + " meets V(Z)");
    }
    for (const auto& lab : b.target.poset.elements) {
        const Piece& p = b.target.pieces.at(lab);
        if (!inclusion_check(p.closed, Z, lim))
            throw DecompositionMismatch("closed-part target piece " + lab + " leaves V(Z)");
    }
    Ideal Zsrc = pullback_ideal(a.phi, Z);
    for (const auto& lab : a.source.poset.elements) {
        const Piece& p = a.source.pieces.at(lab);
        if (!inclusion_check(ideal_sum(p.closed, Zsrc), p.excluded, lim))
            throw DecompositionMismatch("open-part source piece " + lab + " meets the preimage of V(Z)");
    }
    for (const auto& lab : b.source.poset.elements) {
        const Piece& p = b.source.pieces.at(lab);
        if (!inclusion_check(p.closed, Zsrc, lim))
            throw DecompositionMismatch("closed-part source piece " + lab +
                                        " leaves the preimage of V(Z)");
    }

    GluePlan tgt = stack_strata(a.target, b.target);
    GluePlan src = stack_strata(a.source, b.source);

    std::map<std::string, std::string> alpha = a.alpha;
    for (const auto& [slab, tlab] : b.alpha)
        alpha[src.rename_b.at(slab)] = tgt.rename_b.at(tlab);

    StratDatum target = make_strat_datum(
        a.target.ring, std::move(tgt.poset), std::move(tgt.pieces),
        canonical(ideal_intersection(a.target.ambient, b.target.ambient, lim), lim));
    StratDatum source = make_strat_datum(
        a.source.ring, std::move(src.poset), std::move(src.pieces),
        canonical(ideal_intersection(a.source.ambient, b.source.ambient, lim), lim));
    return make_stratified_morphism(a.phi, std::move(source), std::move(target), std::move(alpha));
}

StratifiedMorphism source_glue(const StratifiedMorphism& a, const StratifiedMorphism& b,
                               const Ideal& Z, const Limits& lim) {
    if (a.phi.components.size() != b.phi.components.size() ||
        !a.phi.source->same(*b.phi.source) ||
        !std::equal(a.phi.components.begin(), a.phi.components.end(), b.phi.components.begin()))
        throw DecompositionMismatch("glue inputs restrict different morphisms");
    if (!a.target.ring->same(*b.target.ring))
        throw DecompositionMismatch("glue inputs live over different targets");
    if (!Z.ring->same(*a.source.ring))
        throw DecompositionMismatch("source decomposition ideal in the wrong ring");

    for (const auto& lab : a.source.poset.elements) {
        const Piece& p = a.source.pieces.at(lab);
        if (!inclusion_check(ideal_sum(p.closed, Z), p.excluded, lim))
            throw DecompositionMismatch("open-part source piece " + lab + " meets V(Z)");
    }
    for (const auto& lab : b.source.poset.elements) {
        const Piece& p = b.source.pieces.at(lab);
        if (!inclusion_check(p.closed, Z, lim))
            throw DecompositionMismatch("closed-part source piece " + lab + " leaves V(Z)");
    }

    const RingPtr& Rt = a.target.ring;
    long m = static_cast<long>(Rt->nvars());

    std::vector<std::string> tlabels;
    std::map<std::string, Piece> tpieces;
    std::vector<std::pair<std::string, std::string>> tpairs;
    auto tlabel = [](const std::string& u, const std::string& z) { return "(" + u + "," + z + ")"; };
    for (const auto& tu : a.target.poset.elements) {
        for (const auto& tz : b.target.poset.elements) {
            const Piece& pu = a.target.pieces.at(tu);
            const Piece& pz = b.target.pieces.at(tz);
            Piece prod{canonical(ideal_sum(pu.closed, pz.closed), lim),
                       canonical(ideal_product(pu.excluded, pz.excluded), lim)};
            tlabels.push_back(tlabel(tu, tz));
            tpieces[tlabels.back()] = std::move(prod);
        }
    }
    for (const auto& tu : a.target.poset.elements)
        for (const auto& tz : b.target.poset.elements)
            for (const auto& tu2 : a.target.poset.elements)
                for (const auto& tz2 : b.target.poset.elements)
                    if (a.target.poset.less_eq(tu, tu2) && b.target.poset.less_eq(tz, tz2) &&
                        !(tu == tu2 && tz == tz2))
                        tpairs.emplace_back(tlabel(tu, tz), tlabel(tu2, tz2));

    for (const auto& lab : tlabels) {
        const Piece& p = tpieces.at(lab);
        if (piece_empty(p, lim)) continue;
        if (p.closed.gens.empty()) continue;
        long d = krull_dimension(p.closed, lim);
        long c = m - d;
        Ideal Sing = ideal_sum(
            p.closed,
            make_ideal(Rt, minors(jacobian_matrix(p.closed.gens, Rt), static_cast<size_t>(c))));
        if (!inclusion_check(Sing, p.excluded, lim))
            throw PresentationUnsupported("target piece " + lab +
                                          " is not smooth; refinement unsupported");
    }

    GluePlan s0 = stack_strata(a.source, b.source);
    StratDatum target =
        make_strat_datum(Rt, make_poset(tlabels, tpairs), std::move(tpieces),
                         canonical(ideal_sum(a.target.ambient, b.target.ambient), lim));

    std::vector<std::string> slabels;
    std::map<std::string, Piece> spieces;
    std::vector<std::pair<std::string, std::string>> spairs;
    auto slabel = [](const std::string& s, const std::string& t) { return "(" + s + "," + t + ")"; };
    for (const auto& s : s0.poset.elements) {
        for (const auto& t : target.poset.elements) {
            const Piece& ps = s0.pieces.at(s);
            const Piece& pt = target.pieces.at(t);
            Piece prod{canonical(ideal_sum(ps.closed, pullback_ideal(a.phi, pt.closed)), lim),
                       canonical(ideal_product(ps.excluded, pullback_ideal(a.phi, pt.excluded)), lim)};
            slabels.push_back(slabel(s, t));
            spieces[slabels.back()] = std::move(prod);
        }
    }
    std::map<std::string, std::string> alpha;
    for (const auto& s : s0.poset.elements)
        for (const auto& t : target.poset.elements) alpha[slabel(s, t)] = t;
    for (const auto& s : s0.poset.elements)
        for (const auto& t : target.poset.elements)
            for (const auto& s2 : s0.poset.elements)
                for (const auto& t2 : target.poset.elements)
                    if (s0.poset.less_eq(s, s2) && target.poset.less_eq(t, t2) &&
                        !(s == s2 && t == t2))
                        spairs.emplace_back(slabel(s, t), slabel(s2, t2));

    StratDatum source =
        make_strat_datum(a.source.ring, make_poset(slabels, spairs), std::move(spieces),
                         canonical(ideal_intersection(a.source.ambient, b.source.ambient, lim), lim));
    return make_stratified_morphism(a.phi, std::move(source), std::move(target), std::move(alpha));
}

namespace {

Polynomial rename_univariate(const Polynomial& f, const RingPtr& to) {
    std::vector<Term> terms = f.terms;
    return poly_from_terms(to, std::move(terms));
}

Polynomial exact_divide_univariate(const Polynomial& num, const Polynomial& den) {
    Polynomial rem = num;
    Polynomial quot = poly_zero(num.ring);
    long dd = den.degree();
    Rational lead = den.terms.front().coeff;
    while (!rem.is_zero() && rem.degree() >= dd) {
        long shift = rem.degree() - dd;
        Rational c = rem.terms.front().coeff / lead;
        Polynomial mono = poly_term(num.ring, c, Monomial{static_cast<int>(shift)});
        quot = poly_add(quot, mono);
        rem = poly_sub(rem, poly_mul(mono, den));
    }
    if (!rem.is_zero()) throw std::logic_error("division was not exact");
    return quot;
}

}  // namespace

StratifiedMorphism functorial_stratify(const Morphism& f, const Limits& lim) {
    if (f.m() != 1) throw std::invalid_argument("supported targets are one-dimensional");
    const RingPtr& R = f.source;
    size_t n = f.n();
    std::vector<std::string> tnames = target_names(f);
    RingPtr Rt = make_ring({tnames[0]});
    const Polynomial& comp = f.components[0];

    if (comp.is_constant()) {
        Polynomial q = poly_sub(poly_var(Rt, 0), poly_const(Rt, comp.constant_value()));
        std::map<std::string, Piece> tp;
        tp["Treg"] = Piece{zero_ideal(Rt), make_ideal(Rt, {q})};
        tp["Tcrit"] = Piece{make_ideal(Rt, {q}), unit_ideal(Rt)};
        StratDatum target = make_strat_datum(Rt, chain_poset({"Treg", "Tcrit"}), std::move(tp));
        StratDatum source = trivial_stratification(R, "S0");
        return make_stratified_morphism(f, std::move(source), std::move(target),
                                        {{"S0", "Tcrit"}});
    }

    std::vector<Polynomial> partials;
    for (size_t i = 0; i < n; ++i) {
        Polynomial d = partial_derivative(comp, i);
        if (!d.is_zero()) partials.push_back(d);
    }
    Ideal C = make_ideal(R, partials);

    if (is_unit_ideal(C, lim)) {
        StratDatum source = split_by_rank(f, kernel_vector_fields(f, lim), lim);
        StratDatum target = trivial_stratification(Rt, "Treg");
        std::map<std::string, std::string> alpha;
        for (const auto& lab : source.poset.elements) alpha[lab] = "Treg";
        return make_stratified_morphism(f, std::move(source), std::move(target), std::move(alpha));
    }

    std::string tvar = fresh_name(*R, tnames[0]);
    std::vector<std::string> extnames = R->vars;
    extnames.push_back(tvar);
    RingPtr ext = make_ring(extnames, R->char_p);
    std::vector<Polynomial> extgens;
    extgens.push_back(poly_sub(poly_var(ext, n), transport(comp, ext)));
    for (const auto& d : partials) extgens.push_back(transport(d, ext));
    Ideal values = eliminate(make_ideal(ext, std::move(extgens)), R->vars, lim);
    if (values.gens.empty())
        throw PresentationUnsupported("critical values do not form a finite set");
    Polynomial qt = groebner_basis(values.gens, MonomialOrder::grevlex(), lim).front();
    Polynomial der = partial_derivative(qt, 0);
    Polynomial gcd = groebner_basis({qt, der}, MonomialOrder::grevlex(), lim).front();
    Polynomial q = rename_univariate(exact_divide_univariate(qt, gcd), Rt);
    Polynomial qof = substitute(q, f.components);

    std::map<std::string, Piece> asp, atp;
    asp["Sreg"] = Piece{zero_ideal(R), make_ideal(R, {qof})};
    atp["Treg"] = Piece{zero_ideal(Rt), make_ideal(Rt, {q})};
    StratifiedMorphism a = make_stratified_morphism(
        f, make_strat_datum(R, make_poset({"Sreg"}, {}), std::move(asp)),
        make_strat_datum(Rt, make_poset({"Treg"}, {}), std::move(atp)), {{"Sreg", "Treg"}});

    StratDatum bsrc = reg_stratify(make_ideal(R, {qof}), hypersurface_presentation(), lim);
    std::map<std::string, Piece> btp;
    btp["Tcrit"] = Piece{make_ideal(Rt, {q}), unit_ideal(Rt)};
    StratDatum btgt = make_strat_datum(Rt, make_poset({"Tcrit"}, {}), std::move(btp),
                                       make_ideal(Rt, {q}));
    std::map<std::string, std::string> balpha;
    for (const auto& lab : bsrc.poset.elements) balpha[lab] = "Tcrit";
    StratifiedMorphism b =
        make_stratified_morphism(f, std::move(bsrc), std::move(btgt), std::move(balpha));

    return target_glue(a, b, make_ideal(Rt, {q}), lim);
}

CoarseVerticalReport coarse_and_vertical_audit(const StratifiedMorphism& sm,
                                               const std::vector<Rational>& y, const Limits& lim) {
    const Morphism& phi = sm.phi;
    if (y.size() != phi.m()) throw std::invalid_argument("fiber point has the wrong length");
    const RingPtr& R = phi.source;
    long n = static_cast<long>(phi.n());
    RingPtr cot = cotangent_ring(*R);

    std::vector<Polynomial> fiberEqs;
    for (size_t i = 0; i < phi.m(); ++i)
        fiberEqs.push_back(poly_sub(phi.components[i], poly_const(R, y[i])));
    Ideal fiber = make_ideal(R, fiberEqs);

    CoarseVerticalReport rep;
    bool any = false;
    Ideal C = unit_ideal(cot);
    for (const auto& lab : sm.source.poset.elements) {
        const Piece& p = sm.source.pieces.at(lab);
        StratumAudit audit{lab, false, ""};
        Ideal Ifp = ideal_sum(p.closed, fiber);
        if (inclusion_check(Ifp, p.excluded, lim)) {
            audit.audited = true;
            audit.note = "fiber misses the piece";
            rep.strata.push_back(std::move(audit));
            continue;
        }
        Ideal Isat = saturate(Ifp, p.excluded, lim);
        if (is_unit_ideal(Isat, lim)) {
            audit.audited = true;
            audit.note = "fiber misses the piece";
            rep.strata.push_back(std::move(audit));
            continue;
        }
        long d = krull_dimension(Isat, lim);
        long c = n - d;
        if (c > static_cast<long>(Isat.gens.size())) {
            audit.note = "presentation too small for a conormal computation";
            rep.strata.push_back(std::move(audit));
            continue;
        }
        Ideal Sing = ideal_sum(
            Isat, make_ideal(R, minors(jacobian_matrix(Isat.gens, R), static_cast<size_t>(c))));
        audit.audited = inclusion_check(Sing, p.excluded, lim);
        if (!audit.audited) audit.note = "smoothness not certified on the fiber slice";
        Ideal CN = transport_ideal(conormal_ideal(Isat, c, lim), cot);
        Ideal CNsat = saturate(CN, transport_ideal(p.excluded, cot), lim);
        C = any ? ideal_intersection(C, CNsat, lim) : CNsat;
        any = true;
        rep.strata.push_back(std::move(audit));
    }

    Ideal F = transport_ideal(fiber_ideal(phi, y, lim), cot);
    rep.all_audited = std::all_of(rep.strata.begin(), rep.strata.end(),
                                  [](const StratumAudit& a) { return a.audited; });
    rep.verticallyExtendable = inclusion_check(F, C, lim);
    rep.coarse = inclusion_check(C, F, lim);
    rep.strongThom = rep.verticallyExtendable && rep.coarse;
    return rep;
}

}  // namespace ag
