#pragma once

#include <map>
#include <string>
#include <vector>

#include "ag/fq.hpp"
#include "ag/morphism.hpp"

namespace ag {

struct PresentationUnsupported : std::runtime_error {
    explicit PresentationUnsupported(const std::string& m) : std::runtime_error(m) {}
};

struct DecompositionMismatch : std::runtime_error {
    explicit DecompositionMismatch(const std::string& m) : std::runtime_error(m) {}
};

// Finite poset on string labels; leq is the full reflexive-transitive relation.
struct Poset {
    std::vector<std::string> elements;
    std::vector<std::vector<bool>> leq;

    size_t index(const std::string& label) const;
    bool less_eq(const std::string& a, const std::string& b) const;
};

// Validates reflexivity (added), transitivity (closed), antisymmetry (rejected).
Poset make_poset(std::vector<std::string> elements,
                 const std::vector<std::pair<std::string, std::string>>& pairs);
// labels[0] on top, descending.
Poset chain_poset(std::vector<std::string> labels);

// Locally closed piece V(closed) minus V(excluded). excluded = (1) excludes nothing;
// an excluded zero ideal makes the piece empty.
struct Piece {
    Ideal closed;
    Ideal excluded;
};

struct StratDatum {
    RingPtr ring;
    Ideal ambient;
    Poset poset;
    std::map<std::string, Piece> pieces;
};

StratDatum make_strat_datum(RingPtr ring, Poset poset, std::map<std::string, Piece> pieces,
                            Ideal ambient);
StratDatum make_strat_datum(RingPtr ring, Poset poset, std::map<std::string, Piece> pieces);
// Single piece covering the whole target of the ring.
StratDatum trivial_stratification(const RingPtr& ring, const std::string& label);

// alpha maps source labels to target labels and must respect order.
struct StratifiedMorphism {
    Morphism phi;
    StratDatum source;
    StratDatum target;
    std::map<std::string, std::string> alpha;
};

StratifiedMorphism make_stratified_morphism(Morphism phi, StratDatum source, StratDatum target,
                                            std::map<std::string, std::string> alpha);

struct CheckResult {
    bool ok = true;
    bool advisory = false;
    std::vector<std::string> issues;
};

struct ValidationReport {
    CheckResult disjoint;
    CheckResult covering;
    CheckResult continuity;
    bool ok() const { return disjoint.ok && covering.ok && continuity.ok; }
};

ValidationReport validate_stratification(const StratDatum& D,
                                         const std::vector<long>& primes = {5, 7, 11},
                                         unsigned long long budget = kDefaultOracleBudget,
                                         const Limits& lim = {});

// Audits that phi maps each source piece into the piece named by alpha: exact on closures,
// plus sampled points pushed through phi over the given primes.
CheckResult map_respects_strata(const StratifiedMorphism& sm,
                                const std::vector<long>& primes = {5, 7, 11},
                                unsigned long long budget = kDefaultOracleBudget,
                                const Limits& lim = {});

struct Presentation {
    enum class Kind { Hypersurface, CompleteIntersection };
    Kind kind = Kind::Hypersurface;
    long codim = 1;
};

Presentation hypersurface_presentation();
Presentation ci_presentation(long codim);

// Recursive smooth-locus peeling; chain poset S0 > S1 > ... by depth.
StratDatum reg_stratify(const Ideal& X, const Presentation& pres, const Limits& lim = {});

// Strata of constant sheaf-fiber dimension of coker(relations), read off fitting minors.
// Labels fdim<k>; larger fiber dimension sits lower.
StratDatum split_by_rank(const Morphism& phi, const std::vector<ModuleElement>& relations,
                         const Limits& lim = {});
StratDatum rank_stratification(const Morphism& phi, const Limits& lim = {});

// Glue phi_U over the complement of V(Z) with phi_Z over V(Z); Z lives in the target ring.
StratifiedMorphism target_glue(const StratifiedMorphism& a, const StratifiedMorphism& b,
                               const Ideal& Z, const Limits& lim = {});
// Glue along a source decomposition; Z lives in the source ring.
StratifiedMorphism source_glue(const StratifiedMorphism& a, const StratifiedMorphism& b,
                               const Ideal& Z, const Limits& lim = {});

// Natural stratification for maps to A^1.
StratifiedMorphism functorial_stratify(const Morphism& f, const Limits& lim = {});

struct StratumAudit {
    std::string label;
    bool audited = false;
    std::string note;
};

struct CoarseVerticalReport {
    std::vector<StratumAudit> strata;
    bool all_audited = false;
    bool verticallyExtendable = false;
    bool coarse = false;
    bool strongThom = false;
};

CoarseVerticalReport coarse_and_vertical_audit(const StratifiedMorphism& sm,
                                               const std::vector<Rational>& y,
                                               const Limits& lim = {});

}  // namespace ag
