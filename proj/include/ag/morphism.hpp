#pragma once

#include <string>
#include <vector>

#include "ag/groebner.hpp"

namespace ag {

struct NotSubmersion : std::runtime_error {
    explicit NotSubmersion(const std::string& m) : std::runtime_error(m) {}
};

// phi: A^n -> A^m, components over Q[x1..xn].
struct Morphism {
    RingPtr source;
    std::vector<Polynomial> components;

    size_t n() const { return source->nvars(); }
    size_t m() const { return components.size(); }
};

Morphism make_morphism(RingPtr source, std::vector<Polynomial> components);

// Fresh coordinate names for the target, avoiding the source names.
std::vector<std::string> target_names(const Morphism& phi, const std::string& base = "y");

// Generators of ker(Dphi) as syzygies of the Jacobian columns; each tuple has length n.
std::vector<ModuleElement> kernel_vector_fields(const Morphism& phi, const Limits& lim = {});

// Pairing ideal <v, xi> over kernel generators, in Q[x1..xn, xi1..xin].
Ideal b_phi_ideal(const Morphism& phi, const Limits& lim = {});

Ideal fiber_ideal(const Morphism& phi, const std::vector<Rational>& y, const Limits& lim = {});

struct QTReport {
    std::vector<Rational> fiber;
    long fiber_dimension = 0;
    long source_dimension = 0;
    std::string verdict;
    std::vector<Polynomial> certificate;
};

QTReport qt_check_at(const Morphism& phi, const std::vector<Rational>& y, const Limits& lim = {});

long generic_fiber_dimension(const Morphism& phi, const Limits& lim = {});

// W lives in the target cotangent ring (m coordinates then m duals).
Ideal dagger_pullback(const Morphism& psi, const Ideal& W, const Limits& lim = {});

// Conormal ideal of V(S), assumed smooth of pure codimension c, in the cotangent ring of S.ring.
Ideal conormal_ideal(const Ideal& S, long c, const Limits& lim = {});

// true iff V(A) is contained in V(B)
bool inclusion_check(const Ideal& A, const Ideal& B, const Limits& lim = {});

}  // namespace ag
