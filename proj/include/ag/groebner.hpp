#pragma once

#include <string>
#include <vector>

#include "ag/poly.hpp"

namespace ag {

struct ResourceLimit : std::runtime_error {
    std::string kind;
    ResourceLimit(std::string k, const std::string& m) : std::runtime_error(m), kind(std::move(k)) {}
};

struct Limits {
    size_t max_basis = 4000;
    size_t max_pairs = 500000;
    long max_degree = 200;
};

struct Ideal {
    RingPtr ring;
    std::vector<Polynomial> gens;
};

Ideal make_ideal(RingPtr ring, std::vector<Polynomial> gens);
Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);

// Reduced Groebner basis: monic, interreduced, sorted descending by lead term.
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                                       const Limits& lim = {});
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       const MonomialOrder& order);

bool in_ideal(const Polynomial& f, const Ideal& I, const Limits& lim = {});
bool is_unit_ideal(const Ideal& I, const Limits& lim = {});
bool ideal_equal(const Ideal& a, const Ideal& b, const Limits& lim = {});

// Result lives in the ring on the remaining variables (original order kept).
Ideal eliminate(const Ideal& I, const std::vector<std::string>& kill, const Limits& lim = {});
Ideal ideal_intersection(const Ideal& a, const Ideal& b, const Limits& lim = {});
Ideal saturate(const Ideal& I, const Polynomial& f, const Limits& lim = {});
Ideal saturate(const Ideal& I, const Ideal& J, const Limits& lim = {});
bool radical_membership(const Polynomial& f, const Ideal& I, const Limits& lim = {});
// -1 for the unit ideal (empty vanishing locus).
long krull_dimension(const Ideal& I, const Limits& lim = {});

using ModuleElement = std::vector<Polynomial>;

// Generators of the syzygy module of gens (each a vector of common length over one ring).
std::vector<ModuleElement> syzygies(const std::vector<ModuleElement>& gens, const Limits& lim = {});
bool module_contains(const std::vector<ModuleElement>& gens, const ModuleElement& v,
                     const Limits& lim = {});
bool module_equal(const std::vector<ModuleElement>& a, const std::vector<ModuleElement>& b,
                  const Limits& lim = {});

std::string fresh_name(const PolyRing& ring, const std::string& base);

}  // namespace ag
