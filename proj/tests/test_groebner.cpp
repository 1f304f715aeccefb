#include "doctest.h"

#include <algorithm>

#include "ag/groebner.hpp"

using namespace ag;

namespace {
RingPtr rxy() { return make_ring({"x", "y"}); }

std::vector<Polynomial> parse_all(const std::vector<std::string>& texts, const RingPtr& R) {
    std::vector<Polynomial> out;
    for (const auto& t : texts) out.push_back(parse_polynomial(t, R));
    return out;
}
}

TEST_CASE("lex basis of a zero-dimensional ideal") {
    auto R = rxy();
    auto gens = parse_all({"x*y - 1", "y^2 - 1"}, R);
    auto gb = groebner_basis(gens, MonomialOrder::lex());
    REQUIRE(gb.size() == 2);
    CHECK(gb[0] == parse_polynomial("x - y", R));
    CHECK(gb[1] == parse_polynomial("y^2 - 1", R));
}

TEST_CASE("reduced basis is deterministic under generator permutation") {
    auto R = make_ring({"x", "y", "z"});
    auto gens = parse_all({"x^2 + y*z", "x*z - y^2 + 1", "y*z^3 - x", "z^2 - x*y"}, R);
    auto gb = groebner_basis(gens, MonomialOrder::grevlex());
    std::vector<Polynomial> shuffled{gens[2], gens[0], gens[3], gens[1]};
    auto gb2 = groebner_basis(shuffled, MonomialOrder::grevlex());
    REQUIRE(gb.size() == gb2.size());
    for (size_t i = 0; i < gb.size(); ++i) CHECK(gb[i] == gb2[i]);
}

TEST_CASE("normal form and ideal membership") {
    auto R = rxy();
    auto I = make_ideal(R, parse_all({"x^2 - y", "y^2 - x"}, R));
    auto gb = groebner_basis(I.gens, MonomialOrder::grevlex());
    CHECK(normal_form(parse_polynomial("x^2 - y", R), gb, MonomialOrder::grevlex()).is_zero());
    CHECK(in_ideal(parse_polynomial("x^4 - x", R), I));
    CHECK_FALSE(in_ideal(parse_polynomial("x + y", R), I));
    CHECK_FALSE(is_unit_ideal(I));
    auto U = make_ideal(R, parse_all({"x", "x + 1"}, R));
    CHECK(is_unit_ideal(U));
}

TEST_CASE("elimination recovers the twisted cubic relation") {
    auto R = make_ring({"t", "x", "y"});
    auto I = make_ideal(R, parse_all({"x - t^2", "y - t^3"}, R));
    auto E = eliminate(I, {"t"});
    REQUIRE(E.ring->vars == std::vector<std::string>{"x", "y"});
    REQUIRE(E.gens.size() == 1);
    CHECK(E.gens[0] == parse_polynomial("x^3 - y^2", E.ring));
}

TEST_CASE("intersection of coordinate axes") {
    auto R = rxy();
    auto I = make_ideal(R, parse_all({"x"}, R));
    auto J = make_ideal(R, parse_all({"y"}, R));
    auto K = ideal_intersection(I, J);
    CHECK(ideal_equal(K, make_ideal(R, parse_all({"x*y"}, R))));
}

TEST_CASE("saturation strips embedded multiplicity") {
    auto R = rxy();
    auto I = make_ideal(R, parse_all({"x^2"}, R));
    auto S = saturate(I, parse_polynomial("x", R));
    CHECK(is_unit_ideal(S));
    // V(x*y) minus V(x) leaves the x-axis
    auto J = saturate(make_ideal(R, parse_all({"x*y"}, R)), parse_polynomial("x", R));
    CHECK(ideal_equal(J, make_ideal(R, parse_all({"y"}, R))));
    // ideal-by-ideal flavor
    auto K = saturate(make_ideal(R, parse_all({"x*y"}, R)), make_ideal(R, parse_all({"x", "y"}, R)));
    CHECK(ideal_equal(K, make_ideal(R, parse_all({"x*y"}, R))));
}

TEST_CASE("radical membership") {
    auto R = rxy();
    auto I = make_ideal(R, parse_all({"x^2"}, R));
    CHECK(radical_membership(parse_polynomial("x", R), I));
    CHECK_FALSE(radical_membership(parse_polynomial("y", R), I));
    CHECK(radical_membership(parse_polynomial("x*y", R), I));
}

TEST_CASE("krull dimension pins") {
    auto R = rxy();
    CHECK(krull_dimension(make_ideal(R, parse_all({"x^2 + y^2 - 1"}, R))) == 1);
    CHECK(krull_dimension(make_ideal(R, parse_all({"1"}, R))) == -1);
    CHECK(krull_dimension(make_ideal(R, {})) == 2);
    CHECK(krull_dimension(make_ideal(R, parse_all({"x", "y"}, R))) == 0);
    CHECK(krull_dimension(make_ideal(R, parse_all({"x*y"}, R))) == 1);
    auto R3 = make_ring({"x", "y", "z"});
    CHECK(krull_dimension(make_ideal(R3, parse_all({"x*y", "x*z"}, R3))) == 2);
}

TEST_CASE("ideal sum and product") {
    auto R = rxy();
    auto I = make_ideal(R, parse_all({"x"}, R));
    auto J = make_ideal(R, parse_all({"y"}, R));
    CHECK(krull_dimension(ideal_sum(I, J)) == 0);
    CHECK(ideal_equal(ideal_product(I, J), make_ideal(R, parse_all({"x*y"}, R))));
}

TEST_CASE("syzygies of a pencil") {
    auto R = rxy();
    auto f = parse_polynomial("3*x^2*y + 2*x*y^2", R);
    auto g = parse_polynomial("x^3 + 2*x^2*y", R);
    auto syz = syzygies({{f}, {g}});
    std::vector<ModuleElement> expected{{parse_polynomial("x^2 + 2*x*y", R), parse_polynomial("-3*x*y - 2*y^2", R)}};
    CHECK(module_equal(syz, expected));
    // soundness: every syzygy annihilates the generators
    for (const auto& v : syz) {
        auto acc = poly_add(poly_mul(v[0], f), poly_mul(v[1], g));
        CHECK(acc.is_zero());
    }
}

TEST_CASE("module membership") {
    auto R = rxy();
    auto x = poly_var(R, 0), y = poly_var(R, 1);
    std::vector<ModuleElement> gens{{x, poly_zero(R)}, {poly_zero(R), y}};
    CHECK(module_contains(gens, {poly_mul(x, y), poly_mul(y, y)}));
    CHECK_FALSE(module_contains(gens, {poly_const(R, 1), poly_zero(R)}));
    CHECK(module_contains(gens, {poly_zero(R), poly_zero(R)}));
}

TEST_CASE("resource limits trip early") {
    auto R = make_ring({"x", "y", "z"});
    auto gens = parse_all({"x^5 + y^4 + z^3 - 1", "x^3 + y^3 + z^2 - 1"}, R);
    Limits tiny;
    tiny.max_pairs = 1;
    CHECK_THROWS_AS(groebner_basis(gens, MonomialOrder::grevlex(), tiny), ResourceLimit);
    try {
        groebner_basis(gens, MonomialOrder::grevlex(), tiny);
    } catch (const ResourceLimit& e) {
        CHECK(e.kind == "pair_limit");
    }
    Limits lowdeg;
    lowdeg.max_degree = 2;
    CHECK_THROWS_AS(groebner_basis(gens, MonomialOrder::grevlex(), lowdeg), ResourceLimit);
}

TEST_CASE("fresh_name avoids collisions") {
    auto R = make_ring({"t", "t1"});
    auto n = fresh_name(*R, "t");
    CHECK(n != "t");
    CHECK(n != "t1");
}
