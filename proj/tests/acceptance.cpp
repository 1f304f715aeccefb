// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Run from the repository root so the data/ corpus resolves.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>

#include "ag/json_io.hpp"
#include "prop_impl.hpp"

using namespace ag;

namespace {

constexpr double kQtSeconds = 120.0;
constexpr double kGermSeconds = 60.0;
constexpr double kFourierSeconds = 300.0;

int g_passed = 0;
int g_failed = 0;

void report(int num, const char* label, bool ok, const std::string& detail = "") {
    std::printf("%s: criterion %d (%s)%s%s\n", ok ? "PASS" : "FAIL", num, label,
                detail.empty() ? "" : " ", detail.c_str());
    std::fflush(stdout);
    (ok ? g_passed : g_failed)++;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Morphism load_morphism(const std::string& path) { return morphism_from_json(load_json_file(path)); }

const long kInf = std::numeric_limits<long>::max() / 4;

long valp_int(long u, long p) {
    if (u == 0) return kInf;
    long v = 0;
    while (u % p == 0) {
        u /= p;
        ++v;
    }
    return v;
}

// transform of the blowup pushforward at the dual point (u1, u2) / p^k
Rational mu_hat(long p, long k, long n, long u1, long u2) {
    long vb = (u2 == 0) ? kInf : valp_int(u2, p) - k;
    long M = std::max(n, vb >= kInf / 2 ? n : -n - vb);
    long va = (u1 == 0) ? kInf : valp_int(u1, p) - k;
    if (va < -M) return Rational(0);
    return Rational(1, pow_long(p, n + M));
}

// the published display, kept for the n = 0 agreement check
Rational mu_hat_display(long p, long k, long n, long u1, long u2) {
    long vb = (u2 == 0) ? kInf : valp_int(u2, p) - k;
    long mb = std::min(vb, 0L);
    long va = (u1 == 0) ? kInf : valp_int(u1, p) - k;
    if (va < -n + mb) return Rational(0);
    return Rational(1, pow_long(p, 2 * n - mb));
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    auto phi = load_morphism("data/4lines.json");
    auto rep = qt_check_at(phi, {Rational(0)});
    double dt = seconds_since(t0);
    bool ok = rep.fiber_dimension == 4 && rep.verdict == "NOT_QT_AT_FIBER" && dt <= kQtSeconds;
    std::ostringstream d;
    d << "dim=" << rep.fiber_dimension << " verdict=" << rep.verdict << " " << dt << "s";
    report(1, "quartic fiber jump at zero", ok, d.str());
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    auto bundle = stratified_morphism_from_json(load_json_file("data/cubic.json"));
    auto rep = qt_check_at(bundle.phi, {Rational(0)});
    long gfd = generic_fiber_dimension(bundle.phi);
    double dt = seconds_since(t0);
    bool ok = rep.fiber_dimension == 3 && rep.verdict == "QT_AT_FIBER" && gfd <= 3 &&
              dt <= kQtSeconds;
    std::ostringstream d;
    d << "dim=" << rep.fiber_dimension << " generic=" << gfd << " " << dt << "s";
    report(2, "cubic stays quasi-transitive at zero", ok, d.str());
}

void criterion3() {
    auto phi = load_morphism("data/psi4.json");
    auto R = phi.source;
    auto v1 = ModuleElement{parse_polynomial("-x", R), parse_polynomial("y-w", R),
                            parse_polynomial("x", R), poly_zero(R)};
    auto v2 = ModuleElement{parse_polynomial("-z", R), poly_zero(R), parse_polynomial("z", R),
                            parse_polynomial("y-w", R)};
    auto v3 = ModuleElement{poly_zero(R), parse_polynomial("-z", R), poly_zero(R),
                            parse_polynomial("x", R)};
    bool kernel_ok = module_equal(kernel_vector_fields(phi), {v1, v2, v3});

    auto rep = qt_check_at(phi, {Rational(0), Rational(0)});
    bool qt_ok = rep.fiber_dimension == 5 && rep.verdict == "NOT_QT_AT_FIBER";

    auto est = estimate_dimension(fiber_ideal(phi, {Rational(0), Rational(0)}), {3, 5, 7});
    bool oracle_ok = est.estimate == 5;

    std::ostringstream d;
    d << "kernel=" << kernel_ok << " dim=" << rep.fiber_dimension << " oracle=" << est.estimate;
    report(3, "folding map kernel and fiber at the origin", kernel_ok && qt_ok && oracle_ok, d.str());
}

void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    auto phi = load_morphism("data/blowchart.json");
    auto rep = qt_check_at(phi, {Rational(0), Rational(0)});
    bool qt_ok = rep.fiber_dimension == 3;

    bool germs_ok = true;
    std::ostringstream d;
    d << "dim=" << rep.fiber_dimension;
    for (long p : {2L, 3L, 5L}) {
        std::vector<LevelMeasure> fam3;
        for (long y0 = 0; y0 < p; ++y0)
            fam3.push_back(pushforward(haar_ball(p, 3, 2, {0, y0}, 1, 1), phi));
        long g3 = support_germs(fam3, 1);
        std::vector<LevelMeasure> fam4;
        for (long y0 = 0; y0 < p * p; ++y0)
            fam4.push_back(pushforward(haar_ball(p, 4, 2, {0, y0}, 2, 1), phi));
        long g4 = support_germs(fam4, 1);
        germs_ok = germs_ok && g3 >= p && g4 > g3;
        d << " p" << p << ":" << g3 << "/" << g4;
    }
    std::vector<LevelMeasure> fam6;
    for (long y0 = 0; y0 < 8; ++y0)
        fam6.push_back(pushforward(haar_ball(2, 6, 2, {0, y0}, 3, 1), phi));
    long g6 = support_germs(fam6, 1);
    germs_ok = germs_ok && g6 == 8;
    d << " p2k6:" << g6;

    double dt = seconds_since(t0);
    d << " " << dt << "s";
    report(4, "blowup chart fiber and direction germs", qt_ok && germs_ok && dt <= kGermSeconds,
           d.str());
}

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    long mismatches = 0;
    long display_mismatches_at_zero = 0;
    for (long p : {2L, 3L})
        for (long n : {0L, 1L, 2L}) {
            long k = n + 2;
            long pk = pow_long(p, k);
            auto t = fourier(mu_n(p, k, n));
            for (long u1 = 0; u1 < pk; ++u1)
                for (long u2 = 0; u2 < pk; ++u2) {
                    Rational got = cyclo_as_rational(t.at({u1, u2}));
                    if (got != mu_hat(p, k, n, u1, u2)) ++mismatches;
                    if (n == 0 && got != mu_hat_display(p, k, n, u1, u2))
                        ++display_mismatches_at_zero;
                }
        }
    double dt = seconds_since(t0);
    bool ok = mismatches == 0 && display_mismatches_at_zero == 0 && dt <= kFourierSeconds;
    std::ostringstream d;
    d << "mismatches=" << mismatches << " display@n0=" << display_mismatches_at_zero << " " << dt
      << "s";
    report(5, "exact transform of the blowup pushforward", ok, d.str());
}

void criterion6() {
    bool ok = true;
    for (long p : {2L, 3L})
        for (long n : {0L, 1L}) {
            long k = n + 2;
            auto r4 = make_ring({"x", "y", "z", "w"});
            Polynomial x = poly_var(r4, 0), y = poly_var(r4, 1), z = poly_var(r4, 2),
                       w = poly_var(r4, 3);
            Morphism psi =
                make_morphism(r4, {poly_add(x, z), poly_add(poly_mul(x, y), poly_mul(z, w))});
            Rational mass(1, pow_long(p, 4 * n));
            auto lhs = pushforward(haar_ball(p, k, 4, {0, 0, 0, 0}, n, mass), psi);
            auto m = mu_n(p, k, n);
            ok = ok && lhs == convolve(m, m);
        }
    report(6, "folding pushforward equals the self convolution", ok);
}

void criterion7() {
    bool ok = true;
    std::ostringstream d;
    for (long k : {4L, 5L, 6L}) {
        std::vector<LevelMeasure> fam;
        for (long i = 0; i <= 4; ++i) {
            auto m = mu_n(2, k, i);
            fam.push_back(convolve(m, m));
        }
        long r = germ_rank(fam, 1);
        ok = ok && r == 5;
        d << "k" << k << ":" << r << " ";
    }
    report(7, "germ rank of the convolution square family", ok, d.str());
}

void criterion8() {
    bool all_ok = true;
    std::ostringstream d;

    struct Pair {
        Morphism pr;
        Morphism phi;  // lives on the target coordinates of pr
    };
    auto compose = [](const Morphism& pr, const Morphism& phi) {
        std::vector<Polynomial> comps;
        for (const auto& f : phi.components) comps.push_back(substitute(f, pr.components));
        return make_morphism(pr.source, comps);
    };

    std::vector<Pair> pairs;
    {
        auto R2 = make_ring({"x", "y"});
        auto T1 = make_ring({"y1"});
        pairs.push_back({make_morphism(R2, {poly_var(R2, 0)}),
                         make_morphism(T1, {parse_polynomial("y1^2", T1)})});
        auto R4 = make_ring({"x", "y", "z", "w"});
        auto T2 = make_ring({"y1", "y2"});
        pairs.push_back({make_morphism(R4, {poly_var(R4, 0), poly_var(R4, 1)}),
                         make_morphism(T2, {parse_polynomial("y1", T2),
                                            parse_polynomial("y1*y2", T2)})});
        auto R3 = make_ring({"x", "y", "z"});
        pairs.push_back({make_morphism(R3, {poly_var(R3, 0), poly_var(R3, 1)}),
                         make_morphism(T2, {parse_polynomial("y1^2*y2*(y1+y2)", T2)})});
    }

    int idx = 0;
    for (const auto& pr : pairs) {
        ++idx;
        auto W = b_phi_ideal(pr.phi);
        auto pulled = dagger_pullback(pr.pr, W);
        auto direct = b_phi_ideal(compose(pr.pr, pr.phi));
        bool same = inclusion_check(pulled, direct) && inclusion_check(direct, pulled);
        long lhs = krull_dimension(pulled);
        long rhs = krull_dimension(W) + (long)pr.pr.n() - (long)pr.pr.m();
        bool dims = lhs == rhs;
        all_ok = all_ok && same && dims;
        d << "pair" << idx << ":" << (same ? "eq" : "NE") << "," << lhs << "=" << rhs << " ";
    }
    report(8, "pullback compatibility on catalogued pairs", all_ok, d.str());
}

void criterion9() {
    auto R2 = make_ring({"x", "y"});
    auto sm = functorial_stratify(make_morphism(R2, {parse_polynomial("x*y", R2)}));
    bool valid = validate_stratification(sm.source).ok() && validate_stratification(sm.target).ok();
    auto audit = coarse_and_vertical_audit(sm, {Rational(0)});
    bool thom = audit.strongThom;

    auto phi = load_morphism("data/4lines.json");
    auto D = rank_stratification(phi);
    auto Rt = make_ring(target_names(phi));
    std::map<std::string, std::string> alpha;
    for (const auto& lab : D.poset.elements) alpha[lab] = "T0";
    auto sm4 = make_stratified_morphism(phi, D, trivial_stratification(Rt, "T0"), alpha);
    auto audit4 = coarse_and_vertical_audit(sm4, {Rational(0)});
    bool not_ve = !audit4.verticallyExtendable;

    std::ostringstream d;
    d << "valid=" << valid << " strongThom=" << thom << " quarticVE=" << audit4.verticallyExtendable;
    report(9, "stratification audits", valid && thom && not_ve, d.str());
}

void criterion10() {
    struct Entry {
        std::string name;
        Ideal I;
        std::vector<long> primes;
    };
    auto R2 = make_ring({"x", "y"});
    auto R3 = make_ring({"x", "y", "z"});
    std::vector<Entry> entries;

    entries.push_back({"quartic fiber",
                       fiber_ideal(load_morphism("data/4lines.json"), {Rational(0)}),
                       {5, 7}});
    entries.push_back({"cubic fiber",
                       fiber_ideal(stratified_morphism_from_json(load_json_file("data/cubic.json")).phi,
                                   {Rational(0)}),
                       {5, 7}});
    entries.push_back({"folding fiber",
                       fiber_ideal(load_morphism("data/psi4.json"), {Rational(0), Rational(0)}),
                       {3, 5, 7}});
    entries.push_back({"blowup fiber",
                       fiber_ideal(load_morphism("data/blowchart.json"), {Rational(0), Rational(0)}),
                       {5, 7}});
    entries.push_back({"line", make_ideal(R2, {parse_polynomial("x", R2)}), {5, 7, 11}});
    entries.push_back({"circle", make_ideal(R2, {parse_polynomial("x^2+y^2-1", R2)}), {5, 7, 11}});
    entries.push_back({"axes", make_ideal(R2, {parse_polynomial("x*y", R2)}), {5, 7, 11}});
    entries.push_back(
        {"origin", make_ideal(R2, {parse_polynomial("x", R2), parse_polynomial("y", R2)}), {5, 7, 11}});
    entries.push_back({"plane pair",
                       make_ideal(R3, {parse_polynomial("x*y", R3), parse_polynomial("x*z", R3)}),
                       {5, 7}});
    entries.push_back({"full plane", make_ideal(R2, {}), {5, 7, 11}});
    entries.push_back({"empty", make_ideal(R2, {parse_polynomial("1", R2)}), {5, 7, 11}});
    entries.push_back({"cusp", make_ideal(R2, {parse_polynomial("y^2-x^3", R2)}), {5, 7, 11}});

    bool ok = true;
    long disagreements = 0;
    for (const auto& e : entries) {
        long exact = krull_dimension(e.I);
        auto est = estimate_dimension(e.I, e.primes);
        if (est.estimate != exact) {
            ++disagreements;
            ok = false;
            std::printf("  concordance broke on %s: krull=%ld estimate=%ld\n", e.name.c_str(), exact,
                        est.estimate);
        }
    }
    std::ostringstream d;
    d << entries.size() << " ideals, " << disagreements << " disagreements";
    report(10, "oracle concordance", ok, d.str());
}

void criterion11() {
    constexpr int kCases = 200;
    size_t count = 0;
    const prop::Suite* table = prop::suites(count);
    long total = 0;
    std::ostringstream log;
    for (size_t i = 0; i < count; ++i) total += table[i].run(kCases, log);
    if (total) std::cout << log.str();
    std::ostringstream d;
    d << count << " suites x " << kCases << " cases, " << total << " failures";
    report(11, "randomized property suites", total == 0, d.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    std::printf("acceptance: %d/%d passed\n", g_passed, g_passed + g_failed);
    return g_failed == 0 ? 0 : 1;
}
