#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ag/json_io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using ag::OrderedJson;
using ag::Rational;

std::vector<Rational> parse_tuple(const std::string& text) {
    std::vector<Rational> out;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) out.push_back(ag::parse_rational(part));
    return out;
}

std::vector<long> parse_primes(const std::string& text) {
    std::vector<long> out;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) out.push_back(std::stol(part));
    return out;
}

void emit(const OrderedJson& j, const std::string& out_path) {
    if (out_path.empty())
        std::fputs(ag::dump_json(j).c_str(), stdout);
    else
        ag::write_json_file(out_path, j);
}

ag::Morphism blowup_chart(long) {
    ag::RingPtr r = ag::make_ring({"x", "y"});
    return ag::make_morphism(
        r, {ag::poly_var(r, 0), ag::poly_mul(ag::poly_var(r, 0), ag::poly_var(r, 1))});
}

struct Options {
    std::string out;
    std::string fiber;
    bool generic = false;
    std::string order = "grevlex";
    std::string primes = "5,7,11";
    long prime = 0;
    long level = 0;
    long restrict_scale = 0;
    bool restrict_set = false;
    long count = 0;
    long scale = -1;
    unsigned long long budget = ag::kDefaultOracleBudget;
    std::string audit_fiber;
    long codim = 0;
    std::vector<std::string> inputs;
};

int run(CLI::App& app, Options& opt) {
    auto* qtcheck = app.get_subcommand("qtcheck");
    auto* kernel = app.get_subcommand("kernel");
    auto* bphi = app.get_subcommand("bphi");
    auto* conormal = app.get_subcommand("conormal");
    auto* stratify = app.get_subcommand("stratify");
    auto* dim = app.get_subcommand("dim");
    auto* gb = app.get_subcommand("gb");
    auto* push = app.get_subcommand("push");
    auto* fourier = app.get_subcommand("fourier");
    auto* germrank = app.get_subcommand("germrank");
    auto* supportgerms = app.get_subcommand("supportgerms");
    auto* oracle = app.get_subcommand("oracle-dim");

    if (qtcheck->parsed()) {
        ag::Morphism phi = ag::morphism_from_json(ag::load_json_file(opt.inputs.at(0)));
        if (opt.generic) {
            OrderedJson j;
            j["generic_fiber_dimension"] = ag::generic_fiber_dimension(phi);
            j["source_dimension"] = (long)phi.n();
            emit(j, opt.out);
        } else {
            if (opt.fiber.empty())
                throw std::invalid_argument("qtcheck needs --fiber or --generic");
            emit(ag::qt_report_json(ag::qt_check_at(phi, parse_tuple(opt.fiber))), opt.out);
        }
    } else if (kernel->parsed()) {
        ag::Morphism phi = ag::morphism_from_json(ag::load_json_file(opt.inputs.at(0)));
        OrderedJson j;
        j["source_vars"] = phi.source->vars;
        OrderedJson gens = OrderedJson::array();
        for (const auto& v : ag::kernel_vector_fields(phi)) {
            OrderedJson row = OrderedJson::array();
            for (const auto& c : v) row.push_back(ag::poly_str(c));
            gens.push_back(row);
        }
        j["generators"] = gens;
        emit(j, opt.out);
    } else if (bphi->parsed()) {
        ag::Morphism phi = ag::morphism_from_json(ag::load_json_file(opt.inputs.at(0)));
        emit(ag::ideal_json(ag::b_phi_ideal(phi)), opt.out);
    } else if (conormal->parsed()) {
        ag::Ideal S = ag::ideal_from_json(ag::load_json_file(opt.inputs.at(0)));
        emit(ag::ideal_json(ag::conormal_ideal(S, opt.codim)), opt.out);
    } else if (stratify->parsed()) {
        ag::Morphism f = ag::morphism_from_json(ag::load_json_file(opt.inputs.at(0)));
        ag::StratifiedMorphism sm = ag::functorial_stratify(f);
        std::vector<long> primes = parse_primes(opt.primes);
        OrderedJson j = ag::stratified_morphism_json(sm);
        OrderedJson validation;
        validation["source"] = ag::validation_json(
            ag::validate_stratification(sm.source, primes, opt.budget));
        validation["target"] = ag::validation_json(
            ag::validate_stratification(sm.target, primes, opt.budget));
        j["validation"] = validation;
        if (!opt.audit_fiber.empty())
            j["audit"] = ag::audit_json(
                ag::coarse_and_vertical_audit(sm, parse_tuple(opt.audit_fiber)));
        emit(j, opt.out);
    } else if (dim->parsed()) {
        ag::Ideal I = ag::ideal_from_json(ag::load_json_file(opt.inputs.at(0)));
        OrderedJson j;
        j["dimension"] = ag::krull_dimension(I);
        emit(j, opt.out);
    } else if (gb->parsed()) {
        ag::Ideal I = ag::ideal_from_json(ag::load_json_file(opt.inputs.at(0)));
        ag::MonomialOrder order =
            opt.order == "lex" ? ag::MonomialOrder::lex() : ag::MonomialOrder::grevlex();
        OrderedJson j;
        j["vars"] = I.ring->vars;
        j["order"] = opt.order;
        OrderedJson basis = OrderedJson::array();
        for (const auto& g : ag::groebner_basis(I.gens, order)) basis.push_back(ag::poly_str(g));
        j["basis"] = basis;
        emit(j, opt.out);
    } else if (push->parsed()) {
        ag::LevelMeasure mu = ag::measure_from_json(ag::load_json_file(opt.inputs.at(0)));
        ag::Morphism phi = ag::morphism_from_json(ag::load_json_file(opt.inputs.at(1)));
        ag::LevelMeasure out = ag::pushforward(mu, phi);
        if (opt.restrict_set) out = ag::restrict_measure(out, opt.restrict_scale);
        emit(ag::measure_json(out), opt.out);
    } else if (fourier->parsed()) {
        ag::LevelMeasure mu = ag::measure_from_json(ag::load_json_file(opt.inputs.at(0)));
        if (opt.restrict_set) mu = ag::restrict_measure(mu, opt.restrict_scale);
        emit(ag::fourier_json(ag::fourier(mu)), opt.out);
    } else if (germrank->parsed() || supportgerms->parsed()) {
        bool rank_mode = germrank->parsed();
        std::vector<ag::LevelMeasure> family;
        if (opt.inputs.empty()) {
            if (opt.prime == 0 || opt.level == 0)
                throw std::invalid_argument("need measure files or --prime and --level");
            if (rank_mode) {
                long count = opt.count > 0 ? opt.count : opt.level + 1;
                for (long i = 0; i < count; ++i) {
                    ag::LevelMeasure m = ag::mu_n(opt.prime, opt.level, i);
                    family.push_back(ag::convolve(m, m));
                }
            } else {
                long scale = opt.scale >= 0 ? opt.scale : opt.level / 2;
                long count = opt.count > 0 ? opt.count : ag::pow_long(opt.prime, scale);
                ag::Morphism chart = blowup_chart(opt.prime);
                for (long y0 = 0; y0 < count; ++y0)
                    family.push_back(ag::pushforward(
                        ag::haar_ball(opt.prime, opt.level, 2, {0, y0}, scale, 1), chart));
            }
        } else {
            for (const auto& path : opt.inputs)
                family.push_back(ag::measure_from_json(ag::load_json_file(path)));
        }
        OrderedJson j;
        j["measures"] = (long)family.size();
        j["restrict"] = opt.restrict_scale;
        if (rank_mode)
            j["rank"] = ag::germ_rank(family, opt.restrict_scale);
        else
            j["germs"] = ag::support_germs(family, opt.restrict_scale);
        emit(j, opt.out);
    } else if (oracle->parsed()) {
        ag::Ideal I = ag::ideal_from_json(ag::load_json_file(opt.inputs.at(0)));
        emit(ag::dim_estimate_json(ag::estimate_dimension(I, parse_primes(opt.primes), opt.budget)),
             opt.out);
    } else {
        std::fputs(app.help().c_str(), stderr);
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations for polynomial morphisms, stratifications, and p-adic measures"};
    app.require_subcommand(0, 1);
    Options opt;

    int threads = 0;
    app.add_option("--threads", threads, "cap the number of worker threads");

    auto add_common = [&](CLI::App* cmd, int min_inputs, int max_inputs) {
        if (max_inputs != 0) {
            auto* o = cmd->add_option("inputs", opt.inputs, "input JSON files");
            o->expected(min_inputs, max_inputs);
            if (min_inputs > 0) o->required();
        }
        cmd->add_option("--out", opt.out, "write the report to a file instead of stdout");
    };

    auto* qtcheck = app.add_subcommand("qtcheck", "fiber dimension test for a polynomial map");
    add_common(qtcheck, 1, 1);
    qtcheck->add_option("--fiber", opt.fiber, "comma-separated rational fiber coordinates");
    qtcheck->add_flag("--generic", opt.generic, "report the generic fiber dimension instead");

    auto* kernel = app.add_subcommand("kernel", "kernel vector fields of the differential");
    add_common(kernel, 1, 1);

    auto* bphi = app.add_subcommand("bphi", "annihilator variety in the cotangent bundle");
    add_common(bphi, 1, 1);

    auto* conormal = app.add_subcommand("conormal", "conormal ideal of a complete intersection");
    add_common(conormal, 1, 1);
    conormal->add_option("--codim", opt.codim, "codimension of the stratum")->required();

    auto* stratify = app.add_subcommand("stratify", "functorial stratification of a map to the line");
    add_common(stratify, 1, 1);
    stratify->add_option("--audit-fiber", opt.audit_fiber, "audit tangency over this target point");
    stratify->add_option("--primes", opt.primes, "comma-separated primes for the counting checks");
    stratify->add_option("--oracle-budget", opt.budget, "point budget per counting check");

    auto* dim = app.add_subcommand("dim", "Krull dimension of an ideal");
    add_common(dim, 1, 1);

    auto* gb = app.add_subcommand("gb", "reduced Groebner basis");
    add_common(gb, 1, 1);
    gb->add_option("--order", opt.order, "monomial order")
        ->check(CLI::IsMember({"lex", "grevlex"}));

    auto* push = app.add_subcommand("push", "pushforward of a level measure along an integer map");
    add_common(push, 2, 2);
    CLI::Option* push_restrict =
        push->add_option("--restrict", opt.restrict_scale, "restrict the result to a ball p^N Z_p^d");

    auto* fourier = app.add_subcommand("fourier", "cyclotomic Fourier transform on the dual grid");
    add_common(fourier, 1, 1);
    CLI::Option* fourier_restrict =
        fourier->add_option("--restrict", opt.restrict_scale, "restrict the measure first");

    auto* germrank = app.add_subcommand("germrank", "rank of restricted measures over Q");
    add_common(germrank, 0, 64);
    germrank->add_option("--restrict", opt.restrict_scale, "restriction scale N")->required();
    germrank->add_option("--prime", opt.prime, "build the convolution-square family at this prime");
    germrank->add_option("--level", opt.level, "level k for the built-in family");
    germrank->add_option("--count", opt.count, "number of family members");

    auto* supportgerms = app.add_subcommand("supportgerms", "distinct support germs in a ball");
    add_common(supportgerms, 0, 64);
    supportgerms->add_option("--restrict", opt.restrict_scale, "restriction scale N")->required();
    supportgerms->add_option("--prime", opt.prime, "build the direction-ball family at this prime");
    supportgerms->add_option("--level", opt.level, "level k for the built-in family");
    supportgerms->add_option("--count", opt.count, "number of family members");
    supportgerms->add_option("--scale", opt.scale, "ball scale for the built-in family");

    auto* oracle = app.add_subcommand("oracle-dim", "dimension estimate by counting points mod p");
    add_common(oracle, 1, 1);
    oracle->add_option("--primes", opt.primes, "comma-separated primes");
    oracle->add_option("--oracle-budget", opt.budget, "enumeration budget per prime");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif
    opt.restrict_set = push_restrict->count() > 0 || fourier_restrict->count() > 0;

    try {
        return run(app, opt);
    } catch (const ag::ResourceLimit& e) {
        std::fprintf(stderr, "resource limit: %s\n", e.what());
        return 3;
    } catch (const ag::BudgetExceeded& e) {
        std::fprintf(stderr, "resource limit: %s\n", e.what());
        return 3;
    } catch (const std::overflow_error& e) {
        std::fprintf(stderr, "resource limit: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    }
}
