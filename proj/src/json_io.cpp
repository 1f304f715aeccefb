#include "ag/json_io.hpp"

#include <fstream>
#include <sstream>

namespace ag {

namespace {

OrderedJson gens_json(const Ideal& I) {
    OrderedJson a = OrderedJson::array();
    for (const auto& g : I.gens)
        if (!g.is_zero()) a.push_back(poly_str(g));
    return a;
}

Ideal gens_from_json(const OrderedJson& a, const RingPtr& ring) {
    std::vector<Polynomial> gens;
    for (const auto& s : a) gens.push_back(parse_polynomial(s.get<std::string>(), ring));
    return make_ideal(ring, gens);
}

std::vector<std::string> names_from_json(const OrderedJson& a) {
    std::vector<std::string> names;
    for (const auto& s : a) names.push_back(s.get<std::string>());
    return names;
}

const OrderedJson& field(const OrderedJson& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
    return *it;
}

StratDatum strat_from_json_over(const OrderedJson& j, const RingPtr& ring) {
    const OrderedJson& pj = field(j, "poset");
    std::vector<std::string> elements = names_from_json(field(pj, "elements"));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& pr : field(pj, "pairs"))
        pairs.emplace_back(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
    Poset poset = make_poset(elements, pairs);

    std::map<std::string, Piece> pieces;
    for (const auto& [label, body] : field(j, "pieces").items())
        pieces[label] = Piece{gens_from_json(field(body, "closed"), ring),
                              gens_from_json(field(body, "excluded"), ring)};

    if (j.contains("ambient"))
        return make_strat_datum(ring, std::move(poset), std::move(pieces),
                                gens_from_json(j["ambient"], ring));
    return make_strat_datum(ring, std::move(poset), std::move(pieces));
}

}  // namespace

OrderedJson ideal_json(const Ideal& I) {
    OrderedJson j;
    j["vars"] = I.ring->vars;
    j["generators"] = gens_json(I);
    return j;
}

Ideal ideal_from_json(const OrderedJson& j) {
    RingPtr ring = make_ring(names_from_json(field(j, "vars")));
    return gens_from_json(field(j, "generators"), ring);
}

OrderedJson morphism_json(const Morphism& phi) {
    OrderedJson j;
    j["source_vars"] = phi.source->vars;
    OrderedJson comps = OrderedJson::array();
    for (const auto& g : phi.components) comps.push_back(poly_str(g));
    j["components"] = comps;
    return j;
}

Morphism morphism_from_json(const OrderedJson& j) {
    RingPtr ring = make_ring(names_from_json(field(j, "source_vars")));
    std::vector<Polynomial> comps;
    for (const auto& s : field(j, "components"))
        comps.push_back(parse_polynomial(s.get<std::string>(), ring));
    return make_morphism(ring, comps);
}

OrderedJson qt_report_json(const QTReport& rep) {
    OrderedJson j;
    OrderedJson fib = OrderedJson::array();
    for (const auto& c : rep.fiber) fib.push_back(rational_str(c));
    j["fiber"] = fib;
    j["fiber_dimension"] = rep.fiber_dimension;
    j["source_dimension"] = rep.source_dimension;
    j["verdict"] = rep.verdict;
    return j;
}

OrderedJson strat_json(const StratDatum& D) {
    OrderedJson j;
    j["vars"] = D.ring->vars;
    j["ambient"] = gens_json(D.ambient);
    OrderedJson pj;
    pj["elements"] = D.poset.elements;
    OrderedJson pairs = OrderedJson::array();
    for (const auto& a : D.poset.elements)
        for (const auto& b : D.poset.elements)
            if (a != b && D.poset.less_eq(a, b)) pairs.push_back(OrderedJson::array({a, b}));
    pj["pairs"] = pairs;
    j["poset"] = pj;
    OrderedJson pieces = OrderedJson::object();
    for (const auto& label : D.poset.elements) {
        const Piece& pc = D.pieces.at(label);
        OrderedJson body;
        body["closed"] = gens_json(pc.closed);
        body["excluded"] = gens_json(pc.excluded);
        pieces[label] = body;
    }
    j["pieces"] = pieces;
    return j;
}

StratDatum strat_from_json(const OrderedJson& j) {
    return strat_from_json_over(j, make_ring(names_from_json(field(j, "vars"))));
}

OrderedJson stratified_morphism_json(const StratifiedMorphism& sm) {
    OrderedJson j;
    j["morphism"] = morphism_json(sm.phi);
    j["source"] = strat_json(sm.source);
    j["target"] = strat_json(sm.target);
    OrderedJson alpha = OrderedJson::object();
    for (const auto& label : sm.source.poset.elements) alpha[label] = sm.alpha.at(label);
    j["alpha"] = alpha;
    return j;
}

StratifiedMorphism stratified_morphism_from_json(const OrderedJson& j) {
    Morphism phi = morphism_from_json(field(j, "morphism"));
    StratDatum source = strat_from_json_over(field(j, "source"), phi.source);
    StratDatum target = strat_from_json(field(j, "target"));
    if ((size_t)target.ring->nvars() != phi.m())
        throw std::invalid_argument("target stratification dimension does not match the map");
    std::map<std::string, std::string> alpha;
    for (const auto& [s, t] : field(j, "alpha").items()) alpha[s] = t.get<std::string>();
    return make_stratified_morphism(std::move(phi), std::move(source), std::move(target),
                                    std::move(alpha));
}

namespace {

OrderedJson check_json(const CheckResult& c) {
    OrderedJson j;
    j["ok"] = c.ok;
    j["advisory"] = c.advisory;
    j["issues"] = c.issues;
    return j;
}

}  // namespace

OrderedJson validation_json(const ValidationReport& rep) {
    OrderedJson j;
    j["disjoint"] = check_json(rep.disjoint);
    j["covering"] = check_json(rep.covering);
    j["continuity"] = check_json(rep.continuity);
    j["ok"] = rep.ok();
    return j;
}

OrderedJson audit_json(const CoarseVerticalReport& rep) {
    OrderedJson j;
    OrderedJson strata = OrderedJson::array();
    for (const auto& s : rep.strata) {
        OrderedJson e;
        e["label"] = s.label;
        e["audited"] = s.audited;
        e["note"] = s.note;
        strata.push_back(e);
    }
    j["strata"] = strata;
    j["all_audited"] = rep.all_audited;
    j["verticallyExtendable"] = rep.verticallyExtendable;
    j["coarse"] = rep.coarse;
    j["strongThom"] = rep.strongThom;
    return j;
}

OrderedJson dim_estimate_json(const DimEstimate& est) {
    OrderedJson j;
    j["estimate"] = est.estimate;
    j["consistent"] = est.consistent;
    OrderedJson counts = OrderedJson::array();
    for (const auto& c : est.counts) {
        OrderedJson e;
        e["q"] = c.q;
        e["count"] = c.count;
        counts.push_back(e);
    }
    j["counts"] = counts;
    return j;
}

namespace {

std::string coset_key(const std::vector<long>& x) {
    std::string s;
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(x[i]);
    }
    return s;
}

std::vector<long> coset_from_key(const std::string& s) {
    std::vector<long> x;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) x.push_back(std::stol(part));
    return x;
}

}  // namespace

OrderedJson measure_json(const LevelMeasure& mu) {
    OrderedJson j;
    j["p"] = mu.win.p;
    j["k"] = mu.win.k;
    j["d"] = mu.win.d;
    OrderedJson vals = OrderedJson::object();
    for (const auto& [key, mass] : mu.values) vals[coset_key(key)] = rational_str(mass);
    j["values"] = vals;
    return j;
}

LevelMeasure measure_from_json(const OrderedJson& j) {
    LevelMeasure mu = make_measure(make_window(field(j, "p").get<long>(), field(j, "k").get<long>(),
                                               field(j, "d").get<long>()));
    for (const auto& [key, val] : field(j, "values").items()) {
        std::vector<long> coset = coset_from_key(key);
        if ((long)coset.size() != mu.win.d)
            throw std::invalid_argument("coset key \"" + key + "\" has the wrong length");
        add_mass(mu, coset, parse_rational(val.get<std::string>()));
    }
    return mu;
}

OrderedJson fourier_json(const FourierTable& t) {
    long pk = pow_long(t.win.p, t.win.k);
    OrderedJson j;
    j["p"] = t.win.p;
    j["k"] = t.win.k;
    j["d"] = t.win.d;
    j["zeta_order"] = pk;
    OrderedJson vals = OrderedJson::array();
    std::vector<long> u(t.win.d, 0);
    for (size_t idx = 0; idx < t.values.size(); ++idx) {
        const CyclotomicNumber& c = t.values[idx];
        OrderedJson e;
        OrderedJson b = OrderedJson::array();
        for (long ui : u) {
            Rational r(ui, pk);
            r.canonicalize();
            b.push_back(rational_str(r));
        }
        e["b"] = b;
        OrderedJson coeffs = OrderedJson::array();
        for (const auto& co : c.coeffs) coeffs.push_back(rational_str(co));
        e["coeffs"] = coeffs;
        bool rational = true;
        for (size_t i = 1; i < c.coeffs.size(); ++i) rational = rational && c.coeffs[i] == 0;
        if (rational) e["rational"] = rational_str(c.coeffs[0]);
        vals.push_back(e);
        long i = t.win.d - 1;
        while (i >= 0 && ++u[i] == pk) u[i--] = 0;
    }
    j["values"] = vals;
    return j;
}

std::string dump_json(const OrderedJson& j) { return j.dump(2) + "\n"; }

OrderedJson load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return OrderedJson::parse(in);
}

void write_json_file(const std::string& path, const OrderedJson& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << dump_json(j);
}

}  // namespace ag
