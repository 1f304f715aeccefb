#pragma once

#include <string>

#include "json.hpp"

#include "ag/fq.hpp"
#include "ag/morphism.hpp"
#include "ag/padic.hpp"
#include "ag/stratify.hpp"

namespace ag {

using OrderedJson = nlohmann::ordered_json;

OrderedJson ideal_json(const Ideal& I);
Ideal ideal_from_json(const OrderedJson& j);

OrderedJson morphism_json(const Morphism& phi);
Morphism morphism_from_json(const OrderedJson& j);

OrderedJson qt_report_json(const QTReport& rep);

OrderedJson strat_json(const StratDatum& D);
StratDatum strat_from_json(const OrderedJson& j);

OrderedJson stratified_morphism_json(const StratifiedMorphism& sm);
StratifiedMorphism stratified_morphism_from_json(const OrderedJson& j);

OrderedJson validation_json(const ValidationReport& rep);
OrderedJson audit_json(const CoarseVerticalReport& rep);
OrderedJson dim_estimate_json(const DimEstimate& est);

OrderedJson measure_json(const LevelMeasure& mu);
LevelMeasure measure_from_json(const OrderedJson& j);

OrderedJson fourier_json(const FourierTable& t);

// Canonical serialization: two-space indent, one trailing newline.
std::string dump_json(const OrderedJson& j);
OrderedJson load_json_file(const std::string& path);
void write_json_file(const std::string& path, const OrderedJson& j);

}  // namespace ag
