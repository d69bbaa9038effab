#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "vdclab/lattice.hpp"
#include "vdclab/mps.hpp"
#include "vdclab/spectral.hpp"
#include "vdclab/synthesis.hpp"
#include "vdclab/window.hpp"

namespace vdclab::io {

using nlohmann::json;

json domain_to_json(const ValueDomain& d);
ValueDomain domain_from_json(const json& j);

// Windows: CSV rows are "coords..., re, im" with a header comment carrying
// the region and domain tag; ingestion without the header infers both.
void window_to_csv(const SequenceWindow& w, std::ostream& os);
SequenceWindow window_from_csv(std::istream& is);
json window_to_json(const SequenceWindow& w);
SequenceWindow window_from_json(const json& j);

// Point sets: JSON array of coordinate arrays; CSV one point per row.
json set_to_json(const FiniteLatticeSet& s);
FiniteLatticeSet set_from_json(const json& j);
FiniteLatticeSet set_from_csv(std::istream& is);

json spec_to_json(const CorrelationSpec& spec);
CorrelationSpec spec_from_json(const json& j);

json mps_to_json(const FiniteMps& m);
FiniteMps mps_from_json(const json& j);

json weyl_report_to_json(const WeylReport& r);
json synthesis_report_to_json(const SynthesisResult& r);
json ifc_report_to_json(const IfcResult& r);
json evidence_report_to_json(const EvidenceReport& r);
json certificate_to_json(const CosineCertificate& c);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace vdclab::io
