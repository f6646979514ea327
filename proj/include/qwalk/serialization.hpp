#pragma once

// JSON (sorted keys, shortest round-trip doubles) and CSV encodings of the
// library's result types.

#include <ostream>
#include <string>

#include <json.hpp>

#include "qwalk/checks.hpp"
#include "qwalk/invariant_reduction.hpp"
#include "qwalk/pipeline.hpp"
#include "qwalk/spectral_analysis.hpp"
#include "qwalk/special_cases.hpp"
#include "qwalk/verification.hpp"
#include "qwalk/walk_dynamics.hpp"

namespace qwalk {

using Json = nlohmann::json;

// Shortest decimal that parses back to the same double.
std::string format_double(double value);

Json to_json(const UcpgConfig& config);
Json to_json(const Matrix3d& m);
Json to_json(const ReducedHamiltonian& reduced);
Json to_json(const SpectralData& spectral);
Json to_json(const PeakReport& peak);
Json to_json(const SubspaceCertificate& cert);
Json to_json(const Check& check);
Json to_json(const CaseReport& report);
Json to_json(const PowerLawFit& fit);
Json to_json(const PipelineBundle& bundle);
Json to_json(const VerificationBundle& bundle);

// reduce-command payload: H_ra, spectral data, T_run, P_O.
Json reduction_report(const UcpgConfig& config);

// Header "t,p_success", LF endings.
void write_csv(std::ostream& os, const EvolutionSeries& series);
std::string to_csv(const EvolutionSeries& series);

}  // namespace qwalk
