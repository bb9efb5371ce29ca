#pragma once

#include "darboux/darboux.hpp"
#include "dynamics/dynamics.hpp"
#include "locus/locus.hpp"
#include "stieltjes/stieltjes.hpp"

#include <json.hpp>

#include <string>

namespace sextic::io {

using Json = nlohmann::json;  // std::map objects, so keys come out sorted

/// Decimal string with enough digits to read back bit-exactly.
std::string encode(const Real& x);
Json encode(const BigComplex& z);
Json encode(const Poly& p);  // {"<degree>": {"re", "im"}} for nonzero coefficients

/// Parses a decimal string (or a JSON number) at the working precision.
Real decode_real(const Json& j);
BigComplex decode_complex(const Json& j);
Poly decode_poly(const Json& j);

Json potential_to_json(const RationalPotential& v, const Json& meta = Json::object());
RationalPotential potential_from_json(const Json& j);

Json config_to_json(const locus::PoleConfiguration& c);
locus::PoleConfiguration config_from_json(const Json& j);

Json psi_to_json(const QuasiRationalFunction& psi);
QuasiRationalFunction psi_from_json(const Json& j);

Json state_to_json(const dynamics::DynamicsState& s);
dynamics::DynamicsState state_from_json(const Json& j);

Json spectrum_to_json(const qes::QESSpectrum& s);
Json report_to_json(const locus::LocusReport& r);
Json solve_to_json(const locus::SolveResult& r);
Json continuation_to_json(const locus::ContinuationResult& r);
Json descendant_to_json(const darboux::DarbouxDescendant& d, const locus::LocusReport& monodromy,
                        const darboux::ZeroAudit& audit);
Json membership_to_json(const darboux::MembershipReport& r);
Json stieltjes_report_to_json(const stieltjes::StieltjesReport& r);
Json stieltjes_solve_to_json(const stieltjes::StieltjesSolve& r);
Json implication_to_json(const stieltjes::ImplicationReport& r);
Json shape_sweep_to_json(const stieltjes::ShapeSweep& r);

/// t, re/im of each z, phase re/im, H re/im, H~ re/im, max CM residual.
std::string trajectory_csv(const dynamics::Trajectory& tr, int digits = 20);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

/// Reads and parses a JSON file; throws Parse on failure.
Json read_file(const std::string& path);

}  // namespace sextic::io
