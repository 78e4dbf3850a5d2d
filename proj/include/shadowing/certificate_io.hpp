#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "shadowing/certificate.hpp"
#include "shadowing/pseudo_orbit.hpp"
#include "shadowing/sft.hpp"
#include "shadowing/systems.hpp"

namespace shadowing {

// schema versions embedded in every output file
inline constexpr const char* kShadowCertificateSchema = "shadow-certificate/1";
inline constexpr const char* kNonShadowCertificateSchema = "nonshadow-certificate/1";
inline constexpr const char* kPseudoOrbitSchema = "pseudo-orbit/1";

// scientific notation with 17 significant digits; round-trips doubles exactly
std::string format_sci(double v);

nlohmann::json point_to_json(const TorusPoint& p);
nlohmann::json point_to_json(const CirclePoint& p);
nlohmann::json point_to_json(const SymbolicPoint& p);

TorusPoint torus_point_from_json(const nlohmann::json& j);
CirclePoint circle_point_from_json(const nlohmann::json& j);
SymbolicPoint symbolic_point_from_json(const nlohmann::json& j);

template <class Point>
nlohmann::json certificate_to_json(const ShadowCertificate<Point>& cert,
                                   const std::string& system_descriptor) {
  nlohmann::json j;
  j["schema"] = kShadowCertificateSchema;
  j["system"] = system_descriptor;
  j["window"] = cert.window;
  j["verdict"] = verdict_name(cert.verdict);
  j["eps"] = cert.eps;
  j["orbit_residual"] = cert.orbit_residual;
  j["truncation_bound"] = cert.truncation_bound;
  j["forward_tail"] = {{"coeff", cert.forward_tail.coeff}, {"rate", cert.forward_tail.rate}};
  j["backward_tail"] = {{"coeff", cert.backward_tail.coeff}, {"rate", cert.backward_tail.rate}};
  j["shadow_point"] = point_to_json(cert.shadow_point);
  j["deviations"] = cert.deviations;
  j["errors"] = cert.errors;
  if (!cert.note.empty()) j["note"] = cert.note;
  return j;
}

nlohmann::json certificate_to_json(const NonShadowCertificate& cert,
                                   const std::string& system_descriptor);

// rows (i, error, deviation), 17 significant digits; a schema comment line
// identifies the certificate version the table belongs to
template <class Point>
void write_deviation_csv(std::ostream& out, const ShadowCertificate<Point>& cert,
                         const std::string& system_descriptor = "");

// ---------------------------------------------------------------------------
// pseudo-orbit serialization
// ---------------------------------------------------------------------------

// CSV with header comments carrying the tail descriptors (columns
// i, coords..., error); smooth systems only
void write_pseudo_orbit_csv(std::ostream& out, const PseudoOrbit<HyperbolicToralMap>& po);
void write_pseudo_orbit_csv(std::ostream& out, const PseudoOrbit<NorthSouthCircleMap>& po);
PseudoOrbit<HyperbolicToralMap> read_pseudo_orbit_csv(const HyperbolicToralMap& sys,
                                                      std::istream& in);
PseudoOrbit<NorthSouthCircleMap> read_pseudo_orbit_csv(const NorthSouthCircleMap& sys,
                                                       std::istream& in);

// JSON carries any system's pseudo-orbit, including symbolic ones (points
// and tails serialized by descriptor, never expanded)
template <class S>
nlohmann::json pseudo_orbit_to_json(const PseudoOrbit<S>& po);
PseudoOrbit<Sft> pseudo_orbit_from_json(const Sft& sys, const nlohmann::json& j);

}  // namespace shadowing
