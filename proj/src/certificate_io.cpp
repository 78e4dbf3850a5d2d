#include "shadowing/certificate_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

namespace shadowing {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::two_sided_limit_shadowed: return "two_sided_limit_shadowed";
    case Verdict::limit_shadowed: return "limit_shadowed";
    case Verdict::negative_limit_shadowed: return "negative_limit_shadowed";
    case Verdict::eps_shadowed: return "eps_shadowed";
  }
  return "eps_shadowed";
}

Verdict verdict_from_name(const std::string& name) {
  if (name == "two_sided_limit_shadowed") return Verdict::two_sided_limit_shadowed;
  if (name == "limit_shadowed") return Verdict::limit_shadowed;
  if (name == "negative_limit_shadowed") return Verdict::negative_limit_shadowed;
  if (name == "eps_shadowed") return Verdict::eps_shadowed;
  fail(errc::parse_error, "unknown verdict '" + name + "'");
}

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

// ---------------------------------------------------------------------------
// points
// ---------------------------------------------------------------------------

nlohmann::json point_to_json(const TorusPoint& p) { return nlohmann::json::array({p.x, p.y}); }
nlohmann::json point_to_json(const CirclePoint& p) { return p.x; }

namespace {

nlohmann::json tail_to_json(const SymbolicPoint::Tail& tail) {
  if (const auto* per = std::get_if<SymbolicPoint::PeriodicTail>(&tail))
    return {{"kind", "periodic"}, {"word", per->word}};
  const auto& a = std::get<SymbolicPoint::AnchorTail>(tail);
  return {{"kind", "anchor"}, {"offset", a.offset}, {"ref", point_to_json(*a.ref)}};
}

SymbolicPoint::Tail tail_from_json(const nlohmann::json& j) {
  if (j.at("kind") == "periodic")
    return SymbolicPoint::PeriodicTail{j.at("word").get<std::vector<std::uint8_t>>()};
  if (j.at("kind") == "anchor")
    return SymbolicPoint::AnchorTail{
        std::make_shared<const SymbolicPoint>(symbolic_point_from_json(j.at("ref"))),
        j.at("offset").get<long long>()};
  fail(errc::parse_error, "unknown tail kind");
}

}  // namespace

nlohmann::json point_to_json(const SymbolicPoint& p) {
  return {{"lo", p.lo()},
          {"word", p.word()},
          {"left", tail_to_json(p.left_tail())},
          {"right", tail_to_json(p.right_tail())}};
}

TorusPoint torus_point_from_json(const nlohmann::json& j) {
  require(j.is_array() && j.size() == 2, errc::parse_error, "torus point must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

CirclePoint circle_point_from_json(const nlohmann::json& j) { return {j.get<double>()}; }

SymbolicPoint symbolic_point_from_json(const nlohmann::json& j) {
  return SymbolicPoint(j.at("lo").get<long long>(),
                       j.at("word").get<std::vector<std::uint8_t>>(),
                       tail_from_json(j.at("left")), tail_from_json(j.at("right")));
}

// ---------------------------------------------------------------------------
// certificates
// ---------------------------------------------------------------------------

nlohmann::json certificate_to_json(const NonShadowCertificate& cert,
                                   const std::string& system_descriptor) {
  nlohmann::json j;
  j["schema"] = kNonShadowCertificateSchema;
  j["system"] = system_descriptor;
  j["eps"] = cert.eps;
  j["window"] = cert.window;
  j["grid_step"] = cert.grid_step;
  j["slack"] = cert.slack;
  j["candidate_count"] = cert.candidate_count;
  j["violation_index"] = cert.violation_index;
  j["violation_magnitude"] = cert.violation_magnitude;
  j["conclusion"] = "no candidate point eps-shadows the pseudo-orbit over the window";
  return j;
}

template <class Point>
void write_deviation_csv(std::ostream& out, const ShadowCertificate<Point>& cert,
                         const std::string& system_descriptor) {
  out << "# " << kShadowCertificateSchema;
  if (!system_descriptor.empty()) out << " system=" << system_descriptor;
  out << " verdict=" << verdict_name(cert.verdict) << "\n";
  out << "i,error,deviation\n";
  for (long long i = -cert.window; i <= cert.window; ++i)
    out << i << "," << format_sci(cert.errors[(std::size_t)(i + cert.window)]) << ","
        << format_sci(cert.deviation_at(i)) << "\n";
}

template void write_deviation_csv<TorusPoint>(std::ostream&,
                                              const ShadowCertificate<TorusPoint>&,
                                              const std::string&);
template void write_deviation_csv<CirclePoint>(std::ostream&,
                                               const ShadowCertificate<CirclePoint>&,
                                               const std::string&);
template void write_deviation_csv<SymbolicPoint>(std::ostream&,
                                                 const ShadowCertificate<SymbolicPoint>&,
                                                 const std::string&);

// ---------------------------------------------------------------------------
// pseudo-orbit CSV (smooth systems)
// ---------------------------------------------------------------------------

namespace {

std::string tail_descriptor(const TailSpec& tail) {
  if (tail.exact()) return "exact";
  std::ostringstream os;
  os << "scheduled kind=" << schedule_kind_name(tail.schedule.kind)
     << " amplitude=" << format_sci(tail.schedule.amplitude) << " seed=" << tail.seed;
  return os.str();
}

TailSpec tail_from_descriptor(const std::string& line) {
  std::istringstream is(line);
  std::string head;
  is >> head;
  if (head == "exact") return TailSpec::exact_orbit();
  require(head == "scheduled", errc::parse_error, "unknown tail descriptor '" + line + "'");
  ErrorSchedule sched;
  std::uint64_t seed = 0;
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    require(eq != std::string::npos, errc::parse_error, "malformed tail field '" + tok + "'");
    std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
    if (key == "kind")
      sched.kind = schedule_kind_from_name(value);
    else if (key == "amplitude")
      sched.amplitude = std::stod(value);
    else if (key == "seed")
      seed = std::stoull(value);
    else
      fail(errc::parse_error, "unknown tail field '" + key + "'");
  }
  return TailSpec::scheduled(sched, seed);
}

template <class S>
void write_po_csv(std::ostream& out, const PseudoOrbit<S>& po, bool torus) {
  const long long W = po.window_radius();
  out << "# " << kPseudoOrbitSchema << " system=" << po.system().descriptor() << " W=" << W
      << "\n";
  out << "# left_tail=" << tail_descriptor(po.left_tail()) << "\n";
  out << "# right_tail=" << tail_descriptor(po.right_tail()) << "\n";
  out << (torus ? "i,x,y,error\n" : "i,x,error\n");
  std::vector<double> errs = po.errors(-W, W);
  for (long long i = -W; i <= W; ++i) {
    auto p = po.point(i);
    out << i << ",";
    if constexpr (std::is_same_v<typename S::Point, TorusPoint>) {
      out << format_sci(p.x) << "," << format_sci(p.y);
    } else {
      out << format_sci(p.x);
    }
    out << "," << format_sci(errs[(std::size_t)(i + W)]) << "\n";
  }
}

struct PoHeader {
  std::string system;
  long long W = 0;
  TailSpec left, right;
};

PoHeader read_po_header(std::istream& in, std::string& columns) {
  PoHeader h;
  std::string line;
  require(bool(std::getline(in, line)), errc::parse_error, "empty pseudo-orbit file");
  {
    std::istringstream is(line);
    std::string hash, schema, tok;
    is >> hash >> schema;
    require(hash == "#" && schema == kPseudoOrbitSchema, errc::parse_error,
            "not a pseudo-orbit file");
    while (is >> tok) {
      auto eq = tok.find('=');
      require(eq != std::string::npos, errc::parse_error, "malformed header field");
      std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
      if (key == "system")
        h.system = value;
      else if (key == "W")
        h.W = std::stoll(value);
      else
        fail(errc::parse_error, "unknown header field '" + key + "'");
    }
  }
  auto read_tail = [&](const char* prefix) {
    require(bool(std::getline(in, line)), errc::parse_error, "truncated header");
    const std::string want = std::string("# ") + prefix + "=";
    require(line.rfind(want, 0) == 0, errc::parse_error, "expected " + want);
    return tail_from_descriptor(line.substr(want.size()));
  };
  h.left = read_tail("left_tail");
  h.right = read_tail("right_tail");
  require(bool(std::getline(in, columns)), errc::parse_error, "missing column header");
  return h;
}

}  // namespace

void write_pseudo_orbit_csv(std::ostream& out, const PseudoOrbit<HyperbolicToralMap>& po) {
  write_po_csv(out, po, true);
}
void write_pseudo_orbit_csv(std::ostream& out, const PseudoOrbit<NorthSouthCircleMap>& po) {
  write_po_csv(out, po, false);
}

PseudoOrbit<HyperbolicToralMap> read_pseudo_orbit_csv(const HyperbolicToralMap& sys,
                                                      std::istream& in) {
  std::string columns;
  PoHeader h = read_po_header(in, columns);
  require(h.system == sys.descriptor(), errc::dimension_mismatch,
          "file was written for system " + h.system);
  require(columns == "i,x,y,error", errc::parse_error, "unexpected columns");
  std::vector<TorusPoint> window((std::size_t)(2 * h.W + 1));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    long long i;
    double x, y;
    require(std::sscanf(line.c_str(), "%" SCNd64 ",%lf,%lf", (std::int64_t*)&i, &x, &y) == 3,
            errc::parse_error, "malformed row '" + line + "'");
    require(i >= -h.W && i <= h.W, errc::parse_error, "row index outside window");
    window[(std::size_t)(i + h.W)] = TorusPoint{x, y};
  }
  return PseudoOrbit<HyperbolicToralMap>(sys, std::move(window), h.left, h.right);
}

PseudoOrbit<NorthSouthCircleMap> read_pseudo_orbit_csv(const NorthSouthCircleMap& sys,
                                                       std::istream& in) {
  std::string columns;
  PoHeader h = read_po_header(in, columns);
  require(h.system == sys.descriptor(), errc::dimension_mismatch,
          "file was written for system " + h.system);
  require(columns == "i,x,error", errc::parse_error, "unexpected columns");
  std::vector<CirclePoint> window((std::size_t)(2 * h.W + 1));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    long long i;
    double x;
    require(std::sscanf(line.c_str(), "%" SCNd64 ",%lf", (std::int64_t*)&i, &x) == 2,
            errc::parse_error, "malformed row '" + line + "'");
    require(i >= -h.W && i <= h.W, errc::parse_error, "row index outside window");
    window[(std::size_t)(i + h.W)] = CirclePoint{x};
  }
  return PseudoOrbit<NorthSouthCircleMap>(sys, std::move(window), h.left, h.right);
}

// ---------------------------------------------------------------------------
// pseudo-orbit JSON
// ---------------------------------------------------------------------------

namespace {

nlohmann::json tailspec_to_json(const TailSpec& tail) {
  if (tail.exact()) return {{"kind", "exact"}};
  return {{"kind", "scheduled"},
          {"schedule", schedule_kind_name(tail.schedule.kind)},
          {"amplitude", tail.schedule.amplitude},
          {"seed", tail.seed}};
}

TailSpec tailspec_from_json(const nlohmann::json& j) {
  if (j.at("kind") == "exact") return TailSpec::exact_orbit();
  require(j.at("kind") == "scheduled", errc::parse_error, "unknown tail kind");
  ErrorSchedule sched{schedule_kind_from_name(j.at("schedule").get<std::string>()),
                      j.at("amplitude").get<double>()};
  return TailSpec::scheduled(sched, j.at("seed").get<std::uint64_t>());
}

}  // namespace

template <class S>
nlohmann::json pseudo_orbit_to_json(const PseudoOrbit<S>& po) {
  const long long W = po.window_radius();
  nlohmann::json pts = nlohmann::json::array();
  for (long long i = -W; i <= W; ++i) pts.push_back(point_to_json(po.point(i)));
  return {{"schema", kPseudoOrbitSchema},
          {"system", po.system().descriptor()},
          {"W", W},
          {"left_tail", tailspec_to_json(po.left_tail())},
          {"right_tail", tailspec_to_json(po.right_tail())},
          {"points", pts}};
}

template nlohmann::json pseudo_orbit_to_json<HyperbolicToralMap>(
    const PseudoOrbit<HyperbolicToralMap>&);
template nlohmann::json pseudo_orbit_to_json<NorthSouthCircleMap>(
    const PseudoOrbit<NorthSouthCircleMap>&);
template nlohmann::json pseudo_orbit_to_json<Sft>(const PseudoOrbit<Sft>&);

PseudoOrbit<Sft> pseudo_orbit_from_json(const Sft& sys, const nlohmann::json& j) {
  require(j.at("schema") == kPseudoOrbitSchema, errc::parse_error, "not a pseudo-orbit");
  require(j.at("system") == sys.descriptor(), errc::dimension_mismatch,
          "file was written for a different system");
  const long long W = j.at("W").get<long long>();
  std::vector<SymbolicPoint> window;
  for (const auto& p : j.at("points")) window.push_back(symbolic_point_from_json(p));
  require((long long)window.size() == 2 * W + 1, errc::parse_error, "point count mismatch");
  return PseudoOrbit<Sft>(sys, std::move(window), tailspec_from_json(j.at("left_tail")),
                          tailspec_from_json(j.at("right_tail")));
}

}  // namespace shadowing
