#include "shadowing/experiment_config.hpp"

#include <fstream>
#include <sstream>

#include "shadowing/certificate_io.hpp"

namespace shadowing {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    require(pos == s.size(), errc::parse_error, "trailing characters in number '" + s + "'");
    return v;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(errc::parse_error, "malformed number '" + s + "'");
  }
}

long long parse_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    require(pos == s.size(), errc::parse_error, "trailing characters in integer '" + s + "'");
    return v;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(errc::parse_error, "malformed integer '" + s + "'");
  }
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "system")
    system = value;
  else if (key == "method")
    method = value;
  else if (key == "schedule")
    schedule = value;
  else if (key == "splice")
    splice = value;
  else if (key == "window")
    window = parse_int(value);
  else if (key == "seed")
    seed = (std::uint64_t)parse_int(value);
  else if (key == "eps")
    eps = parse_double(value);
  else if (key == "tail_terms")
    tail_terms = parse_int(value);
  else if (key == "grid_step")
    grid_step = parse_double(value);
  else if (key == "out")
    out = value;
  else if (key == "cert")
    cert = value;
  else if (key == "expect")
    expect = value;
  else
    fail(errc::parse_error, "unknown config key '" + key + "'");
}

std::string ExperimentConfig::serialized() const {
  std::ostringstream os;
  os << "system = " << system << "\n";
  os << "method = " << method << "\n";
  os << "schedule = " << schedule << "\n";
  os << "splice = " << splice << "\n";
  os << "window = " << window << "\n";
  os << "seed = " << seed << "\n";
  os << "eps = " << format_sci(eps) << "\n";
  os << "tail_terms = " << tail_terms << "\n";
  os << "grid_step = " << format_sci(grid_step) << "\n";
  os << "out = " << out << "\n";
  os << "cert = " << cert << "\n";
  os << "expect = " << expect << "\n";
  return os.str();
}

ExperimentConfig ExperimentConfig::from_stream(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    require(eq != std::string::npos, errc::parse_error, "expected key = value, got '" + t + "'");
    cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), errc::io_error, "cannot open config file " + path);
  return from_stream(in);
}

SystemVariant parse_system(const std::string& descriptor) {
  if (descriptor == "cat") return HyperbolicToralMap::cat_map();
  auto colon = descriptor.find(':');
  require(colon != std::string::npos, errc::parse_error,
          "unknown system descriptor '" + descriptor + "'");
  std::string head = descriptor.substr(0, colon);
  std::string rest = descriptor.substr(colon + 1);
  if (head == "toral") {
    auto parts = split(rest, ',');
    require(parts.size() == 4, errc::parse_error, "toral system needs 4 integers");
    Mat2i m{parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2]), parse_int(parts[3])};
    return HyperbolicToralMap::from_matrix(m);
  }
  if (head == "sft") return Sft::load(rest);
  if (head == "northsouth") return NorthSouthCircleMap::from_parameter(parse_double(rest));
  fail(errc::parse_error, "unknown system descriptor '" + descriptor + "'");
}

ErrorSchedule parse_schedule(const std::string& descriptor) {
  auto colon = descriptor.find(':');
  require(colon != std::string::npos, errc::parse_error,
          "schedule must be kind:amplitude, got '" + descriptor + "'");
  ErrorSchedule sched;
  sched.kind = schedule_kind_from_name(descriptor.substr(0, colon));
  sched.amplitude = parse_double(descriptor.substr(colon + 1));
  require(sched.amplitude >= 0.0, errc::parse_error, "amplitude must be nonnegative");
  return sched;
}

TorusPoint parse_torus_anchor(const std::string& token) {
  auto parts = split(token, ':');
  require(parts.size() == 2, errc::parse_error, "torus anchor must be x:y, got '" + token + "'");
  return TorusPoint::normalized(parse_double(parts[0]), parse_double(parts[1]));
}

CirclePoint parse_circle_anchor(const NorthSouthCircleMap& map, const std::string& token) {
  if (token == "sink") return map.sink();
  if (token == "source") return map.source();
  return CirclePoint::normalized(parse_double(token));
}

SymbolicPoint parse_sft_anchor(const Sft& sft, const std::string& token) {
  require(token.rfind("per:", 0) == 0, errc::parse_error,
          "SFT anchor must be per:SYMBOLS, got '" + token + "'");
  std::vector<std::uint8_t> word;
  for (char c : token.substr(4)) {
    require(c >= '0' && c <= '9', errc::parse_error, "symbols must be digits");
    int s = c - '0';
    require(s < sft.alphabet_size(), errc::parse_error, "symbol out of range");
    word.push_back((std::uint8_t)s);
  }
  require(!word.empty(), errc::parse_error, "empty periodic word");
  SymbolicPoint p = SymbolicPoint::periodic(word);
  require(sft.admissible(p), errc::parse_error, "periodic word is not admissible");
  return p;
}

}  // namespace shadowing
