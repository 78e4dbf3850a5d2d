#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "shadowing/analysis.hpp"
#include "shadowing/certificate_io.hpp"
#include "shadowing/certify.hpp"
#include "shadowing/experiment_config.hpp"
#include "shadowing/pipeline.hpp"
#include "shadowing/shadow_linear.hpp"
#include "shadowing/shadow_sft.hpp"
#include "shadowing/suites.hpp"

namespace {

using namespace shadowing;

constexpr int kExitOk = 0;
constexpr int kExitVerdictMismatch = 1;
constexpr int kExitUsage = 2;

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  require(bool(out), errc::io_error, "cannot write " + path);
  out << contents;
}

template <class S>
PseudoOrbit<S> build_pseudo_orbit(const S& sys, const ExperimentConfig& cfg,
                                  const typename S::Point& default_seed) {
  if (!cfg.splice.empty()) {
    auto comma = cfg.splice.find(',');
    require(comma != std::string::npos, errc::parse_error,
            "splice must name two anchors 'past,future'");
    std::string past = cfg.splice.substr(0, comma);
    std::string future = cfg.splice.substr(comma + 1);
    typename S::Point a{}, b{};
    if constexpr (std::is_same_v<S, HyperbolicToralMap>) {
      a = parse_torus_anchor(past);
      b = parse_torus_anchor(future);
    } else if constexpr (std::is_same_v<S, NorthSouthCircleMap>) {
      a = parse_circle_anchor(sys, past);
      b = parse_circle_anchor(sys, future);
    } else {
      a = parse_sft_anchor(sys, past);
      b = parse_sft_anchor(sys, future);
    }
    require(cfg.window >= 1, errc::bad_window, "window must be at least 1");
    return splice_orbits(sys, a, b);
  }
  ErrorSchedule sched = parse_schedule(cfg.schedule);
  return generate_pseudo_orbit(sys, default_seed, sched, cfg.window, cfg.seed);
}

// solver dispatch: the toral and symbolic systems have true shadowing
// solvers; the Morse-Smale circle map only supports the self-shadow check
// (shadowing fails there in general, which is what `certify` demonstrates)
ShadowCertificate<TorusPoint> solve(const HyperbolicToralMap& sys,
                                    const PseudoOrbit<HyperbolicToralMap>& po,
                                    const ExperimentConfig& cfg) {
  return shadow_linear(sys, po, std::max(cfg.window, po.window_radius()), cfg.tail_terms);
}
ShadowCertificate<SymbolicPoint> solve(const Sft& sys, const PseudoOrbit<Sft>& po,
                                       const ExperimentConfig& cfg) {
  return shadow_sft(sys, po, std::max(cfg.window, po.window_radius()));
}
ShadowCertificate<CirclePoint> solve(const NorthSouthCircleMap& sys,
                                     const PseudoOrbit<NorthSouthCircleMap>& po,
                                     const ExperimentConfig& cfg) {
  return verify_self_shadow(sys, po, std::max(cfg.window, po.window_radius()));
}

int finish_with_verdict(const std::string& verdict, const ExperimentConfig& cfg) {
  std::cout << "verdict: " << verdict << "\n";
  if (!cfg.expect.empty() && cfg.expect != verdict) {
    std::cerr << "expected verdict '" << cfg.expect << "' but got '" << verdict << "'\n";
    return kExitVerdictMismatch;
  }
  return kExitOk;
}

template <class S>
typename S::Point default_seed_point(const S& sys, const ExperimentConfig& cfg) {
  if constexpr (std::is_same_v<S, HyperbolicToralMap>) {
    (void)sys;
    return TorusPoint{0.1, 0.2};
  } else if constexpr (std::is_same_v<S, NorthSouthCircleMap>) {
    (void)sys;
    return CirclePoint{0.25};
  } else {
    RngStream rng = stream_for_index(cfg.seed, 12345);
    return sys.random_point(16, rng);
  }
}

template <class S>
int run_certify(const S& sys, const ExperimentConfig& cfg) {
  if constexpr (std::is_same_v<S, Sft>) {
    (void)sys;
    fail(errc::unsupported_dimension, "grid certification needs a space of dimension <= 2");
  } else {
    auto po = build_pseudo_orbit(sys, cfg, default_seed_point(sys, cfg));
    auto result = certify_unshadowable(sys, po, cfg.eps, cfg.window, cfg.grid_step);
    bool refuted = std::holds_alternative<NonShadowCertificate>(result);
    if (!cfg.cert.empty()) {
      nlohmann::json j;
      if (refuted) {
        j = certificate_to_json(std::get<NonShadowCertificate>(result), sys.descriptor());
      } else {
        const auto& s = std::get<SurvivingCandidate<typename S::Point>>(result);
        j = {{"schema", kNonShadowCertificateSchema},
             {"system", sys.descriptor()},
             {"conclusion", "survivor found"},
             {"survivor", point_to_json(s.point)},
             {"max_deviation", s.max_deviation}};
      }
      write_file(cfg.cert, j.dump(2) + "\n");
    }
    if (!cfg.out.empty() && refuted) {
      const auto& cert = std::get<NonShadowCertificate>(result);
      std::ostringstream os;
      os << "# " << kNonShadowCertificateSchema << " system=" << sys.descriptor()
         << "\n";
      os << "candidate,violation_index,magnitude\n";
      for (std::size_t k = 0; k < cert.violation_index.size(); ++k)
        os << k << "," << cert.violation_index[k] << ","
           << format_sci(cert.violation_magnitude[k]) << "\n";
      write_file(cfg.out, os.str());
    }
    return finish_with_verdict(refuted ? "unshadowable" : "shadowable", cfg);
  }
}

template <class S>
int run_shadow_for(const S& sys, const ExperimentConfig& cfg,
                   const typename S::Point& default_seed) {
  if (cfg.expect == "unshadowable" || cfg.expect == "shadowable") return run_certify(sys, cfg);
  require(cfg.method == "direct" || cfg.method == "pipeline", errc::parse_error,
          "method must be 'direct' or 'pipeline'");
  auto po = build_pseudo_orbit(sys, cfg, default_seed);
  auto cert = [&] {
    if (cfg.method == "pipeline") {
      if constexpr (std::is_same_v<S, NorthSouthCircleMap>) {
        fail(errc::bad_parameter,
             "the splicing pipeline needs a toral map or a mixing SFT");
      } else {
        return two_sided_limit_shadow(sys, po, cfg.eps, cfg.window).certificate;
      }
    }
    return solve(sys, po, cfg);
  }();
  if (!cfg.out.empty()) {
    std::ostringstream os;
    write_deviation_csv(os, cert, sys.descriptor());
    write_file(cfg.out, os.str());
  }
  std::string cert_path = cfg.cert;
  if (cert_path.empty() && !cfg.out.empty()) cert_path = cfg.out + ".cert.json";
  if (!cert_path.empty())
    write_file(cert_path, certificate_to_json(cert, sys.descriptor()).dump(2) + "\n");
  std::cout << "max deviation: " << format_sci(cert.max_deviation())
            << "  orbit residual: " << format_sci(cert.orbit_residual) << "\n";
  return finish_with_verdict(verdict_name(cert.verdict), cfg);
}

int run_shadow(const ExperimentConfig& cfg) {
  SystemVariant sys = parse_system(cfg.system);
  return std::visit(
      [&](const auto& s) -> int { return run_shadow_for(s, cfg, default_seed_point(s, cfg)); },
      sys);
}

int run_certify_cmd(const ExperimentConfig& cfg) {
  SystemVariant sys = parse_system(cfg.system);
  return std::visit([&](const auto& s) -> int { return run_certify(s, cfg); }, sys);
}

int run_analyze(const ExperimentConfig& cfg, bool expansivity, long long periodic,
                const std::string& spacing_eps, const std::vector<std::string>& regions,
                double resolution, long long iters, bool repelling) {
  SystemVariant sys = parse_system(cfg.system);
  std::ostringstream report;
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        report << "system: " << s.descriptor() << "\n";
        if (expansivity) {
          auto r = expansivity_constant(s);
          if (const double* c = std::get_if<double>(&r))
            report << "expansivity_constant: " << format_sci(*c) << "\n";
          else
            report << "expansivity_constant: NotExpansive ("
                   << std::get<NotExpansive>(r).reason << ")\n";
        }
        if (!spacing_eps.empty()) {
          if constexpr (!std::is_same_v<S, NorthSouthCircleMap>) {
            double eps = std::stod(spacing_eps);
            report << "specification_spacing(" << eps << "): " << specification_spacing(s, eps)
                   << "\n";
          } else {
            fail(errc::bad_parameter, "specification spacing needs a toral map or an SFT");
          }
        }
        if (periodic > 0) {
          if constexpr (std::is_same_v<S, NorthSouthCircleMap>) {
            fail(errc::bad_parameter, "periodic enumeration supports toral maps and SFTs");
          } else {
            auto recs = periodic_points(s, periodic);
            report << "periodic_points(bound " << periodic << "): " << recs.size() << "\n";
            for (const auto& rec : recs) {
              report << "  period " << rec.period;
              if (rec.index)
                report << " index " << *rec.index;
              else
                report << " index n/a";
              if constexpr (std::is_same_v<S, HyperbolicToralMap>) {
                const auto& e = *rec.exact;
                report << "  point " << e[0].num << "/" << e[0].den << ", " << e[1].num << "/"
                       << e[1].den;
              } else {
                report << "  word ";
                for (long long i = 0; i < rec.period; ++i) report << rec.point.symbol(i);
              }
              report << "\n";
            }
          }
        }
        if (!regions.empty()) {
          if constexpr (std::is_same_v<S, HyperbolicToralMap>) {
            std::vector<Rect> rects;
            for (const auto& r : regions) {
              double x0, y0, x1, y1;
              require(std::sscanf(r.c_str(), "%lf:%lf:%lf:%lf", &x0, &y0, &x1, &y1) == 4,
                      errc::parse_error, "torus region must be x0:y0:x1:y1");
              rects.push_back(Rect{x0, y0, x1, y1});
            }
            auto reps = find_attracting_set(s, rects, resolution, iters, repelling);
            for (const auto& rep : reps)
              report << "region [" << rep.region.x0 << "," << rep.region.x1 << "]x["
                     << rep.region.y0 << "," << rep.region.y1 << "]: "
                     << (rep.trapped ? "trapped" : "not trapped")
                     << (rep.trapped ? (rep.proper ? ", proper" : ", not proper") : "") << "\n";
          } else if constexpr (std::is_same_v<S, NorthSouthCircleMap>) {
            std::vector<Arc> arcs;
            for (const auto& r : regions) {
              double lo, hi;
              require(std::sscanf(r.c_str(), "%lf:%lf", &lo, &hi) == 2, errc::parse_error,
                      "circle region must be lo:hi");
              arcs.push_back(Arc{lo, hi});
            }
            auto reps = find_attracting_set(s, arcs, resolution, iters, repelling);
            for (const auto& rep : reps) {
              report << "arc (" << rep.region.lo << "," << rep.region.hi << "): "
                     << (rep.trapped ? "trapped" : "not trapped");
              if (rep.trapped) {
                report << (rep.proper ? ", proper" : ", not proper") << ", attained";
                for (const auto& p : rep.attained) report << " " << p.x;
              }
              report << "\n";
            }
          } else {
            fail(errc::bad_parameter, "trap regions are defined for the torus and the circle");
          }
        }
      },
      sys);
  if (!cfg.out.empty())
    write_file(cfg.out, report.str());
  else
    std::cout << report.str();
  return kExitOk;
}

int run_verify(const std::string& name) {
  SuiteResult r = run_suite(name);
  for (const auto& c : r.checks)
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
              << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
  std::cout << r.suite << ": " << (r.all_pass() ? "all checks passed" : "FAILURES") << "\n";
  return r.all_pass() ? kExitOk : kExitVerdictMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-orbit shadowing experiments on exactly analyzable systems"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string config_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key = value config file; flags override");
    cmd->add_option("--system", cfg.system, "cat | toral:a,b,c,d | sft:PATH | northsouth:A");
    cmd->add_option("--window", cfg.window, "window radius W");
    cmd->add_option("--seed", cfg.seed, "RNG seed for generated pseudo-orbits");
    cmd->add_option("--eps", cfg.eps, "closeness target");
    cmd->add_option("--out", cfg.out, "CSV output path");
    cmd->add_option("--cert", cfg.cert, "certificate JSON path");
    cmd->add_option("--expect", cfg.expect,
                    "fail (exit 1) unless the verdict matches: two_sided_limit_shadowed, "
                    "limit_shadowed, negative_limit_shadowed, eps_shadowed, unshadowable, "
                    "shadowable");
  };

  CLI::App* shadow_cmd =
      app.add_subcommand("shadow", "shadow a pseudo-orbit and write deviations + certificate");
  add_common(shadow_cmd);
  shadow_cmd->add_option("--method", cfg.method,
                         "direct (system's solver) or pipeline (one-sided shadows spliced "
                         "through a specification)");
  shadow_cmd->add_option("--schedule", cfg.schedule,
                         "error schedule kind:amplitude (const, inv_linear, inv_square, "
                         "inv_linear_fwd, inv_linear_bwd)");
  shadow_cmd->add_option("--splice", cfg.splice,
                         "splice anchors 'past,future'; circle: sink|source|x, torus: x:y, "
                         "SFT: per:WORD");
  shadow_cmd->add_option("--tail-terms", cfg.tail_terms, "series terms (0 = solver default)");
  shadow_cmd->add_option("--grid", cfg.grid_step, "grid step for --expect unshadowable");

  CLI::App* certify_cmd =
      app.add_subcommand("certify", "exhaustive-grid non-shadowability certification");
  add_common(certify_cmd);
  certify_cmd->add_option("--schedule", cfg.schedule, "error schedule kind:amplitude");
  certify_cmd->add_option("--splice", cfg.splice, "splice anchors 'past,future'");
  certify_cmd->add_option("--grid", cfg.grid_step, "candidate grid step");

  bool expansivity = false, repelling = false;
  long long periodic = 0, iters = 200;
  double resolution = 1e-3;
  std::string spacing_eps;
  std::vector<std::string> regions;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "structural constants and sets");
  add_common(analyze_cmd);
  analyze_cmd->add_flag("--expansivity", expansivity, "report the expansivity constant");
  analyze_cmd->add_option("--periodic", periodic, "enumerate periodic points up to this period");
  analyze_cmd->add_option("--spacing", spacing_eps, "specification spacing for this eps");
  analyze_cmd->add_option("--region", regions,
                          "trap candidate (circle lo:hi, torus x0:y0:x1:y1); repeatable");
  analyze_cmd->add_option("--resolution", resolution, "sampling resolution for trap regions");
  analyze_cmd->add_option("--iters", iters, "iterations for the attained set");
  analyze_cmd->add_flag("--repelling", repelling, "analyze the inverse map instead");

  std::string suite;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run a named verification suite");
  verify_cmd->add_option("suite", suite, "lemma21 | lemma22 | lemma24 | corollary25 | theoremB | oracle")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* active = shadow_cmd->parsed()    ? shadow_cmd
                     : certify_cmd->parsed() ? certify_cmd
                     : analyze_cmd->parsed() ? analyze_cmd
                                             : verify_cmd;
  try {
    // config file first, then re-apply exactly the flags the user passed
    if (!config_path.empty()) {
      ExperimentConfig from_file = ExperimentConfig::from_file(config_path);
      auto keep = [&](const char* flag, auto member) {
        const CLI::Option* opt = active->get_option_no_throw(flag);
        if (opt && opt->count() > 0) from_file.*member = cfg.*member;
      };
      keep("--system", &ExperimentConfig::system);
      keep("--method", &ExperimentConfig::method);
      keep("--schedule", &ExperimentConfig::schedule);
      keep("--splice", &ExperimentConfig::splice);
      keep("--window", &ExperimentConfig::window);
      keep("--seed", &ExperimentConfig::seed);
      keep("--eps", &ExperimentConfig::eps);
      keep("--tail-terms", &ExperimentConfig::tail_terms);
      keep("--grid", &ExperimentConfig::grid_step);
      keep("--out", &ExperimentConfig::out);
      keep("--cert", &ExperimentConfig::cert);
      keep("--expect", &ExperimentConfig::expect);
      cfg = from_file;
    }
    if (shadow_cmd->parsed()) return run_shadow(cfg);
    if (certify_cmd->parsed()) return run_certify_cmd(cfg);
    if (analyze_cmd->parsed())
      return run_analyze(cfg, expansivity, periodic, spacing_eps, regions, resolution, iters,
                         repelling);
    if (verify_cmd->parsed()) return run_verify(suite);
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
