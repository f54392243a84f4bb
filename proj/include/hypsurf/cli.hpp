#pragma once

// Command front end shared by the binary and the tests: a RunConfig is
// executed by run(), which writes artifacts and returns the process exit
// code.  Exit codes: 0 ok, 2 parse error, 3 verification failure, 4
// out-of-scope input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hypsurf/classify.hpp"
#include "hypsurf/endspace.hpp"
#include "hypsurf/grouptable.hpp"
#include "hypsurf/synth.hpp"
#include "json.hpp"

namespace hypsurf {

struct RunConfig {
  std::string command;       // classify | build | verify | export | selftest
  std::string endspace;      // shorthand or inline JSON
  std::string group;         // builtin name, builtin:NAME, file path, or class tag
  std::string construction = "x";  // x | y | x_infinite | y_infinite | x_gamma
  int truncation_M = 2;
  int ball_radius_R = 3;
  std::uint64_t seed = 0;
  std::string input;         // complex JSON path (verify, export)
  std::string output;        // artifact path; empty = stdout
  std::string format = "json";  // json | dot | text
  int jobs = 1;              // accepted for interface stability; search is serial
};

namespace cli_detail {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitVerify = 3;
inline constexpr int kExitOutOfScope = 4;

inline EndSpaceExpr parse_ends_arg(const std::string& text) {
  std::string trimmed = text;
  auto b = trimmed.find_first_not_of(" \t");
  if (b == std::string::npos) throw EndSpaceError("empty end space");
  if (trimmed[b] == '{') {
    return endspace_from_json(nlohmann::json::parse(trimmed));
  }
  return parse_endspace(trimmed);
}

inline std::optional<GroupClassDescriptor> parse_class_tag(const std::string& g) {
  if (g == "finite") return GroupClassDescriptor::finite();
  if (g == "vc" || g == "virtually_cyclic") {
    return GroupClassDescriptor::virtually_cyclic();
  }
  if (g == "countable" || g == "countable_infinite") {
    return GroupClassDescriptor::countable();
  }
  return std::nullopt;
}

inline FiniteGroup load_group(const std::string& spec) {
  std::string name = spec;
  if (name.rfind("builtin:", 0) == 0) name = name.substr(8);
  if (auto g = builtin_group(name)) return *g;
  std::ifstream in(spec);
  if (!in) throw GroupTableError(GroupTableError::Axiom::NotSquare,
                                 "unknown group: " + spec);
  std::stringstream buf;
  buf << in.rdbuf();
  if (spec.size() >= 5 && spec.substr(spec.size() - 5) == ".json") {
    return group_from_json(nlohmann::json::parse(buf.str()));
  }
  return group_from_csv(buf.str());
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  f << text;
}

inline int run_classify(const RunConfig& cfg, std::ostream& out) {
  EndSpaceExpr ends = parse_ends_arg(cfg.endspace);
  GroupClassDescriptor g;
  if (auto tag = parse_class_tag(cfg.group)) {
    g = *tag;
  } else {
    g = GroupClassDescriptor::finite(load_group(cfg.group));
  }
  SurfaceDescriptor s;
  s.ends = ends;
  Verdict v = realizable(s, g);
  nlohmann::ordered_json j;
  j["seed"] = cfg.seed;
  j["ends"] = endspace_to_shorthand(canonical(ends));
  j["group"] = cfg.group;
  j["verdict"] = to_json(v);
  emit(cfg, j.dump(2) + "\n", out);
  return v.answer == Verdict::Answer::OutOfScope ? kExitOutOfScope : kExitOk;
}

inline GluingComplex run_builder(const RunConfig& cfg) {
  EndSpaceExpr ends = parse_ends_arg(cfg.endspace);
  if (cfg.construction == "x_infinite") {
    return build_X_infinite(ends, cfg.ball_radius_R, cfg.truncation_M, cfg.seed);
  }
  if (cfg.construction == "y_infinite") {
    return build_Y_countable(ends, cfg.ball_radius_R, cfg.truncation_M, cfg.seed);
  }
  if (cfg.construction == "x_gamma") {
    auto cs = char_system(ends);
    if (!cs) throw UnsupportedEndSpaceError("x_gamma needs a countable end space");
    VCGroupDescriptor g;
    g.two_ended_certificate = true;
    return build_X_gamma(g, *cs, cfg.ball_radius_R, cfg.seed);
  }
  FiniteGroup G = load_group(cfg.group);
  if (cfg.construction == "y") return build_Y(ends, G, cfg.truncation_M, cfg.seed);
  if (cfg.construction == "x") return build_X(ends, G, cfg.truncation_M, cfg.seed);
  throw SynthError("unknown construction: " + cfg.construction);
}

inline int run_build(const RunConfig& cfg, std::ostream& out) {
  GluingComplex c = run_builder(cfg);
  if (cfg.format == "dot") {
    emit(cfg, to_dot(c), out);
  } else {
    emit(cfg, to_json(c).dump(2) + "\n", out);
  }
  return kExitOk;
}

inline GluingComplex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SynthError("cannot open complex file: " + path);
  return complex_from_json(nlohmann::json::parse(in));
}

inline int run_verify(const RunConfig& cfg, std::ostream& out) {
  GluingComplex c = load_complex(cfg.input);
  VerifyReport report = verify_complex(c);
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  j["ok"] = report.ok;
  j["failures"] = report.failures;
  emit(cfg, j.dump(2) + "\n", out);
  return report.ok ? kExitOk : kExitVerify;
}

inline int run_export(const RunConfig& cfg, std::ostream& out) {
  GluingComplex c = load_complex(cfg.input);
  if (cfg.format == "json") {
    emit(cfg, to_json(c).dump(2) + "\n", out);
  } else {
    emit(cfg, to_dot(c), out);
  }
  return kExitOk;
}

}  // namespace cli_detail

// Dispatch; `selftest` is wired up by the binary (it needs the acceptance
// suite, which itself drives run()).
inline int run(const RunConfig& cfg, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  try {
    if (cfg.command == "classify") return cli_detail::run_classify(cfg, out);
    if (cfg.command == "build") return cli_detail::run_build(cfg, out);
    if (cfg.command == "verify") return cli_detail::run_verify(cfg, out);
    if (cfg.command == "export") return cli_detail::run_export(cfg, out);
    err << "unknown command: " << cfg.command << "\n";
    return cli_detail::kExitParse;
  } catch (const OrdinalParseError& e) {
    err << "error: " << e.what() << "\n";
    return cli_detail::kExitParse;
  } catch (const NotSelfSimilarError& e) {
    err << "error: " << e.what() << "\n";
    return cli_detail::kExitOutOfScope;
  } catch (const UnsupportedEndSpaceError& e) {
    err << "error: " << e.what() << "\n";
    return cli_detail::kExitOutOfScope;
  } catch (const AlphaNotSuccessorError& e) {
    err << "error: " << e.what() << "\n";
    return cli_detail::kExitOutOfScope;
  } catch (const NotTwoEndedCertifiedError& e) {
    err << "error: " << e.what() << "\n";
    return cli_detail::kExitOutOfScope;
  } catch (const EndSpaceError& e) {
    err << "error: " << e.what() << "\n";
    return cli_detail::kExitParse;
  } catch (const GroupTableError& e) {
    err << "error: " << e.what() << "\n";
    return cli_detail::kExitParse;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return cli_detail::kExitParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return cli_detail::kExitVerify;
  }
}

}  // namespace hypsurf
