// kmh — command-line front end: datum checks, regular and U_C reports, acceptance suite.

#include "kmh/acceptance.hpp"
#include "kmh/presets.hpp"
#include "kmh/regular.hpp"
#include "kmh/rgroup.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

/// Raised for bad input that is not a mathematical verdict (missing file, bad flag value).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string preset = "sl3";
  std::string datumFile;
  std::string tau;
  std::string sigma;
  int L = 0;  // 0: the preset's own bound
  std::uint64_t seed = 20240601;
  std::string dotPath, jsonPath;
  std::vector<std::string> only;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Preset selected by --preset, or loaded from --datum, with --tau/--sigma/--L applied.
kmh::Preset resolve(const Config& cfg) {
  kmh::Preset p = cfg.datumFile.empty()
                      ? kmh::preset(cfg.preset)
                      : kmh::preset_from_json(read_json_file(cfg.datumFile), cfg.datumFile);
  if (!cfg.sigma.empty()) p.datum = p.datum.with_sigma(kmh::parse_rational(cfg.sigma));
  if (!cfg.tau.empty()) p.tau = kmh::parse_character(cfg.tau);
  if (cfg.L != 0) p.L = cfg.L;
  if (p.L < 1) throw UsageError("--L must be at least 1");
  if (p.tau && static_cast<int>(p.tau->values.size()) != p.datum.rankY)
    throw UsageError("tau has " + std::to_string(p.tau->values.size()) + " values but rankY = " +
                     std::to_string(p.datum.rankY));
  return p;
}

const kmh::Character& require_tau(const kmh::Preset& p) {
  if (!p.tau) throw UsageError("no character: pass --tau \"r1,r2,...\"");
  return *p.tau;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text << "\n";
}

int cmd_datum_check(const Config& cfg) {
  kmh::Preset p = resolve(cfg);
  const kmh::RootDatum& d = p.datum;
  auto problems = d.check();
  std::cout << "datum " << (d.name.empty() ? p.name : d.name) << ": rank " << d.rank()
            << ", rankY " << d.rankY << "\n";
  for (const auto& msg : problems) std::cout << "  problem: " << msg << "\n";
  if (!problems.empty()) return kMathFailure;
  // The common kernel of the roots is the direction on which W acts trivially modulo Q∨.
  auto ker = kmh::nullspace(kmh::to_qmat(d.pairing), static_cast<std::size_t>(d.rankY));
  std::cout << "  pairing rank " << d.rankY - static_cast<int>(ker.size()) << "\n";
  for (const auto& v : ker) {
    std::cout << "  note: every root vanishes on (";
    for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? "," : "") << kmh::to_string(v[i]);
    std::cout << ")\n";
  }
  for (int s = 0; s < d.rank(); ++s)
    std::cout << "  alpha_" << s + 1 << "(Y) = " << d.alpha_image_gcd(s) << "Z, sigma = "
              << kmh::to_string(d.sigma[s]) << ", sigma' = " << kmh::to_string(d.sigmaPrime[s]) << "\n";
  std::cout << "  parameters " << (d.equal_parameters() ? "equal" : "unequal") << "\nok\n";
  return kOk;
}

int cmd_regular_report(const Config& cfg) {
  kmh::Preset p = resolve(cfg);
  kmh::WeylGroup W(p.datum);
  kmh::HeckeAlgebra A(W);
  kmh::RegularAnalysis R(A, require_tau(p), p.L);
  if (!cfg.dotPath.empty()) emit(R.dot(), cfg.dotPath);
  if (!cfg.jsonPath.empty() || cfg.dotPath.empty()) emit(R.json_report(), cfg.jsonPath);
  return kOk;
}

int cmd_uc_report(const Config& cfg) {
  kmh::Preset p = resolve(cfg);
  const kmh::Q s = p.datum.common_sigma();
  if (abs(s) <= 1) throw UsageError("the U_C analysis needs |sigma| > 1");
  kmh::WeylGroup W(p.datum);
  kmh::HeckeAlgebra A(W);
  kmh::RGroupAnalysis R(A, require_tau(p), p.L);
  emit(R.json_report(), cfg.jsonPath);
  return kOk;
}

int cmd_accept(const Config& cfg) {
  kmh::AcceptanceOptions opt;
  opt.seed = cfg.seed;
  opt.only = cfg.only;
  const auto& names = kmh::criterion_names();
  for (const auto& o : cfg.only) {
    bool known = std::find(names.begin(), names.end(), o) != names.end();
    for (std::size_t i = 1; i <= names.size(); ++i) known = known || o == std::to_string(i);
    if (!known) throw UsageError("unknown criterion '" + o + "'");
  }
  if (!cfg.datumFile.empty()) {
    // --preset NAME --datum FILE replaces the bundled preset NAME inside the suite.
    kmh::Preset base = kmh::preset(cfg.preset);
    kmh::Preset over = kmh::preset_from_json(read_json_file(cfg.datumFile), cfg.preset);
    if (!over.tau) over.tau = base.tau;
    opt.presetOverrides[cfg.preset] = over;
  }
  int failed = 0;
  opt.onResult = [&](const kmh::CriterionResult& r) {
    std::cout << kmh::format_result(r) << std::endl;
    if (!r.passed) ++failed;
  };
  auto results = kmh::run_acceptance(opt);
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
  return failed ? kMathFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernstein-Lusztig Hecke algebras of Kac-Moody root data: principal series reports"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--preset", cfg.preset, "bundled preset name")->capture_default_str();
    sub->add_option("--datum", cfg.datumFile, "root datum JSON file (optionally with tau and L)");
    sub->add_option("--tau", cfg.tau, "character values on the basis of Y, e.g. \"4,1/4\"");
    sub->add_option("--sigma", cfg.sigma, "replace every sigma_s, sigma'_s");
    sub->add_option("--L", cfg.L, "ball radius (default: the preset's)");
    sub->add_option("--seed", cfg.seed, "seed of the random number generator")->capture_default_str();
  };

  auto* datum = app.add_subcommand("datum-check", "validate a root datum");
  common(datum);
  auto* regular = app.add_subcommand("regular-report", "graph, semi-distances and submodules for regular tau");
  common(regular);
  regular->add_option("--dot", cfg.dotPath, "write the graph of I_{w.tau} in DOT format");
  regular->add_option("--json", cfg.jsonPath, "write the JSON report here (default stdout)");
  auto* uc = app.add_subcommand("uc-report", "stabiliser, R-group and endomorphism report for tau in U_C");
  common(uc);
  uc->add_option("--json", cfg.jsonPath, "write the JSON report here (default stdout)");
  auto* accept = app.add_subcommand("accept", "run the acceptance suite");
  common(accept);
  accept->add_option("--only", cfg.only, "criterion name or number (repeatable)");
  auto* list = app.add_subcommand("presets", "list the bundled presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    kmh::seed_default_rng(cfg.seed);
    if (list->parsed()) {
      for (const auto& n : kmh::preset_names()) {
        kmh::Preset p = kmh::preset(n);
        std::cout << n << "  " << p.description << "\n";
      }
      return kOk;
    }
    if (datum->parsed()) return cmd_datum_check(cfg);
    if (regular->parsed()) return cmd_regular_report(cfg);
    if (uc->parsed()) return cmd_uc_report(cfg);
    if (accept->parsed()) return cmd_accept(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const kmh::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const kmh::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMathFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMathFailure;
  }
  return kUsage;
}
