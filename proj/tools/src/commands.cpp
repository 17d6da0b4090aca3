#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nicrob/cli.hpp"
#include "nicrob/oracle.hpp"

#ifndef NICROB_VERSION
#define NICROB_VERSION "unknown"
#endif

namespace nicrob::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Common {
  std::string config = "mod4";
  unsigned threads = 0;
  bool json = false;
};

json interval_json(const Interval& x) { return {{"lo", x.lo_double()}, {"hi", x.hi_double()}}; }

std::string interval_text(const Interval& x) { return x.to_string(12); }

std::string verdict_label(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::Below: return "satisfied";
    case Verdict::Kind::AboveOrEqual: return "violator";
    case Verdict::Kind::Undecided: break;
  }
  return "undecided";
}

std::string ratio_text(const ExactRatio& q) { return q.get_str(10); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::string value_list(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (auto x : v) {
    if (!s.empty()) s += ' ';
    s += std::to_string(x);
  }
  return s;
}

// ---------------------------------------------------------------- check

int cmd_check(const std::string& text, const Common& common, std::ostream& out) {
  const LoadedConfig cfg = load_config(common.config);
  const FactoredNumber n = parse_number(text);
  const Verdict nicolas = nicolas_verdict(n, cfg.schedule);
  const Verdict robin = robin_verdict(n, cfg.schedule);
  const ExactRatio f = f_ratio(n);
  const ExactRatio sigma = sigma_ratio(n);

  std::optional<Interval> threshold;
  if (!n.is_one()) threshold = egamma(128) * loglog(n, 128);
  const bool has_rep = cfg.config.representation != Representation::None;

  if (common.json) {
    json j;
    j["n"] = n.decimal();
    j["factorization"] = n.to_string();
    j["nicolas"] = verdict_label(nicolas);
    j["robin"] = verdict_label(robin);
    j["in_S"] = in_S(n, cfg.config);
    j["in_Y"] = in_Y(n, cfg.config);
    j["sum_of_two_squares"] = is_sum_two_squares(n);
    if (has_rep) j["representable"] = is_representable(n, cfg.config.representation);
    j["f_ratio"] = ratio_text(f);
    j["sigma_ratio"] = ratio_text(sigma);
    j["threshold"] = threshold ? interval_json(*threshold) : json(nullptr);
    print_json(out, j);
  } else {
    out << "n: " << n.display() << " = " << n.to_string() << "\n"
        << "nicolas: " << verdict_label(nicolas) << "\n"
        << "robin: " << verdict_label(robin) << "\n"
        << "in_S: " << std::boolalpha << in_S(n, cfg.config) << "\n"
        << "in_Y: " << in_Y(n, cfg.config) << "\n"
        << "two-squares: " << is_sum_two_squares(n) << "\n";
    if (has_rep) out << "representable: " << is_representable(n, cfg.config.representation) << "\n";
    out << "n/phi(n): " << ratio_text(f) << "\n"
        << "sigma(n)/n: " << ratio_text(sigma) << "\n"
        << "e^gamma log log n: " << (threshold ? interval_text(*threshold) : "undefined for n = 1") << "\n";
  }
  if (nicolas.undecided() || robin.undecided()) return kUndecided;
  return kOk;
}

// ------------------------------------------------------------ enumerate

struct EnumerateArgs {
  std::string output;
  std::uint64_t max_k = 0;
  bool robin_only = false;
  bool two_squares_only = false;
  bool representable_only = false;
};

int cmd_enumerate(const EnumerateArgs& args, const Common& common, std::ostream& out, std::ostream& err) {
  const LoadedConfig cfg = load_config(common.config);
  EnumerationOptions options;
  options.schedule = cfg.schedule;
  options.threads = common.threads;
  options.max_k = args.max_k;

  const auto t0 = Clock::now();
  ExceptionSet set = enumerate_exceptions(cfg.config, options);
  const double wall = seconds_since(t0);

  std::vector<ExceptionRecord> kept;
  for (auto& rec : set.records) {
    if (args.robin_only && !rec.robin_violator) continue;
    if (args.two_squares_only && !rec.sum_two_squares) continue;
    if (args.representable_only && !rec.representable) continue;
    kept.push_back(std::move(rec));
  }
  const std::string hash = digest(kept);
  const std::string largest = kept.empty() ? "" : kept.back().decimal();
  const std::string completeness =
      set.provenance.proven_complete ? "proven" : "complete relative to declared bounds";

  json filters = json::array();
  if (args.robin_only) filters.push_back("robin-only");
  if (args.two_squares_only) filters.push_back("two-squares-only");
  if (args.representable_only) filters.push_back("representable-only");

  json manifest;
  manifest["tool"] = "nicrob";
  manifest["version"] = NICROB_VERSION;
  manifest["config"] = json::parse(config_json({set.config, cfg.schedule}));
  manifest["bounds"] = {{"max_k", set.provenance.max_k}, {"pk_minus_bound", set.provenance.pk_minus_bound}};
  manifest["completeness"] = completeness;
  manifest["filters"] = filters;
  manifest["pairs"] = set.provenance.pairs.pairs.size();
  manifest["cores"] = set.provenance.core_count;
  manifest["records"] = kept.size();
  manifest["largest"] = largest;
  manifest["digest"] = hash;
  manifest["wall_seconds"] = wall;

  if (!args.output.empty()) {
    std::ofstream file(args.output, std::ios::binary);
    for (const auto& rec : kept) file << record_line(rec) << "\n";
    std::ofstream mfile(args.output + ".manifest.json", std::ios::binary);
    mfile << manifest.dump(2) << "\n";
    if (!file || !mfile) {
      err << "error: cannot write " << args.output << "\n";
      return kResource;
    }
  }

  if (common.json) {
    print_json(out, manifest);
  } else {
    out << "config: " << set.config.name << "\n"
        << "records: " << kept.size() << "\n"
        << "largest: " << (largest.empty() ? "none" : largest) << "\n"
        << "pairs: " << set.provenance.pairs.pairs.size() << "\n"
        << "cores: " << set.provenance.core_count << "\n"
        << "completeness: " << completeness << "\n"
        << "digest: " << hash << "\n"
        << "wall time: " << wall << " s\n";
    if (!args.output.empty()) out << "written: " << args.output << " (+ .manifest.json)\n";
  }
  return kOk;
}

// ----------------------------------------------------------------- xset

int cmd_xset(std::uint64_t max_k, const Common& common, std::ostream& out) {
  const LoadedConfig cfg = load_config(common.config);
  PrimeCatalog catalog(cfg.config);
  const PairSet set = admissible_pairs(catalog, max_k ? max_k : cfg.config.search.max_k, cfg.schedule);
  if (common.json) {
    json pairs = json::array();
    for (auto p : set.pairs) pairs.push_back({p.r, p.s});
    print_json(out, {{"max_k", set.max_k}, {"count", set.pairs.size()}, {"max_weight", set.max_weight()},
                     {"pairs", pairs}});
  } else {
    out << "pairs: " << set.pairs.size() << " (max_k " << set.max_k << ", max r+2s " << set.max_weight() << ")\n";
    for (auto p : set.pairs) out << "(" << p.r << ", " << p.s << ")\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- brute

int cmd_brute(std::uint64_t bound, const Common& common, std::ostream& out) {
  const LoadedConfig cfg = load_config(common.config);
  const auto values = brute_force_exceptions(bound, cfg.config, {cfg.schedule, common.threads});
  if (common.json) {
    print_json(out, {{"bound", bound}, {"count", values.size()}, {"values", values}});
  } else {
    out << "exceptions <= " << bound << ": " << values.size() << "\n" << value_list(values) << "\n";
  }
  return kOk;
}

// -------------------------------------------------------- crossvalidate

int cmd_crossvalidate(std::uint64_t bound, const Common& common, std::ostream& out) {
  const LoadedConfig cfg = load_config(common.config);
  EnumerationOptions eopt;
  eopt.schedule = cfg.schedule;
  eopt.threads = common.threads;
  const RangeReport r = cross_validate(bound, cfg.config, eopt, {cfg.schedule, common.threads});
  if (common.json) {
    print_json(out, {{"bound", r.bound},
                     {"agreement", r.agreement},
                     {"brute_count", r.brute.size()},
                     {"enumerated_count", r.enumerated.size()},
                     {"only_brute", r.only_brute},
                     {"only_enumerated", r.only_enumerated},
                     {"brute_seconds", r.brute_seconds},
                     {"enumerate_seconds", r.enumerate_seconds}});
  } else {
    out << "bound: " << r.bound << "\n"
        << "agreement: " << std::boolalpha << r.agreement << "\n"
        << "brute force: " << r.brute.size() << " (" << r.brute_seconds << " s)\n"
        << "enumerated: " << r.enumerated.size() << " (" << r.enumerate_seconds << " s)\n";
    if (!r.only_brute.empty()) out << "only brute force: " << value_list(r.only_brute) << "\n";
    if (!r.only_enumerated.empty()) out << "only enumerated: " << value_list(r.only_enumerated) << "\n";
  }
  return r.agreement ? kOk : kDisagreement;
}

// --------------------------------------------------------------- bounds

struct BoundsArgs {
  bool theta = false;
  bool mertens = false;
  bool kbound = false;
  std::uint64_t from = 45000;
  std::uint64_t to = 1'000'000;
  std::uint64_t max = 1'000'000;
  std::uint64_t step = 5000;
};

int cmd_bounds(const BoundsArgs& args, const Common& common, std::ostream& out, std::ostream& err) {
  if (!args.theta && !args.mertens && !args.kbound) {
    err << "error: bounds needs --theta, --mertens or --kbound\n";
    return kUsage;
  }
  const LoadedConfig cfg = load_config(common.config);
  json report;
  bool ok = true;

  if (args.theta) {
    const auto samples = verify_theta_bounds(args.from, args.to, args.step, cfg.config);
    std::vector<std::uint64_t> failed;
    for (const auto& s : samples) {
      if (!s.pass()) failed.push_back(s.x);
    }
    ok = ok && failed.empty();
    report["theta"] = {{"from", args.from}, {"to", args.to}, {"step", args.step}, {"samples", samples.size()},
                       {"pass", failed.empty()}, {"failed", failed}};
    if (!common.json) {
      out << "theta: " << samples.size() << " samples on [" << args.from << ", " << args.to << "] "
          << (failed.empty() ? "all pass" : "FAILED at " + value_list(failed)) << "\n";
    }
  }
  if (args.mertens) {
    const auto samples = verify_mertens_bound(args.max, args.step);
    std::vector<std::uint64_t> failed;
    for (const auto& s : samples) {
      if (!s.pass) failed.push_back(s.x);
    }
    ok = ok && failed.empty();
    report["mertens"] = {{"max", args.max}, {"step", args.step}, {"samples", samples.size()},
                         {"pass", failed.empty()}, {"failed", failed}};
    if (!common.json) {
      out << "mertens: " << samples.size() << " samples up to " << args.max << " "
          << (failed.empty() ? "all pass" : "FAILED at " + value_list(failed)) << "\n";
    }
  }
  if (args.kbound) {
    PrimeCatalog catalog(cfg.config);
    const WeightCeilings w = kbound_constants(catalog);
    report["kbound"] = {{"pk_minus_bound", cfg.config.search.pk_minus_bound}, {"p_side", w.p_side},
                        {"q_side", w.q_side}};
    if (!common.json) out << "kbound: (" << w.p_side << ", " << w.q_side << ")\n";
  }
  if (common.json) print_json(out, report);
  return ok ? kOk : kDisagreement;
}

// --------------------------------------------------------------- limsup

int cmd_limsup(const std::vector<std::uint64_t>& ns, const Common& common, std::ostream& out) {
  json rows = json::array();
  for (auto n : ns) {
    const WitnessReport w = limsup_witness(n);
    if (common.json) {
      rows.push_back({{"n", n},
                      {"exponent", w.exponent},
                      {"ratio_phi", interval_json(w.ratio_phi)},
                      {"ratio_sigma", interval_json(w.ratio_sigma)},
                      {"log_a", interval_json(w.log_a)},
                      {"distance_to_egamma", w.distance_to_egamma()},
                      {"exponent_drift", w.exponent_drift}});
    } else {
      out << "n = " << n << ": d = " << w.exponent << ", ratio_phi " << interval_text(w.ratio_phi)
          << ", ratio_sigma " << interval_text(w.ratio_sigma) << ", |ratio_phi - e^gamma| <= "
          << w.distance_to_egamma() << ", log a / n = " << w.exponent_drift << "\n";
    }
  }
  if (common.json) print_json(out, {{"witnesses", rows}});
  return kOk;
}

// --------------------------------------------------------------- verify

int cmd_verify(const std::string& input, const Common& common, bool config_given, std::ostream& out,
               std::ostream& err) {
  std::ifstream in(input, std::ios::binary);
  if (!in) {
    err << "error: cannot read " << input << "\n";
    return kResource;
  }

  std::optional<json> manifest;
  const std::string manifest_path = input + ".manifest.json";
  if (std::filesystem::exists(manifest_path)) {
    std::ifstream m(manifest_path);
    try {
      manifest = json::parse(m);
    } catch (const json::parse_error& e) {
      throw ConfigError("unreadable manifest " + manifest_path + ": " + e.what());
    }
  }
  const LoadedConfig cfg = (!config_given && manifest && manifest->contains("config"))
                               ? parse_config_json((*manifest)["config"].dump())
                               : load_config(common.config);

  std::vector<std::string> lines;
  std::vector<std::string> problems;
  mpz_class previous = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    lines.push_back(line);
    const std::string where = "line " + std::to_string(lines.size());
    json j;
    try {
      j = json::parse(line);
      std::vector<PrimePower> powers;
      for (const auto& pe : j.at("factorization")) {
        const auto p = pe.at(0).get<std::uint64_t>();
        if (!is_prime_u64(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
        powers.push_back({p, pe.at(1).get<std::uint32_t>()});
      }
      const FactoredNumber n(std::move(powers));
      const mpz_class value(j.at("n").get<std::string>(), 10);
      if (n.value() != value) {
        problems.push_back(where + ": factorization does not multiply to n");
        continue;
      }
      if (value <= previous) problems.push_back(where + ": records not strictly ascending");
      previous = value;
      if (!in_S(n, cfg.config)) problems.push_back(where + ": n is outside S");
      if (!fails_nicolas(n, cfg.schedule)) problems.push_back(where + ": n satisfies the Nicolas inequality");
      if (record_line(make_record(n, cfg.config, cfg.schedule)) != line) {
        problems.push_back(where + ": recomputed record differs");
      }
    } catch (const json::exception& e) {
      problems.push_back(where + ": malformed record (" + e.what() + ")");
    } catch (const std::invalid_argument& e) {
      problems.push_back(where + ": " + e.what());
    }
  }

  const std::string hash = digest_lines(lines);
  std::optional<bool> digest_match;
  if (manifest && manifest->contains("digest")) {
    digest_match = (*manifest)["digest"].get<std::string>() == hash;
    if (!*digest_match) problems.push_back("digest differs from the manifest");
  }

  if (common.json) {
    print_json(out, {{"input", input},
                     {"records", lines.size()},
                     {"digest", hash},
                     {"manifest_digest_match", digest_match ? json(*digest_match) : json(nullptr)},
                     {"ok", problems.empty()},
                     {"problems", problems}});
  } else {
    out << "records: " << lines.size() << "\n" << "digest: " << hash << "\n";
    if (digest_match) out << "manifest digest: " << (*digest_match ? "match" : "MISMATCH") << "\n";
    for (const auto& p : problems) out << p << "\n";
    out << (problems.empty() ? "verified" : "verification FAILED") << "\n";
  }
  return problems.empty() ? kOk : kDisagreement;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide the Nicolas and Robin inequalities and enumerate their exceptions over prime-class partitions",
               "nicrob"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", NICROB_VERSION);

  Common common;
  auto* config_opt = app.add_option("--config", common.config, "Built-in config (mod4, a2plus3b2) or JSON file")
                         ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads (default: NICROB_THREADS or all cores)");
  app.add_flag("--json", common.json, "Machine-readable output");

  std::string check_n;
  auto* check = app.add_subcommand("check", "Nicolas and Robin verdicts for one number");
  check->add_option("n", check_n, "Decimal integer or product like 2^3*3^2")->required();

  EnumerateArgs enum_args;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate every exception in S for the config");
  enumerate->add_option("--output,-o", enum_args.output, "JSON-lines output; a manifest goes next to it");
  enumerate->add_option("--max-k", enum_args.max_k, "Override the config's bound on r + 2s");
  enumerate->add_flag("--robin-only", enum_args.robin_only, "Keep Robin violators only");
  enumerate->add_flag("--two-squares-only", enum_args.two_squares_only, "Keep sums of two squares only");
  enumerate->add_flag("--representable-only", enum_args.representable_only,
                      "Keep numbers represented by the config's quadratic form");

  std::uint64_t xset_max_k = 0;
  auto* xset = app.add_subcommand("xset", "Class-count pairs whose primorial core fails the inequality");
  xset->add_option("--max-k", xset_max_k, "Bound on r + 2s (default: the config's)");

  std::uint64_t brute_max = 0;
  auto* brute = app.add_subcommand("brute", "Brute-force scan of [1, max]");
  brute->add_option("--max", brute_max, "Upper end of the scan")->required();

  std::uint64_t cv_max = 0;
  auto* crossvalidate = app.add_subcommand("crossvalidate", "Compare enumeration and brute force on [1, max]");
  crossvalidate->add_option("--max", cv_max, "Upper end of the comparison")->required();

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand("bounds", "Interval-certified checks of explicit prime bounds");
  bounds->add_flag("--theta", bounds_args.theta, "0.49x < theta_C(x) < 0.51x for both classes");
  bounds->add_flag("--mertens", bounds_args.mertens, "prod p/(p-1) < e^gamma (log x + 1/log x)");
  bounds->add_flag("--kbound", bounds_args.kbound, "Ceilings on r + 2s derived from the prime gap bound");
  bounds->add_option("--from", bounds_args.from, "Theta: first sample")->capture_default_str();
  bounds->add_option("--to", bounds_args.to, "Theta: last sample")->capture_default_str();
  bounds->add_option("--max", bounds_args.max, "Mertens: largest x")->capture_default_str();
  bounds->add_option("--step", bounds_args.step, "Sample spacing")->capture_default_str();

  std::vector<std::uint64_t> limsup_ns{1000, 10000, 100000};
  auto* limsup = app.add_subcommand("limsup", "Primorial-power witnesses approaching e^gamma");
  limsup->add_option("--n", limsup_ns, "Primorial bounds (repeatable)")->capture_default_str();

  std::string verify_input;
  auto* verify = app.add_subcommand("verify", "Reload an enumeration output and re-verify every record");
  verify->add_option("--input,-i", verify_input, "JSON-lines file written by enumerate")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (check->parsed()) return cmd_check(check_n, common, out);
    if (enumerate->parsed()) return cmd_enumerate(enum_args, common, out, err);
    if (xset->parsed()) return cmd_xset(xset_max_k, common, out);
    if (brute->parsed()) return cmd_brute(brute_max, common, out);
    if (crossvalidate->parsed()) return cmd_crossvalidate(cv_max, common, out);
    if (bounds->parsed()) return cmd_bounds(bounds_args, common, out, err);
    if (limsup->parsed()) return cmd_limsup(limsup_ns, common, out);
    if (verify->parsed()) return cmd_verify(verify_input, common, config_opt->count() > 0, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const UnfactoredError& e) {
    err << "cannot factor: " << e.what() << "\n";
    return kUnfactorable;
  } catch (const UndecidedError& e) {
    err << "undecided: " << e.what() << "\n";
    return kUndecided;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace nicrob::cli
