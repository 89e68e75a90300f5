#include "zpart/cli.hpp"

#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "zpart/counting.hpp"
#include "zpart/errors.hpp"
#include "zpart/estimator.hpp"
#include "zpart/io.hpp"
#include "zpart/modular.hpp"
#include "zpart/reduction.hpp"
#include "zpart/spectral.hpp"

namespace zpart::cli {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

const char* to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Certified: return "certified";
    case Status::Counterexample: return "counterexample";
    case Status::Error: return "error";
  }
  return "error";
}

int exit_code(Status s) {
  switch (s) {
    case Status::Ok: return 0;
    case Status::Certified: return 2;
    case Status::Counterexample: return 3;
    case Status::Error: return 1;
  }
  return 1;
}

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs `body`, which fills the payload and returns a status; any exception becomes status error.
CommandResult timed(const std::string& command, const std::function<Status(json&)>& body) {
  CommandResult result;
  const auto start = Clock::now();
  json payload = json::object();
  try {
    result.status = body(payload);
  } catch (const std::exception& e) {
    result.status = Status::Error;
    payload["error"] = e.what();
  }
  result.elapsed = Clock::now() - start;
  payload["schema_version"] = kSchemaVersion;
  payload["command"] = command;
  payload["status"] = to_string(result.status);
  payload["elapsed_ms"] = std::chrono::duration<double, std::milli>(result.elapsed).count();
  result.payload = std::move(payload);
  return result;
}

json counts_json(const std::vector<Count>& counts) {
  json arr = json::array();
  for (const auto& c : counts) arr.push_back(c.get_str());
  return arr;
}

json quadrature_json(const QuadratureResult& q) {
  return json{{"raw", q.raw}, {"rounded", q.rounded.get_str()}, {"nodes", q.node_count},
              {"residual", q.residual}, {"reliable", q.reliable()}};
}

}  // namespace

CommandResult cmd_count(const std::string& instance_path, const std::string& method, const Limits& limits) {
  return timed("count", [&](json& out) {
    static const std::vector<std::string> kMethods = {"oracle", "dp", "residue", "quadrature", "modular"};
    if (method != "all" && std::find(kMethods.begin(), kMethods.end(), method) == kMethods.end()) {
      throw DomainError("unknown method '" + method + "'");
    }
    const InstanceFile file = load_instance(instance_path);
    const PartitionInstance& inst = file.instance;
    out["n"] = inst.size();
    out["total"] = inst.total().get_str();

    std::map<std::string, Count> counts;
    json methods = json::object();
    const bool all = method == "all";
    for (const auto& name : kMethods) {
      if (!all && name != method) continue;
      const auto start = Clock::now();
      json entry;
      try {
        Count c;
        if (name == "oracle") {
          c = count_zero_oracle(inst, limits);
        } else if (name == "dp") {
          c = count_zero_dp(inst, limits);
        } else if (name == "residue") {
          if (!inst.small_total()) throw LimitError("total too large for a residue table");
          c = residue_spectrum_dp(inst, *inst.small_total() + 1, limits).counts[0];
        } else if (name == "modular") {
          c = count_zero_modular(inst, limits);
        } else {
          const QuadratureResult q = count_zero_quadrature(inst, 1, limits);
          entry["quadrature"] = quadrature_json(q);
          if (!q.reliable()) {
            throw LimitError("quadrature residual " + std::to_string(q.residual) +
                             " is not below 0.25; use an exact method");
          }
          c = q.rounded;
        }
        entry["count"] = c.get_str();
        counts[name] = c;
      } catch (const LimitError& e) {
        if (!all) throw;
        entry["skipped"] = e.what();
      }
      entry["ms"] = ms_since(start);
      methods[name] = entry;
    }
    out["methods"] = methods;
    if (counts.empty()) throw Error("no counting method is feasible for this instance");

    const Count& first = counts.begin()->second;
    bool agree = true;
    for (const auto& [name, c] : counts) agree = agree && c == first;
    out["agree"] = agree;
    if (!agree) {
      out["error"] = "counting methods disagree";
      return Status::Error;
    }
    out["count"] = first.get_str();
    return Status::Ok;
  });
}

CommandResult cmd_spectrum(const std::string& instance_path, const Limits& limits) {
  return timed("spectrum", [&](json& out) {
    const InstanceFile file = load_instance(instance_path);
    const EncodedProduct m = build_encoded_product(file.instance, limits);
    out["n"] = m.n;
    out["offset_bits"] = m.offset.get_str();
    out["block_bits"] = m.block_bits;
    out["product_bits"] = mpz_sizeinbase(m.value.get_mpz_t(), 2);
    const auto spectrum = subset_sum_spectrum(file.instance, limits);
    json map = json::object();
    for (std::size_t t = 0; t < spectrum.size(); ++t) {
      if (sgn(spectrum[t]) != 0) map[std::to_string(t)] = spectrum[t].get_str();
    }
    out["subset_sums"] = std::move(map);
    out["zero_partitions"] = count_zero_modular(file.instance, limits).get_str();
    return Status::Ok;
  });
}

CommandResult cmd_stats(const std::string& instance_path, std::optional<std::uint64_t> modulus,
                        std::optional<std::pair<std::size_t, std::size_t>> pair, const Limits& limits) {
  return timed("stats", [&](json& out) {
    const InstanceFile file = load_instance(instance_path);
    const PartitionInstance& inst = file.instance;
    out["n"] = inst.size();
    out["total"] = inst.total().get_str();

    VarianceReport var;
    try {
      var = variance_total(inst, true, limits);
    } catch (const LimitError&) {
      var = variance_total(inst, false, limits);
    }
    json variance{{"sum_squares", var.sum_squares.get_str()}, {"verified", var.verified}};
    if (var.verified) {
      variance["spectrum_side"] = var.spectrum_variance.get_str();
      variance["agree"] = var.agree;
    }
    out["variance"] = variance;
    out["gaussian_limit_constant"] = gaussian_limit_constant(inst);
    out["line_integral"] = to_string(classify_line_integral(inst, limits));

    if (modulus) {
      const ResidueSpectrum rs = residue_spectrum_dp(inst, *modulus, limits);
      json spectrum = json::object();
      for (std::size_t j = 0; j < rs.counts.size(); ++j) spectrum[std::to_string(j)] = rs.counts[j].get_str();
      json mod{{"modulus", *modulus}, {"residue_spectrum", spectrum}};
      try {
        json spectral = json::object();
        for (std::uint64_t j = 0; j < *modulus; ++j) {
          spectral[std::to_string(j)] = quadrature_json(residue_count_spectral(inst, *modulus, j, limits));
        }
        mod["spectral_residues"] = spectral;
        mod["variance_divisible"] = quadrature_json(variance_divisible(inst, *modulus, limits));
        mod["variance_divisible_exact"] = variance_divisible_exact(inst, *modulus, limits).get_str();
      } catch (const LimitError& e) {
        mod["spectral_skipped"] = e.what();
      }
      out["modulus"] = mod;
    }
    if (pair) {
      const QuadratureResult q = sign_correlation(inst, pair->first, pair->second, limits);
      json corr{{"i", pair->first}, {"j", pair->second}, {"integral", quadrature_json(q)}};
      corr["sign_sum"] = q.rounded.get_str();
      try {
        corr["brute_force"] = zero_partition_sign_sum(inst, pair->first, pair->second, limits);
      } catch (const LimitError& e) {
        corr["brute_force_skipped"] = e.what();
      }
      out["correlation"] = corr;
      if (!q.reliable()) {
        out["error"] = "correlation quadrature residual is not below 0.25";
        return Status::Error;
      }
    }
    return Status::Ok;
  });
}

CommandResult cmd_identity(const std::string& instance_path, std::size_t index, const Limits& limits) {
  return timed("identity", [&](json& out) {
    const InstanceFile file = load_instance(instance_path);
    const DoubleAppendIdentity id = identity_double_append(file.instance, index, limits);
    out["index"] = index;
    out["zero"] = id.zero.get_str();
    out["doubled"] = id.doubled.get_str();
    out["appended"] = id.appended.get_str();
    out["removed"] = id.removed.get_str();
    out["identity"] = {{"form", "A = D + 2R"}, {"lhs", id.lhs().get_str()}, {"rhs", id.rhs().get_str()},
                       {"holds", id.holds}};
    out["stated_identity"] = {{"form", "Z = D + A"}, {"lhs", id.stated_lhs().get_str()},
                              {"rhs", id.stated_rhs().get_str()}, {"holds", id.stated_form_holds}};
    return Status::Ok;
  });
}

CommandResult cmd_reduce(const std::string& cnf_path, const std::vector<unsigned>& radices, const std::string& variant,
                         const std::string& out_dir) {
  return timed("reduce", [&](json& out) {
    const ReductionVariant v = parse_variant(variant);
    const CnfFormula f = load_dimacs(cnf_path);
    const auto family = multi_radix_family(f, radices, v);
    std::filesystem::create_directories(out_dir);
    const std::string stem = std::filesystem::path(cnf_path).stem().string();

    json members = json::array();
    for (const auto& m : family) {
      const std::string name = stem + "_r" + std::to_string(m.radix) + ".json";
      const std::string source = "reduce " + cnf_path + " radix=" + std::to_string(m.radix) + " variant=" + variant;
      save_instance((std::filesystem::path(out_dir) / name).string(), InstanceFile{m.partition, m.radix, source});
      const DigitProfile profile = digit_profile(m.subset_sum);
      members.push_back({{"file", name},
                         {"radix", m.radix},
                         {"n", m.partition.size()},
                         {"target", m.subset_sum.target.get_str()},
                         {"max_digit", profile.max_digit},
                         {"carry_free_on_target", profile.carry_free_on_target}});
    }
    json manifest{{"schema_version", kSchemaVersion},
                  {"source", cnf_path},
                  {"variant", to_string(v)},
                  {"num_vars", f.num_vars},
                  {"num_clauses", f.clauses.size()},
                  {"free_variables", f.free_variables()},
                  {"members", members},
                  {"count_relation",
                   {{"zero_partitions_per_subset", 2},
                    {"subsets_per_model", v == ReductionVariant::Parsimonious
                                              ? "1"
                                              : "2^(clauses with exactly two true literals)"},
                    {"same_count_across_members", true}}}};
    const std::string manifest_path = (std::filesystem::path(out_dir) / (stem + "_manifest.json")).string();
    write_json_file(manifest_path, manifest);
    out["manifest"] = manifest_path;
    out["members"] = members;
    return Status::Ok;
  });
}

CommandResult cmd_estimate(const std::string& cnf_path, const std::vector<std::uint64_t>& primes,
                           const std::vector<unsigned>& radices, const Limits& limits) {
  return timed("estimate", [&](json& out) {
    const CnfFormula f = load_dimacs(cnf_path);
    const Estimate e = estimate_sharp_sat(f, radices, primes, ReductionVariant::Parsimonious, limits);
    out["verdict"] = to_string(e.verdict);
    out["sat_upper_bound"] = e.sat_upper_bound.get_str();
    out["zero_partition_upper_bound"] = e.sieve.zero_upper_bound.get_str();
    json family = json::array();
    for (const auto& m : e.family) family.push_back({{"radix", m.radix}, {"n", m.partition.size()}});
    out["family"] = family;
    json certs = json::array();
    for (const auto& c : e.sieve.certificates) {
      certs.push_back({{"instance", c.instance},
                       {"radix", e.family[c.instance].radix},
                       {"prime", c.prime},
                       {"remainder", c.remainder},
                       {"count", c.count.get_str()},
                       {"reason", c.reason}});
    }
    out["certificates"] = certs;
    json cells = json::array();
    for (const auto& c : e.sieve.cells) {
      cells.push_back({{"instance", c.instance}, {"prime", c.prime}, {"counts", counts_json(c.counts)}});
    }
    out["cells"] = cells;
    out["heuristic"] = {{"label", "heuristic"},
                        {"reductions", e.family.size()},
                        {"exponent", e.confidence.exponent},
                        {"product_form", e.confidence.product_form},
                        {"exponential_bound", e.confidence.exponential_bound},
                        {"confidence", e.confidence.confidence}};
    return e.verdict == Verdict::UnsatCertified ? Status::Certified : Status::Ok;
  });
}

json scan_report_json(const ScanReport& report) {
  json out;
  out["n_range"] = {report.n_min, report.n_max};
  out["element_bound"] = report.element_bound;
  out["instances_checked"] = report.instances_checked;
  out["quadrature_crosschecks"] = report.quadrature_crosschecks;
  out["max_ratio"] = report.max_ratio.get_str();
  out["max_ratio_value"] = report.max_ratio.get_d();
  out["witness"] = report.witness ? json(report.witness->to_string()) : json(nullptr);
  out["partial"] = report.partial;
  json cex = json::array();
  for (const auto& c : report.counterexamples) {
    cex.push_back({{"instance", c.instance.to_string()}, {"count", c.count.get_str()}, {"bound", c.bound.get_str()}});
  }
  out["counterexamples"] = cex;
  json slices = json::array();
  for (const auto& s : report.slices) {
    slices.push_back({{"n", s.n},
                      {"instances", s.instances},
                      {"bound", s.bound.get_str()},
                      {"max_count", s.max_count.get_str()},
                      {"witness", s.witness ? json(s.witness->to_string()) : json(nullptr)}});
  }
  out["slices"] = slices;
  return out;
}

CommandResult scan_result(const ScanReport& report) {
  return timed("scan", [&](json& out) {
    out["report"] = scan_report_json(report);
    if (!report.counterexamples.empty()) {
      out["headline"] = "COUNTEREXAMPLE FOUND";
      return Status::Counterexample;
    }
    return Status::Ok;
  });
}

CommandResult cmd_scan(const ScanArgs& args) {
  ScanReport report;
  try {
    if (args.n_min < 1 || args.n_min > args.n_max) throw DomainError("invalid n range");
    if (args.samples == 0) {
      report = scan_exhaustive(args.n_min, args.n_max, args.element_bound);
    } else {
      for (unsigned n = args.n_min; n <= args.n_max; ++n) {
        merge_into(report, scan_random(n, args.element_bound, args.samples, args.seed + n));
      }
    }
  } catch (const std::exception& e) {
    const std::string msg = e.what();
    return timed("scan", [&](json&) -> Status { throw Error(msg); });
  }
  return scan_result(report);
}

namespace {

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  const auto dash = text.find_first_of("-:");
  try {
    std::size_t used = 0;
    if (dash == std::string::npos) {
      const unsigned v = static_cast<unsigned>(std::stoul(text, &used));
      if (used != text.size()) throw DomainError("");
      return {v, v};
    }
    const std::string lo = text.substr(0, dash), hi = text.substr(dash + 1);
    const unsigned a = static_cast<unsigned>(std::stoul(lo, &used));
    if (used != lo.size()) throw DomainError("");
    const unsigned b = static_cast<unsigned>(std::stoul(hi, &used));
    if (used != hi.size()) throw DomainError("");
    return {a, b};
  } catch (const std::exception&) {
    throw DomainError("invalid n range '" + text + "', expected e.g. 2-6");
  }
}

void print_text(const CommandResult& r, std::ostream& out) {
  out << r.payload.value("command", "") << ": " << to_string(r.status) << '\n';
  for (const auto& [key, value] : r.payload.items()) {
    if (key == "command" || key == "status") continue;
    if (value.is_object() || value.is_array()) {
      out << "  " << key << ": " << value.dump() << '\n';
    } else if (value.is_string()) {
      out << "  " << key << ": " << value.get<std::string>() << '\n';
    } else {
      out << "  " << key << ": " << value.dump() << '\n';
    }
  }
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-partition counting, SAT reduction and residue sieving"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  Limits limits;
  app.add_option("--oracle-max-n", limits.oracle_max_n, "Enumeration guard on n");
  app.add_option("--dp-max-total", limits.dp_max_total, "DP guard on the instance total");
  app.add_option("--modular-max-bits", limits.modular_max_bits, "Bit-length cap for the encoded product");

  std::string instance, method = "all", cnf, out_dir = ".", variant = "parsimonious", n_range = "2-6";
  std::vector<unsigned> radices = default_radices();
  std::vector<std::uint64_t> primes = default_primes();
  std::uint64_t modulus = 0;
  std::vector<std::size_t> pair;
  std::size_t index = 0;
  ScanArgs scan;

  auto* count = app.add_subcommand("count", "Count zero partitions of an instance file");
  count->add_option("instance", instance, "Instance JSON file")->required();
  count->add_option("--method", method, "Counting method")
      ->check(CLI::IsMember({"oracle", "dp", "residue", "quadrature", "modular", "all"}));

  auto* spectrum = app.add_subcommand("spectrum", "Subset-sum spectrum read from the encoded product");
  spectrum->add_option("instance", instance, "Instance JSON file")->required();

  auto* stats = app.add_subcommand("stats", "Variance, residue spectra, sign correlation and asymptotics");
  stats->add_option("instance", instance, "Instance JSON file")->required();
  stats->add_option("--modulus", modulus, "Modulus N for residue statistics");
  stats->add_option("--pair", pair, "Two element indices for the sign correlation")->expected(2);

  auto* identity = app.add_subcommand("identity", "Doubling/appending identity for one element");
  identity->add_option("instance", instance, "Instance JSON file")->required();
  identity->add_option("--index", index, "Element index")->required();

  auto* reduce = app.add_subcommand("reduce", "Reduce a DIMACS CNF to a multi-radix family of instances");
  reduce->add_option("cnf", cnf, "DIMACS CNF file")->required();
  reduce->add_option("--radices", radices, "Radices, each at least 6")->delimiter(',');
  reduce->add_option("--variant", variant, "Reduction variant")->check(CLI::IsMember({"parsimonious", "paper"}));
  reduce->add_option("--out", out_dir, "Output directory");

  auto* estimate = app.add_subcommand("estimate", "Residue sieve bounds and UNSAT certificates for a CNF");
  estimate->add_option("cnf", cnf, "DIMACS CNF file")->required();
  estimate->add_option("--primes", primes, "Sieve primes")->delimiter(',');
  estimate->add_option("--radices", radices, "Radices, each at least 6")->delimiter(',');

  auto* scan_cmd = app.add_subcommand("scan", "Search for counterexamples to the zero-count extremality conjecture");
  scan_cmd->add_option("--n-range", n_range, "Range of n, e.g. 2-6");
  scan_cmd->add_option("--element-bound", scan.element_bound, "Largest element value");
  scan_cmd->add_option("--samples", scan.samples, "Random samples per n (0 = exhaustive)");
  scan_cmd->add_option("--seed", scan.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : exit_code(Status::Error);
  }

  CommandResult result;
  if (*count) {
    result = cmd_count(instance, method, limits);
  } else if (*spectrum) {
    result = cmd_spectrum(instance, limits);
  } else if (*stats) {
    std::optional<std::uint64_t> mod;
    if (stats->count("--modulus")) mod = modulus;
    std::optional<std::pair<std::size_t, std::size_t>> p;
    if (pair.size() == 2) p = std::make_pair(pair[0], pair[1]);
    result = cmd_stats(instance, mod, p, limits);
  } else if (*identity) {
    result = cmd_identity(instance, index, limits);
  } else if (*reduce) {
    result = cmd_reduce(cnf, radices, variant, out_dir);
  } else if (*estimate) {
    result = cmd_estimate(cnf, primes, radices, limits);
  } else {
    try {
      std::tie(scan.n_min, scan.n_max) = parse_range(n_range);
      result = cmd_scan(scan);
    } catch (const std::exception& e) {
      const std::string msg = e.what();
      result = timed("scan", [&](json&) -> Status { throw Error(msg); });
    }
  }

  if (format == "text") {
    print_text(result, out);
  } else {
    out << result.payload.dump(2) << '\n';
  }
  if (result.status == Status::Error) err << "error: " << result.payload.value("error", "unknown") << '\n';
  return result.exit_code();
}

}  // namespace zpart::cli
