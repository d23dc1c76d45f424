#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "maxdecouple/bounds.hpp"
#include "maxdecouple/constructions.hpp"
#include "maxdecouple/json_io.hpp"
#include "maxdecouple/optimize.hpp"
#include "verify.hpp"

namespace maxdecouple::cli {

namespace {

const std::map<std::string, Format> kFormats{{"json", Format::json}, {"csv", Format::csv}};

// Input-side failure: unreadable file or malformed content.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or to `out` when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

struct ConstructOptions {
  std::string family;
  unsigned n = 0;
  double eps = -1.0;
  std::uint64_t q = 0;
  std::uint64_t m = 0;
  unsigned k = 0;
  std::vector<double> p;
  std::string out;
};

struct SearchOptions {
  unsigned n_min = 3;
  unsigned n_max = 3;
  std::string mode = "equality";
  std::string reduction = "auto";
  std::string out;
};

struct SampleOptions {
  std::string in;
  std::uint64_t seed = kDefaultSeed;
  std::size_t count = 1000;
  bool summary = false;
  std::string out;
};

int run_construct(const ConstructOptions& o, const CLI::App& sub, std::ostream& out,
                  std::ostream& err) {
  const auto family = parse_family(o.family);
  if (!family) {
    err << "construct: unknown family '" << o.family << "'\n";
    return kUsage;
  }
  auto require = [&](const char* flag) {
    if (sub.count(flag) == 0) {
      throw CLI::RequiredError(std::string(flag) + " is required for --family " + o.family);
    }
  };
  FamilySpec spec;
  spec.kind = *family;
  switch (*family) {
    case Family::comonotone:
      require("--eps");
      [[fallthrough]];
    case Family::one_hot_uniform:
    case Family::conjectured_extremal:
      require("--n");
      break;
    case Family::affine_hash:
      require("--n");
      require("--q");
      require("--m");
      break;
    case Family::xor_parity:
      require("--k");
      break;
    case Family::product:
      require("--p");
      break;
  }
  spec.n = o.n;
  spec.eps = o.eps;
  spec.q = o.q;
  spec.m = o.m;
  spec.k = o.k;
  spec.p = o.p;
  const JointBernoulli j = build(spec);
  emit(o.out, to_json(j) + "\n", out);
  (void)err;
  return kSuccess;
}

int run_search(const SearchOptions& o, std::ostream& out, std::ostream& err) {
  const auto mode = parse_mode(o.mode);
  const auto reduction = parse_reduction(o.reduction);
  const auto rows = conjecture_sweep(o.n_min, o.n_max, *mode, *reduction);

  std::string csv = sweep_csv_header() + "\n";
  bool guard_ok = true;
  for (const auto& row : rows) {
    csv += sweep_csv_row(row) + "\n";
    guard_ok = guard_ok && row.status == LpStatus::optimal && row.lp_ratio >= 0.5 - 1e-9;
  }
  emit(o.out, csv, out);

  const auto& last = rows.back();
  err << "running min lp_ratio over n in [" << o.n_min << ", " << o.n_max
      << "]: " << format_real(last.running_min_ratio) << "\n"
      << "lp_ratio at n = " << last.n << ": " << format_real(last.lp_ratio) << "\n"
      << "conjectured constant e/(2(e-1)): " << format_real(kConjecturedLowerConstant) << "\n";
  if (!guard_ok) {
    err << "search: a row fell below the 1/2 lower bound or was not optimal\n";
    return kInvariantFailure;
  }
  return kSuccess;
}

int run_sample(const SampleOptions& o, std::ostream& out) {
  const JointBernoulli j = parse_bernoulli_joint(read_file(o.in));
  const auto draws = sample(j, o.seed, o.count);
  std::string text;
  if (o.summary) {
    const double exact = prob_hit(j);
    const double empirical = empirical_hit_rate(draws);
    const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(o.count));
    std::ostringstream ss;
    ss << "{\"seed\":" << o.seed << ",\"count\":" << o.count
       << ",\"empirical_hit\":" << format_real(empirical) << ",\"exact_hit\":" << format_real(exact)
       << ",\"std_error\":" << format_real(se)
       << ",\"within_3se\":" << (std::abs(empirical - exact) <= 3.0 * se ? "true" : "false")
       << "}\n";
    text = ss.str();
  } else {
    text.reserve(draws.size() * 4);
    text += "mask\n";
    for (Mask m : draws) {
      text += std::to_string(m);
      text += '\n';
    }
  }
  emit(o.out, text, out);
  return kSuccess;
}

}  // namespace

int run_report(const std::string& input_path, Format format, double tol, std::ostream& out,
               std::ostream& err) {
  AnyJoint joint = [&]() -> AnyJoint {
    try {
      return parse_joint(read_file(input_path));
    } catch (const ParseError& e) {
      throw InputError(input_path + ": " + e.what());
    }
  }();
  bool universal = false;
  if (const auto* b = std::get_if<JointBernoulli>(&joint)) {
    const BoundReport r = full_report(*b, tol);
    universal = r.verdicts.all_universal();
    if (format == Format::json) {
      out << report_to_json(r) << "\n";
    } else {
      out << report_csv_header() << "\n" << report_csv_row(r) << "\n";
    }
  } else {
    const ContinuousReport r = decoupling_check_cont(std::get<NonnegJoint>(joint));
    universal = r.all_universal();
    if (format == Format::json) {
      out << report_to_json(r) << "\n";
    } else {
      out << continuous_csv_header() << "\n" << continuous_csv_row(r) << "\n";
    }
  }
  if (!universal) {
    err << "report: a universal verdict failed\n";
    return kInvariantFailure;
  }
  return kSuccess;
}

int run_verify(std::uint64_t seed, std::size_t trials, std::ostream& out, std::ostream& err) {
  if (trials == 0) {
    err << "verify: --trials must be at least 1\n";
    return kUsage;
  }
  out << "verify seed=" << seed << " trials=" << trials << "\n";
  const auto tallies = run_property_battery(seed, trials, out);
  std::size_t failed = 0;
  for (const auto& t : tallies) failed += t.passed != t.total;
  if (failed == 0) {
    out << "all " << tallies.size() << " properties passed\n";
    return kSuccess;
  }
  out << failed << " of " << tallies.size() << " properties failed\n";
  return kInvariantFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decoupling inequalities for maxima of dependent random variables"};
  app.name(args.empty() ? "maxdecouple" : args.front());
  app.require_subcommand(1);

  std::string report_in;
  std::string report_format = "json";
  double report_tol = 1e-12;
  auto* report = app.add_subcommand("report", "Compute every bound for a joint distribution file");
  report->add_option("--in", report_in, "bernoulli-joint or nonneg-joint JSON file")->required();
  report->add_option("--format", report_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  report->add_option("--tol", report_tol, "tolerance for the negative-covariance test")
      ->check(CLI::NonNegativeNumber);

  ConstructOptions construct_opts;
  auto* construct = app.add_subcommand("construct", "Emit a named family as bernoulli-joint JSON");
  construct->add_option("--family", construct_opts.family,
                        "one-hot | extremal | comonotone | affine-hash | xor | product")
      ->required();
  construct->add_option("--n", construct_opts.n, "number of variables");
  construct->add_option("--eps", construct_opts.eps, "comonotone success probability");
  construct->add_option("--q", construct_opts.q, "affine-hash prime modulus");
  construct->add_option("--m", construct_opts.m, "affine-hash threshold");
  construct->add_option("--k", construct_opts.k, "xor seed bits (n = 2^k - 1)");
  construct->add_option("--p", construct_opts.p, "product marginals, comma separated")
      ->delimiter(',');
  construct->add_option("--out", construct_opts.out, "output path (default stdout)");

  SearchOptions search_opts;
  auto* search = app.add_subcommand("search", "Sweep the extremal LP over n at p = 1/(n-1)");
  search->add_option("--n-min", search_opts.n_min)->required();
  search->add_option("--n-max", search_opts.n_max)->required();
  search->add_option("--mode", search_opts.mode, "equality or negcov")
      ->check(CLI::IsMember({"equality", "negcov"}));
  search->add_option("--reduction", search_opts.reduction, "auto, full or exchangeable")
      ->check(CLI::IsMember({"auto", "full", "exchangeable"}));
  search->add_option("--out", search_opts.out, "CSV output path (default stdout)");

  SampleOptions sample_opts;
  auto* sample_cmd = app.add_subcommand("sample", "Draw masks from a bernoulli-joint file");
  sample_cmd->add_option("--in", sample_opts.in)->required();
  sample_cmd->add_option("--seed", sample_opts.seed, "RNG seed (default 0)");
  sample_cmd->add_option("--count", sample_opts.count, "number of draws");
  sample_cmd->add_flag("--summary", sample_opts.summary,
                       "print hit-rate summary instead of the draws");
  sample_cmd->add_option("--out", sample_opts.out, "output path (default stdout)");

  std::uint64_t verify_seed = kDefaultSeed;
  std::size_t verify_trials = 1000;
  auto* verify = app.add_subcommand("verify", "Run the randomized property battery");
  verify->add_option("--seed", verify_seed, "RNG seed (default 0)");
  verify->add_option("--trials", verify_trials, "instances per property");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (report->parsed()) {
      return run_report(report_in, kFormats.at(report_format), report_tol, out, err);
    }
    if (construct->parsed()) return run_construct(construct_opts, *construct, out, err);
    if (search->parsed()) return run_search(search_opts, out, err);
    if (sample_cmd->parsed()) {
      if (sample_opts.count == 0) {
        err << "sample: --count must be at least 1\n";
        return kUsage;
      }
      return run_sample(sample_opts, out);
    }
    if (verify->parsed()) return run_verify(verify_seed, verify_trials, out, err);
  } catch (const CLI::Error& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kUsage;
}

}  // namespace maxdecouple::cli
