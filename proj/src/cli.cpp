#include "cnr/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cnr/cloud_io.hpp"
#include "cnr/converge.hpp"
#include "cnr/crange.hpp"
#include "cnr/operator_spec.hpp"
#include "cnr/reports.hpp"
#include "cnr/suites.hpp"

namespace cnr {

namespace {

struct SamplerFlags {
  long long samples = 2000;
  std::uint64_t seed = 0;
  bool ascent = false;
  int directions = 64;
  int max_iters = 500;
  double step = 1.0;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--samples", samples, "Haar samples per cloud");
    cmd.add_option("--seed", seed, "random seed");
    cmd.add_flag("--ascent", ascent, "add boundary points by ascent on the unitary group");
    cmd.add_option("--directions", directions, "ascent directions");
    cmd.add_option("--max-iters", max_iters, "ascent iteration cap");
    cmd.add_option("--step", step, "initial ascent step, relative to 1/(|C||T|)");
  }

  SamplerConfig config() const {
    if (samples < 1) throw InvalidArgument("--samples must be >= 1");
    if (ascent && directions < 1) throw InvalidArgument("--directions must be >= 1");
    SamplerConfig cfg;
    cfg.sample_count = static_cast<std::size_t>(samples);
    cfg.seed = seed;
    cfg.ascent = {ascent, directions, max_iters, step};
    return cfg;
  }
};

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("malformed --sizes entry: '" + item + "'");
    }
    if (used != item.size() || v < 1) throw InvalidArgument("malformed --sizes entry: '" + item + "'");
    sizes.push_back(static_cast<std::size_t>(v));
  }
  if (sizes.empty()) throw InvalidArgument("--sizes is empty");
  return sizes;
}

SchattenExponent parse_exponent_flag(const std::string& text) {
  if (text == "inf" || text == "infinity") return SchattenExponent::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("malformed exponent: " + text);
  }
  if (used != text.size()) throw InvalidArgument("malformed exponent: " + text);
  return SchattenExponent(v);
}

void print_complex(std::ostream& out, const char* label, Complex z) {
  out << label << ' ' << std::setprecision(17) << z.real() << ' ' << z.imag() << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text << '\n';
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Re-reads a written cloud and checks it against what was meant to be written.
void validate_cloud_file(const std::string& path, std::size_t expected_points) {
  const auto pts = read_cloud_csv(path);
  if (pts.size() != expected_points) throw NumericFailure("output validation failed for " + path);
}

void write_manifest(const std::string& path, const std::string& command, const std::vector<std::string>& inputs,
                    const std::map<std::string, std::string>& params, const std::vector<std::string>& outputs,
                    std::uint64_t seed) {
  nlohmann::json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["params"] = params;
  j["outputs"] = outputs;
  j["seed"] = seed;
  write_text(path, j.dump(2));
}

std::string rung_path(const std::string& report_path, std::size_t n) {
  std::filesystem::path p(report_path);
  const std::string stem = p.stem().string();
  return (p.parent_path() / (stem + "_n" + std::to_string(n) + ".csv")).string();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"C-numerical range and C-spectrum toolkit for Schatten-class operators", "cnr"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "sample W_{[C]_n}([T]_n) to a CSV cloud");
  std::string c_path, t_path, out_path, manifest_path, basis_c = "standard", basis_t = "standard";
  long long n_flag = 0;
  SamplerFlags sflags;
  sample->add_option("--C", c_path, "operator spec for C")->required();
  sample->add_option("--T", t_path, "operator spec for T")->required();
  sample->add_option("--n", n_flag, "truncation size")->required();
  sample->add_option("--out", out_path, "output CSV")->required();
  sample->add_option("--basis-C", basis_c, "basis tag for C");
  sample->add_option("--basis-T", basis_t, "basis tag for T");
  sample->add_option("--manifest", manifest_path, "write a run manifest");
  sflags.add_to(*sample);

  // converge
  auto* converge = app.add_subcommand("converge", "truncation ladder with Hausdorff diagnostics");
  std::string sizes_text = "8,16,32,64";
  SamplerFlags cflags;
  cflags.samples = 4000;
  converge->add_option("--C", c_path, "operator spec for C")->required();
  converge->add_option("--T", t_path, "operator spec for T")->required();
  converge->add_option("--sizes", sizes_text, "comma separated even sizes");
  converge->add_option("--out", out_path, "report JSON; rung clouds are written next to it")->required();
  converge->add_option("--basis-C", basis_c, "basis tag for C");
  converge->add_option("--basis-T", basis_t, "basis tag for T");
  converge->add_option("--manifest", manifest_path, "write a run manifest");
  cflags.add_to(*converge);

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "C-spectrum of the truncated pair");
  long long spectrum_samples = 10000;
  std::uint64_t spectrum_seed = 0;
  spectrum->add_option("--C", c_path, "operator spec for C")->required();
  spectrum->add_option("--T", t_path, "operator spec for T")->required();
  spectrum->add_option("--n", n_flag, "truncation size")->required();
  spectrum->add_option("--out", out_path, "output CSV")->required();
  spectrum->add_option("--samples", spectrum_samples, "random permutations when n > 9");
  spectrum->add_option("--seed", spectrum_seed, "random seed");

  // hull
  auto* hull = app.add_subcommand("hull", "convex hull vertices of a CSV cloud");
  std::string in_path;
  hull->add_option("--in", in_path, "input CSV")->required();
  hull->add_option("--out", out_path, "output CSV")->required();

  // support
  auto* support = app.add_subcommand("support", "exact support function for Hermitian [C]_n");
  int angles = 64;
  support->add_option("--C", c_path, "operator spec for C")->required();
  support->add_option("--T", t_path, "operator spec for T")->required();
  support->add_option("--n", n_flag, "truncation size")->required();
  support->add_option("--angles", angles, "uniform angle count");
  support->add_option("--out", out_path, "output CSV (theta,h)")->required();

  // center
  auto* center = app.add_subcommand("center", "decay of n^{-1/q} tr([C]_n)");
  std::string q_text = "2";
  double threshold = 0.1;
  center->add_option("--C", c_path, "diagonal operator spec")->required();
  center->add_option("--q", q_text, "conjugate exponent q < inf");
  center->add_option("--sizes", sizes_text, "comma separated sizes");
  center->add_option("--threshold", threshold, "bound for the final value");
  center->add_option("--out", out_path, "optional report JSON");

  // check
  auto* check = app.add_subcommand("check", "run the invariant suites");
  std::string suite = "all";
  std::uint64_t check_seed = 42;
  long long trials = 500;
  check->add_option("--suite", suite, "norms | geometry | range | spectrum | all")
      ->check(CLI::IsMember({"norms", "geometry", "range", "spectrum", "all"}));
  check->add_option("--seed", check_seed, "random seed");
  check->add_option("--trials", trials, "random instances per inequality");
  check->add_option("--C", c_path, "optional operator spec for C");
  check->add_option("--T", t_path, "optional operator spec for T");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*sample) {
      const auto cfg = sflags.config();
      if (n_flag < 1) throw InvalidArgument("--n must be >= 1");
      const auto c = load_operator_spec(c_path);
      const auto t = load_operator_spec(t_path);
      require_conjugate_admission(c, t);
      const auto n = static_cast<std::size_t>(n_flag);
      const DenseMatrix cn = truncate(c, basis_c, n);
      const DenseMatrix tn = truncate(t, basis_t, n);
      const auto cloud = sample_wc(cn, tn, cfg);
      write_cloud_csv(out_path, cloud.points);
      validate_cloud_file(out_path, cloud.points.size());
      print_complex(out, "star_center", star_center(cn, tn));
      out << "holder_bound " << std::setprecision(17)
          << schatten_norm(cn, c.class_p) * schatten_norm(tn, c.class_p.conjugate()) << '\n';
      out << "points " << cloud.points.size() << '\n';
      if (!manifest_path.empty())
        write_manifest(manifest_path, "sample", {c_path, t_path},
                       {{"n", std::to_string(n)},
                        {"samples", std::to_string(cfg.sample_count)},
                        {"ascent", cfg.ascent.enabled ? "true" : "false"},
                        {"basis_C", basis_c},
                        {"basis_T", basis_t}},
                       {out_path}, cfg.seed);
      return kExitOk;
    }

    if (*converge) {
      const auto cfg = cflags.config();
      const auto sizes = parse_sizes(sizes_text);
      validate_ladder(sizes);
      const auto c = load_operator_spec(c_path);
      const auto t = load_operator_spec(t_path);
      LadderConfig ladder{sizes, cfg, {basis_c, basis_t}};
      const auto report = run_range_ladder(c, t, ladder);
      std::vector<std::string> files;
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        files.push_back(rung_path(out_path, sizes[i]));
        write_cloud_csv(files.back(), report.clouds[i].points);
        validate_cloud_file(files.back(), report.clouds[i].points.size());
      }
      write_text(out_path, to_json(report, files));
      validate_convergence_report_json(read_text(out_path));
      out << "cauchy_tail " << std::setprecision(17) << report.cauchy_tail << '\n';
      out << "center_decay " << report.center_decay << '\n';
      if (!manifest_path.empty()) {
        std::vector<std::string> outputs{out_path};
        outputs.insert(outputs.end(), files.begin(), files.end());
        write_manifest(manifest_path, "converge", {c_path, t_path},
                       {{"sizes", sizes_text},
                        {"samples", std::to_string(cfg.sample_count)},
                        {"ascent", cfg.ascent.enabled ? "true" : "false"}},
                       outputs, cfg.seed);
      }
      return kExitOk;
    }

    if (*spectrum) {
      if (n_flag < 1) throw InvalidArgument("--n must be >= 1");
      const auto c = load_operator_spec(c_path);
      const auto t = load_operator_spec(t_path);
      require_conjugate_admission(c, t);
      const auto n = static_cast<std::size_t>(n_flag);
      const auto cs = modified_eigenseq(truncate(c, "standard", n));
      const auto ts = modified_eigenseq(truncate(t, "standard", n));
      PointCloud cloud;
      if (n <= kMaxExactSpectrum) {
        cloud = c_spectrum_exact(cs, ts);
      } else {
        if (spectrum_samples < 1) throw InvalidArgument("--samples must be >= 1");
        SamplerConfig cfg;
        cfg.sample_count = static_cast<std::size_t>(spectrum_samples);
        cfg.seed = spectrum_seed;
        cloud = c_spectrum_sample(cs, ts, cfg);
      }
      write_cloud_csv(out_path, cloud.points);
      validate_cloud_file(out_path, cloud.points.size());
      out << "points " << cloud.points.size() << '\n';
      out << "rearrangement_bound " << std::setprecision(17) << rearrangement_bound(cs, ts) << '\n';
      return kExitOk;
    }

    if (*hull) {
      const auto pts = read_cloud_csv(in_path);
      if (pts.empty()) throw InvalidArgument("input cloud is empty");
      const auto poly = convex_hull(pts);
      write_cloud_csv(out_path, poly.vertices);
      validate_cloud_file(out_path, poly.vertices.size());
      out << "vertices " << poly.vertices.size() << '\n';
      out << "diameter " << std::setprecision(17) << diameter(poly) << '\n';
      return kExitOk;
    }

    if (*support) {
      if (n_flag < 1) throw InvalidArgument("--n must be >= 1");
      if (angles < 1) throw InvalidArgument("--angles must be >= 1");
      const auto c = load_operator_spec(c_path);
      const auto t = load_operator_spec(t_path);
      require_conjugate_admission(c, t);
      const auto n = static_cast<std::size_t>(n_flag);
      const DenseMatrix cn = truncate(c, "standard", n);
      const DenseMatrix tn = truncate(t, "standard", n);
      std::vector<double> theta, h;
      for (int k = 0; k < angles; ++k) {
        theta.push_back(2.0 * std::numbers::pi * k / angles);
        h.push_back(support_function_hermitian(cn, tn, theta.back()));
      }
      write_support_csv(out_path, theta, h);
      out << "angles " << angles << '\n';
      return kExitOk;
    }

    if (*center) {
      const auto c = load_operator_spec(c_path);
      const auto q = parse_exponent_flag(q_text);
      const auto sizes = parse_sizes(sizes_text);
      const auto r = check_center_decay(c, q, sizes, threshold);
      nlohmann::json j;
      j["sizes"] = r.sizes;
      j["values"] = r.values;
      j["threshold"] = r.threshold;
      j["monotone_tail"] = r.monotone_tail;
      j["holds"] = r.holds;
      if (!out_path.empty()) write_text(out_path, j.dump(2));
      out << j.dump(2) << '\n';
      return r.holds ? kExitOk : kExitPropertyFailure;
    }

    if (*check) {
      if (trials < 1) throw InvalidArgument("--trials must be >= 1");
      SuiteOptions opt;
      opt.seed = check_seed;
      opt.trials = static_cast<std::size_t>(trials);
      if (!c_path.empty()) opt.c = load_operator_spec(c_path);
      if (!t_path.empty()) opt.t = load_operator_spec(t_path);
      if (opt.c && opt.t) require_conjugate_admission(*opt.c, *opt.t);
      const auto rows = run_suite(suite, opt);
      print_suite_table(out, rows);
      const auto failed = std::count_if(rows.begin(), rows.end(), [](const SuiteRow& r) { return !r.pass; });
      if (failed == 0) return kExitOk;
      const auto worst = std::max_element(rows.begin(), rows.end(), [](const SuiteRow& a, const SuiteRow& b) {
        return (a.pass ? 0 : 1) < (b.pass ? 0 : 1);
      });
      err << failed << " check(s) failed; first failure: " << worst->suite << '/' << worst->check
          << " worst=" << worst->worst << '\n';
      return kExitPropertyFailure;
    }
  } catch (const AdmissionError& e) {
    err << "admission error: " << e.what() << '\n';
    return kExitAdmission;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitPropertyFailure;
  }
  return kExitUsage;
}

}  // namespace cnr
