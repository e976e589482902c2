// mapforge: sample, verify, stats, enumerate.
//
// Exit codes: 0 pass, 1 invariant failure, 2 input error, 3 resource guard.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "mapforge/closure.hpp"
#include "mapforge/geodesics.hpp"
#include "mapforge/io.hpp"
#include "mapforge/snake.hpp"
#include "mapforge/verify.hpp"

namespace fs = std::filesystem;
using namespace mapforge;

namespace {

enum Exit { kPass = 0, kInvariant = 1, kInput = 2, kGuard = 3 };

struct RunConfig {
  std::string family = "tri";
  std::size_t n = 0;
  std::size_t samples = 1;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
  std::string format = "json";
  std::vector<std::string> inputs;
  std::vector<std::size_t> n_list;
  std::size_t probes = 64;
  bool quiet = false;
};

std::vector<Family> families(const std::string& s) {
  if (s == "both") return {Family::Triangulation, Family::Quadrangulation};
  return {parse_family(s)};
}

std::size_t min_vertices(Family f) { return f == Family::Triangulation ? 3 : 4; }

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory " + dir);
}

std::size_t guard_n() {
  if (const char* env = std::getenv("MAPFORGE_GUARD_N")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') throw InputError(std::string("MAPFORGE_GUARD_N is not an integer: ") + env);
    return v;
  }
  return 8;
}

int cmd_sample(const RunConfig& cfg) {
  const Family f = parse_family(cfg.family);
  if (cfg.n < min_vertices(f))
    throw InputError("--n must be at least " + std::to_string(min_vertices(f)) + " for " +
                     std::string(family_name(f)));
  std::vector<std::string> text(cfg.samples);
  parallel_for(cfg.samples, cfg.threads, [&](std::size_t i) {
    Rng rng(stream_seed(cfg.seed, i));
    text[i] = closure_to_json(sample_rooted_map(cfg.n, f, rng));
  });
  const std::string dir = cfg.out.empty() ? "." : cfg.out;
  ensure_dir(dir);
  if (cfg.format == "json") {
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "sample_%04zu.json", i);
      write_text_file((fs::path(dir) / name).string(), text[i]);
      std::cout << name << ' ' << checksum_hex(text[i]) << '\n';
    }
  } else {
    std::ostringstream csv;
    csv << "sample_idx,half_edge,next_cw,vertex_of,outgoing,lambda_star\n";
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      const auto mf = map_from_json(text[i]);
      for (std::size_t h = 0; h < mf.map.half_edge_count(); ++h) {
        const auto he = static_cast<HalfEdgeId>(h);
        csv << i << ',' << h << ',' << mf.map.next_cw(he) << ',' << mf.map.vertex_of(he) << ','
            << (mf.orientation->is_out(he) ? 1 : 0) << ',' << mf.lambda_star[h] << '\n';
      }
      std::cout << "sample " << i << ' ' << checksum_hex(text[i]) << '\n';
    }
    write_text_file((fs::path(dir) / "samples.csv").string(), csv.str());
  }
  return kPass;
}

nlohmann::json report_json(const VerifyReport& rep) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : rep.checks)
    j.push_back({{"check", c.name}, {"ok", c.ok}, {"skipped", c.skipped}, {"detail", c.detail}});
  return j;
}

bool print_report(const std::string& label, const VerifyReport& rep, bool quiet) {
  const bool ok = rep.ok();
  std::cout << label << ": " << (ok ? "PASS" : "FAIL") << '\n';
  for (const auto& c : rep.checks) {
    if (quiet && c.ok) continue;
    std::cout << "  " << (c.skipped ? "skip" : c.ok ? "ok  " : "FAIL") << ' ' << c.name;
    if (!c.detail.empty()) std::cout << ": " << c.detail;
    std::cout << '\n';
  }
  return ok;
}

int cmd_verify(const RunConfig& cfg) {
  VerifyOptions opt;
  opt.probes = cfg.probes;
  opt.seed = cfg.seed;
  bool all_ok = true;
  nlohmann::json out = nlohmann::json::object();
  if (!cfg.inputs.empty()) {
    for (const auto& path : cfg.inputs) {
      MapFile mf;
      try {
        mf = map_from_json(read_text_file(path));
      } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
      }
      const Family f = mf.family ? *mf.family : parse_family(cfg.family);
      const auto rep = verify_map(mf.map, mf.orientation, f, opt);
      all_ok &= print_report(path, rep, cfg.quiet);
      out[path] = report_json(rep);
    }
  } else {
    if (cfg.n == 0) throw InputError("verify needs input files or --n");
    for (Family f : families(cfg.family)) {
      if (cfg.n < min_vertices(f))
        throw InputError("--n must be at least " + std::to_string(min_vertices(f)) + " for " +
                         std::string(family_name(f)));
      std::vector<VerifyReport> reps(cfg.samples);
      parallel_for(cfg.samples, cfg.threads, [&](std::size_t i) {
        Rng rng(stream_seed(cfg.seed, i));
        const auto c = sample_rooted_map(cfg.n, f, rng);
        reps[i] = verify_map(c.map, c.orientation, f, opt);
      });
      std::size_t failed = 0;
      for (std::size_t i = 0; i < cfg.samples; ++i) {
        const std::string label = std::string(family_name(f)) + " sample " + std::to_string(i);
        if (!reps[i].ok() || !cfg.quiet) print_report(label, reps[i], cfg.quiet);
        failed += !reps[i].ok();
        out[label] = report_json(reps[i]);
      }
      std::cout << family_name(f) << ": " << cfg.samples - failed << '/' << cfg.samples << " samples pass\n";
      all_ok &= failed == 0;
    }
  }
  if (!cfg.out.empty()) write_text_file(cfg.out, out.dump(2));
  return all_ok ? kPass : kInvariant;
}

// Two-sample KS critical value at level 0.01.
double ks_critical(std::size_t a, std::size_t b) {
  return 1.628 * std::sqrt(static_cast<double>(a + b) / (static_cast<double>(a) * static_cast<double>(b)));
}

int cmd_stats(const RunConfig& cfg) {
  if (cfg.n == 0 && cfg.n_list.empty()) throw InputError("stats needs --n or --n-list");
  std::vector<std::size_t> n_list = cfg.n_list;
  if (n_list.empty()) n_list = {cfg.n, 2 * cfg.n, 4 * cfg.n};
  const std::size_t n_two = cfg.n ? cfg.n : n_list.back();
  const auto fams = families(cfg.family);
  for (Family f : fams)
    for (std::size_t n : n_list)
      if (n < min_vertices(f)) throw InputError("every n must be at least " + std::to_string(min_vertices(f)));
  const std::string dir = cfg.out.empty() ? "." : cfg.out;
  ensure_dir(dir);

  std::ostringstream two;
  two << "family,n,seed,sample_idx,value\n";
  std::map<Family, std::vector<double>> tp;
  for (Family f : fams) {
    tp[f] = two_point_statistics(f, n_two, cfg.samples, cfg.seed, cfg.threads);
    for (std::size_t i = 0; i < tp[f].size(); ++i)
      two << family_name(f) << ',' << n_two << ',' << cfg.seed << ',' << i << ',' << tp[f][i] << '\n';
  }
  write_text_file((fs::path(dir) / "twopoint.csv").string(), two.str());
  if (fams.size() == 2) {
    const double ks = ks_statistic(tp[Family::Triangulation], tp[Family::Quadrangulation]);
    std::printf("cross-family KS at n=%zu: %.4f (N=%zu per family)\n", n_two, ks, cfg.samples);
  }

  std::ostringstream prof;
  prof << "n,seed,family,max_err,mean_err,max_err_scaled\n";
  std::printf("%-5s %8s %12s %12s %16s\n", "fam", "n", "median max", "mean err", "median scaled");
  for (Family f : fams) {
    for (std::size_t n : n_list) {
      std::vector<LabelDistanceProfile> rows(cfg.samples);
      parallel_for(cfg.samples, cfg.threads, [&](std::size_t i) {
        Rng rng(stream_seed(cfg.seed + n, i));
        const auto c = sample_rooted_map(n, f, rng);
        const auto dA = bfs_distance(c.map, c.A);
        const std::size_t inner = c.inner_count();
        rows[i] = label_distance_profile({c.Y.begin(), c.Y.begin() + inner}, {dA.begin(), dA.begin() + inner});
      });
      std::vector<double> mx, sc;
      double mean = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        prof << n << ',' << stream_seed(cfg.seed + n, i) << ',' << family_name(f) << ',' << rows[i].max_err << ','
             << rows[i].mean_err << ',' << rows[i].max_err_scaled << '\n';
        mx.push_back(rows[i].max_err);
        sc.push_back(rows[i].max_err_scaled);
        mean += rows[i].mean_err / rows.size();
      }
      std::sort(mx.begin(), mx.end());
      std::sort(sc.begin(), sc.end());
      std::printf("%-5s %8zu %12.2f %12.3f %16.4f\n", std::string(family_name(f)).c_str(), n, mx[mx.size() / 2], mean,
                  sc[sc.size() / 2]);
    }
  }
  write_text_file((fs::path(dir) / "profile.csv").string(), prof.str());

  bool deterministic_ok = true;
  nlohmann::json cs = nlohmann::json::object();
  for (Family f : fams) {
    const auto rep = cs_family_report(f, n_list, cfg.samples, cfg.seed, cfg.threads);
    nlohmann::json fam = nlohmann::json::array();
    for (std::size_t k = 0; k < rep.rows.size(); ++k) {
      const auto& r = rep.rows[k];
      const double ks_thr = ks_critical(cfg.samples, cfg.samples);
      nlohmann::json row;
      row["n"] = r.n;
      row["2(i)"] = {{"statistic", r.max_dist_to_R}, {"threshold", 1}, {"pass", r.max_dist_to_R <= 1}};
      row["2(ii)"] = {{"statistic", r.ks_root_vs_uniform}, {"threshold", ks_thr}, {"pass", r.ks_root_vs_uniform <= ks_thr}};
      row["3(i)"] = {{"statistic", r.upper_violations},
                     {"checked", r.upper_checked},
                     {"worst_slack", r.upper_worst_slack},
                     {"threshold", 0},
                     {"pass", r.upper_violations == 0}};
      const bool decreasing = k == 0 || r.lower_gap_median < rep.rows[k - 1].lower_gap_median;
      row["3(ii)"] = {{"statistic", r.lower_gap_median},
                      {"threshold", k == 0 ? "baseline" : "below previous n"},
                      {"pass", decreasing}};
      row["label_profile"] = {{"statistic", r.label_error_median}};
      row["root_to_min_gap"] = {{"statistic", r.root_to_min_gap_mean}};
      deterministic_ok &= r.max_dist_to_R <= 1 && r.upper_violations == 0;
      fam.push_back(row);
      std::printf("%s n=%zu: 2(i) %d, 2(ii) KS %.3f, 3(i) %zu/%zu violations, 3(ii) %.3f, root-min gap %.3f\n",
                  std::string(family_name(f)).c_str(), r.n, r.max_dist_to_R, r.ks_root_vs_uniform,
                  r.upper_violations, r.upper_checked, r.lower_gap_median, r.root_to_min_gap_mean);
    }
    cs[std::string(family_name(f))] = fam;
  }
  if (fams.size() == 2) {
    const double ks = ks_statistic(tp[Family::Triangulation], tp[Family::Quadrangulation]);
    cs["cross_family_ks"] = {{"n", n_two}, {"statistic", ks}, {"threshold", 0.06}, {"pass", ks <= 0.06}};
  }
  write_text_file((fs::path(dir) / "csreport.json").string(), cs.dump(2));
  return deterministic_ok ? kPass : kInvariant;
}

int cmd_enumerate(const RunConfig& cfg) {
  const std::size_t guard = guard_n();
  if (cfg.n > guard)
    throw GuardError("enumerate: n = " + std::to_string(cfg.n) + " exceeds the guard " + std::to_string(guard) +
                     " (set MAPFORGE_GUARD_N to raise it)");
  if (cfg.n == 0) throw InputError("--n must be positive");
  bool ok = true;
  std::printf("%-5s %3s %12s %10s %10s %9s %9s\n", "fam", "n", "trees", "balanced", "closures", "identity", "injective");
  for (Family f : families(cfg.family)) {
    for (std::size_t k = 1; k <= cfg.n; ++k) {
      const auto trees = enumerate_trees(k, f);
      std::set<std::vector<std::int32_t>> closures;
      std::size_t balanced = 0;
      for (const auto& t : trees) {
        if (!is_balanced(t)) continue;
        ++balanced;
        const auto c = close(t);
        closures.insert(canonical_code(c.map, &c.orientation));
      }
      // 4k-2 corners per tree for triangulations, 3k-2 for quadrangulations,
      // two of them balanced. The one-vertex quad tree has a single corner.
      bool identity = f == Family::Triangulation ? trees.size() == (2 * k - 1) * balanced
                                                 : 2 * trees.size() == (3 * k - 2) * balanced;
      if (f == Family::Quadrangulation && k == 1) identity = trees.size() == 1 && balanced == 1;
      const bool injective = closures.size() == balanced;
      ok &= identity && injective;
      std::printf("%-5s %3zu %12zu %10zu %10zu %9s %9s\n", std::string(family_name(f)).c_str(), k, trees.size(),
                  balanced, closures.size(), identity ? "ok" : "FAIL", injective ? "ok" : "FAIL");
    }
  }
  return ok ? kPass : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mapforge: random planar triangulations and quadrangulations via blossoming trees"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool sampling) {
    sub->add_option("--family", cfg.family, "tri, quad or both")->check(CLI::IsMember({"tri", "quad", "both"}));
    sub->add_option("--seed", cfg.seed, "64-bit seed; sample i uses seed ^ splitmix64(i)");
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 256u));
    if (sampling) sub->add_option("--samples", cfg.samples, "number of samples")->check(CLI::PositiveNumber);
  };

  auto* sample = app.add_subcommand("sample", "write sampled rooted maps with orientation and lambda*");
  common(sample, true);
  sample->add_option("--n", cfg.n, "number of map vertices")->required();
  sample->add_option("--out", cfg.out, "output directory");
  sample->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* verify = app.add_subcommand("verify", "run the invariant suite on map files or fresh samples");
  common(verify, true);
  verify->add_option("files", cfg.inputs, "map files");
  verify->add_option("--n", cfg.n, "sample maps with this many vertices instead of reading files");
  verify->add_option("--out", cfg.out, "write a JSON report here");
  verify->add_option("--probes", cfg.probes, "source vertices for winding and two-point checks");
  verify->add_flag("--quiet", cfg.quiet, "only print failures");

  auto* stats = app.add_subcommand("stats", "two-point, label-profile and CS-family statistics");
  common(stats, true);
  stats->add_option("--n", cfg.n, "map vertices for the two-point samples (and first n of the list)");
  stats->add_option("--n-list", cfg.n_list, "sizes for the profile and CS tables")->delimiter(',');
  stats->add_option("--out", cfg.out, "output directory");
  stats->add_option("--format", cfg.format, "accepted for symmetry; outputs are CSV and JSON")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* enumerate = app.add_subcommand("enumerate", "exhaustive counts for small trees");
  common(enumerate, false);
  enumerate->add_option("--n", cfg.n, "largest number of inner vertices")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }
  // --family defaults to tri except for stats.
  const bool family_given = app.get_subcommands().front()->count("--family") > 0;
  if (!family_given) cfg.family = app.got_subcommand(stats) ? "both" : "tri";
  if (cfg.family == "both" && app.got_subcommand(sample)) {
    std::cerr << "error: sample needs --family tri or quad\n";
    return kInput;
  }

  try {
    if (app.got_subcommand(sample)) return cmd_sample(cfg);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(stats)) return cmd_stats(cfg);
    return cmd_enumerate(cfg);
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << '\n';
    return kGuard;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariant;
  }
}
