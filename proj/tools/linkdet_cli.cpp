// Command-line front end: instance generation, verification, sweeps,
// counterexamples, chain experiments and limit-linear-series checks.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 resource limit hit,
// 3 invalid input.

#include "linkdet/chains.hpp"
#include "linkdet/io.hpp"
#include "linkdet/llseries.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace linkdet;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitResource = 2;
constexpr int kExitInvalid = 3;

struct InstanceFlags {
  std::string instance_file;
  std::string example;
  std::optional<int> d, n, r1, rn, r, degree_bound;
  std::vector<int> c;
  std::string s_mode = "zero";
  std::string field;

  void add(CLI::App* app) {
    app->add_option("--instance", instance_file, "instance JSON file");
    app->add_option("--example", example, "built-in instance")->check(CLI::IsMember(named_instance_names()));
    app->add_option("--d", d, "number of columns");
    app->add_option("--n", n, "chain length");
    app->add_option("--r1", r1, "rows in the top block");
    app->add_option("--rn", rn, "rows in the bottom block");
    app->add_option("--c", c, "nondecreasing c_1 .. c_{n-1}")->delimiter(',');
    app->add_option("--r", r, "rank bound");
    app->add_option("--s-mode", s_mode, "zero | unit | t");
    app->add_option("--field", field, "QQ or Fp:P");
    app->add_option("--degree-bound", degree_bound, "top degree of Hilbert comparisons");
  }

  InstanceParams resolve() const {
    InstanceParams p;
    if (!instance_file.empty()) {
      p = load_instance(instance_file);
    } else if (!example.empty()) {
      auto named = named_instance(example);
      if (!named) throw InvalidInstance("unknown built-in instance: " + example);
      p = *named;
    } else {
      if (!d || !r1 || !r) throw InvalidInstance("give --instance, --example, or at least --d --r1 --r");
      p.d = *d;
      p.n = n.value_or(1);
      p.r1 = *r1;
      p.rn = rn.value_or(0);
      p.c = c;
      p.r = *r;
      p.s_mode = parse_smode(s_mode);
      p.degree_bound = p.r + 3;
    }
    if (!field.empty()) p.field = FieldSpec::parse(field);
    if (degree_bound) p.degree_bound = *degree_bound;
    p.validate();
    if (p.degree_bound < p.r + 1) throw InvalidInstance("degree_bound must be at least r+1");
    return p;
  }
};

struct Limits {
  std::size_t max_pairs = GroebnerOptions{}.max_pairs;
  std::size_t max_rows = OracleOptions{}.max_rows;
  bool no_oracle = false;

  void add(CLI::App* app) {
    app->add_option("--max-pairs", max_pairs, "critical pair bound for Buchberger");
    app->add_option("--max-rows", max_rows, "row bound per degree for the Hilbert oracle");
    app->add_flag("--no-oracle", no_oracle, "skip the brute-force Hilbert oracle");
  }
  VerifyOptions options() const {
    VerifyOptions o;
    o.groebner.max_pairs = max_pairs;
    o.oracle.max_rows = max_rows;
    o.skip_oracle = no_oracle;
    return o;
  }
};

void write_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

const std::vector<std::string> kAllChecks{"lemma", "initial", "codim", "flat"};

template <Field K>
VerificationReport run_selected(const InstanceParams& p, const K& k, const std::vector<std::string>& checks,
                                const VerifyOptions& opts, const std::vector<std::int64_t>& fibers) {
  auto want = [&](const std::string& name) { return std::find(checks.begin(), checks.end(), name) != checks.end(); };
  VerificationReport rep;
  rep.instance = p;
  if (want("lemma")) rep.append(check_lemma_combinatorics(p, k));
  if (want("initial")) rep.append(check_initial_ideals(p, k, opts));
  if (want("codim")) {
    auto q = p;
    if (q.s_mode == SMode::T) q.s_mode = SMode::Zero;
    rep.checks.push_back(check_codim(q, k, opts));
  }
  if (want("flat")) {
    auto q = p;
    q.s_mode = SMode::T;
    rep.checks.push_back(check_flat_family(q, fibers, k, opts));
  }
  return rep;
}

int cmd_gen(const InstanceFlags& flags, const std::string& out) {
  write_json(instance_to_json(flags.resolve()), out);
  return 0;
}

int cmd_verify(const InstanceFlags& flags, const Limits& limits, std::vector<std::string> checks,
               const std::vector<std::int64_t>& fibers, const std::string& out, bool timing) {
  auto p = flags.resolve();
  if (checks.empty()) checks = kAllChecks;
  auto rep = with_field(p.field, [&](auto k) { return run_selected(p, k, checks, limits.options(), fibers); });
  std::cout << report_summary_text(rep);
  std::cout << (rep.all_pass() ? "all checks pass\n" : "CHECK FAILURE\n");
  if (!out.empty()) write_json(report_to_json(rep, timing), out);
  else if (!rep.all_pass()) std::cerr << report_to_json(rep, timing).dump(2) << "\n";
  return rep.all_pass() ? 0 : kExitFail;
}

int cmd_sweep(SweepGrid grid, const std::vector<std::string>& modes, const Limits& limits, std::vector<std::string> checks,
              std::size_t max_instances, int jobs, const std::string& out, bool timing) {
  grid.modes.clear();
  for (const auto& m : modes) grid.modes.push_back(parse_smode(m));
  if (checks.empty()) checks = kAllChecks;
  auto all = enumerate_grid(grid);
  if (all.size() > max_instances) {
    std::cout << "grid has " << all.size() << " instances; capped at " << max_instances << "\n";
    all.resize(max_instances);
  }
  const auto opts = limits.options();
  const std::vector<std::int64_t> fibers{0, 1, 2};
  auto reports = parallel_map(all, jobs, [&](const InstanceParams& p) {
    return with_field(p.field, [&](auto k) { return run_selected(p, k, checks, opts, fibers); });
  });
  json items = json::array();
  std::size_t failed = 0;
  for (const auto& rep : reports) {
    if (!rep.all_pass()) {
      ++failed;
      std::cout << report_summary_text(rep);
    }
    items.push_back(report_to_json(rep, timing));
  }
  std::cout << "swept " << reports.size() << " instances, " << failed << " with failures\n";
  if (!out.empty())
    write_json({{"instances", items}, {"summary", {{"instances", reports.size()}, {"failed", failed}}}}, out);
  return failed ? kExitFail : 0;
}

int cmd_counterexamples(const std::string& field, const Limits& limits, const std::string& out, bool timing) {
  auto spec = field.empty() ? FieldSpec{} : FieldSpec::parse(field);
  auto rep = with_field(spec, [&](auto k) { return run_counterexamples(k, limits.options()); });
  std::cout << report_summary_text(rep);
  std::cout << (rep.all_pass() ? "both perturbations reproduce\n" : "CHECK FAILURE\n");
  if (!out.empty()) write_json(report_to_json(rep, timing), out);
  return rep.all_pass() ? 0 : kExitFail;
}

struct ChainFlags {
  int d = 5, n = 4;
  std::vector<int> c{1, 3, 3};
  int r1 = 1, rn = 2;
  std::string field = "Fp:32003";
  std::string s = "0";
  int truncation = 4;
  std::uint64_t seed = 0;
  int count = 1;
  std::string chain_file;
};

template <Field K>
json chain_experiment(const K& k, const ChainBase<K>& base, const ChainFlags& f, std::uint64_t seed, bool& ok) {
  auto ch = generate_chain(f.d, f.n, f.c, base, seed);
  json out{{"seed", seed}};
  auto v = verify_chain(ch);
  out["verify_chain"] = {{"pass", v.pass}, {"condition", v.condition}, {"witness", v.witness}};
  ok = ok && v.pass;
  auto prof = rank_profile(ch);
  out["rank_profile"] = prof.c;
  ok = ok && prof.c == f.c;
  auto fr = build_frames(ch, seed);
  out["frame_ranks"] = fr.ranks;
  auto fv = verify_frames(ch, fr);
  out["frames"] = {{"pass", fv.pass}, {"condition", fv.condition}};
  ok = ok && fv.pass;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  InstanceParams shape;
  shape.d = f.d;
  shape.n = f.n;
  shape.r1 = f.r1;
  shape.rn = f.rn;
  shape.c = f.c;
  shape.s_mode = base.s_is_nonunit() ? SMode::Zero : SMode::Unit;
  auto uf = universal_form_generic(ch, fr, f.r1, f.rn, rng);
  bool pattern = true;
  for (int l = 1; l <= f.n; ++l)
    if (fiber_zero_pattern(base, uf.M[static_cast<std::size_t>(l - 1)]) != build_A(l, shape, k).zero_pattern()) pattern = false;
  out["zero_patterns_match"] = pattern;
  ok = ok && pattern;
  out["chain"] = chain_to_json(ch);
  return out;
}

int cmd_chain(const ChainFlags& f, const std::string& out) {
  auto spec = FieldSpec::parse(f.field);
  bool ok = true;
  json result = with_field(spec, [&](auto k) -> json {
    using K = decltype(k);
    if (!f.chain_file.empty()) {
      std::ifstream in(f.chain_file);
      if (!in) throw std::runtime_error("cannot open " + f.chain_file);
      auto ch = chain_from_json(k, json::parse(in));
      auto v = verify_chain(ch);
      ok = v.pass;
      json j{{"verify_chain", {{"pass", v.pass}, {"condition", v.condition}, {"witness", v.witness}}}};
      if (v.pass) j["rank_profile"] = rank_profile(ch).c;
      return j;
    }
    auto base = f.s == "t" ? ChainBase<K>::truncated(k, f.truncation) : ChainBase<K>::over_field(k, k.parse(f.s));
    json runs = json::array();
    for (int q = 0; q < f.count; ++q) runs.push_back(chain_experiment(k, base, f, f.seed + static_cast<std::uint64_t>(q), ok));
    return {{"base", base.to_json()}, {"runs", runs}};
  });
  std::cout << (ok ? "chain checks pass\n" : "CHECK FAILURE\n");
  write_json(result, out);
  return ok ? 0 : kExitFail;
}

int cmd_lls(const std::string& input) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open " + input);
  auto [vd, g] = lls_from_json(json::parse(in));
  std::cout << to_string(check_eh(vd, g)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linked determinantal ideals: construction and verification"};
  app.require_subcommand(1);

  std::string out;
  bool no_timing = false;

  InstanceFlags gen_flags;
  auto* gen = app.add_subcommand("gen", "write an instance file");
  gen_flags.add(gen);
  gen->add_option("--out", out, "output file (default stdout)");

  InstanceFlags verify_flags;
  Limits verify_limits;
  std::vector<std::string> verify_checks;
  std::vector<std::int64_t> fibers{0, 1, 2};
  auto* verify = app.add_subcommand("verify", "run the checks on one instance");
  verify_flags.add(verify);
  verify_limits.add(verify);
  verify->add_option("--checks", verify_checks, "subset of lemma,initial,codim,flat")->delimiter(',');
  verify->add_option("--fibers", fibers, "t-values for the flat-family check")->delimiter(',');
  verify->add_option("--out", out, "JSON report file");
  verify->add_flag("--no-timing", no_timing, "omit timing fields from the report");

  SweepGrid grid;
  std::vector<std::string> modes{"zero"};
  Limits sweep_limits;
  std::vector<std::string> sweep_checks;
  std::size_t max_instances = 500;
  int jobs = 1;
  std::string sweep_field;
  auto* sweep = app.add_subcommand("sweep", "verify every instance of a grid");
  std::string grid_preset = "default";
  sweep->add_option("--grid", grid_preset, "default (r1+rn <= 4, r <= 3) or reduced (r1+rn <= 3, r <= 2)")
      ->check(CLI::IsMember({"default", "reduced"}));
  sweep->add_option("--d-min", grid.d_min);
  sweep->add_option("--d-max", grid.d_max);
  sweep->add_option("--n-min", grid.n_min);
  sweep->add_option("--n-max", grid.n_max);
  sweep->add_option("--rows-min", grid.rows_min, "minimum r1 + rn");
  sweep->add_option("--rows-max", grid.rows_max, "maximum r1 + rn");
  sweep->add_option("--r-min", grid.r_min);
  sweep->add_option("--r-max", grid.r_max);
  sweep->add_option("--modes", modes, "s modes to include")->delimiter(',');
  sweep->add_option("--field", sweep_field, "QQ or Fp:P");
  sweep->add_option("--max-instances", max_instances, "instance cap");
  sweep->add_option("--jobs", jobs, "worker threads");
  sweep->add_option("--checks", sweep_checks, "subset of lemma,initial,codim,flat")->delimiter(',');
  sweep->add_option("--out", out, "JSON report file");
  sweep->add_flag("--no-timing", no_timing, "omit timing fields from the report");
  sweep_limits.add(sweep);

  std::string ce_field;
  Limits ce_limits;
  auto* ce = app.add_subcommand("counterexamples", "reproduce the two perturbation counterexamples");
  ce->add_option("--field", ce_field, "QQ or Fp:P");
  ce->add_option("--out", out, "JSON report file");
  ce->add_flag("--no-timing", no_timing, "omit timing fields from the report");
  ce_limits.add(ce);

  ChainFlags chain_flags;
  auto* chain = app.add_subcommand("chain", "generate and check random s-linked chains, or check a chain file");
  chain->add_option("--d", chain_flags.d);
  chain->add_option("--n", chain_flags.n);
  chain->add_option("--c", chain_flags.c)->delimiter(',');
  chain->add_option("--r1", chain_flags.r1, "rows of g1");
  chain->add_option("--rn", chain_flags.rn, "rows of gn");
  chain->add_option("--field", chain_flags.field, "QQ or Fp:P");
  chain->add_option("--s", chain_flags.s, "a scalar, or t for k[t]/(t^N)");
  chain->add_option("--truncation", chain_flags.truncation, "N when s = t");
  chain->add_option("--seed", chain_flags.seed);
  chain->add_option("--count", chain_flags.count, "number of consecutive seeds");
  chain->add_option("--chain-file", chain_flags.chain_file, "verify this chain instead of generating");
  chain->add_option("--out", out, "JSON output file (default stdout)");

  std::string lls_input;
  auto* lls = app.add_subcommand("lls", "classify vanishing data on a dual graph");
  lls->add_option("--input", lls_input, "JSON dual graph and sequences")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; bad flags count as invalid input
    return app.exit(e) == 0 ? 0 : 3;
  }

  try {
    if (*gen) return cmd_gen(gen_flags, out);
    if (*verify) return cmd_verify(verify_flags, verify_limits, verify_checks, fibers, out, !no_timing);
    if (*sweep) {
      if (!sweep_field.empty()) grid.field = FieldSpec::parse(sweep_field);
      // explicit bounds win over the preset
      if (grid_preset == "reduced") {
        if (!sweep->count("--rows-max")) grid.rows_max = 3;
        if (!sweep->count("--r-max")) grid.r_max = 2;
      }
      return cmd_sweep(grid, modes, sweep_limits, sweep_checks, max_instances, jobs, out, !no_timing);
    }
    if (*ce) return cmd_counterexamples(ce_field, ce_limits, out, !no_timing);
    if (*chain) return cmd_chain(chain_flags, out);
    if (*lls) return cmd_lls(lls_input);
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const json::exception& e) {
    std::cerr << "invalid JSON: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return 0;
}
