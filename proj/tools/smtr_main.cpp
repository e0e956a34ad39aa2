// Single-binary front end: solve, verify, oracle, reduce, gen, bench.
// Exit codes: 0 = witness/OK, 1 = NONE/violation, 2 = input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "smtr/bench.hpp"
#include "smtr/instance.hpp"
#include "smtr/io.hpp"
#include "smtr/oracle.hpp"
#include "smtr/reductions.hpp"
#include "smtr/solvers.hpp"
#include "smtr/stability.hpp"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNone = 1;
constexpr int kExitInput = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw smtr::ValidationError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw smtr::ValidationError("cannot open " + path + " for writing");
  out << text;
}

smtr::StabilityLevel parse_level(const std::string& name) {
  if (name == "weak") return smtr::StabilityLevel::Weak;
  if (name == "strong") return smtr::StabilityLevel::Strong;
  if (name == "super") return smtr::StabilityLevel::Super;
  throw smtr::ValidationError("unknown level '" + name + "' (want weak, strong or super)");
}

json edges_json(const std::vector<smtr::Edge>& edges) {
  json arr = json::array();
  for (smtr::Edge e : edges) arr.push_back({e.man + 1, e.woman + 1});
  return arr;
}

void print_matching(const smtr::Matching& m) { std::cout << smtr::serialize_matching(m); }

struct SolveOptions {
  std::string level_name;
  std::string instance_path;
  bool fpt_free = false;
  bool with_restrictions = false;
  bool count_calls = false;
  bool as_json = false;
};

int run_solve(const SolveOptions& opt) {
  smtr::StabilityLevel level = parse_level(opt.level_name);
  smtr::ParsedInstance in = smtr::parse_instance(read_file(opt.instance_path));

  std::optional<smtr::Matching> result;
  long long calls = 1;
  if (level == smtr::StabilityLevel::Weak) {
    if (!in.restricted.forbidden.empty() || !in.restricted.forced.empty())
      throw smtr::ValidationError("the weak solver accepts free edges only");
    result = smtr::solve_weak_with_free(in.instance, in.restricted.free);
  } else if (opt.fpt_free) {
    smtr::FptOutcome out =
        smtr::solve_free_fpt(in.instance, in.restricted, level, opt.with_restrictions);
    result = out.matching;
    calls = out.subproblem_calls;
  } else {
    if (!in.restricted.free.empty())
      throw smtr::ValidationError("free edges at level " + smtr::level_name(level) +
                                  " need --fpt-free");
    result = level == smtr::StabilityLevel::Super ? smtr::solve_super(in.instance, in.restricted)
                                                  : smtr::solve_strong(in.instance, in.restricted);
  }

  if (opt.as_json) {
    json out = {{"command", "solve"},
                {"level", smtr::level_name(level)},
                {"found", result.has_value()},
                {"matching", result ? edges_json(result->edges()) : json::array()}};
    if (opt.count_calls) out["calls"] = calls;
    std::cout << out.dump(2) << '\n';
  } else {
    if (result)
      print_matching(*result);
    else
      std::cout << "NONE\n";
    if (opt.count_calls) std::cout << "calls " << calls << '\n';
  }
  return result ? kExitOk : kExitNone;
}

struct VerifyOptions {
  std::string level_name;
  std::string instance_path;
  std::string matching_path;
  bool as_json = false;
};

int run_verify(const VerifyOptions& opt) {
  smtr::StabilityLevel level = parse_level(opt.level_name);
  smtr::ParsedInstance in = smtr::parse_instance(read_file(opt.instance_path));
  smtr::Matching m = smtr::parse_matching(read_file(opt.matching_path), in.instance);
  smtr::VerifyResult res = smtr::verify_stable(in.instance, in.restricted, m, level);

  if (opt.as_json) {
    json out = {{"command", "verify"},
                {"level", smtr::level_name(level)},
                {"ok", res.ok()},
                {"violations",
                 {{"forbidden_in_matching", edges_json(res.forbidden_in_matching)},
                  {"forced_missing", edges_json(res.forced_missing)},
                  {"blocking_not_free", edges_json(res.blocking_not_free)}}}};
    std::cout << out.dump(2) << '\n';
  } else if (res.ok()) {
    std::cout << "OK\n";
  } else {
    std::cout << res.describe();
  }
  return res.ok() ? kExitOk : kExitNone;
}

struct OracleOptions {
  std::string level_name = "weak";
  std::string instance_path;
  std::string formula_path;
  bool perfect = false;
};

int run_oracle(const OracleOptions& opt) {
  if (!opt.formula_path.empty()) {
    smtr::SatFormula f = smtr::parse_formula(read_file(opt.formula_path));
    std::optional<smtr::Assignment> a = smtr::solve_1in3_bruteforce(f);
    if (!a) {
      std::cout << "NONE\n";
      return kExitNone;
    }
    for (int v = 0; v < f.num_vars; ++v) std::cout << "x" << v + 1 << " = " << (*a)[v] << '\n';
    return kExitOk;
  }
  if (opt.instance_path.empty())
    throw smtr::ValidationError("oracle needs --instance or --formula");
  smtr::ParsedInstance in = smtr::parse_instance(read_file(opt.instance_path));
  std::optional<smtr::Matching> m;
  if (opt.perfect) {
    if (!in.restricted.forbidden.empty() || !in.restricted.forced.empty() ||
        !in.restricted.free.empty())
      throw smtr::ValidationError("--perfect ignores restricted edges; remove them");
    m = smtr::oracle_perfect_weak(in.instance);
  } else {
    m = smtr::oracle_exists(in.instance, in.restricted, parse_level(opt.level_name));
  }
  if (!m) {
    std::cout << "NONE\n";
    return kExitNone;
  }
  print_matching(*m);
  return kExitOk;
}

struct ReduceOptions {
  std::string kind;
  std::string in_path;
  std::string out_path;
  std::string registry_path;
};

int run_reduce(const ReduceOptions& opt) {
  std::string text = read_file(opt.in_path);
  std::string out_text;
  std::string registry_text;

  if (opt.kind == "forbidden1") {
    smtr::ParsedInstance in = smtr::parse_instance(text);
    if (!in.restricted.forbidden.empty() || !in.restricted.forced.empty() ||
        !in.restricted.free.empty())
      throw smtr::ValidationError("forbidden1 takes an unrestricted instance");
    smtr::Forbidden1Reduction red = smtr::reduce_perfect_to_forbidden1(in.instance);
    out_text = smtr::serialize_instance(red.out.instance, red.out.restricted);
    registry_text = smtr::serialize_registry(red.out);
  } else if (opt.kind == "dense") {
    smtr::ParsedInstance in = smtr::parse_instance(text);
    if (in.restricted.forbidden.size() != 1 || !in.restricted.forced.empty() ||
        !in.restricted.free.empty())
      throw smtr::ValidationError("dense takes exactly one forbidden edge and nothing else");
    smtr::Instance dense = smtr::reduce_forbidden1_to_dense(in.instance, in.restricted.forbidden[0]);
    out_text = smtr::serialize_instance(dense, {});
  } else if (opt.kind == "sat-free") {
    smtr::SatFormula f = smtr::parse_formula(text);
    smtr::SatFreeReduction red = smtr::reduce_sat_to_ssmti_free(f);
    out_text = smtr::serialize_instance(red.out.instance, red.out.restricted);
    registry_text = smtr::serialize_registry(red.out);
  } else if (opt.kind == "complete-free") {
    smtr::ParsedInstance in = smtr::parse_instance(text);
    auto [inst, r] = smtr::complete_with_free(in.instance, in.restricted);
    out_text = smtr::serialize_instance(inst, r);
  } else {
    throw smtr::ValidationError("unknown reduction '" + opt.kind + "'");
  }

  write_file(opt.out_path, out_text);
  if (!opt.registry_path.empty()) {
    if (registry_text.empty())
      throw smtr::ValidationError(opt.kind + " emits no registry");
    write_file(opt.registry_path, registry_text);
  }
  return kExitOk;
}

struct GenOptions {
  std::string kind;
  unsigned long seed = 1;
  int men = 4, women = 4;
  double density = 0.7;
  double ties = 0.3;
  int vars = 3;
  std::string out_path;
};

int run_gen(const GenOptions& opt) {
  std::string text;
  if (opt.kind == "smti") {
    smtr::Instance inst = smtr::gen_random_smti(opt.men, opt.women, opt.density, opt.ties, opt.seed);
    text = smtr::serialize_instance(inst, {});
  } else if (opt.kind == "1in3") {
    text = smtr::serialize_formula(smtr::gen_random_1in3(opt.vars, opt.seed));
  } else {
    throw smtr::ValidationError("unknown generator '" + opt.kind + "'");
  }
  if (opt.out_path.empty())
    std::cout << text;
  else
    write_file(opt.out_path, text);
  return kExitOk;
}

struct BenchOptions {
  std::string level_name = "strong";
  int k_min = 0;
  int k_max = 10;
  std::string out_path;
};

int run_bench(const BenchOptions& opt) {
  smtr::StabilityLevel level = parse_level(opt.level_name);
  if (level == smtr::StabilityLevel::Weak)
    throw smtr::ValidationError("bench runs at level strong or super");
  std::string csv = smtr::bench_csv(smtr::bench_fpt(level, opt.k_min, opt.k_max));
  if (opt.out_path.empty())
    std::cout << csv;
  else
    write_file(opt.out_path, csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable marriage with ties and restricted edges: solvers, oracle, reductions"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand("solve", "Find a stable matching or print NONE");
  solve->add_option("--level", solve_opt.level_name, "weak, strong or super")->required();
  solve->add_option("--instance", solve_opt.instance_path, "instance file")->required();
  solve->add_flag("--fpt-free", solve_opt.fpt_free, "handle free edges by subset enumeration");
  solve->add_flag("--with-restrictions", solve_opt.with_restrictions,
                  "let --fpt-free pass forbidden/forced edges into every subproblem");
  solve->add_flag("--count-calls", solve_opt.count_calls, "print the subproblem call count");
  solve->add_flag("--json", solve_opt.as_json, "machine-readable output");

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand("verify", "Check a matching against an instance");
  verify->add_option("--level", verify_opt.level_name, "weak, strong or super")->required();
  verify->add_option("--instance", verify_opt.instance_path, "instance file")->required();
  verify->add_option("--matching", verify_opt.matching_path, "matching file")->required();
  verify->add_flag("--json", verify_opt.as_json, "machine-readable output");

  OracleOptions oracle_opt;
  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive reference answers");
  oracle->add_option("--level", oracle_opt.level_name, "weak, strong or super");
  oracle->add_option("--instance", oracle_opt.instance_path, "instance file");
  oracle->add_option("--formula", oracle_opt.formula_path, "1-in-3 formula file");
  oracle->add_flag("--perfect", oracle_opt.perfect, "ask for a perfect weakly stable matching");

  ReduceOptions reduce_opt;
  CLI::App* reduce = app.add_subcommand("reduce", "Run one of the constructions");
  reduce->add_option("kind", reduce_opt.kind, "forbidden1, dense, sat-free or complete-free")
      ->required();
  reduce->add_option("--in", reduce_opt.in_path, "input file")->required();
  reduce->add_option("--out", reduce_opt.out_path, "output instance file")->required();
  reduce->add_option("--registry", reduce_opt.registry_path, "where to write the gadget registry");

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen", "Seeded random inputs");
  gen->add_option("kind", gen_opt.kind, "smti or 1in3")->required();
  gen->add_option("--seed", gen_opt.seed, "rng seed")->required();
  gen->add_option("--men", gen_opt.men, "men count (smti)");
  gen->add_option("--women", gen_opt.women, "women count (smti)");
  gen->add_option("--density", gen_opt.density, "edge probability (smti)");
  gen->add_option("--ties", gen_opt.ties, "tie merge probability (smti)");
  gen->add_option("--vars", gen_opt.vars, "variable count (1in3)");
  gen->add_option("--out", gen_opt.out_path, "output file (default stdout)");

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand("bench", "Subset-enumeration scaling table (CSV)");
  bench->add_option("--level", bench_opt.level_name, "strong or super");
  bench->add_option("--k-min", bench_opt.k_min, "smallest free-edge count");
  bench->add_option("--k-max", bench_opt.k_max, "largest free-edge count");
  bench->add_option("--out", bench_opt.out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (solve->parsed()) return run_solve(solve_opt);
    if (verify->parsed()) return run_verify(verify_opt);
    if (oracle->parsed()) return run_oracle(oracle_opt);
    if (reduce->parsed()) return run_reduce(reduce_opt);
    if (gen->parsed()) return run_gen(gen_opt);
    if (bench->parsed()) return run_bench(bench_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
