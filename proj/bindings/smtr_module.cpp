// Python face of the library. Instances, matchings and formulas travel as
// text in the same formats the command line uses; results come back as plain
// dicts, lists and strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>
#include <vector>

#include "smtr/bench.hpp"
#include "smtr/instance.hpp"
#include "smtr/io.hpp"
#include "smtr/oracle.hpp"
#include "smtr/reductions.hpp"
#include "smtr/solvers.hpp"
#include "smtr/stability.hpp"

namespace py = pybind11;

namespace {

smtr::StabilityLevel level_from(const std::string& name) {
  if (name == "weak") return smtr::StabilityLevel::Weak;
  if (name == "strong") return smtr::StabilityLevel::Strong;
  if (name == "super") return smtr::StabilityLevel::Super;
  throw smtr::ValidationError("unknown level '" + name + "' (want weak, strong or super)");
}

std::vector<std::pair<int, int>> pairs_of(const std::vector<smtr::Edge>& edges) {
  std::vector<std::pair<int, int>> out;
  out.reserve(edges.size());
  for (smtr::Edge e : edges) out.emplace_back(e.man + 1, e.woman + 1);
  return out;
}

py::dict solve(const std::string& instance_text, const std::string& level_name, bool fpt_free,
               bool with_restrictions) {
  smtr::StabilityLevel level = level_from(level_name);
  smtr::ParsedInstance in = smtr::parse_instance(instance_text);

  std::optional<smtr::Matching> result;
  long long calls = 1;
  if (level == smtr::StabilityLevel::Weak) {
    if (!in.restricted.forbidden.empty() || !in.restricted.forced.empty())
      throw smtr::ValidationError("the weak solver accepts free edges only");
    result = smtr::solve_weak_with_free(in.instance, in.restricted.free);
  } else if (fpt_free) {
    smtr::FptOutcome out = smtr::solve_free_fpt(in.instance, in.restricted, level, with_restrictions);
    result = out.matching;
    calls = out.subproblem_calls;
  } else {
    if (!in.restricted.free.empty())
      throw smtr::ValidationError("free edges at level " + smtr::level_name(level) +
                                  " need fpt_free=True");
    result = level == smtr::StabilityLevel::Super ? smtr::solve_super(in.instance, in.restricted)
                                                  : smtr::solve_strong(in.instance, in.restricted);
  }

  py::dict out;
  out["found"] = result.has_value();
  if (result)
    out["matching"] = pairs_of(result->edges());
  else
    out["matching"] = py::list();
  out["calls"] = calls;
  return out;
}

py::dict verify(const std::string& instance_text, const std::string& matching_text,
                const std::string& level_name) {
  smtr::ParsedInstance in = smtr::parse_instance(instance_text);
  smtr::Matching m = smtr::parse_matching(matching_text, in.instance);
  smtr::VerifyResult res = smtr::verify_stable(in.instance, in.restricted, m, level_from(level_name));
  py::dict out;
  out["ok"] = res.ok();
  out["forbidden_in_matching"] = pairs_of(res.forbidden_in_matching);
  out["forced_missing"] = pairs_of(res.forced_missing);
  out["blocking_not_free"] = pairs_of(res.blocking_not_free);
  return out;
}

py::object oracle(const std::string& instance_text, const std::string& level_name, bool perfect) {
  smtr::ParsedInstance in = smtr::parse_instance(instance_text);
  std::optional<smtr::Matching> m;
  if (perfect) {
    m = smtr::oracle_perfect_weak(in.instance);
  } else {
    m = smtr::oracle_exists(in.instance, in.restricted, level_from(level_name));
  }
  if (!m) return py::none();
  return py::cast(pairs_of(m->edges()));
}

py::object brute_1in3(const std::string& formula_text) {
  std::optional<smtr::Assignment> a = smtr::solve_1in3_bruteforce(smtr::parse_formula(formula_text));
  if (!a) return py::none();
  return py::cast(std::vector<bool>(*a));
}

py::dict reduce_forbidden1(const std::string& instance_text) {
  smtr::ParsedInstance in = smtr::parse_instance(instance_text);
  smtr::Forbidden1Reduction red = smtr::reduce_perfect_to_forbidden1(in.instance);
  py::dict out;
  out["instance"] = smtr::serialize_instance(red.out.instance, red.out.restricted);
  out["registry"] = smtr::serialize_registry(red.out);
  return out;
}

std::string reduce_dense(const std::string& instance_text) {
  smtr::ParsedInstance in = smtr::parse_instance(instance_text);
  if (in.restricted.forbidden.size() != 1 || !in.restricted.forced.empty() ||
      !in.restricted.free.empty())
    throw smtr::ValidationError("dense takes exactly one forbidden edge and nothing else");
  return smtr::serialize_instance(
      smtr::reduce_forbidden1_to_dense(in.instance, in.restricted.forbidden[0]), {});
}

py::dict reduce_sat_free(const std::string& formula_text) {
  smtr::SatFreeReduction red = smtr::reduce_sat_to_ssmti_free(smtr::parse_formula(formula_text));
  py::dict out;
  out["instance"] = smtr::serialize_instance(red.out.instance, red.out.restricted);
  out["registry"] = smtr::serialize_registry(red.out);
  return out;
}

std::string complete_free(const std::string& instance_text) {
  smtr::ParsedInstance in = smtr::parse_instance(instance_text);
  auto [inst, r] = smtr::complete_with_free(in.instance, in.restricted);
  return smtr::serialize_instance(inst, r);
}

std::string gen_smti(int men, int women, double density, double ties, unsigned long seed) {
  return smtr::serialize_instance(smtr::gen_random_smti(men, women, density, ties, seed), {});
}

std::string gen_1in3(int vars, unsigned long seed) {
  return smtr::serialize_formula(smtr::gen_random_1in3(vars, seed));
}

std::string bench(const std::string& level_name, int k_min, int k_max) {
  smtr::StabilityLevel level = level_from(level_name);
  if (level == smtr::StabilityLevel::Weak)
    throw smtr::ValidationError("bench runs at level strong or super");
  return smtr::bench_csv(smtr::bench_fpt(level, k_min, k_max));
}

}  // namespace

PYBIND11_MODULE(_smtr, mod) {
  mod.doc() = "Stable marriage with ties and restricted edges";

  py::register_exception<smtr::ValidationError>(mod, "ValidationError", PyExc_ValueError);

  mod.def("solve", &solve, py::arg("instance_text"), py::arg("level"),
          py::arg("fpt_free") = false, py::arg("with_restrictions") = false,
          "Find a stable matching; returns {'found', 'matching', 'calls'}");
  mod.def("verify", &verify, py::arg("instance_text"), py::arg("matching_text"), py::arg("level"),
          "Check a matching; returns {'ok', ...violation lists}");
  mod.def("oracle", &oracle, py::arg("instance_text"), py::arg("level") = "weak",
          py::arg("perfect") = false,
          "Exhaustive search; returns the first witness or None");
  mod.def("brute_1in3", &brute_1in3, py::arg("formula_text"),
          "Exhaustive 1-in-3 assignment search; list of bools or None");
  mod.def("reduce_forbidden1", &reduce_forbidden1, py::arg("instance_text"),
          "Perfect-matching existence to single-forbidden-edge stability");
  mod.def("reduce_dense", &reduce_dense, py::arg("instance_text"),
          "Drop a last-ranked forbidden edge from a complete instance");
  mod.def("reduce_sat_free", &reduce_sat_free, py::arg("formula_text"),
          "1-in-3 positive 3-SAT to stability with free edges");
  mod.def("complete_free", &complete_free, py::arg("instance_text"),
          "Complete the graph with worst-ranked free edges");
  mod.def("gen_smti", &gen_smti, py::arg("men"), py::arg("women"), py::arg("density"),
          py::arg("ties"), py::arg("seed"), "Seeded random instance, serialized");
  mod.def("gen_1in3", &gen_1in3, py::arg("vars"), py::arg("seed"),
          "Seeded random formula with exactly three occurrences per variable");
  mod.def("bench", &bench, py::arg("level") = "strong", py::arg("k_min") = 0,
          py::arg("k_max") = 10, "Subset-enumeration scaling table as CSV");
}
