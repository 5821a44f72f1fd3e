// latred: lattice reduction and benchmarking front end.
//
// Subcommands:
//   gen     generate a seeded random HNF instance
//   reduce  reduce a basis file with lll/potlll/potlll2/deeplll/bkz
//   verify  check a reducedness notion, exit 1 on violation
//   bench   run a benchmark plan, emit CSV/JSON records
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "latred/basis_io.hpp"
#include "latred/bench.hpp"
#include "latred/bkz.hpp"
#include "latred/deep_lll.hpp"
#include "latred/latgen.hpp"
#include "latred/lll.hpp"
#include "latred/pot_lll.hpp"

namespace {

using namespace latred;

std::optional<FloatKind> resolve_float(const std::string& flag) {
  std::string v = flag;
  if (v == "auto" || v.empty()) {
    const char* env = std::getenv("LATRED_FLOAT");
    if (env == nullptr) return std::nullopt;
    v = env;
  }
  if (v == "double") return FloatKind::HardwareDouble;
  if (v == "extended") return FloatKind::ExtendedOrEmulated;
  if (v == "auto") return std::nullopt;
  throw CLI::ValidationError("--float", "expected auto, double or extended");
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    int a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::stringstream ps(part);
    if (!(ps >> a)) throw CLI::ValidationError("--dims", "bad range " + part);
    if (ps >> c1 >> b) {
      if (!(ps >> c2 >> step)) step = b - a ? b - a : 1;
      if (c1 != ':' || (c2 && c2 != ':') || step <= 0)
        throw CLI::ValidationError("--dims", "bad range " + part);
      for (int d = a; d <= b; d += step) dims.push_back(d);
    } else {
      dims.push_back(a);
    }
  }
  if (dims.empty()) throw CLI::ValidationError("--dims", "no dimensions");
  return dims;
}

int cmd_gen(int dim, std::uint64_t seed, int bits, const std::string& out) {
  GenSpec spec{dim, seed, bits};
  Basis b = generate_random_hnf(spec);
  write_basis(out, b);
  return 0;
}

int cmd_reduce(const std::string& algo_name, double delta, int beta,
               bool no_preprocess, const std::string& in,
               const std::string& out, const std::string& stats_path,
               const std::string& float_flag) {
  std::string label = algo_name;
  if ((algo_name == "deeplll" || algo_name == "bkz"))
    label += ":" + std::to_string(beta);
  auto spec = AlgoSpec::parse(label);
  if (!spec) {
    std::cerr << "unknown algorithm '" << algo_name << "'\n";
    return 2;
  }
  Basis b = read_basis(in);
  ReductionParams params;
  params.delta = delta;
  params.preprocess = !no_preprocess;
  FloatKind kind = pick_float_kind(b, resolve_float(float_flag));
  ReductionStats st = run_reduction(b, *spec, params, kind);
  write_basis(out, b);
  if (!stats_path.empty()) {
    FloatConfig cfg;
    cfg.kind = kind;
    double hermite = kind == FloatKind::HardwareDouble
                         ? hermite_root_factor<Int, double>(b, cfg)
                         : hermite_root_factor<Int, long double>(b, cfg);
    nlohmann::json j{{"algo", spec->label()},
                     {"delta", delta},
                     {"preprocess", params.preprocess},
                     {"loop_iterations", st.loop_iterations},
                     {"insertions", st.insertions},
                     {"size_reduction_ops", st.size_reduction_ops},
                     {"elapsed_s", st.elapsed_s()},
                     {"precision_warnings", st.precision_warnings},
                     {"sweeps", st.sweeps},
                     {"hermite_root", hermite}};
    std::ofstream sf(stats_path);
    if (!sf) throw Error("cannot open '" + stats_path + "' for writing");
    sf << j.dump(2) << '\n';
  }
  return 0;
}

int cmd_verify(const std::string& notion, double delta, int beta,
               const std::string& in, const std::string& float_flag) {
  Basis b = read_basis(in);
  FloatKind kind = pick_float_kind(b, resolve_float(float_flag));
  FloatConfig cfg;
  cfg.kind = kind;
  ReducednessReport report;
  auto dispatch = [&](auto tag) {
    using FT = decltype(tag);
    if (notion == "lll")
      report = is_lll_reduced<Int, FT>(b, delta, cfg);
    else if (notion == "deep")
      report = is_deep_reduced<Int, FT>(b, delta, beta, cfg);
    else if (notion == "pot")
      report = is_pot_reduced<Int, FT>(b, delta, cfg);
    else
      throw CLI::ValidationError("--notion", "expected lll, deep or pot");
  };
  if (kind == FloatKind::HardwareDouble)
    dispatch(double{});
  else
    dispatch((long double){});
  if (report.reduced) {
    std::cout << "reduced\n";
    return 0;
  }
  std::cerr << report.describe() << '\n';
  return 1;
}

int cmd_bench(const std::string& dims, int seeds, const std::string& algos,
              bool no_preprocess, bool compare_preprocess, double delta,
              int bits, int threads, const std::string& csv,
              const std::string& json, const std::string& float_flag) {
  BenchPlan plan;
  plan.dims = parse_dims(dims);
  plan.seeds = seeds;
  std::stringstream ss(algos);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto spec = AlgoSpec::parse(part);
    if (!spec) throw CLI::ValidationError("--algos", "unknown " + part);
    plan.algos.push_back(*spec);
  }
  if (plan.algos.empty())
    throw CLI::ValidationError("--algos", "no algorithms");
  if (compare_preprocess)
    plan.preprocess_flags = {true, false};
  else
    plan.preprocess_flags = {!no_preprocess};
  plan.delta = delta;
  plan.bits = bits;
  plan.threads = threads;
  plan.forced_float = resolve_float(float_flag);

  BenchResult result = run_bench(plan, &std::cerr);
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw Error("cannot open '" + csv + "' for writing");
    write_csv(f, result.records);
  }
  if (!json.empty()) {
    std::ofstream f(json);
    if (!f) throw Error("cannot open '" + json + "' for writing");
    write_json_lines(f, result.records);
  }
  print_aggregate_table(std::cout, result.aggregates);
  if (result.failures > 0) {
    std::cerr << result.failures << " cell(s) failed verification\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice reduction toolkit"};
  app.require_subcommand(1);

  std::string float_flag = "auto";
  app.add_option("--float", float_flag,
                 "GSO float kind: auto, double, extended")
      ->capture_default_str();

  auto* gen = app.add_subcommand("gen", "generate a random HNF instance");
  int g_dim = 0, g_bits = 0;
  std::uint64_t g_seed = 0;
  std::string g_out;
  gen->add_option("--dim", g_dim, "lattice rank")->required();
  gen->add_option("--seed", g_seed, "generator seed")->required();
  gen->add_option("--bits", g_bits, "modulus bit length (default 10*dim)");
  gen->add_option("--out", g_out, "output basis file")->required();

  auto* red = app.add_subcommand("reduce", "reduce a basis file");
  std::string r_algo, r_in, r_out, r_stats;
  double r_delta = 0.99;
  int r_beta = 2;
  bool r_nopp = false;
  red->add_option("--algo", r_algo, "lll|potlll|potlll2|deeplll|bkz")
      ->required();
  red->add_option("--delta", r_delta, "reduction parameter")
      ->capture_default_str();
  red->add_option("--beta", r_beta, "blocksize (deeplll/bkz)");
  red->add_flag("--no-preprocess", r_nopp, "skip the LLL preprocessing step");
  red->add_option("--in", r_in, "input basis file")->required();
  red->add_option("--out", r_out, "output basis file")->required();
  red->add_option("--stats-json", r_stats, "write run statistics as JSON");

  auto* ver = app.add_subcommand("verify", "verify a reducedness notion");
  std::string v_notion, v_in;
  double v_delta = 0.99;
  int v_beta = 2;
  ver->add_option("--notion", v_notion, "lll|deep|pot")->required();
  ver->add_option("--delta", v_delta, "reduction parameter")
      ->capture_default_str();
  ver->add_option("--beta", v_beta, "blocksize (deep)");
  ver->add_option("--in", v_in, "input basis file")->required();

  auto* ben = app.add_subcommand("bench", "run a benchmark plan");
  std::string b_dims, b_algos, b_csv, b_json;
  int b_seeds = 1, b_bits = 0, b_threads = 0;
  double b_delta = 0.99;
  bool b_nopp = false, b_cmp_pp = false;
  ben->add_option("--dims", b_dims, "dimensions, e.g. 40:100:20 or 64")
      ->required();
  ben->add_option("--seeds", b_seeds, "seeds 0..N-1")->required();
  ben->add_option("--algos", b_algos,
                  "comma list, e.g. lll,potlll,deeplll:5,bkz:10")
      ->required();
  ben->add_flag("--no-preprocess", b_nopp, "run without LLL preprocessing");
  ben->add_flag("--compare-preprocess", b_cmp_pp,
                "run each cell both with and without preprocessing");
  ben->add_option("--delta", b_delta, "reduction parameter")
      ->capture_default_str();
  ben->add_option("--bits", b_bits, "modulus bit length (default 10*dim)");
  ben->add_option("--threads", b_threads, "worker threads (default: cores)");
  ben->add_option("--csv", b_csv, "write one CSV record per cell");
  ben->add_option("--json", b_json, "write one JSON record per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(g_dim, g_seed, g_bits, g_out);
    if (red->parsed())
      return cmd_reduce(r_algo, r_delta, r_beta, r_nopp, r_in, r_out, r_stats,
                        float_flag);
    if (ver->parsed())
      return cmd_verify(v_notion, v_delta, v_beta, v_in, float_flag);
    if (ben->parsed())
      return cmd_bench(b_dims, b_seeds, b_algos, b_nopp, b_cmp_pp, b_delta,
                       b_bits, b_threads, b_csv, b_json, float_flag);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const latred::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
